//! Finite groups as dense multiplication tables.
//!
//! Elements are indices `0..order` with `0` the identity. Every group is built
//! by closing a set of generators under a concrete multiplication, which also
//! fixes element names as shortest words in the generator names.

mod catalogue;
mod construct;
mod morphism;

pub use catalogue::{catalogue, couplings, small_groups, special_groups, split_extensions, Catalogue};
pub use construct::*;
pub use morphism::{are_isomorphic, automorphism_group, extend_hom, Morphism};

use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::sync::OnceLock;

pub type Elem = u32;

pub const DEFAULT_MAX_ORDER: usize = 2048;

/// Order bound, overridable through `RSCLASS_MAX_ORDER`.
pub fn max_order() -> usize {
    std::env::var("RSCLASS_MAX_ORDER")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_ORDER)
}

/// Structured construction descriptor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Tag {
    Cyclic { n: u32 },
    Direct { left: Box<Tag>, right: Box<Tag> },
    Semidirect { normal: Box<Tag>, acting: Box<Tag>, image_order: u32 },
    Dihedral { n: u32 },
    Dicyclic { n: u32 },
    Alt4,
    Alt5,
    Sym4,
    Sym5,
    Quaternion,
    Named { name: String },
    Subgroup { parent: Box<Tag>, order: u32 },
}

impl Tag {
    fn factors(&self, out: &mut Vec<String>) {
        match self {
            Tag::Direct { left, right } => {
                left.factors(out);
                right.factors(out);
            }
            other => out.push(other.atom()),
        }
    }

    fn atom(&self) -> String {
        match self {
            Tag::Cyclic { n } => format!("Z{n}"),
            Tag::Dihedral { n } => format!("D{n}"),
            Tag::Dicyclic { n } => format!("Dic{n}"),
            Tag::Alt4 => "A4".into(),
            Tag::Alt5 => "A5".into(),
            Tag::Sym4 => "S4".into(),
            Tag::Sym5 => "S5".into(),
            Tag::Quaternion => "Q8".into(),
            Tag::Named { name } => name.clone(),
            Tag::Semidirect { normal, acting, image_order } => {
                if *image_order == 1 {
                    format!("{} x {}", normal, acting)
                } else {
                    let h = acting.to_string();
                    let h = if h.contains(' ') { format!("({h})") } else { h };
                    format!("{}:{}{}", normal, image_order, h)
                }
            }
            Tag::Subgroup { parent, order } => format!("<order {order} in {parent}>"),
            Tag::Direct { .. } => {
                let mut v = Vec::new();
                self.factors(&mut v);
                v.join(" x ")
            }
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tag::Direct { .. } => {
                let mut v = Vec::new();
                self.factors(&mut v);
                // collapse repeated factors into powers
                let mut parts: Vec<String> = Vec::new();
                let mut i = 0;
                while i < v.len() {
                    let mut j = i;
                    while j < v.len() && v[j] == v[i] {
                        j += 1;
                    }
                    let k = j - i;
                    let atom = if v[i].contains(' ') { format!("({})", v[i]) } else { v[i].clone() };
                    parts.push(if k == 1 { atom } else { format!("{atom}^{k}") });
                    i = j;
                }
                write!(f, "{}", parts.join(" x "))
            }
            other => write!(f, "{}", other.atom()),
        }
    }
}

/// A finite group with full multiplication table.
#[derive(Clone)]
pub struct Group {
    order: usize,
    table: Vec<Elem>,
    inverse: Vec<Elem>,
    orders: Vec<u32>,
    names: Vec<String>,
    generators: Vec<Elem>,
    generator_names: Vec<String>,
    tag: Tag,
    classes: OnceLock<Classes>,
}

#[derive(Clone)]
struct Classes {
    classes: Vec<Vec<Elem>>,
    class_of: Vec<u32>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({}, order {})", self.tag, self.order)
    }
}

impl Group {
    /// Closes `gens` under `mul`, naming elements by BFS-shortest words.
    pub fn from_generators<T, F>(
        identity: T,
        gens: &[T],
        gen_names: &[&str],
        mul: F,
        tag: Tag,
    ) -> Result<Group>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        assert_eq!(gens.len(), gen_names.len());
        let bound = max_order();
        let mut elems: Vec<T> = vec![identity.clone()];
        let mut index: HashMap<T, Elem> = HashMap::new();
        index.insert(identity, 0);
        let mut words: Vec<Vec<(usize, u32)>> = vec![Vec::new()];
        let mut parent: Vec<(Elem, usize)> = vec![(0, usize::MAX)];
        let mut head = 0;
        while head < elems.len() {
            for (gi, g) in gens.iter().enumerate() {
                let prod = mul(&elems[head], g);
                if index.contains_key(&prod) {
                    continue;
                }
                let id = elems.len() as Elem;
                if elems.len() >= bound {
                    return Err(Error::OrderBound { order: elems.len() + 1, bound });
                }
                index.insert(prod.clone(), id);
                elems.push(prod);
                let mut w = words[head].clone();
                match w.last_mut() {
                    Some((last, k)) if *last == gi => *k += 1,
                    _ => w.push((gi, 1)),
                }
                words.push(w);
                parent.push((head as Elem, gi));
            }
            head += 1;
        }
        let n = elems.len();
        // right multiplication by each generator, then fill rows along BFS parents
        let gen_cols: Vec<Vec<Elem>> = gens
            .iter()
            .map(|g| elems.iter().map(|e| index[&mul(e, g)]).collect())
            .collect();
        let mut table = vec![0 as Elem; n * n];
        for a in 0..n {
            table[a * n] = a as Elem;
        }
        for b in 1..n {
            let (pb, gi) = parent[b];
            for a in 0..n {
                let prev = table[a * n + pb as usize];
                table[a * n + b] = gen_cols[gi][prev as usize];
            }
        }
        let names = words
            .iter()
            .map(|w| word_name(w, gen_names))
            .collect::<Vec<_>>();
        let generators = gens.iter().map(|g| index[g]).collect();
        Ok(Group::assemble(
            table,
            names,
            generators,
            gen_names.iter().map(|s| s.to_string()).collect(),
            tag,
        ))
    }

    fn assemble(
        table: Vec<Elem>,
        names: Vec<String>,
        generators: Vec<Elem>,
        generator_names: Vec<String>,
        tag: Tag,
    ) -> Group {
        let n = names.len();
        let mut inverse = vec![0 as Elem; n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] == 0 {
                    inverse[a] = b as Elem;
                    break;
                }
            }
        }
        let mut orders = vec![1u32; n];
        for (a, ord) in orders.iter_mut().enumerate() {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = table[x * n + a] as usize;
                k += 1;
            }
            *ord = k;
        }
        Group {
            order: n,
            table,
            inverse,
            orders,
            names,
            generators,
            generator_names,
            tag,
            classes: OnceLock::new(),
        }
    }

    /// Builds the subgroup on `elements` as a group in its own right.
    /// Returns the group and the embedding (new index -> old index).
    pub fn subgroup_group(&self, elements: &[Elem]) -> Result<(Group, Vec<Elem>)> {
        let set = self.closure(elements);
        let gens = self.small_generating_set_of(&set);
        let names: Vec<String> = (0..gens.len()).map(|i| format!("g{}", i + 1)).collect();
        let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let sub = Group::from_generators(0 as Elem, &gens, &name_refs, |a, b| self.mul(*a, *b), Tag::Subgroup {
            parent: Box::new(self.tag.clone()),
            order: set.len() as u32,
        })?;
        // recover the embedding by replaying the multiplication on the parent side
        let mut embed = vec![0 as Elem; sub.order()];
        let mut seen = vec![false; sub.order()];
        seen[0] = true;
        let mut queue = VecDeque::from([0 as Elem]);
        while let Some(x) = queue.pop_front() {
            for (i, &g) in sub.generators().iter().enumerate() {
                let y = sub.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    embed[y as usize] = self.mul(embed[x as usize], gens[i]);
                    queue.push_back(y);
                }
            }
        }
        Ok((sub, embed))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn tag(&self) -> &Tag {
        &self.tag
    }

    pub fn with_tag(mut self, tag: Tag) -> Group {
        self.tag = tag;
        self
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn name(&self, x: Elem) -> &str {
        &self.names[x as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Looks up an element by its display name.
    pub fn element_by_name(&self, name: &str) -> Option<Elem> {
        let trimmed: String = name.chars().filter(|c| !c.is_whitespace()).collect();
        if trimmed == "1" || trimmed == "e" {
            return Some(0);
        }
        if let Some(i) = self.names.iter().position(|n| *n == trimmed) {
            return Some(i as Elem);
        }
        // evaluate as a word in generator names
        let mut acc: Elem = 0;
        for factor in trimmed.split('*') {
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => (b, e.parse::<i64>().ok()?),
                None => (factor, 1),
            };
            let gi = self.generator_names.iter().position(|g| g == base)?;
            acc = self.mul(acc, self.pow(self.generators[gi], exp));
        }
        Some(acc)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a as usize]
    }

    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        let m = self.orders[a as usize] as i64;
        let k = k.rem_euclid(m);
        let mut r = 0;
        for _ in 0..k {
            r = self.mul(r, a);
        }
        r
    }

    pub fn conj(&self, g: Elem, x: Elem) -> Elem {
        // g x g^-1
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn product(&self, xs: &[Elem]) -> Elem {
        xs.iter().fold(0, |acc, &x| self.mul(acc, x))
    }

    #[inline]
    pub fn element_order(&self, a: Elem) -> u32 {
        self.orders[a as usize]
    }

    pub fn element_orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|&a| self.generators.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1u64, |acc, &o| crate::util::lcm(acc, o as u64))
    }

    /// Sorted `(order, count)` pairs.
    pub fn order_histogram(&self) -> Vec<(u32, usize)> {
        let mut map = std::collections::BTreeMap::new();
        for &o in &self.orders {
            *map.entry(o).or_insert(0usize) += 1;
        }
        map.into_iter().collect()
    }

    /// Sorted element list of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut out = vec![0 as Elem];
        let mut head = 0;
        let gens: Vec<Elem> = gens.iter().copied().filter(|&g| g != 0).collect();
        while head < out.len() {
            let x = out[head];
            for &g in &gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                }
            }
            head += 1;
        }
        out.sort_unstable();
        out
    }

    pub fn generates(&self, gens: &[Elem]) -> bool {
        self.closure(gens).len() == self.order
    }

    pub fn is_subgroup(&self, set: &[Elem]) -> bool {
        if set.is_empty() || !set.contains(&0) {
            return false;
        }
        let mut member = vec![false; self.order];
        for &x in set {
            member[x as usize] = true;
        }
        set.iter()
            .all(|&a| set.iter().all(|&b| member[self.mul(a, b) as usize]))
    }

    pub fn is_normal(&self, set: &[Elem]) -> bool {
        let mut member = vec![false; self.order];
        for &x in set {
            member[x as usize] = true;
        }
        self.generators
            .iter()
            .all(|&g| set.iter().all(|&h| member[self.conj(g, h) as usize]))
    }

    pub fn normal_closure(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut conjugates: Vec<Elem> = Vec::new();
        for &x in gens {
            for g in 0..self.order as Elem {
                conjugates.push(self.conj(g, x));
            }
        }
        conjugates.sort_unstable();
        conjugates.dedup();
        self.closure(&conjugates)
    }

    /// Greedy small generating set: largest-order element first, then
    /// whichever element enlarges the generated subgroup most.
    pub fn small_generating_set(&self) -> Vec<Elem> {
        let all: Vec<Elem> = (0..self.order as Elem).collect();
        self.small_generating_set_of(&all)
    }

    fn small_generating_set_of(&self, set: &[Elem]) -> Vec<Elem> {
        let target = set.len();
        let mut gens: Vec<Elem> = Vec::new();
        let mut current = vec![0 as Elem];
        // two-generator attempt seeded by elements of maximal order
        if target > 1 {
            let max_ord = set.iter().map(|&x| self.orders[x as usize]).max().unwrap_or(1);
            let seeds: Vec<Elem> = set
                .iter()
                .copied()
                .filter(|&x| self.orders[x as usize] == max_ord)
                .take(4)
                .collect();
            for &a in &seeds {
                if self.orders[a as usize] as usize == target {
                    return vec![a];
                }
                for &b in set {
                    if b == 0 || b == a {
                        continue;
                    }
                    if self.closure(&[a, b]).len() == target {
                        return vec![a, b];
                    }
                }
            }
        }
        while current.len() < target {
            let mut best: Option<(usize, Elem)> = None;
            let mut member = vec![false; self.order];
            for &x in &current {
                member[x as usize] = true;
            }
            for &y in set {
                if member[y as usize] {
                    continue;
                }
                let mut trial = gens.clone();
                trial.push(y);
                let size = self.closure(&trial).len();
                if best.is_none_or(|(s, _)| size > s) {
                    best = Some((size, y));
                }
            }
            let (_, y) = best.expect("subset is not closed");
            gens.push(y);
            current = self.closure(&gens);
        }
        gens
    }

    fn classes_data(&self) -> &Classes {
        self.classes.get_or_init(|| {
            let n = self.order;
            let mut class_of = vec![u32::MAX; n];
            let mut classes: Vec<Vec<Elem>> = Vec::new();
            for x in 0..n as Elem {
                if class_of[x as usize] != u32::MAX {
                    continue;
                }
                let id = classes.len() as u32;
                let mut cls = Vec::new();
                for g in 0..n as Elem {
                    let y = self.conj(g, x);
                    if class_of[y as usize] == u32::MAX {
                        class_of[y as usize] = id;
                        cls.push(y);
                    }
                }
                cls.sort_unstable();
                classes.push(cls);
            }
            Classes { classes, class_of }
        })
    }

    /// Conjugacy classes ordered by their smallest member; the first is `{0}`.
    pub fn conjugacy_classes(&self) -> &[Vec<Elem>] {
        &self.classes_data().classes
    }

    pub fn class_of(&self, x: Elem) -> usize {
        self.classes_data().class_of[x as usize] as usize
    }

    pub fn class_size(&self, x: Elem) -> usize {
        self.conjugacy_classes()[self.class_of(x)].len()
    }

    /// Checks the group axioms directly on the table.
    pub fn verify_axioms(&self) -> bool {
        let n = self.order;
        for a in 0..n {
            if self.table[a] as usize != a || self.table[a * n] as usize != a {
                return false;
            }
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 0..n {
                row[self.table[a * n + b] as usize] = true;
                col[self.table[b * n + a] as usize] = true;
            }
            if row.iter().any(|v| !v) || col.iter().any(|v| !v) {
                return false;
            }
        }
        for a in 0..n as Elem {
            for b in 0..n as Elem {
                let ab = self.mul(a, b);
                for c in 0..n as Elem {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return false;
                    }
                }
            }
        }
        self.generates(&self.generators)
    }

    /// Elements grouped by order, each list sorted.
    pub fn elements_of_order(&self, m: u32) -> Vec<Elem> {
        (0..self.order as Elem)
            .filter(|&x| self.orders[x as usize] == m)
            .collect()
    }

    /// All subgroups generated by at most two elements, as sorted element lists.
    pub fn two_generated_subgroups(&self) -> Vec<Vec<Elem>> {
        let n = self.order as Elem;
        let mut seen = std::collections::BTreeSet::new();
        let cyclic: Vec<Vec<Elem>> = (0..n).map(|x| self.closure(&[x])).collect();
        for c in &cyclic {
            seen.insert(c.clone());
        }
        for a in 0..n {
            for b in (a + 1)..n {
                if cyclic[a as usize].binary_search(&b).is_ok()
                    || cyclic[b as usize].binary_search(&a).is_ok()
                {
                    continue;
                }
                seen.insert(self.closure(&[a, b]));
            }
        }
        seen.into_iter().collect()
    }
}

fn word_name(w: &[(usize, u32)], gen_names: &[&str]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.iter()
        .map(|&(g, k)| {
            if k == 1 {
                gen_names[g].to_string()
            } else {
                format!("{}^{}", gen_names[g], k)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}
