//! Surface-kernel epimorphisms of genus-0 signatures and their equivalence classes.
//!
//! A ske is stored as its tuple of generator images. Classes are keyed by the
//! lexicographically smallest tuple they contain, so every partition is a
//! pure function of its input and independent of scheduling.

mod extend;
mod supergroups;

pub use extend::{eval_word, extend_action, extension_search, full_automorphism_group, restrict, Extension, FullAut};
pub use supergroups::{candidate_groups, Candidates};

use crate::error::{Error, Result};
use crate::group::{Elem, Group, Morphism};
use crate::signatures::{extension_candidates, Signature};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

pub type Tuple = Vec<Elem>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Equivalence {
    AutOnly,
    Topological,
    Isomorphism,
}

/// One orbit of skes under the stated equivalence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActionClass {
    pub representative: Tuple,
    pub orbit_size: usize,
    pub equivalence: Equivalence,
    pub labels: Vec<String>,
    /// Aut-canonical tuples of the class with the canonical period pattern.
    #[serde(skip)]
    pub members: Vec<Tuple>,
}

/// Checks the three ske conditions, naming the first that fails.
pub fn check_ske(g: &Group, s: &Signature, images: &[Elem]) -> Result<()> {
    if s.genus != 0 {
        return Err(Error::Unsupported("only orbit genus 0 is supported".into()));
    }
    if images.len() != s.periods.len() {
        return Err(Error::Invalid(format!("expected {} images, got {}", s.periods.len(), images.len())));
    }
    for (k, (&x, &m)) in images.iter().zip(&s.periods).enumerate() {
        if x as usize >= g.order() || g.element_order(x) != m {
            return Err(Error::Invalid(format!("image {k} does not have order {m}")));
        }
    }
    if g.product(images) != 0 {
        return Err(Error::Invalid("product of images is not the identity".into()));
    }
    if !g.generates(images) {
        return Err(Error::Invalid("images do not generate the group".into()));
    }
    Ok(())
}

pub fn is_ske(g: &Group, s: &Signature, images: &[Elem]) -> bool {
    check_ske(g, s, images).is_ok()
}

fn require_genus_zero(s: &Signature) -> Result<()> {
    if s.genus != 0 {
        return Err(Error::Unsupported("only orbit genus 0 is supported".into()));
    }
    if s.periods.is_empty() {
        return Err(Error::Signature("at least one period is required".into()));
    }
    Ok(())
}

fn extend_slots(g: &Group, s: &Signature, by_order: &[Vec<Elem>], prefix: &mut Tuple, acc: Elem, out: &mut Vec<Tuple>) {
    let r = s.periods.len();
    let k = prefix.len();
    if k == r - 1 {
        let last = g.inv(acc);
        if g.element_order(last) == s.periods[r - 1] {
            prefix.push(last);
            if g.generates(prefix) {
                out.push(prefix.clone());
            }
            prefix.pop();
        }
        return;
    }
    for &x in &by_order[k] {
        prefix.push(x);
        extend_slots(g, s, by_order, prefix, g.mul(acc, x), out);
        prefix.pop();
    }
}

fn slot_candidates(g: &Group, s: &Signature) -> Vec<Vec<Elem>> {
    s.periods.iter().map(|&m| g.elements_of_order(m)).collect()
}

fn enumerate_from(g: &Group, s: &Signature, firsts: &[Elem]) -> Vec<Tuple> {
    let by_order = slot_candidates(g, s);
    let chunks: Vec<Vec<Tuple>> = firsts
        .par_iter()
        .map(|&x| {
            let mut out = Vec::new();
            let mut prefix = vec![x];
            if s.periods.len() == 1 {
                if x == 0 && g.order() == 1 {
                    out.push(prefix);
                }
                return out;
            }
            extend_slots(g, s, &by_order, &mut prefix, x, &mut out);
            out
        })
        .collect();
    chunks.into_iter().flatten().collect()
}

/// All skes of `s` onto `g` in lexicographic order.
pub fn enumerate_skes(g: &Group, s: &Signature) -> Result<Vec<Tuple>> {
    require_genus_zero(s)?;
    let firsts = g.elements_of_order(s.periods[0]);
    Ok(enumerate_from(g, s, &firsts))
}

/// Skes whose first image is the smallest member of its conjugacy class.
/// Every ske is conjugate to one of these.
pub fn enumerate_skes_up_to_conjugacy(g: &Group, s: &Signature) -> Result<Vec<Tuple>> {
    require_genus_zero(s)?;
    let firsts: Vec<Elem> = g
        .conjugacy_classes()
        .iter()
        .map(|c| c[0])
        .filter(|&x| g.element_order(x) == s.periods[0])
        .collect();
    Ok(enumerate_from(g, s, &firsts))
}

pub fn apply_aut(a: &Morphism, t: &[Elem]) -> Tuple {
    t.iter().map(|&x| a.apply(x)).collect()
}

/// Smallest image of `t` under the automorphisms `auts`.
pub fn aut_canonical(auts: &[Morphism], t: &[Elem]) -> Tuple {
    let mut best = t.to_vec();
    let mut cur = vec![0; t.len()];
    for a in auts {
        for (c, &x) in cur.iter_mut().zip(t) {
            *c = a.apply(x);
        }
        if cur < best {
            best.copy_from_slice(&cur);
        }
    }
    best
}

/// Orbits of `skes` under postcomposition with `auts`.
pub fn aut_classes(skes: &[Tuple], auts: &[Morphism]) -> Vec<ActionClass> {
    let keys: Vec<Tuple> = skes.par_iter().map(|t| aut_canonical(auts, t)).collect();
    let mut sizes: BTreeMap<Tuple, usize> = BTreeMap::new();
    for k in keys {
        *sizes.entry(k).or_insert(0) += 1;
    }
    sizes
        .into_iter()
        .map(|(rep, n)| ActionClass {
            members: vec![rep.clone()],
            representative: rep,
            orbit_size: n,
            equivalence: Equivalence::AutOnly,
            labels: vec![],
        })
        .collect()
}

/// `σ_i`: `(…, g_i, g_(i+1), …) -> (…, g_i g_(i+1) g_i^-1, g_i, …)`.
pub fn braid(g: &Group, t: &[Elem], i: usize) -> Tuple {
    let mut out = t.to_vec();
    out[i] = g.conj(t[i], t[i + 1]);
    out[i + 1] = t[i];
    out
}

/// `σ_i^-1`: `(…, g_i, g_(i+1), …) -> (…, g_(i+1), g_(i+1)^-1 g_i g_(i+1), …)`.
pub fn braid_inverse(g: &Group, t: &[Elem], i: usize) -> Tuple {
    let mut out = t.to_vec();
    out[i] = t[i + 1];
    out[i + 1] = g.conj(g.inv(t[i + 1]), t[i]);
    out
}

fn period_pattern(g: &Group, t: &[Elem]) -> Vec<u32> {
    t.iter().map(|&x| g.element_order(x)).collect()
}

/// Every Aut-canonical tuple reachable from `seed` by braid moves, any period pattern.
pub fn hurwitz_closure(g: &Group, auts: &[Morphism], seed: &[Elem]) -> BTreeSet<Tuple> {
    let start = aut_canonical(auts, seed);
    let mut seen: HashSet<Tuple> = HashSet::from([start.clone()]);
    let mut frontier = vec![start];
    let r = seed.len();
    while !frontier.is_empty() {
        let next: Vec<Tuple> = frontier
            .par_iter()
            .flat_map_iter(|t| {
                (0..r.saturating_sub(1))
                    .flat_map(|i| [braid(g, t, i), braid_inverse(g, t, i)])
                    .map(|u| aut_canonical(auts, &u))
                    .collect::<Vec<_>>()
            })
            .collect();
        let mut fresh = Vec::new();
        for u in next {
            if seen.insert(u.clone()) {
                fresh.push(u);
            }
        }
        fresh.sort();
        frontier = fresh;
    }
    seen.into_iter().collect()
}

/// Topological classes: orbits under `Aut(G)` and braid moves, reported on the
/// canonical period pattern of `s`. Permuted patterns are transit states.
pub fn hurwitz_orbits(g: &Group, s: &Signature, skes: &[Tuple], auts: &[Morphism]) -> Result<Vec<ActionClass>> {
    require_genus_zero(s)?;
    let base = aut_classes(skes, auts);
    let size_of: HashMap<&Tuple, usize> = base.iter().map(|c| (&c.representative, c.orbit_size)).collect();
    let mut assigned: HashSet<Tuple> = HashSet::new();
    let mut out = Vec::new();
    for class in &base {
        if assigned.contains(&class.representative) {
            continue;
        }
        let closure = hurwitz_closure(g, auts, &class.representative);
        let members: Vec<Tuple> = closure
            .into_iter()
            .filter(|t| period_pattern(g, t) == s.periods)
            .collect();
        // tuples outside the input contribute nothing to the orbit size
        let mut orbit_size = 0;
        for m in &members {
            orbit_size += size_of.get(m).copied().unwrap_or(0);
            assigned.insert(m.clone());
        }
        out.push(ActionClass {
            representative: members[0].clone(),
            orbit_size,
            equivalence: Equivalence::Topological,
            labels: vec![],
            members,
        });
    }
    out.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(out)
}

/// Slot permutations of equal-period slots, realised on tuples so that the
/// product relation survives: rotations when all periods agree, braid swaps otherwise.
fn slot_moves(g: &Group, s: &Signature, t: &[Elem]) -> Vec<Tuple> {
    let r = t.len();
    let mut out = Vec::new();
    if s.periods.iter().all(|&m| m == s.periods[0]) {
        let mut rot = t[1..].to_vec();
        rot.push(t[0]);
        out.push(rot);
    }
    for i in 0..r.saturating_sub(1) {
        if s.periods[i] == s.periods[i + 1] {
            out.push(braid(g, t, i));
        }
    }
    out
}

/// Merges topological classes under the normaliser action, realised as the
/// slot-permutation action on equal-period slots composed with `Aut(G)`.
/// Maximal signatures pass through unchanged.
pub fn isomorphism_classes(
    g: &Group,
    s: &Signature,
    topological: &[ActionClass],
    auts: &[Morphism],
) -> Result<Vec<ActionClass>> {
    require_genus_zero(s)?;
    let relabel = |mut c: ActionClass| {
        c.equivalence = Equivalence::Isomorphism;
        c
    };
    if extension_candidates(s).is_empty() {
        return Ok(topological.iter().cloned().map(relabel).collect());
    }
    if !s.is_triangle() {
        return Err(Error::Unsupported(format!("no normaliser data for {s}")));
    }
    let mut owner: HashMap<&Tuple, usize> = HashMap::new();
    for (i, c) in topological.iter().enumerate() {
        for m in &c.members {
            owner.insert(m, i);
        }
    }
    let mut uf = crate::util::UnionFind::new(topological.len());
    for (i, c) in topological.iter().enumerate() {
        for m in &c.members {
            for moved in slot_moves(g, s, m) {
                let key = aut_canonical(auts, &moved);
                let j = *owner
                    .get(&key)
                    .ok_or_else(|| Error::Consistency("slot move left the ske set".into()))?;
                uf.union_keep_min(i, j);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..topological.len() {
        groups.entry(uf.find(i)).or_default().push(i);
    }
    let mut out: Vec<ActionClass> = groups
        .into_values()
        .map(|ids| {
            let mut members: Vec<Tuple> = ids.iter().flat_map(|&i| topological[i].members.clone()).collect();
            members.sort();
            let mut labels: Vec<String> = ids.iter().flat_map(|&i| topological[i].labels.clone()).collect();
            labels.dedup();
            ActionClass {
                representative: members[0].clone(),
                orbit_size: ids.iter().map(|&i| topological[i].orbit_size).sum(),
                equivalence: Equivalence::Isomorphism,
                labels,
                members,
            }
        })
        .collect();
    out.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(out)
}

/// Element names of a tuple.
pub fn tuple_names(g: &Group, t: &[Elem]) -> Vec<String> {
    t.iter().map(|&x| g.name(x).to_string()).collect()
}

/// Parses a tuple of element names or words.
pub fn parse_tuple(g: &Group, names: &[&str]) -> Result<Tuple> {
    names
        .iter()
        .map(|n| g.element_by_name(n).ok_or_else(|| Error::Invalid(format!("unknown element {n:?}"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;

    #[test]
    fn braid_moves_are_inverse() {
        let g = zp_times_d4(5).unwrap();
        let t = parse_tuple(&g, &["s", "a^4*s*r", "a*r^3"]).unwrap();
        let s = Signature::triangle(2, 10, 20);
        assert!(is_ske(&g, &s, &t));
        for i in 0..2 {
            assert_eq!(braid_inverse(&g, &braid(&g, &t, i), i), t);
            assert_eq!(braid(&g, &braid_inverse(&g, &t, i), i), t);
        }
    }

    #[test]
    fn single_ske_is_one_class() {
        let g = zp_times_v4(5).unwrap();
        let s = Signature::triangle(10, 10, 10);
        let skes = enumerate_skes(&g, &s).unwrap();
        let one = vec![skes[0].clone()];
        let trivial = vec![Morphism::identity(&g)];
        let classes = aut_classes(&one, &trivial);
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].orbit_size, 1);
        let auts = automorphism_group(&g);
        let topo = hurwitz_orbits(&g, &s, &one, &auts).unwrap();
        assert_eq!(topo.len(), 1);
        assert_eq!(topo[0].orbit_size, 1);
    }
}
