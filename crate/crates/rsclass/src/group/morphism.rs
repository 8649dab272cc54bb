//! Homomorphisms, automorphism groups and isomorphism testing.

use super::{Elem, Group};
use std::collections::VecDeque;

/// A homomorphism stored as its full element map.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Morphism {
    pub map: Vec<Elem>,
}

impl Morphism {
    pub fn identity(g: &Group) -> Morphism {
        Morphism { map: (0..g.order() as Elem).collect() }
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x as usize]
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Morphism) -> Morphism {
        Morphism { map: other.map.iter().map(|&x| self.map[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Morphism {
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y as usize] = x as Elem;
        }
        Morphism { map: inv }
    }

    pub fn is_homomorphism(&self, source: &Group, target: &Group) -> bool {
        self.map.len() == source.order()
            && (0..source.order() as Elem).all(|x| {
                (0..source.order() as Elem)
                    .all(|y| self.apply(source.mul(x, y)) == target.mul(self.apply(x), self.apply(y)))
            })
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.map.len()];
        self.map
            .iter()
            .all(|&y| (y as usize) < seen.len() && !std::mem::replace(&mut seen[y as usize], true))
    }
}

/// Extends `gens[i] -> images[i]` to a homomorphism `source -> target`.
/// Every Cayley-graph edge is checked, so success certifies the homomorphism.
pub fn extend_hom(source: &Group, target: &Group, gens: &[Elem], images: &[Elem]) -> Option<Morphism> {
    let n = source.order();
    let mut map = vec![Elem::MAX; n];
    map[0] = 0;
    let mut queue = VecDeque::from([0 as Elem]);
    let mut reached = 1;
    while let Some(x) = queue.pop_front() {
        let fx = map[x as usize];
        for (i, &g) in gens.iter().enumerate() {
            let y = source.mul(x, g);
            let fy = target.mul(fx, images[i]);
            let slot = &mut map[y as usize];
            if *slot == Elem::MAX {
                *slot = fy;
                reached += 1;
                queue.push_back(y);
            } else if *slot != fy {
                return None;
            }
        }
    }
    (reached == n).then_some(Morphism { map })
}

struct Search<'a> {
    source: &'a Group,
    target: &'a Group,
    gens: Vec<Elem>,
    candidates: Vec<Vec<Elem>>,
    pair_orders: Vec<Vec<u32>>,
}

impl Search<'_> {
    fn new<'a>(source: &'a Group, target: &'a Group) -> Search<'a> {
        let gens = source.small_generating_set();
        let candidates = gens
            .iter()
            .map(|&g| {
                let (o, c) = (source.element_order(g), source.class_size(g));
                (0..target.order() as Elem)
                    .filter(|&y| target.element_order(y) == o && target.class_size(y) == c)
                    .collect()
            })
            .collect();
        let pair_orders = gens
            .iter()
            .map(|&a| gens.iter().map(|&b| source.element_order(source.mul(a, b))).collect())
            .collect();
        Search { source, target, gens, candidates, pair_orders }
    }

    /// Visits every bijective extension; the visitor returns `false` to stop.
    fn run(&self, visit: &mut dyn FnMut(Morphism) -> bool) {
        let mut chosen = Vec::with_capacity(self.gens.len());
        self.descend(&mut chosen, visit);
    }

    fn descend(&self, chosen: &mut Vec<Elem>, visit: &mut dyn FnMut(Morphism) -> bool) -> bool {
        let depth = chosen.len();
        if depth == self.gens.len() {
            if let Some(m) = extend_hom(self.source, self.target, &self.gens, chosen) {
                if m.is_bijective() {
                    return visit(m);
                }
            }
            return true;
        }
        for &y in &self.candidates[depth] {
            let compatible = chosen.iter().enumerate().all(|(i, &x)| {
                self.target.element_order(self.target.mul(x, y)) == self.pair_orders[i][depth]
                    && self.target.element_order(self.target.mul(y, x)) == self.pair_orders[depth][i]
            });
            if !compatible {
                continue;
            }
            chosen.push(y);
            let go_on = self.descend(chosen, visit);
            chosen.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// All automorphisms of `g`, sorted by element map.
pub fn automorphism_group(g: &Group) -> Vec<Morphism> {
    let search = Search::new(g, g);
    let mut out = Vec::new();
    search.run(&mut |m| {
        out.push(m);
        true
    });
    out.sort();
    out
}

fn invariants_match(a: &Group, b: &Group) -> bool {
    a.order() == b.order()
        && a.is_abelian() == b.is_abelian()
        && a.order_histogram() == b.order_histogram()
        && a.conjugacy_classes().len() == b.conjugacy_classes().len()
}

/// An isomorphism `a -> b` if one exists.
pub fn are_isomorphic(a: &Group, b: &Group) -> Option<Morphism> {
    if !invariants_match(a, b) {
        return None;
    }
    let search = Search::new(a, b);
    let mut found = None;
    search.run(&mut |m| {
        found = Some(m);
        false
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;

    fn permutations(n: usize) -> Vec<Vec<Elem>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, (n - 1) as Elem);
                out.push(q);
            }
        }
        out
    }

    fn brute_aut_count(g: &Group) -> usize {
        permutations(g.order())
            .into_iter()
            .filter(|p| p[0] == 0)
            .filter(|p| Morphism { map: p.clone() }.is_homomorphism(g, g))
            .count()
    }

    #[test]
    fn aut_counts_match_exhaustive_search() {
        let groups = [
            cyclic(2).unwrap(),
            cyclic(4).unwrap(),
            direct(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap(),
            cyclic(6).unwrap(),
            dihedral(3).unwrap(),
            cyclic(8).unwrap(),
            dihedral(4).unwrap(),
            quaternion().unwrap(),
            direct(&cyclic(4).unwrap(), &cyclic(2).unwrap()).unwrap(),
        ];
        for g in &groups {
            assert_eq!(automorphism_group(g).len(), brute_aut_count(g), "{:?}", g);
        }
    }

    #[test]
    fn family_group_aut_orders() {
        assert_eq!(automorphism_group(&zp_times_v4(5).unwrap()).len(), 24);
        assert_eq!(automorphism_group(&zp_times_v4(7).unwrap()).len(), 36);
        assert_eq!(automorphism_group(&dihedral_2p(5).unwrap()).len(), 40);
    }

    #[test]
    fn aut_is_closed() {
        let g = dihedral(6).unwrap();
        let auts = automorphism_group(&g);
        assert!(auts.contains(&Morphism::identity(&g)));
        for a in &auts {
            assert!(auts.binary_search(&a.inverse()).is_ok());
            for b in &auts {
                assert!(auts.binary_search(&a.compose(b)).is_ok());
            }
        }
    }

    #[test]
    fn isomorphism_examples() {
        let g = zp_times_d4(5).unwrap();
        let w = are_isomorphic(&g, &g).unwrap();
        assert!(w.is_homomorphism(&g, &g) && w.is_bijective());

        let a = zp_sd_z4(5, 2).unwrap();
        let b = direct(&cyclic(5).unwrap(), &cyclic(4).unwrap()).unwrap();
        assert!(are_isomorphic(&a, &b).is_none());
        assert_ne!(a.order_histogram(), b.order_histogram());

        let d4 = dihedral(4).unwrap();
        let z4 = cyclic_named(4, "r").unwrap();
        let inv: Vec<Elem> = (0..4).map(|k| (4 - k) % 4).collect();
        let sd = semidirect(&z4, &cyclic_named(2, "s").unwrap(), &[inv]).unwrap();
        let w = are_isomorphic(&d4, &sd).unwrap();
        assert!(w.is_homomorphism(&d4, &sd));
    }
}
