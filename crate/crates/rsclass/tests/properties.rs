//! Property suites over the groups of order 4λp (λ <= 3) at the desk primes.

use proptest::prelude::*;
use rsclass::actions::{braid, braid_inverse, enumerate_skes, is_ske, Tuple};
use rsclass::group::{catalogue, Elem, Group};
use rsclass::jacobian::{
    character_table, cyclic_subgroups, group_algebra_decomposition, quotient_dimension_from_factors, CharacterTable,
};
use rsclass::signatures::{admissible_signatures, Signature};
use rsclass::subcovers::{quotient_genus, quotient_genus_by_fixed_points};
use std::sync::OnceLock;

const PRIMES: [u32; 4] = [5, 7, 11, 13];

/// A group acting in genus 2(p-1) with one of its admissible signatures.
struct Action {
    group: Group,
    table: CharacterTable,
    signature: Signature,
    skes: Vec<Tuple>,
    genus: i64,
}

fn actions() -> &'static [Action] {
    static CELL: OnceLock<Vec<Action>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut out = Vec::new();
        for p in PRIMES {
            let genus = 2 * (p as u64 - 1);
            for lambda in 1..=3 {
                let order = 4 * lambda * p as usize;
                let sigs = admissible_signatures(order as u64, genus);
                for g in catalogue(order, p).unwrap().groups {
                    for s in sigs.iter().filter(|s| s.genus == 0) {
                        let skes = enumerate_skes(&g, s).unwrap();
                        if !skes.is_empty() {
                            let table = character_table(&g).unwrap();
                            out.push(Action { group: g.clone(), table, signature: s.clone(), skes, genus: genus as i64 });
                        }
                    }
                }
            }
        }
        out
    })
}

fn groups() -> &'static [Group] {
    static CELL: OnceLock<Vec<Group>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut out = Vec::new();
        for p in PRIMES {
            for lambda in 1..=3 {
                out.extend(catalogue(4 * lambda * p as usize, p).unwrap().groups);
            }
        }
        out
    })
}

fn class_multiset(g: &Group, t: &[Elem]) -> Vec<usize> {
    let mut v: Vec<usize> = t.iter().map(|&x| g.class_of(x)).collect();
    v.sort_unstable();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn character_tables_are_orthogonal(i in any::<prop::sample::Index>()) {
        let g = i.get(groups());
        let t = character_table(g).unwrap();
        let f = &t.field;
        let n = t.class_count();
        prop_assert_eq!(t.chars.len(), n);
        prop_assert_eq!(t.chars.iter().map(|c| (c.degree * c.degree) as usize).sum::<usize>(), g.order());
        // rows: Σ_k |C_k| χ_i(x_k) conj χ_j(x_k) = |G| δ_ij
        for i in 0..n {
            for j in 0..n {
                let mut acc = f.zero();
                for k in 0..n {
                    let term = f.mul(&t.chars[i].values[k], &f.conj(&t.chars[j].values[k]));
                    acc = f.add(&acc, &f.scale(&term, t.class_sizes[k] as i64));
                }
                let want = if i == j { g.order() as i64 } else { 0 };
                prop_assert_eq!(f.as_integer(&acc), Some(want), "rows {} {} of {}", i, j, g.tag());
            }
        }
        // columns: Σ_χ χ(x_k) conj χ(x_l) = |C(x_k)| δ_kl
        for k in 0..n {
            for l in 0..n {
                let mut acc = f.zero();
                for c in &t.chars {
                    acc = f.add(&acc, &f.mul(&c.values[k], &f.conj(&c.values[l])));
                }
                let want = if k == l { (g.order() / t.class_sizes[k]) as i64 } else { 0 };
                prop_assert_eq!(f.as_integer(&acc), Some(want), "columns {} {} of {}", k, l, g.tag());
            }
        }
    }

    #[test]
    fn hurwitz_moves_preserve_invariants(
        a in any::<prop::sample::Index>(),
        s in any::<prop::sample::Index>(),
        moves in prop::collection::vec((any::<prop::sample::Index>(), any::<bool>()), 1..12),
    ) {
        let act = a.get(actions());
        let g = &act.group;
        let start = s.get(&act.skes).clone();
        let classes = class_multiset(g, &start);
        let before = group_algebra_decomposition(g, &act.table, &act.signature, &start, &[], &[]).unwrap();
        let mut t = start.clone();
        let mut periods = act.signature.periods.clone();
        for (i, forward) in moves {
            let i = i.index(t.len() - 1);
            let next = if forward { braid(g, &t, i) } else { braid_inverse(g, &t, i) };
            let back = if forward { braid_inverse(g, &next, i) } else { braid(g, &next, i) };
            prop_assert_eq!(&back, &t);
            periods.swap(i, i + 1);
            t = next;
            prop_assert!(is_ske(g, &Signature::new(0, periods.clone()).unwrap(), &t));
        }
        prop_assert_eq!(class_multiset(g, &t), classes);
        let sig = Signature::new(0, periods).unwrap();
        let after = group_algebra_decomposition(g, &act.table, &sig, &t, &[], &[]).unwrap();
        prop_assert_eq!(after.nonzero(), before.nonzero());
        prop_assert_eq!(after.quotients, before.quotients);
    }

    #[test]
    fn coset_and_fixed_point_genera_agree(
        a in any::<prop::sample::Index>(),
        s in any::<prop::sample::Index>(),
    ) {
        let act = a.get(actions());
        let g = &act.group;
        let ske = s.get(&act.skes);
        for c in cyclic_subgroups(g) {
            let by_cosets = quotient_genus(g, ske, &c.elements).unwrap().genus;
            let by_fixed = quotient_genus_by_fixed_points(g, ske, &c.elements, act.genus).unwrap();
            prop_assert_eq!(by_cosets, by_fixed, "{} {}", g.tag(), c.name);
        }
        for h in g.two_generated_subgroups().iter().take(40) {
            let by_cosets = quotient_genus(g, ske, h).unwrap().genus;
            let by_fixed = quotient_genus_by_fixed_points(g, ske, h, act.genus).unwrap();
            prop_assert_eq!(by_cosets, by_fixed);
        }
    }

    #[test]
    fn jacobian_dimension_is_the_genus(
        a in any::<prop::sample::Index>(),
        s in any::<prop::sample::Index>(),
    ) {
        let act = a.get(actions());
        let ske = s.get(&act.skes);
        let d = group_algebra_decomposition(&act.group, &act.table, &act.signature, ske, &[], &[]).unwrap();
        prop_assert_eq!(d.total_dimension() as i64, act.genus);
        // dim J(X/H) from the fixed vectors of each factor equals the coset genus
        for c in cyclic_subgroups(&act.group) {
            let from_factors = quotient_dimension_from_factors(&act.table, &d.factors, &c.elements).unwrap();
            prop_assert_eq!(Some(from_factors), d.quotient(&c.name), "{}", c.name);
        }
    }
}
