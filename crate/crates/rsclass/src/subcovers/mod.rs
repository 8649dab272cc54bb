//! Quotients of a surface by subgroups of its acting group, computed from the
//! coset model: the points of `X` over branch value `k` are the left cosets
//! `h⟨c_k⟩`, with `g` acting by left multiplication.

mod curves;

pub use curves::{
    canonical_exponents, p_gonal_exponents, published_model, render_exponents, template, CurveModel, PublishedModel, Template,
};

use crate::error::{Error, Result};
use crate::group::{Elem, Group};
use crate::signatures::Signature;
use serde::Serialize;

/// Fixed points of one element, split by branch slot.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedPointReport {
    pub element: Elem,
    pub count: usize,
    /// `(slot, fixed cosets over that slot)`
    pub per_branch: Vec<(usize, usize)>,
}

/// Genus and branch data of `X/H -> X/G`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientData {
    pub genus: i64,
    pub index: usize,
    /// cycle lengths of each `c_k` on the right cosets `Hg`
    pub cycles: Vec<Vec<usize>>,
}

pub fn fixed_point_count(g: &Group, ske: &[Elem], x: Elem) -> Result<FixedPointReport> {
    if x == 0 {
        return Err(Error::Invalid("the identity fixes every point".into()));
    }
    let mut per_branch = Vec::new();
    let mut count = 0;
    for (k, &c) in ske.iter().enumerate() {
        let cyc = g.closure(&[c]);
        let mut member = vec![false; g.order()];
        for &y in &cyc {
            member[y as usize] = true;
        }
        // h⟨c⟩ is fixed by x iff h^-1 x h lies in ⟨c⟩
        let hits = (0..g.order() as Elem)
            .filter(|&h| member[g.conj(g.inv(h), x) as usize])
            .count();
        let fixed = hits / cyc.len();
        per_branch.push((k, fixed));
        count += fixed;
    }
    Ok(FixedPointReport { element: x, count, per_branch })
}

fn subgroup_check(g: &Group, h: &[Elem]) -> Result<Vec<Elem>> {
    let mut set = h.to_vec();
    set.sort_unstable();
    set.dedup();
    if !g.is_subgroup(&set) {
        return Err(Error::Invalid("element set is not a subgroup".into()));
    }
    Ok(set)
}

/// Right-coset labelling: `label[g]` is the index of `Hg`.
fn right_cosets(g: &Group, h: &[Elem]) -> (Vec<usize>, usize) {
    let mut label = vec![usize::MAX; g.order()];
    let mut n = 0;
    for x in 0..g.order() as Elem {
        if label[x as usize] != usize::MAX {
            continue;
        }
        for &y in h {
            label[g.mul(y, x) as usize] = n;
        }
        n += 1;
    }
    (label, n)
}

/// Genus of `X/H` from the cycles of each `c_k` on `H\G`.
pub fn quotient_genus(g: &Group, ske: &[Elem], h: &[Elem]) -> Result<QuotientData> {
    let h = subgroup_check(g, h)?;
    let (label, n) = right_cosets(g, &h);
    let mut rep = vec![0 as Elem; n];
    for x in (0..g.order() as Elem).rev() {
        rep[label[x as usize]] = x;
    }
    let mut twice_minus_two = -2 * n as i64;
    let mut cycles = Vec::new();
    for &c in ske {
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                len += 1;
                cur = label[g.mul(rep[cur], c) as usize];
            }
            lens.push(len);
        }
        twice_minus_two += (n - lens.len()) as i64;
        lens.sort_unstable();
        cycles.push(lens);
    }
    if twice_minus_two % 2 != 0 {
        return Err(Error::Consistency("odd Euler characteristic in coset count".into()));
    }
    Ok(QuotientData { genus: twice_minus_two / 2 + 1, index: n, cycles })
}

/// Genus of `X/H` from `2g - 2 = |H|(2g' - 2) + Σ_{h != 1} |Fix(h)|`.
pub fn quotient_genus_by_fixed_points(g: &Group, ske: &[Elem], h: &[Elem], genus: i64) -> Result<i64> {
    let h = subgroup_check(g, h)?;
    let mut fixed = 0i64;
    for &x in h.iter().filter(|&&x| x != 0) {
        fixed += fixed_point_count(g, ske, x)?.count as i64;
    }
    let num = 2 * genus - 2 - fixed;
    let order = h.len() as i64;
    if num % order != 0 || (num / order) % 2 != 0 {
        return Err(Error::Consistency("fixed-point count is not compatible with Riemann–Hurwitz".into()));
    }
    Ok(num / order / 2 + 1)
}

/// Orbits of `k` on the left cosets `g⟨c⟩`, each with its stabiliser order.
fn left_coset_orbits(g: &Group, c: Elem, k: &[Elem]) -> Vec<(Elem, usize)> {
    let cyc = g.closure(&[c]);
    let mut coset_id = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() as Elem {
        if coset_id[x as usize] == usize::MAX {
            for &y in &cyc {
                coset_id[g.mul(x, y) as usize] = reps.len();
            }
            reps.push(x);
        }
    }
    let mut seen = vec![false; reps.len()];
    let mut out = Vec::new();
    for (i, &r) in reps.iter().enumerate() {
        if seen[i] {
            continue;
        }
        let mut size = 0;
        for &y in k {
            let j = coset_id[g.mul(y, r) as usize];
            if !seen[j] {
                seen[j] = true;
                size += 1;
            }
        }
        out.push((r, k.len() / size));
    }
    out
}

/// Signature of the restricted action of the subgroup `k` on `X`.
pub fn restricted_signature(g: &Group, ske: &[Elem], k: &[Elem]) -> Result<Signature> {
    let k = subgroup_check(g, k)?;
    let genus = quotient_genus(g, ske, &k)?.genus;
    let mut periods: Vec<u32> = ske
        .iter()
        .flat_map(|&c| left_coset_orbits(g, c, &k))
        .map(|(_, stab)| stab as u32)
        .filter(|&m| m > 1)
        .collect();
    periods.sort_unstable();
    Signature::new(genus as u32, periods)
}

/// Signature of `N/H` acting on `X/H`, for `H` normal in `N`.
pub fn residual_signature(g: &Group, ske: &[Elem], n: &[Elem], h: &[Elem]) -> Result<Signature> {
    let n = subgroup_check(g, n)?;
    let h = subgroup_check(g, h)?;
    let mut in_h = vec![false; g.order()];
    for &x in &h {
        in_h[x as usize] = true;
    }
    let normal = h.iter().all(|&x| n.iter().all(|&y| in_h[g.conj(y, x) as usize]));
    if !normal || !h.iter().all(|x| n.binary_search(x).is_ok()) {
        return Err(Error::Invalid("subgroup is not normal in the given overgroup".into()));
    }
    let genus = quotient_genus(g, ske, &n)?.genus;
    let mut periods = Vec::new();
    for &c in ske {
        for (r, stab_order) in left_coset_orbits(g, c, &n) {
            // stabiliser of r⟨c⟩ in N is N ∩ r⟨c⟩r^-1
            let stab: Vec<Elem> = g
                .closure(&[c])
                .into_iter()
                .map(|y| g.conj(r, y))
                .filter(|y| n.binary_search(y).is_ok())
                .collect();
            debug_assert_eq!(stab.len(), stab_order);
            let meet = stab.iter().filter(|&&y| in_h[y as usize]).count();
            let m = (stab.len() / meet) as u32;
            if m > 1 {
                periods.push(m);
            }
        }
    }
    periods.sort_unstable();
    Signature::new(genus as u32, periods)
}

/// Normaliser of `h` in `g`.
pub fn normaliser(g: &Group, h: &[Elem]) -> Vec<Elem> {
    let mut member = vec![false; g.order()];
    for &x in h {
        member[x as usize] = true;
    }
    (0..g.order() as Elem)
        .filter(|&y| h.iter().all(|&x| member[g.conj(y, x) as usize]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::parse_tuple;
    use crate::group::*;

    #[test]
    fn f1_fixed_points_and_quotients() {
        for p in [5u32, 7] {
            let g = zp_times_v4(p).unwrap();
            let tinv = format!("x*y*t^{}", p - 1);
            let ske = parse_tuple(&g, &["x", "y", "t", &tinv]).unwrap();
            let x = g.element_by_name("x").unwrap();
            let y = g.element_by_name("y").unwrap();
            let xy = g.mul(x, y);
            assert_eq!(fixed_point_count(&g, &ske, x).unwrap().count, 2 * p as usize);
            assert_eq!(fixed_point_count(&g, &ske, y).unwrap().count, 2 * p as usize);
            assert_eq!(fixed_point_count(&g, &ske, xy).unwrap().count, 2);
            let half = (p as i64 - 1) / 2;
            assert_eq!(quotient_genus(&g, &ske, &g.closure(&[x])).unwrap().genus, half);
            assert_eq!(quotient_genus(&g, &ske, &g.closure(&[xy])).unwrap().genus, p as i64 - 1);
            assert_eq!(quotient_genus(&g, &ske, &[0]).unwrap().genus, 2 * (p as i64 - 1));
            let all: Vec<Elem> = (0..g.order() as Elem).collect();
            assert_eq!(quotient_genus(&g, &ske, &all).unwrap().genus, 0);
            assert!(fixed_point_count(&g, &ske, 0).is_err());
        }
    }

    #[test]
    fn not_a_subgroup() {
        let g = zp_times_v4(5).unwrap();
        let ske = parse_tuple(&g, &["x", "y", "t", "x*y*t^4"]).unwrap();
        let t = g.element_by_name("t").unwrap();
        assert!(quotient_genus(&g, &ske, &[0, t]).is_err());
        assert!(restricted_signature(&g, &ske, &[0, t]).is_err());
    }
}
