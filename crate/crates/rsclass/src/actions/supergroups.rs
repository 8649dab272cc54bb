//! Candidate groups of order `4λp` that could act with a given signature.
//!
//! For `λ <= 3` this is the full catalogue. Beyond it the list is derived from
//! the signature. When the Sylow `p`-subgroup `P` is normal, `G = P : H` and the
//! ske pushes down to `H = G/P` with every period divisible by `p` divided by `p`,
//! which pins `H` in the cases handled here. When `P` is not normal, an element
//! of order `m` with `p | m` centralises a Sylow subgroup, so the number of Sylow
//! subgroups divides `|G| / lcm` of those periods.

use crate::error::Result;
use crate::group::{
    alternating4, alternating5, catalogue, cyclic_named, dihedral, small_groups, special_groups,
    split_extensions, symmetric4, Group,
};
use crate::signatures::Signature;
use crate::util::{divisors, lcm};

/// Candidate groups plus whether the list is provably exhaustive.
#[derive(Debug)]
pub struct Candidates {
    pub groups: Vec<Group>,
    pub complete: bool,
    pub notes: Vec<String>,
}

/// Finite triangle group for a spherical period triple, if any.
fn spherical_triangle(sorted: &[u32]) -> Option<Result<Group>> {
    match sorted {
        [2, 2, n] => Some(dihedral(*n)),
        [2, 3, 3] => Some(alternating4()),
        [2, 3, 4] => Some(symmetric4()),
        [2, 3, 5] => Some(alternating5()),
        _ => None,
    }
}

fn normal_sylow_branch(order: usize, p: u32, s: &Signature, notes: &mut Vec<String>) -> Result<(Vec<Group>, bool)> {
    let h_order = order / p as usize;
    let mut reduced: Vec<u32> = s
        .periods
        .iter()
        .map(|&m| if m % p == 0 { m / p } else { m })
        .filter(|&m| m > 1)
        .collect();
    reduced.sort_unstable();
    let hs: Vec<Group> = match reduced.len() {
        0 | 1 => {
            notes.push(format!("normal Sylow: quotient ske has {} nontrivial periods, none possible", reduced.len()));
            return Ok((vec![], true));
        }
        2 => {
            if reduced[0] == reduced[1] && reduced[0] as usize == h_order {
                vec![cyclic_named(reduced[0], "b")?]
            } else {
                notes.push(format!("normal Sylow: quotient periods {reduced:?} cannot generate a group of order {h_order}"));
                return Ok((vec![], true));
            }
        }
        _ => {
            if let (3, Some(f)) = (reduced.len(), spherical_triangle(&reduced)) {
                // the only quotient of a finite triangle group keeping the periods exact is itself
                let f = f?;
                if f.order() == h_order {
                    vec![f]
                } else {
                    notes.push(format!(
                        "normal Sylow: quotient periods {reduced:?} force a group of order {}, not {h_order}",
                        f.order()
                    ));
                    return Ok((vec![], true));
                }
            } else if matches!(h_order, 4 | 8 | 12) {
                small_groups(h_order)?
            } else {
                notes.push(format!(
                    "normal Sylow: quotient periods {reduced:?} of order {h_order} lie outside the small-group table"
                ));
                return Ok((vec![], false));
            }
        }
    };
    Ok((split_extensions(p, &hs)?, true))
}

fn non_normal_branch(order: usize, p: u32, s: &Signature, notes: &mut Vec<String>) -> (Vec<Group>, bool) {
    let l = s
        .periods
        .iter()
        .filter(|&&m| m % p == 0)
        .fold(p as u64, |acc, &m| lcm(acc, m as u64));
    let bound = order as u64 / l;
    let counts: Vec<u64> = divisors(bound)
        .into_iter()
        .filter(|&d| d > 1 && d % p as u64 == 1)
        .collect();
    if counts.is_empty() {
        notes.push(format!("Sylow {p}-subgroup is normal: its count divides {bound}"));
        return (vec![], true);
    }
    match special_groups(order, p) {
        Some(gs) => {
            notes.push(format!(
                "non-normal Sylow {p}-subgroup (count in {counts:?}): hardcoded list of {} groups",
                gs.len()
            ));
            (gs, true)
        }
        None => {
            notes.push(format!("non-normal Sylow {p}-subgroup possible (count in {counts:?}): not catalogued"));
            (vec![], false)
        }
    }
}

/// Orders of the nonabelian simple groups below 2448 (`PSL(2,17)`), in increasing order.
const SIMPLE_ORDERS: [usize; 6] = [60, 168, 360, 504, 660, 1092];
const SIMPLE_ORDERS_BELOW: usize = 2448;

/// A genus-0 Fuchsian group with pairwise coprime periods is perfect, so every
/// quotient is perfect and has a nonabelian simple composition factor.
/// True when that rules out every group of order `order`.
fn no_perfect_quotient(order: usize, s: &Signature) -> bool {
    let ms: Vec<u64> = s.periods.iter().map(|&m| m as u64).collect();
    let coprime = ms.iter().enumerate().all(|(i, &a)| ms[i + 1..].iter().all(|&b| crate::util::gcd(a, b) == 1));
    s.genus == 0 && coprime && order < SIMPLE_ORDERS_BELOW && SIMPLE_ORDERS.iter().all(|&n| order % n != 0)
}

/// Groups of order `order = 4λp` that might admit a ske of signature `s`.
pub fn candidate_groups(order: usize, p: u32, s: &Signature) -> Result<Candidates> {
    let lambda = order / (4 * p as usize);
    if lambda <= 3 {
        let cat = catalogue(order, p)?;
        return Ok(Candidates {
            groups: cat.groups,
            complete: cat.complete,
            notes: vec![format!("full catalogue of order {order}")],
        });
    }
    let mut notes = Vec::new();
    let mut complete = true;
    if no_perfect_quotient(order, s) {
        notes.push(format!("{s} is perfect and no nonabelian simple group order divides {order}"));
        return Ok(Candidates { groups: vec![], complete: true, notes });
    }
    if (order / p as usize) % p as usize == 0 {
        notes.push(format!("{p}^2 divides {order}: Sylow subgroup is not cyclic of order {p}"));
        return Ok(Candidates { groups: vec![], complete: false, notes });
    }
    let (mut groups, c1) = normal_sylow_branch(order, p, s, &mut notes)?;
    complete &= c1;
    let (extra, c2) = non_normal_branch(order, p, s, &mut notes);
    complete &= c2;
    groups.extend(extra);
    Ok(Candidates { groups, complete, notes })
}
