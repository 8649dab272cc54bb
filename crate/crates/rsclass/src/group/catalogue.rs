//! Groups of order `4λp` for a prime `p >= 5`.
//!
//! For `λ <= 3` the list is complete: a normal Sylow `p`-subgroup splits off by
//! Schur–Zassenhaus, so every group is `Z_p : H` with `|H| = 4λ`, apart from
//! the two non-normal cases `A5` (order 60) and `Z2^3 : Z7` (order 56).

use super::construct::*;
use super::morphism::{are_isomorphic, automorphism_group, extend_hom};
use super::{Elem, Group, Tag};
use crate::error::{Error, Result};
use crate::util::{is_prime, pow_mod, primitive_root};

/// Groups of order `order` with the completeness status of the list.
#[derive(Debug)]
pub struct Catalogue {
    pub order: usize,
    pub p: u32,
    pub groups: Vec<Group>,
    pub complete: bool,
}

/// Every isomorphism type of order 4, 8 or 12, with generator names avoiding `a`.
pub fn small_groups(order: usize) -> Result<Vec<Group>> {
    let v = |names: &[&str]| -> Result<Group> {
        let mut g = cyclic_named(2, names[0])?;
        for n in &names[1..] {
            let mut all: Vec<&str> = g.generator_names().iter().map(|s| s.as_str()).collect();
            all.push(n);
            g = direct_named(&g, &cyclic_named(2, n)?, &all)?;
        }
        Ok(g)
    };
    Ok(match order {
        4 => vec![cyclic_named(4, "b")?, v(&["x", "y"])?],
        8 => vec![
            cyclic_named(8, "b")?,
            direct_named(&cyclic_named(4, "b")?, &cyclic_named(2, "c")?, &["b", "c"])?,
            v(&["x", "y", "w"])?,
            dihedral(4)?,
            quaternion()?,
        ],
        12 => vec![
            cyclic_named(12, "b")?,
            direct_named(&cyclic_named(2, "x")?, &cyclic_named(6, "b")?, &["x", "b"])?,
            alternating4()?,
            dihedral(6)?,
            dicyclic(3)?,
        ],
        _ => return Err(Error::Unsupported(format!("no small-group table for order {order}"))),
    })
}

/// Groups of order `order` whose Sylow `p`-subgroup is not normal, when that list is known.
pub fn special_groups(order: usize, p: u32) -> Option<Vec<Group>> {
    let built = match (order, p) {
        (56, 7) => vec![z2cube_sd_z7()],
        (60, 5) => vec![alternating5()],
        (80, 5) => vec![z2fourth_sd_z5()],
        (120, 5) => vec![
            symmetric5(),
            sl2_5(),
            alternating5().and_then(|a5| direct(&cyclic_named(2, "e").unwrap(), &a5)),
        ],
        (168, 7) => vec![
            psl2_7(),
            agaml1_8(),
            z2cube_sd_z7().and_then(|g| direct(&cyclic_named(3, "e").unwrap(), &g)),
        ],
        (280, 5) => vec![],
        _ => return None,
    };
    Some(built.into_iter().map(|g| g.expect("special group constructor")).collect())
}

fn check_shape(order: usize, p: u32) -> Result<u32> {
    if p < 5 || !is_prime(p as u64) || order % (4 * p as usize) != 0 {
        return Err(Error::CatalogueShape { order, p });
    }
    let lambda = (order / (4 * p as usize)) as u32;
    if !(1..=21).contains(&lambda) {
        return Err(Error::CatalogueShape { order, p });
    }
    Ok(lambda)
}

/// All homomorphisms `h -> Aut(Z_p)` as unit images of `h`'s generators,
/// one per `Aut(h)`-orbit of kernels.
pub fn couplings(h: &Group, p: u32) -> Vec<Vec<u64>> {
    let root = primitive_root(p as u64);
    let units = cyclic((p - 1).max(1)).expect("cyclic");
    let gens = h.generators().to_vec();
    let auts = automorphism_group(h);
    let mut out = Vec::new();
    let mut seen_kernels: Vec<Vec<Elem>> = Vec::new();
    let mut logs = vec![0 as Elem; gens.len()];
    loop {
        if let Some(phi) = extend_hom(h, &units, &gens, &logs) {
            let kernel: Vec<Elem> = (0..h.order() as Elem).filter(|&x| phi.apply(x) == 0).collect();
            let canonical = auts
                .iter()
                .map(|a| {
                    let mut k: Vec<Elem> = kernel.iter().map(|&x| a.apply(x)).collect();
                    k.sort_unstable();
                    k
                })
                .min()
                .unwrap_or(kernel.clone());
            if kernel == canonical && !seen_kernels.contains(&kernel) {
                seen_kernels.push(kernel);
                out.push(logs.iter().map(|&e| pow_mod(root, e as u64, p as u64)).collect());
            }
        }
        // odometer over discrete logarithms
        let mut i = 0;
        while i < logs.len() {
            logs[i] += 1;
            if logs[i] < p - 1 {
                break;
            }
            logs[i] = 0;
            i += 1;
        }
        if i == logs.len() {
            break;
        }
    }
    out
}

/// Powers of a coupling coprime to its image order; they share its kernel.
fn same_kernel_variants(p: u32, base: &[u64]) -> Vec<Vec<u64>> {
    let image = base
        .iter()
        .map(|&u| crate::util::mult_order(u, p as u64).unwrap_or(1))
        .fold(1u64, crate::util::lcm);
    (1..=image)
        .filter(|&k| crate::util::gcd(k, image) == 1)
        .map(|k| base.iter().map(|&u| pow_mod(u, k, p as u64)).collect())
        .collect()
}

fn dedup_isomorphic(groups: Vec<Group>) -> Vec<Group> {
    let mut kept: Vec<Group> = Vec::new();
    for g in groups {
        if !kept.iter().any(|k| are_isomorphic(k, &g).is_some()) {
            kept.push(g);
        }
    }
    kept
}

/// Split extensions `Z_p : H` over every `H` in `hs`, deduplicated by isomorphism.
pub fn split_extensions(p: u32, hs: &[Group]) -> Result<Vec<Group>> {
    let mut all = Vec::new();
    for h in hs {
        for base in couplings(h, p) {
            for units in same_kernel_variants(p, &base) {
                let mut names = vec!["a".to_string()];
                names.extend(h.generator_names().iter().cloned());
                let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
                let g = cyclic_semidirect_named(p, h, &units, &refs)?;
                all.push(g);
            }
        }
    }
    Ok(dedup_isomorphic(all))
}

/// All groups of order `4λp`; complete for `λ <= 3`.
pub fn catalogue(order: usize, p: u32) -> Result<Catalogue> {
    let lambda = check_shape(order, p)?;
    if lambda > 3 {
        return Err(Error::Unsupported(format!(
            "the small-group table covers complements of order 4, 8 and 12 only (order {order} needs {})",
            4 * lambda
        )));
    }
    let hs = small_groups(4 * lambda as usize)?;
    let mut groups = split_extensions(p, &hs)?;
    if let Some(extra) = special_groups(order, p) {
        groups.extend(extra);
    }
    for g in &mut groups {
        if let Some(name) = friendly_tag(g, p) {
            let owned = std::mem::replace(g, cyclic(1)?);
            *g = owned.with_tag(name);
        }
    }
    disambiguate_tags(&mut groups, p)?;
    Ok(Catalogue { order, p, groups, complete: true })
}

/// Non-isomorphic split extensions over the same complement and image order
/// differ in the kernel of the action; that kernel is appended to their tags.
fn disambiguate_tags(groups: &mut [Group], p: u32) -> Result<()> {
    let names: Vec<String> = groups.iter().map(|g| g.tag().to_string()).collect();
    for i in 0..groups.len() {
        if names.iter().filter(|n| **n == names[i]).count() < 2 {
            continue;
        }
        let kernel = action_kernel(&groups[i], p)?;
        let owned = std::mem::replace(&mut groups[i], cyclic(1)?);
        groups[i] = owned.with_tag(Tag::Named { name: format!("{} (kernel {kernel})", names[i]) });
    }
    Ok(())
}

/// The kernel of the conjugation action on the normal `Z_p`, read off its centralizer `Z_p x K`.
fn action_kernel(g: &Group, p: u32) -> Result<String> {
    let a = g
        .element_by_name("a")
        .filter(|&a| g.element_order(a) == p)
        .ok_or_else(|| Error::Invalid(format!("{} has no normal generator a of order {p}", g.tag())))?;
    let cent: Vec<Elem> = (0..g.order() as Elem).filter(|&x| g.mul(x, a) == g.mul(a, x)).collect();
    let (c, _) = g.subgroup_group(&cent)?;
    let k = c.order() / p as usize;
    let cyclic = c.element_orders().iter().any(|&o| o as usize == c.order());
    Ok(if cyclic {
        format!("Z{k}")
    } else if c.is_abelian() && c.exponent() == 2 * p as u64 {
        let e = k.trailing_zeros();
        format!("Z2^{e}")
    } else if c.is_abelian() {
        format!("abelian of order {k}")
    } else if k == 6 {
        "D3".to_string()
    } else {
        format!("nonabelian of order {k}")
    })
}

fn friendly_tag(g: &Group, p: u32) -> Option<Tag> {
    if g.order() == 4 * p as usize && !g.is_abelian() {
        let d = dihedral_2p(p).ok()?;
        if are_isomorphic(g, &d).is_some() {
            return Some(Tag::Dihedral { n: 2 * p });
        }
    }
    None
}
