//! Multiplicities in the holomorphic differentials and the isotypic decomposition of `JX`.

use super::table::{rational_irreps, CharacterTable, RationalIrrep};
use crate::error::{Error, Result};
use crate::group::{Elem, Group};
use crate::signatures::Signature;
use crate::subcovers::quotient_genus;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

/// Multiplicity of character `chi` in `H^0(X, K_X)` for the action with ske `ske`.
///
/// `μ = d(h - 1) + Σ_k Σ_α N_{k,α} α/m_k` for nontrivial `χ`, with `N_{k,α}` the
/// multiplicity of `exp(2πiα/m_k)` on `θ(γ_k)`; the trivial character gives `h`.
pub fn chevalley_weil(t: &CharacterTable, chi: usize, s: &Signature, ske: &[Elem]) -> Result<u32> {
    let h = s.genus as i64;
    if chi == 0 {
        return Ok(h as u32);
    }
    let d = t.chars[chi].degree as i64;
    let mut mu = Ratio::from_integer(d * (h - 1));
    for &c in &ske[2 * s.genus as usize..] {
        let k = t.class_of[c as usize];
        let m = t.rep_orders[k] as i64;
        for (alpha, &n) in t.chars[chi].eigen[k].iter().enumerate() {
            mu += Ratio::new(n as i64 * alpha as i64, m);
        }
    }
    if !mu.is_integer() || *mu.numer() < 0 {
        return Err(Error::Consistency(format!("Chevalley–Weil multiplicity {mu} for character {chi}")));
    }
    Ok(mu.to_integer() as u32)
}

/// One factor `B^n` of `JX ~ Π B^n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub irrep_id: usize,
    #[serde(flatten)]
    pub irrep: RationalIrrep,
    pub n: u32,
    pub dim: u32,
    /// multiplicity of each character in the orbit
    pub per_character: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientDim {
    pub subgroup: String,
    pub genus: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrymDim {
    pub cover: String,
    pub base: String,
    pub dim: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub ske: Vec<String>,
    pub factors: Vec<Factor>,
    pub quotients: Vec<QuotientDim>,
    pub pryms: Vec<PrymDim>,
}

impl DecompositionReport {
    /// `Σ n_i dim B_i`.
    pub fn total_dimension(&self) -> u64 {
        self.factors.iter().map(|f| f.n as u64 * f.dim as u64).sum()
    }

    /// Nonzero factors as `(degree, n, dim)`.
    pub fn nonzero(&self) -> Vec<(u32, u32, u32)> {
        self.factors.iter().filter(|f| f.dim > 0).map(|f| (f.irrep.degree, f.n, f.dim)).collect()
    }

    pub fn quotient(&self, name: &str) -> Option<i64> {
        self.quotients.iter().find(|q| q.subgroup == name).map(|q| q.genus)
    }
}

/// A subgroup given by generators, displayed as `<x,y>`.
#[derive(Debug, Clone)]
pub struct NamedSubgroup {
    pub name: String,
    pub elements: Vec<Elem>,
}

impl NamedSubgroup {
    pub fn generated(g: &Group, gens: &[Elem]) -> NamedSubgroup {
        let names: Vec<&str> = gens.iter().map(|&x| g.name(x)).collect();
        NamedSubgroup { name: format!("<{}>", names.join(",")), elements: g.closure(gens) }
    }
}

/// Every cyclic subgroup once, generated by its smallest generator.
pub fn cyclic_subgroups(g: &Group) -> Vec<NamedSubgroup> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for x in 1..g.order() as Elem {
        let c = g.closure(&[x]);
        if seen.insert(c.clone()) {
            out.push(NamedSubgroup { name: format!("<{}>", g.name(x)), elements: c });
        }
    }
    out
}

/// `dim J(X/H) = Σ_i dim V_i^H · dim B_i`, `V_i` any member of the orbit.
pub fn quotient_dimension_from_factors(t: &CharacterTable, factors: &[Factor], h: &[Elem]) -> Result<i64> {
    let mut total = 0i64;
    for f in factors {
        if f.dim == 0 {
            continue;
        }
        let fixed = t.fixed_dimension(f.irrep.orbit[0], h)?;
        total += (fixed / f.irrep.schur_index) as i64 * f.dim as i64;
    }
    Ok(total)
}

/// Full decomposition of `JX` with quotient genera of all cyclic subgroups plus `extra`,
/// and Prym dimensions for the requested `(cover, base)` pairs of indices into the quotient list.
pub fn group_algebra_decomposition(
    g: &Group,
    t: &CharacterTable,
    s: &Signature,
    ske: &[Elem],
    extra: &[NamedSubgroup],
    prym_pairs: &[(usize, usize)],
) -> Result<DecompositionReport> {
    let irreps = rational_irreps(t);
    let mu: Vec<u32> =
        (0..t.chars.len()).into_par_iter().map(|c| chevalley_weil(t, c, s, ske)).collect::<Result<_>>()?;
    let factors: Vec<Factor> = irreps
        .into_iter()
        .enumerate()
        .map(|(i, irrep)| {
            let per_character: Vec<u32> = irrep.orbit.iter().map(|&c| mu[c]).collect();
            Factor {
                irrep_id: i,
                n: irrep.degree / irrep.schur_index,
                dim: irrep.schur_index * per_character.iter().sum::<u32>(),
                irrep,
                per_character,
            }
        })
        .collect();
    let mut subgroups = extra.to_vec();
    subgroups.extend(cyclic_subgroups(g));
    let mut quotients = Vec::with_capacity(subgroups.len());
    for h in &subgroups {
        let genus = quotient_genus(g, ske, &h.elements)?.genus;
        let from_factors = quotient_dimension_from_factors(t, &factors, &h.elements)?;
        if genus != from_factors {
            return Err(Error::Consistency(format!(
                "quotient by {}: coset genus {genus}, isotypic dimension {from_factors}",
                h.name
            )));
        }
        quotients.push(QuotientDim { subgroup: h.name.clone(), genus });
    }
    let mut pryms = Vec::new();
    for &(cover, base) in prym_pairs {
        let (c, b) = (&subgroups[cover], &subgroups[base]);
        if !c.elements.iter().all(|x| b.elements.binary_search(x).is_ok()) {
            return Err(Error::Invalid(format!("{} is not contained in {}", c.name, b.name)));
        }
        pryms.push(PrymDim {
            cover: c.name.clone(),
            base: b.name.clone(),
            dim: quotients[cover].genus - quotients[base].genus,
        });
    }
    Ok(DecompositionReport { ske: ske.iter().map(|&x| g.name(x).to_string()).collect(), factors, quotients, pryms })
}
