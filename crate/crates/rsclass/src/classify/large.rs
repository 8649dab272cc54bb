//! Non-existence sweep over groups of order `4λp` acting in genus `2(p-1)`.

use crate::actions::{candidate_groups, enumerate_skes, hurwitz_orbits, isomorphism_classes, tuple_names, Tuple};
use crate::error::{Error, Result};
use crate::group::{automorphism_group, Group};
use crate::signatures::{admissible_signatures, Signature};
use crate::util::is_prime;
use serde::Serialize;
use std::ops::RangeInclusive;

/// Largest `λ` allowed by the Hurwitz bound `4λp <= 84(g - 1)`, that is `⌊21(2p - 3)/p⌋`.
pub fn lambda_bound(p: u32) -> usize {
    (21 * (2 * p as usize - 3)) / p as usize
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Realized,
    ArithmeticallyExcluded,
    CatalogueExcluded,
    /// no ske found, but some candidate list was not provably complete
    Conditional,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Realized => "realized",
            Verdict::ArithmeticallyExcluded => "arithmetically-excluded",
            Verdict::CatalogueExcluded => "catalogue-excluded",
            Verdict::Conditional => "conditional",
        }
    }

    pub fn is_excluded(&self) -> bool {
        matches!(self, Verdict::ArithmeticallyExcluded | Verdict::CatalogueExcluded)
    }
}

/// One isomorphism class of surfaces with an action of the given shape.
#[derive(Debug, Clone, Serialize)]
pub struct RealizedClass {
    pub group: String,
    pub signature: String,
    pub ske: Vec<String>,
    #[serde(skip)]
    pub action: (Group, Tuple, Signature),
}

#[derive(Debug, Clone, Serialize)]
pub struct SignatureVerdict {
    pub signature: String,
    pub groups_searched: usize,
    pub complete: bool,
    pub classes: Vec<RealizedClass>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LambdaVerdict {
    pub lambda: usize,
    pub order: usize,
    pub verdict: Verdict,
    pub signatures: Vec<SignatureVerdict>,
}

impl LambdaVerdict {
    pub fn classes(&self) -> impl Iterator<Item = &RealizedClass> {
        self.signatures.iter().flat_map(|s| s.classes.iter())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LargeOrderReport {
    pub prime: u32,
    pub genus: u64,
    /// statement of the cap on `λ` and why it suffices
    pub cap: String,
    pub rows: Vec<LambdaVerdict>,
}

impl LargeOrderReport {
    pub fn row(&self, lambda: usize) -> Option<&LambdaVerdict> {
        self.rows.iter().find(|r| r.lambda == lambda)
    }
}

/// Classes of actions of `g` with signature `s`, one per isomorphism class.
pub fn classes_in_group(g: &Group, s: &Signature) -> Result<Vec<RealizedClass>> {
    let skes = enumerate_skes(g, s)?;
    if skes.is_empty() {
        return Ok(vec![]);
    }
    let auts = automorphism_group(g);
    let topo = hurwitz_orbits(g, s, &skes, &auts)?;
    let iso = isomorphism_classes(g, s, &topo, &auts)?;
    Ok(iso
        .into_iter()
        .map(|c| RealizedClass {
            group: g.tag().to_string(),
            signature: s.to_string(),
            ske: tuple_names(g, &c.representative),
            action: (g.clone(), c.representative, s.clone()),
        })
        .collect())
}

pub fn cap_statement(p: u32) -> String {
    let g = 2 * (p as u64 - 1);
    format!(
        "4*lambda*{p} <= 84(g-1) = {} forces lambda <= 21(2p-3)/p < 42, so lambda <= {}",
        84 * (g - 1),
        lambda_bound(p)
    )
}

/// Verdict for each `λ` in `lambdas`: signature arithmetic, then a ske search
/// over every candidate group of order `4λp`.
pub fn verify_large_orders(p: u32, lambdas: RangeInclusive<usize>) -> Result<LargeOrderReport> {
    if p < 5 || !is_prime(p as u64) {
        return Err(Error::Invalid(format!("{p} is not a prime at least 5")));
    }
    let cap = lambda_bound(p);
    if *lambdas.start() < 2 || *lambdas.end() > cap {
        return Err(Error::Invalid(format!("lambda range must lie in 2..={cap} for p = {p}")));
    }
    let genus = 2 * (p as u64 - 1);
    let mut rows = Vec::new();
    for lambda in lambdas {
        let order = 4 * lambda * p as usize;
        let mut signatures = Vec::new();
        for s in admissible_signatures(order as u64, genus) {
            let mut sv = SignatureVerdict {
                signature: s.to_string(),
                groups_searched: 0,
                complete: true,
                classes: vec![],
                notes: vec![],
            };
            if s.genus != 0 {
                sv.complete = false;
                sv.notes.push("positive orbit genus is outside the ske search".into());
                signatures.push(sv);
                continue;
            }
            let cands = candidate_groups(order, p, &s)?;
            sv.groups_searched = cands.groups.len();
            sv.complete = cands.complete;
            sv.notes = cands.notes;
            for g in &cands.groups {
                sv.classes.extend(classes_in_group(g, &s)?);
            }
            signatures.push(sv);
        }
        let verdict = if signatures.is_empty() {
            Verdict::ArithmeticallyExcluded
        } else if signatures.iter().any(|s| !s.classes.is_empty()) {
            Verdict::Realized
        } else if signatures.iter().all(|s| s.complete) {
            Verdict::CatalogueExcluded
        } else {
            Verdict::Conditional
        };
        rows.push(LambdaVerdict { lambda, order, verdict, signatures });
    }
    Ok(LargeOrderReport { prime: p, genus, cap: cap_statement(p), rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_8p_has_one_class_for_p_5() {
        let r = verify_large_orders(5, 2..=2).unwrap();
        let row = r.row(2).unwrap();
        assert_eq!(row.verdict, Verdict::Realized);
        let classes: Vec<_> = row.classes().collect();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].signature, "(0;2,10,20)");
    }

    #[test]
    fn range_is_checked() {
        assert!(verify_large_orders(5, 1..=3).is_err());
        assert!(verify_large_orders(5, 2..=30).is_err());
        assert!(verify_large_orders(9, 2..=3).is_err());
    }

    #[test]
    fn hurwitz_bound_on_lambda() {
        assert_eq!(lambda_bound(5), 29);
        assert_eq!(lambda_bound(7), 33);
        for p in [5u32, 7, 11, 13, 101, 1009] {
            let l = lambda_bound(p) as u64;
            let g = 2 * (p as u64 - 1);
            assert!(4 * l * p as u64 <= 84 * (g - 1) && 4 * (l + 1) * (p as u64) > 84 * (g - 1));
            assert!(l < 42);
        }
    }
}
