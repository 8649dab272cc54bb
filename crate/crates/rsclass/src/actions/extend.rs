//! Extension of actions along inclusions of triangle groups.

use super::{aut_canonical, candidate_groups, enumerate_skes_up_to_conjugacy, hurwitz_closure, Tuple};
use crate::error::Result;
use crate::group::{are_isomorphic, automorphism_group, Elem, Group, Morphism};
use crate::signatures::{extension_candidates, ConjWord, ExtensionPair, Signature};
use std::collections::HashMap;

/// A larger action whose restriction is equivalent to the given one.
#[derive(Debug, Clone)]
pub struct Extension {
    pub group: Group,
    pub signature: Signature,
    pub outer: Tuple,
    pub pair: ExtensionPair,
    /// Restriction along the embedding words, inside `group`.
    pub restricted: Tuple,
    /// False when the supergroup list behind this search is not provably complete.
    pub complete: bool,
}

/// Evaluates a conjugate-power word on generator images.
pub fn eval_word(g: &Group, images: &[Elem], w: &ConjWord) -> Elem {
    w.letters()
        .into_iter()
        .fold(0, |acc, (gen, e)| g.mul(acc, g.pow(images[gen as usize - 1], e as i64)))
}

pub fn restrict(g: &Group, outer: &[Elem], pair: &ExtensionPair) -> Tuple {
    pair.embedding_words.iter().map(|w| eval_word(g, outer, w)).collect()
}

/// Every outer ske (up to conjugacy) over every candidate supergroup whose
/// restriction along a table row is topologically equivalent to `ske`.
/// An empty result means the action is maximal within the table.
pub fn extend_action(g: &Group, s: &Signature, ske: &[Elem], auts: &[Morphism]) -> Result<Vec<Extension>> {
    Ok(extension_search(g, s, ske, auts)?.0)
}

/// [`extend_action`] plus whether every supergroup list searched was complete.
pub fn extension_search(g: &Group, s: &Signature, ske: &[Elem], auts: &[Morphism]) -> Result<(Vec<Extension>, bool)> {
    let rows = extension_candidates(s);
    let mut complete = true;
    if rows.is_empty() {
        return Ok((Vec::new(), complete));
    }
    let class = hurwitz_closure(g, auts, ske);
    let mut out = Vec::new();
    for row in rows {
        let order = g.order() * row.index as usize;
        let cands = candidate_groups(order, row.p, &row.outer)?;
        complete &= cands.complete;
        for big in &cands.groups {
            let mut iso_cache: HashMap<Vec<Elem>, Option<(Vec<Elem>, Morphism)>> = HashMap::new();
            for outer in enumerate_skes_up_to_conjugacy(big, &row.outer)? {
                let restricted = restrict(big, &outer, &row);
                let k = big.closure(&restricted);
                if k.len() != g.order() {
                    continue;
                }
                let entry = iso_cache.entry(k.clone()).or_insert_with(|| {
                    let (sub, embed) = big.subgroup_group(&k).ok()?;
                    let iso = are_isomorphic(&sub, g)?;
                    Some((embed, iso))
                });
                let Some((embed, iso)) = entry else { continue };
                let back: HashMap<Elem, Elem> = embed.iter().enumerate().map(|(i, &x)| (x, i as Elem)).collect();
                let mapped: Tuple = restricted.iter().map(|x| iso.apply(back[x])).collect();
                if class.contains(&aut_canonical(auts, &mapped)) {
                    out.push(Extension {
                        group: big.clone(),
                        signature: row.outer.clone(),
                        outer,
                        pair: row.clone(),
                        restricted,
                        complete: cands.complete,
                    });
                }
            }
        }
    }
    Ok((out, complete))
}

/// Terminal action of the extension chain starting at `(g, s, ske)`.
#[derive(Debug, Clone)]
pub struct FullAut {
    pub group: Group,
    pub signature: Signature,
    pub ske: Tuple,
    /// Table rows used, innermost first.
    pub chain: Vec<String>,
    pub complete: bool,
}

/// Iterates [`extend_action`], taking the largest supergroup each time, until maximal.
pub fn full_automorphism_group(g: &Group, s: &Signature, ske: &[Elem], auts: &[Morphism]) -> Result<FullAut> {
    let mut cur = FullAut { group: g.clone(), signature: s.clone(), ske: ske.to_vec(), chain: vec![], complete: true };
    let mut cur_auts = auts.to_vec();
    loop {
        let (exts, complete) = extension_search(&cur.group, &cur.signature, &cur.ske, &cur_auts)?;
        cur.complete &= complete;
        let Some(best) = exts.into_iter().max_by_key(|e| (e.pair.index, std::cmp::Reverse(e.outer.clone()))) else {
            return Ok(cur);
        };
        cur_auts = automorphism_group(&best.group);
        cur.chain.push(best.pair.name.clone());
        cur.group = best.group;
        cur.signature = best.signature;
        cur.ske = best.outer;
    }
}
