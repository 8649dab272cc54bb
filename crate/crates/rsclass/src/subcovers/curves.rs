//! Cyclic p-gonal plane models `y^p = Π (x - b)^ε` from a normal subgroup of order `p`.
//!
//! The fixed points of `T = ⟨t⟩` are the cosets `h⟨c_k⟩` with `h^-1 t h = c_k^e`.
//! There `t` rotates by `ω_p^ρ` with `ρ = e p / m_k`, and the exponent of the
//! corresponding branch point is `ε = ρ^-1 mod p`, so that `(x, y) -> (x, ω_p y)` is `t`.
//! Branch points get symbolic coordinates when the permutation action of `G/T`
//! on them matches a known Möbius configuration.

use super::{fixed_point_count, quotient_genus};
use crate::error::{Error, Result};
use crate::group::{cube_root_of_unity, Elem, Group};
use crate::util::{inv_mod, is_prime, modp};
use serde::Serialize;
use std::collections::BTreeSet;

type Perm = Vec<usize>;

/// A configuration of branch points with the Möbius symmetries preserving it.
#[derive(Debug, Clone)]
pub struct Template {
    pub name: &'static str,
    pub labels: Vec<String>,
    pub parameter: Option<&'static str>,
    /// Label permutations induced by the generating Möbius maps.
    generators: Vec<Perm>,
    /// `Some(true)` if only for abelian `G`, `Some(false)` only for nonabelian.
    abelian: Option<bool>,
    /// Rendering items in order: a label set and the factor it stands for.
    factors: Vec<(Vec<usize>, String)>,
}

fn owned(labels: &[&str]) -> Vec<String> {
    labels.iter().map(|s| s.to_string()).collect()
}

fn factor_list(items: &[(&[usize], &str)]) -> Vec<(Vec<usize>, String)> {
    items.iter().map(|(set, text)| (set.to_vec(), text.to_string())).collect()
}

const OCT: [&str; 6] = ["0", "∞", "1", "-1", "i", "-i"];

fn octahedral_factors() -> Vec<(Vec<usize>, String)> {
    factor_list(&[
        (&[0], "x"),
        (&[2, 3, 4, 5], "(x^4-1)"),
        (&[2, 3], "(x^2-1)"),
        (&[4, 5], "(x^2+1)"),
        (&[2], "(x-1)"),
        (&[3], "(x+1)"),
        (&[4], "(x-i)"),
        (&[5], "(x+i)"),
    ])
}

/// Every named template, in matching order.
pub fn templates() -> Vec<Template> {
    let neg = vec![0, 1, 3, 2, 5, 4];
    vec![
        Template {
            name: "klein-axes",
            labels: owned(&OCT),
            parameter: None,
            generators: vec![neg.clone(), vec![1, 0, 2, 3, 5, 4]],
            abelian: None,
            factors: octahedral_factors(),
        },
        Template {
            name: "klein-pencil",
            labels: owned(&["0", "∞", "1", "-1", "√t", "-√t"]),
            parameter: Some("t"),
            generators: vec![neg.clone(), vec![1, 0, 4, 5, 2, 3]],
            abelian: Some(true),
            factors: factor_list(&[
                (&[0], "x"),
                (&[2, 3], "(x^2-1)"),
                (&[4, 5], "(x^2-t)"),
                (&[2], "(x-1)"),
                (&[3], "(x+1)"),
                (&[4], "(x-√t)"),
                (&[5], "(x+√t)"),
            ]),
        },
        Template {
            name: "klein-reciprocal",
            labels: owned(&["1", "-1", "t", "-t", "1/t", "-1/t"]),
            parameter: Some("t"),
            generators: vec![vec![1, 0, 3, 2, 5, 4], vec![0, 1, 4, 5, 2, 3]],
            abelian: Some(false),
            factors: factor_list(&[
                (&[0, 1], "(x^2-1)"),
                (&[2, 3], "(x^2-t^2)"),
                (&[4, 5], "(x^2-1/t^2)"),
                (&[0], "(x-1)"),
                (&[2], "(x-t)"),
                (&[4], "(x-1/t)"),
                (&[1], "(x+1)"),
                (&[3], "(x+t)"),
                (&[5], "(x+1/t)"),
            ]),
        },
        Template {
            name: "cyclic-4",
            labels: owned(&OCT),
            parameter: None,
            generators: vec![vec![0, 1, 4, 5, 3, 2]],
            abelian: None,
            factors: octahedral_factors(),
        },
        Template {
            name: "dihedral-8",
            labels: owned(&OCT),
            parameter: None,
            generators: vec![vec![0, 1, 4, 5, 3, 2], vec![1, 0, 4, 5, 2, 3]],
            abelian: None,
            factors: octahedral_factors(),
        },
        Template {
            name: "dihedral-12",
            labels: owned(&["1", "w", "w^2", "-1", "-w", "-w^2"]),
            parameter: None,
            generators: vec![vec![2, 3, 4, 5, 0, 1], vec![0, 5, 4, 3, 2, 1], vec![3, 4, 5, 0, 1, 2]],
            abelian: None,
            factors: factor_list(&[
                (&[0, 1, 2, 3, 4, 5], "(x^6-1)"),
                (&[0, 2, 4], "(x^3-1)"),
                (&[1, 3, 5], "(x^3+1)"),
                (&[0], "(x-1)"),
                (&[1], "(x-w)"),
                (&[2], "(x-w^2)"),
                (&[3], "(x+1)"),
                (&[4], "(x+w)"),
                (&[5], "(x+w^2)"),
            ]),
        },
        Template {
            name: "tetrahedral",
            labels: owned(&OCT),
            parameter: None,
            generators: vec![neg, vec![4, 5, 0, 1, 2, 3]],
            abelian: None,
            factors: octahedral_factors(),
        },
    ]
}

/// Template by name.
pub fn template(name: &str) -> Option<Template> {
    templates().into_iter().find(|t| t.name == name)
}

fn abstract_template(n: usize) -> Template {
    let labels: Vec<String> = (1..=n).map(|i| format!("b{i}")).collect();
    let factors = labels.iter().enumerate().map(|(i, l)| (vec![i], format!("(x-{l})"))).collect();
    Template { name: "abstract", labels, parameter: None, generators: vec![], abelian: None, factors }
}

fn compose(a: &Perm, b: &Perm) -> Perm {
    b.iter().map(|&i| a[i]).collect()
}

fn perm_closure(gens: &[Perm], n: usize) -> BTreeSet<Perm> {
    let id: Perm = (0..n).collect();
    let mut set = BTreeSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = compose(g, &x);
            if set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    set
}

fn all_perms(n: usize) -> Vec<Perm> {
    fn rec(cur: &mut Perm, used: &mut [bool], out: &mut Vec<Perm>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// `β g β^-1` for every `g`.
fn conjugate_set(set: &BTreeSet<Perm>, beta: &Perm) -> BTreeSet<Perm> {
    let mut inv = vec![0; beta.len()];
    for (i, &b) in beta.iter().enumerate() {
        inv[b] = i;
    }
    set.iter().map(|g| compose(&compose(beta, g), &inv)).collect()
}

impl Template {
    fn group(&self) -> BTreeSet<Perm> {
        perm_closure(&self.generators, self.labels.len())
    }

    /// Relabelings preserving the symmetry group of the configuration.
    fn normaliser(&self) -> Vec<Perm> {
        let grp = self.group();
        all_perms(self.labels.len()).into_iter().filter(|b| conjugate_set(&grp, b) == grp).collect()
    }
}

/// A p-gonal plane model, exponents aligned with `points`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveModel {
    pub p: u32,
    pub template: String,
    pub points: Vec<String>,
    pub exponents: Vec<u32>,
    pub parameter: Option<String>,
}

#[derive(Serialize)]
struct Branch<'a> {
    point: &'a str,
    exponent: u32,
}

#[derive(Serialize)]
struct ModelJson<'a> {
    p: u32,
    branches: Vec<Branch<'a>>,
    parameter: &'a Option<String>,
}

impl CurveModel {
    fn template(&self) -> Template {
        template(&self.template).unwrap_or_else(|| abstract_template(self.points.len()))
    }

    /// Branch points with nonzero exponent, ∞ included.
    pub fn branch_count(&self) -> usize {
        self.exponents.iter().filter(|&&e| e % self.p != 0).count()
    }

    /// Genus of the model by Riemann–Hurwitz over the x-line.
    pub fn genus(&self) -> i64 {
        (self.p as i64 - 1) * (self.branch_count() as i64 - 2) / 2
    }

    /// The exponents sum to zero mod p, ∞ included.
    pub fn is_consistent(&self) -> bool {
        self.exponents.iter().map(|&e| e as u64).sum::<u64>() % self.p as u64 == 0
            && self.exponents.iter().all(|&e| e % self.p != 0)
    }

    /// Minimal form over relabelings normalising the symmetry group and Galois scalings.
    pub fn canonical(&self) -> CurveModel {
        let t = self.template();
        let exps = canonical_exponents(&t, self.p, &self.exponents);
        CurveModel { exponents: exps, ..self.clone() }
    }

    /// `y^p = ...`, with ∞ implicit.
    pub fn equation(&self) -> String {
        format!("y^{} = {}", self.p, render_exponents(&self.template(), self.p, &self.exponents))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let branches = self
            .points
            .iter()
            .zip(&self.exponents)
            .map(|(point, &exponent)| Branch { point, exponent })
            .collect();
        serde_json::to_value(ModelJson { p: self.p, branches, parameter: &self.parameter })
            .expect("model serialises")
    }
}

/// Lexicographically least `u·ε∘ν^-1` over the normaliser and units `u`.
pub fn canonical_exponents(t: &Template, p: u32, exps: &[u32]) -> Vec<u32> {
    let relabel = match (t.generators.is_empty(), exps.len()) {
        (false, _) => t.normaliser(),
        (true, n) if n <= 8 => all_perms(n),
        (true, n) => vec![(0..n).collect()],
    };
    let mut best: Option<Vec<u32>> = None;
    for nu in &relabel {
        let mut moved = vec![0u32; exps.len()];
        for (i, &e) in exps.iter().enumerate() {
            moved[nu[i]] = e;
        }
        for u in 1..p {
            let cand: Vec<u32> = moved.iter().map(|&e| ((e as u64 * u as u64) % p as u64) as u32).collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

/// Product of factors; equal exponents on a listed label set merge into one factor.
pub fn render_exponents(t: &Template, p: u32, exps: &[u32]) -> String {
    let mut used = vec![false; exps.len()];
    // ∞ never appears as a factor
    for (i, l) in t.labels.iter().enumerate() {
        if l == "∞" {
            used[i] = true;
        }
    }
    let mut parts = Vec::new();
    for (set, text) in &t.factors {
        if set.iter().any(|&i| used[i]) {
            continue;
        }
        let e = exps[set[0]] % p;
        if e == 0 || set.iter().any(|&i| exps[i] % p != e) {
            continue;
        }
        for &i in set {
            used[i] = true;
        }
        parts.push(if e == 1 { text.to_string() } else { format!("{text}^{e}") });
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

struct FixedPoint {
    slot: usize,
    /// smallest element of the coset
    key: Elem,
    exponent: u32,
}

/// Branch points of `X -> X/⟨t⟩` with their exponents.
fn fixed_points(g: &Group, ske: &[Elem], t: Elem, p: u32) -> Vec<FixedPoint> {
    let mut out = Vec::new();
    for (slot, &c) in ske.iter().enumerate() {
        let m = g.element_order(c);
        if m % p != 0 {
            continue;
        }
        let powers: Vec<Elem> = (0..m).map(|j| g.pow(c, j as i64)).collect();
        let mut seen = BTreeSet::new();
        for h in 0..g.order() as Elem {
            let key = powers.iter().map(|&y| g.mul(h, y)).min().unwrap();
            if !seen.insert(key) {
                continue;
            }
            let u = g.conj(g.inv(h), t);
            if let Some(e) = powers.iter().position(|&y| y == u) {
                let rho = (e as u64 * p as u64 / m as u64) % p as u64;
                let eps = inv_mod(rho as i64, p as i64).expect("rotation is a unit");
                out.push(FixedPoint { slot, key, exponent: eps as u32 });
            }
        }
    }
    out
}

/// Plane model of `X` as a cyclic p-gonal curve with deck group `⟨t⟩`.
pub fn p_gonal_exponents(g: &Group, ske: &[Elem], t: Elem) -> Result<CurveModel> {
    let p = g.element_order(t);
    if !is_prime(p as u64) {
        return Err(Error::Invalid(format!("deck generator has order {p}, not a prime")));
    }
    let tt = g.closure(&[t]);
    if !g.is_normal(&tt) {
        return Err(Error::Invalid("deck group is not normal".into()));
    }
    let base = quotient_genus(g, ske, &tt)?.genus;
    if base != 0 {
        return Err(Error::Invalid(format!("quotient by the deck group has genus {base}")));
    }
    let pts = fixed_points(g, ske, t, p);
    if pts.len() != fixed_point_count(g, ske, t)?.count {
        return Err(Error::Consistency("fixed points of the deck generator miscounted".into()));
    }
    // action of G on the branch points
    let index_of = |slot: usize, h: Elem| -> usize {
        let c = ske[slot];
        let m = g.element_order(c);
        let key = (0..m).map(|j| g.mul(h, g.pow(c, j as i64))).min().unwrap();
        pts.iter().position(|q| q.slot == slot && q.key == key).expect("branch points are permuted")
    };
    let ours: Vec<Perm> = g
        .generators()
        .iter()
        .map(|&x| pts.iter().map(|q| index_of(q.slot, g.mul(x, q.key))).collect())
        .collect();
    let our_group = perm_closure(&ours, pts.len());
    let raw: Vec<u32> = pts.iter().map(|q| q.exponent).collect();

    let mut chosen = None;
    if pts.len() == 6 {
        let perms = all_perms(6);
        for tpl in templates() {
            if tpl.abelian.is_some_and(|a| a != g.is_abelian()) {
                continue;
            }
            let target = tpl.group();
            if target.len() != our_group.len() {
                continue;
            }
            // least exponent vector over admissible labelings
            let best = perms
                .iter()
                .filter(|b| conjugate_set(&our_group, b) == target)
                .map(|b| {
                    let mut v = vec![0u32; 6];
                    for (i, &e) in raw.iter().enumerate() {
                        v[b[i]] = e;
                    }
                    v
                })
                .min();
            if let Some(v) = best {
                chosen = Some((tpl, v));
                break;
            }
        }
    }
    let (tpl, exponents) = chosen.unwrap_or_else(|| (abstract_template(raw.len()), raw));
    let model = CurveModel {
        p,
        template: tpl.name.to_string(),
        points: tpl.labels.clone(),
        exponents,
        parameter: tpl.parameter.map(String::from),
    };
    if !model.is_consistent() {
        return Err(Error::Consistency("branch exponents do not sum to zero".into()));
    }
    Ok(model)
}

/// Published plane models of the named surfaces and families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PublishedModel {
    /// `x^4[(x^2-1)(x^2-t)]^(p-2)`
    PencilFamily,
    /// `(x-1)(x-t)^k(x-1/t)^k(x+1)^(p-1)(x+t)^(p-k)(x+1/t)^(p-k)`
    ReciprocalFamily { k: u32 },
    /// `x^(2j+2)(x^2-1)^(p-2)(x^2+1)^(p-2j)`
    Axes { j: u32 },
    /// `x^4(x^4-1)^s`, `sj = 1`
    Cyclic { j: u32 },
    /// `x^4(x^4-1)^(p-2)`
    Dihedral8,
    /// `(x^3-1)(x^3+1)^(p-1)`
    Dihedral12,
    /// `x^2(x^2-1)^(2r)(x^2+1)^(2r^2)`, `r` a cube root of unity
    Tetrahedral,
}

/// The published model as a [`CurveModel`] on its template.
pub fn published_model(kind: PublishedModel, p: u32) -> Result<CurveModel> {
    let pi = p as i64;
    let close = |mut v: Vec<i64>, inf: usize| -> Vec<i64> {
        v[inf] = -v.iter().sum::<i64>();
        v
    };
    let (name, v) = match kind {
        PublishedModel::PencilFamily => ("klein-pencil", close(vec![4, 0, pi - 2, pi - 2, pi - 2, pi - 2], 1)),
        PublishedModel::ReciprocalFamily { k } => {
            let k = k as i64;
            ("klein-reciprocal", vec![1, pi - 1, k, pi - k, k, pi - k])
        }
        PublishedModel::Axes { j } => {
            let j = j as i64;
            ("klein-axes", close(vec![2 * j + 2, 0, pi - 2, pi - 2, pi - 2 * j, pi - 2 * j], 1))
        }
        PublishedModel::Cyclic { j } => {
            let s = inv_mod(j as i64, pi).ok_or_else(|| Error::Invalid(format!("{j} is not a unit mod {p}")))?;
            ("cyclic-4", close(vec![4, 0, s, s, s, s], 1))
        }
        PublishedModel::Dihedral8 => ("dihedral-8", close(vec![4, 0, pi - 2, pi - 2, pi - 2, pi - 2], 1)),
        PublishedModel::Dihedral12 => ("dihedral-12", vec![1, pi - 1, 1, pi - 1, 1, pi - 1]),
        PublishedModel::Tetrahedral => {
            let r = cube_root_of_unity(p).ok_or_else(|| Error::Invalid(format!("no cube root of unity mod {p}")))?
                as i64;
            ("tetrahedral", close(vec![2, 0, 2 * r, 2 * r, 2 * r * r, 2 * r * r], 1))
        }
    };
    let tpl = template(name).expect("named template exists");
    let model = CurveModel {
        p,
        template: name.into(),
        points: tpl.labels.clone(),
        exponents: v.into_iter().map(|e| modp(e, pi) as u32).collect(),
        parameter: tpl.parameter.map(String::from),
    };
    if !model.is_consistent() {
        return Err(Error::Invalid(format!("model has a vanishing exponent for p = {p}")));
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::parse_tuple;
    use crate::group::*;

    #[test]
    fn template_groups_have_expected_orders() {
        let orders: Vec<usize> = templates().iter().map(|t| t.group().len()).collect();
        assert_eq!(orders, vec![4, 4, 4, 4, 8, 12, 12]);
    }

    #[test]
    fn pencil_family_matches_published_model_exactly() {
        for p in [5u32, 7, 11] {
            let g = zp_times_v4(p).unwrap();
            let ske = parse_tuple(&g, &["x", "y", "t", &format!("x*y*t^{}", p - 1)]).unwrap();
            // the published model uses the deck generator t^((p-1)/2)
            let t = g.pow(g.element_by_name("t").unwrap(), (p as i64 - 1) / 2);
            let m = p_gonal_exponents(&g, &ske, t).unwrap();
            let published = published_model(PublishedModel::PencilFamily, p).unwrap();
            assert_eq!(m, published);
            assert_eq!(m.equation(), format!("y^{p} = x^4*(x^2-1)^{q}*(x^2-t)^{q}", q = p - 2));
            assert_eq!(m.genus(), 2 * (p as i64 - 1));
        }
    }

    #[test]
    fn reciprocal_family_matches_published_model_exactly() {
        let p = 7u32;
        let g = dihedral_2p(p).unwrap();
        for k in 1..p {
            let w = format!("s*r^{}", 2 * p - 2 * k - 1);
            let ske = parse_tuple(&g, &["s", &w, &format!("r^{}", 2 * k), "r"]).unwrap();
            let r2 = g.pow(g.element_by_name("r").unwrap(), 2);
            let m = p_gonal_exponents(&g, &ske, r2).unwrap();
            assert_eq!(m.template, "klein-reciprocal");
            let published = published_model(PublishedModel::ReciprocalFamily { k }, p).unwrap();
            assert_eq!(m.canonical(), published.canonical());
        }
    }

    #[test]
    fn rejects_bad_deck_groups() {
        let g = zp_times_v4(5).unwrap();
        let ske = parse_tuple(&g, &["x", "y", "t", "x*y*t^4"]).unwrap();
        assert!(p_gonal_exponents(&g, &ske, g.element_by_name("x").unwrap()).is_err());
    }

    #[test]
    fn render_merges_equal_exponents() {
        let m = published_model(PublishedModel::Dihedral12, 5).unwrap();
        assert_eq!(m.equation(), "y^5 = (x^3-1)*(x^3+1)^4");
        let m = published_model(PublishedModel::Cyclic { j: 2 }, 5).unwrap();
        assert_eq!(m.equation(), "y^5 = x^4*(x^4-1)^3");
    }

    fn model_of(g: &Group, ske: &[&str], deck: &str) -> CurveModel {
        let ske = parse_tuple(g, ske).unwrap();
        p_gonal_exponents(g, &ske, g.element_by_name(deck).unwrap()).unwrap()
    }

    #[test]
    fn quasiplatonic_models_match_published_models() {
        for p in [5u32, 7] {
            let m = |e: i64| crate::util::modp(e, p as i64);
            let g = zp_times_v4(p).unwrap();
            for j in 1..(p - 1) {
                if (2 * j + 2) % p == 0 || (2 * j) % p == 0 {
                    continue;
                }
                let ours = model_of(&g, &["t*x", &format!("t^{j}*y"), &format!("t^{}*x*y", m(-1 - j as i64))], "t");
                assert_eq!(ours.template, "klein-axes");
                let published = published_model(PublishedModel::Axes { j }, p).unwrap();
                assert_eq!(ours.canonical(), published.canonical(), "axes j={j} p={p}");
                assert_eq!(ours.canonical().equation(), published.canonical().equation());
            }
            let g = z4p_split(p).unwrap();
            for j in 1..(p - 1) {
                let ours = model_of(&g, &["a", &format!("a^{j}*b"), &format!("a^{}*b^3", m(-1 - j as i64))], "a");
                assert_eq!(ours.template, "cyclic-4");
                let published = published_model(PublishedModel::Cyclic { j }, p).unwrap();
                assert_eq!(ours.canonical(), published.canonical(), "cyclic j={j} p={p}");
            }
            let g = zp_times_d4(p).unwrap();
            let ours = model_of(&g, &["s", "a^-1*s*r", "a*r^-1"], "a");
            assert_eq!(ours.template, "dihedral-8");
            assert_eq!(ours.canonical(), published_model(PublishedModel::Dihedral8, p).unwrap().canonical());
            let g = d3_times_dp(p).unwrap();
            let ours = model_of(&g, &["s*S", "r*S*R", "s*r*R^-1"], "R");
            assert_eq!(ours.template, "dihedral-12");
            assert_eq!(ours.canonical(), published_model(PublishedModel::Dihedral12, p).unwrap().canonical());
        }
        let g = zp_sd3_a4(7).unwrap();
        let ours = model_of(&g, &["a^-1*x*z^2", "z", "a*x"], "a");
        assert_eq!(ours.template, "tetrahedral");
        assert_eq!(ours.canonical(), published_model(PublishedModel::Tetrahedral, 7).unwrap().canonical());
    }
}
