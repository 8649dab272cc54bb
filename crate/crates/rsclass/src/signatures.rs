//! Riemann–Hurwitz arithmetic and the table of triangle-group inclusions.

use crate::error::{Error, Result};
use crate::util::{divisors, gcd, is_prime};
use num_rational::Ratio;
use serde::Serialize;
use std::fmt;

pub type Q = Ratio<i64>;

/// Orbit genus and ordered periods of a Fuchsian group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Signature {
    pub genus: u32,
    pub periods: Vec<u32>,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.periods.iter().map(|m| m.to_string()).collect();
        write!(f, "({};{})", self.genus, ps.join(","))
    }
}

impl Signature {
    pub fn new(genus: u32, periods: Vec<u32>) -> Result<Signature> {
        if periods.iter().any(|&m| m < 2) {
            return Err(Error::Signature("periods must be at least 2".into()));
        }
        Ok(Signature { genus, periods })
    }

    pub fn triangle(a: u32, b: u32, c: u32) -> Signature {
        Signature { genus: 0, periods: vec![a, b, c] }
    }

    /// Parses `h;m1,m2,...`, with tokens `p`, `2p`, `4p` (any `kp`) substituted by `prime`.
    pub fn parse(text: &str, prime: Option<u32>) -> Result<Signature> {
        let text = text.trim().trim_start_matches('(').trim_end_matches(')');
        let (h, rest) = text
            .split_once(';')
            .ok_or_else(|| Error::Signature(format!("expected `h;m1,...` in {text:?}")))?;
        let genus = h.trim().parse::<u32>().map_err(|_| Error::Signature(format!("bad orbit genus {h:?}")))?;
        let mut periods = Vec::new();
        for tok in rest.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            periods.push(parse_period(tok, prime)?);
        }
        Signature::new(genus, periods)
    }

    /// `2h - 2 + Σ(1 - 1/m)`, the area divided by `2π`.
    pub fn area(&self) -> Q {
        let mut a = Q::from_integer(2 * self.genus as i64 - 2);
        for &m in &self.periods {
            a += Q::new(m as i64 - 1, m as i64);
        }
        a
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.area() > Q::from_integer(0)
    }

    pub fn is_triangle(&self) -> bool {
        self.genus == 0 && self.periods.len() == 3
    }

    pub fn sorted(&self) -> Signature {
        let mut periods = self.periods.clone();
        periods.sort_unstable();
        Signature { genus: self.genus, periods }
    }
}

fn parse_period(tok: &str, prime: Option<u32>) -> Result<u32> {
    if let Some(k) = tok.strip_suffix('p') {
        let p = prime.ok_or_else(|| Error::Signature(format!("token {tok:?} needs a prime")))?;
        let k = if k.is_empty() {
            1
        } else {
            k.parse::<u32>().map_err(|_| Error::Signature(format!("bad period token {tok:?}")))?
        };
        return Ok(k * p);
    }
    tok.parse::<u32>().map_err(|_| Error::Signature(format!("bad period token {tok:?}")))
}

/// Genus `g` with `2(g-1) = order * area(s)`, exactly.
pub fn rh_genus(group_order: u64, s: &Signature) -> Q {
    Q::from_integer(1) + s.area() * Q::from_integer(group_order as i64) / Q::from_integer(2)
}

/// Every signature with periods dividing `group_order` satisfying Riemann–Hurwitz for `genus`.
pub fn admissible_signatures(group_order: u64, genus: u64) -> Vec<Signature> {
    let target = Q::new(2 * genus as i64 - 2, group_order as i64);
    let ms: Vec<u32> = divisors(group_order).into_iter().filter(|&d| d >= 2).map(|d| d as u32).collect();
    let mut out = Vec::new();
    let mut h = 0i64;
    while Q::from_integer(2 * h - 2) <= target {
        let rest = target - Q::from_integer(2 * h - 2);
        let mut cur = Vec::new();
        fill_periods(&ms, 0, rest, &mut cur, &mut |periods| {
            let s = Signature { genus: h as u32, periods: periods.to_vec() };
            if h > 0 || periods.len() >= 3 {
                out.push(s);
            }
        });
        h += 1;
    }
    out.sort_by(|a, b| (a.genus, a.periods.len(), &a.periods).cmp(&(b.genus, b.periods.len(), &b.periods)));
    out
}

fn fill_periods(ms: &[u32], start: usize, rest: Q, cur: &mut Vec<u32>, emit: &mut dyn FnMut(&[u32])) {
    if rest == Q::from_integer(0) {
        emit(cur);
        return;
    }
    for i in start..ms.len() {
        let term = Q::new(ms[i] as i64 - 1, ms[i] as i64);
        // later terms are larger
        if term > rest {
            break;
        }
        cur.push(ms[i]);
        fill_periods(ms, i, rest - term, cur, emit);
        cur.pop();
    }
}

pub fn teichmuller_dimension(s: &Signature) -> i64 {
    3 * s.genus as i64 - 3 + s.periods.len() as i64
}

/// `c * γ_gen^exp * c^-1` with `c` a word of `(generator, exponent)` letters.
/// Generators are numbered 1, 2, 3 with `γ1 γ2 γ3 = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjWord {
    pub conjugator: Vec<(u8, i32)>,
    pub gen: u8,
    pub exp: i32,
}

impl ConjWord {
    pub fn power(gen: u8, exp: i32) -> ConjWord {
        ConjWord { conjugator: vec![], gen, exp }
    }

    pub fn conjugate(conjugator: &[(u8, i32)], gen: u8, exp: i32) -> ConjWord {
        ConjWord { conjugator: conjugator.to_vec(), gen, exp }
    }

    /// Letters of the word, conjugator inverse included.
    pub fn letters(&self) -> Vec<(u8, i32)> {
        let mut out = self.conjugator.clone();
        out.push((self.gen, self.exp));
        out.extend(self.conjugator.iter().rev().map(|&(g, e)| (g, -e)));
        out
    }

    /// Substitutes words for the generators: `self` is a word in the generators of a group
    /// whose generators are themselves `words` in an outer group.
    pub fn substitute(&self, words: &[ConjWord]) -> ConjWord {
        let inner = &words[self.gen as usize - 1];
        let mut conjugator = Vec::new();
        for &(g, e) in &self.conjugator {
            conjugator.extend(power_letters(&words[g as usize - 1], e));
        }
        conjugator.extend(inner.conjugator.iter().copied());
        ConjWord { conjugator, gen: inner.gen, exp: inner.exp * self.exp }
    }

    pub fn render(&self) -> String {
        let letter = |(g, e): (u8, i32)| if e == 1 { format!("g{g}") } else { format!("g{g}^{e}") };
        let mut parts: Vec<String> = self.conjugator.iter().map(|&l| letter(l)).collect();
        parts.push(letter((self.gen, self.exp)));
        parts.extend(self.conjugator.iter().rev().map(|&(g, e)| letter((g, -e))));
        parts.join("*")
    }
}

fn power_letters(w: &ConjWord, e: i32) -> Vec<(u8, i32)> {
    // (c g^k c^-1)^e = c g^(ke) c^-1
    let mut out = w.conjugator.clone();
    out.push((w.gen, w.exp * e));
    out.extend(w.conjugator.iter().rev().map(|&(g, x)| (g, -x)));
    out
}

/// One inclusion of Fuchsian groups `inner ⊂ outer` of finite index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionPair {
    pub name: String,
    pub p: u32,
    pub inner: Signature,
    pub outer: Signature,
    pub index: u32,
    pub embedding_words: Vec<ConjWord>,
}

impl ExtensionPair {
    /// Exact area identity `area(inner) = index * area(outer)`.
    pub fn area_identity_holds(&self) -> bool {
        self.inner.area() == Q::from_integer(self.index as i64) * self.outer.area()
    }

    /// Formal orders of the words match the inner periods, and their product is trivial
    /// in the free product `Z_m1 * Z_m2` where `γ3 = γ2^-1 γ1^-1`.
    pub fn words_are_consistent(&self) -> bool {
        let m = &self.outer.periods;
        let orders_ok = self.embedding_words.iter().zip(&self.inner.periods).all(|(w, &want)| {
            let mk = m[w.gen as usize - 1] as i64;
            (mk / gcd(mk as u64, w.exp.unsigned_abs() as u64) as i64) as u32 == want
        });
        let mut nf: Vec<(u8, i64)> = Vec::new();
        for w in &self.embedding_words {
            for (g, e) in w.letters() {
                push_letter(&mut nf, g, e as i64, m);
            }
        }
        orders_ok && nf.is_empty() && self.embedding_words.len() == self.inner.periods.len()
    }
}

fn push_free(nf: &mut Vec<(u8, i64)>, g: u8, e: i64, m: &[u32]) {
    let mg = m[g as usize - 1] as i64;
    let e = e.rem_euclid(mg);
    if e == 0 {
        return;
    }
    if let Some(last) = nf.last_mut() {
        if last.0 == g {
            let s = (last.1 + e).rem_euclid(mg);
            if s == 0 {
                nf.pop();
            } else {
                last.1 = s;
            }
            return;
        }
    }
    nf.push((g, e));
}

fn push_letter(nf: &mut Vec<(u8, i64)>, g: u8, e: i64, m: &[u32]) {
    match g {
        1 | 2 => push_free(nf, g, e, m),
        _ => {
            // γ3 = γ2^-1 γ1^-1 and γ3^-1 = γ1 γ2
            for _ in 0..e.abs() {
                if e > 0 {
                    push_free(nf, 2, -1, m);
                    push_free(nf, 1, -1, m);
                } else {
                    push_free(nf, 1, 1, m);
                    push_free(nf, 2, 1, m);
                }
            }
        }
    }
}

fn w(conj: &[(u8, i32)], gen: u8, exp: i32) -> ConjWord {
    ConjWord::conjugate(conj, gen, exp)
}

/// The inclusion table instantiated at prime `p`; index-6 rows are composites.
pub fn extension_table(p: u32) -> Vec<ExtensionPair> {
    let t = Signature::triangle;
    let a = ExtensionPair {
        name: "p,4p,4p<2,2p,4p".into(),
        p,
        inner: t(p, 4 * p, 4 * p),
        outer: t(2, 2 * p, 4 * p),
        index: 2,
        embedding_words: vec![w(&[], 2, 2), w(&[(2, -1)], 3, 1), w(&[], 3, 1)],
    };
    let b = ExtensionPair {
        name: "2p,2p,2p<2,2p,4p".into(),
        p,
        inner: t(2 * p, 2 * p, 2 * p),
        outer: t(2, 2 * p, 4 * p),
        index: 2,
        embedding_words: vec![w(&[], 2, 1), w(&[(3, 1)], 2, 1), w(&[], 3, 2)],
    };
    let c = ExtensionPair {
        name: "2p,2p,2p<3,3,2p".into(),
        p,
        inner: t(2 * p, 2 * p, 2 * p),
        outer: t(3, 3, 2 * p),
        index: 3,
        embedding_words: vec![w(&[(2, 1)], 3, 1), w(&[(2, -1)], 3, 1), w(&[], 3, 1)],
    };
    let d = ExtensionPair {
        name: "2,2p,4p<2,3,4p".into(),
        p,
        inner: t(2, 2 * p, 4 * p),
        outer: t(2, 3, 4 * p),
        index: 3,
        embedding_words: vec![w(&[], 1, 1), w(&[(1, 1)], 3, 2), w(&[(2, -1)], 3, 1)],
    };
    let e = ExtensionPair {
        name: "3,3,2p<2,3,4p".into(),
        p,
        inner: t(3, 3, 2 * p),
        outer: t(2, 3, 4 * p),
        index: 2,
        embedding_words: vec![w(&[(1, 1)], 2, 1), w(&[], 2, 1), w(&[], 3, 2)],
    };
    let compose = |name: &str, lower: &ExtensionPair, upper: &ExtensionPair| ExtensionPair {
        name: name.into(),
        p,
        inner: lower.inner.clone(),
        outer: upper.outer.clone(),
        index: lower.index * upper.index,
        embedding_words: lower.embedding_words.iter().map(|x| x.substitute(&upper.embedding_words)).collect(),
    };
    let db = compose("2p,2p,2p<2,3,4p", &b, &d);
    let da = compose("p,4p,4p<2,3,4p", &a, &d);
    vec![a, b, c, d, e, db, da]
}

/// Rows of the inclusion table whose inner signature is `s` for some prime `p >= 5`,
/// ordered by index. An empty list means `s` is maximal within the table.
pub fn extension_candidates(s: &Signature) -> Vec<ExtensionPair> {
    if !s.is_triangle() {
        return Vec::new();
    }
    let mut primes: Vec<u32> = s
        .periods
        .iter()
        .flat_map(|&m| [m, m / 2, m / 4])
        .filter(|&q| q >= 5 && is_prime(q as u64))
        .collect();
    primes.sort_unstable();
    primes.dedup();
    let mut out: Vec<ExtensionPair> = primes
        .into_iter()
        .flat_map(extension_table)
        .filter(|row| row.inner == *s)
        .collect();
    out.sort_by_key(|r| r.index);
    out
}
