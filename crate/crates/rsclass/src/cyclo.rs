//! Exact arithmetic in the cyclotomic ring `Z[x]/Φ_e(x)`.
//!
//! Values are integer coordinate vectors in the power basis `1, x, …, x^(φ(e)-1)`;
//! that representation is canonical, so equality is vector equality.

use crate::util::gcd;
use std::sync::Arc;

/// Reduced element of `Z[ζ_e]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyc(pub Vec<i64>);

/// Ring context for a fixed conductor `e`.
#[derive(Debug)]
pub struct CycloField {
    e: usize,
    degree: usize,
    /// reduced coordinates of `x^k` for `k < e`
    powers: Vec<Vec<i64>>,
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // both monic-compatible integer polynomials, coefficients low to high
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let lead = *den.last().unwrap();
    let mut quot = vec![0i64; rem.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn] / lead;
        quot[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Coefficients of `Φ_n`, low degree first.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

impl CycloField {
    pub fn new(e: usize) -> Arc<CycloField> {
        let e = e.max(1);
        let phi = cyclotomic_polynomial(e);
        let degree = phi.len() - 1;
        let mut powers = Vec::with_capacity(e);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..e {
            powers.push(cur.clone());
            // multiply by x and reduce with the monic relation
            let top = cur[degree - 1];
            let mut next = vec![0i64; degree];
            next[1..degree].copy_from_slice(&cur[..(degree - 1)]);
            for (j, n) in next.iter_mut().enumerate() {
                *n -= top * phi[j];
            }
            cur = next;
        }
        Arc::new(CycloField { e, degree, powers })
    }

    pub fn conductor(&self) -> usize {
        self.e
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn zero(&self) -> Cyc {
        Cyc(vec![0; self.degree])
    }

    pub fn int(&self, n: i64) -> Cyc {
        let mut v = vec![0; self.degree];
        v[0] = n;
        Cyc(v)
    }

    /// `ζ_e^k`.
    pub fn zeta(&self, k: i64) -> Cyc {
        Cyc(self.powers[k.rem_euclid(self.e as i64) as usize].clone())
    }

    /// Reduces a vector indexed by exponents modulo `e`.
    pub fn reduce(&self, unreduced: &[i64]) -> Cyc {
        let mut out = vec![0i64; self.degree];
        for (k, &c) in unreduced.iter().enumerate() {
            if c != 0 {
                for (o, &p) in out.iter_mut().zip(&self.powers[k % self.e]) {
                    *o += c * p;
                }
            }
        }
        Cyc(out)
    }

    pub fn add(&self, a: &Cyc, b: &Cyc) -> Cyc {
        Cyc(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &Cyc, b: &Cyc) -> Cyc {
        Cyc(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &Cyc) -> Cyc {
        Cyc(a.0.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, a: &Cyc, k: i64) -> Cyc {
        Cyc(a.0.iter().map(|x| x * k).collect())
    }

    pub fn mul(&self, a: &Cyc, b: &Cyc) -> Cyc {
        let mut acc = vec![0i64; self.e];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                acc[(i + j) % self.e] += x * y;
            }
        }
        self.reduce(&acc)
    }

    /// Adds `c * ζ^shift * a` into an unreduced accumulator of length `e`.
    pub fn accumulate_rotated(&self, acc: &mut [i64], a: &Cyc, shift: i64, c: i64) {
        let s = shift.rem_euclid(self.e as i64) as usize;
        for (i, &x) in a.0.iter().enumerate() {
            if x != 0 {
                acc[(i + s) % self.e] += c * x;
            }
        }
    }

    /// Galois automorphism `ζ -> ζ^k`, `k` coprime to `e`.
    pub fn galois(&self, a: &Cyc, k: i64) -> Cyc {
        debug_assert_eq!(gcd(k.rem_euclid(self.e as i64) as u64, self.e as u64), 1);
        let mut acc = vec![0i64; self.e];
        for (i, &x) in a.0.iter().enumerate() {
            acc[(i as i64 * k).rem_euclid(self.e as i64) as usize] += x;
        }
        self.reduce(&acc)
    }

    pub fn conj(&self, a: &Cyc) -> Cyc {
        self.galois(a, -1)
    }

    /// Units `k` modulo `e` indexing the Galois group.
    pub fn galois_group(&self) -> Vec<i64> {
        (1..=self.e as i64).filter(|&k| gcd(k as u64, self.e as u64) == 1).collect()
    }

    pub fn as_integer(&self, a: &Cyc) -> Option<i64> {
        a.0[1..].iter().all(|&x| x == 0).then_some(a.0[0])
    }

    pub fn is_zero(&self, a: &Cyc) -> bool {
        a.0.iter().all(|&x| x == 0)
    }

    /// `a / n` when every coordinate is divisible by `n`.
    pub fn div_exact(&self, a: &Cyc, n: i64) -> Option<Cyc> {
        a.0.iter().all(|&x| x % n == 0).then(|| Cyc(a.0.iter().map(|x| x / n).collect()))
    }

    /// Sum of `ζ_e` powers representing `a`, rendered as text.
    pub fn render(&self, a: &Cyc) -> String {
        let mut terms = Vec::new();
        for (i, &c) in a.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => format!("z{}", self.e),
                _ => format!("z{}^{}", self.e, i),
            };
            let body = match (c.abs(), mono.is_empty()) {
                (k, true) => k.to_string(),
                (1, false) => mono,
                (k, false) => format!("{k}*{mono}"),
            };
            terms.push((c < 0, body));
        }
        if terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (neg, body)) in terms.into_iter().enumerate() {
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(5), vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for e in [3usize, 4, 12, 20, 28, 60] {
            let f = CycloField::new(e);
            let mut acc = vec![1i64; e];
            acc[0] = 1;
            assert!(f.is_zero(&f.reduce(&acc)), "e = {e}");
            assert_eq!(f.mul(&f.zeta(1), &f.zeta(-1)), f.int(1));
        }
    }

    #[test]
    fn golden_ratio_identity() {
        // (1 + z + z^4)^2 = (1 + z + z^4) + 1 in Q(ζ5)
        let f = CycloField::new(5);
        let phi = f.add(&f.add(&f.int(1), &f.zeta(1)), &f.zeta(4));
        assert_eq!(f.mul(&phi, &phi), f.add(&phi, &f.int(1)));
    }

    proptest! {
        #[test]
        fn galois_is_multiplicative(e in 2usize..40, i in 0i64..40, j in 0i64..40, k in 1i64..40) {
            let f = CycloField::new(e);
            prop_assume!(gcd(k as u64, e as u64) == 1);
            let a = f.add(&f.zeta(i), &f.int(2));
            let b = f.sub(&f.zeta(j), &f.zeta(i + j));
            let lhs = f.galois(&f.mul(&a, &b), k);
            let rhs = f.mul(&f.galois(&a, k), &f.galois(&b, k));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
