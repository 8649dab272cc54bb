//! Exact character tables.
//!
//! Abelian groups are handled by enumerating homomorphisms to `μ_e`. Every other
//! group goes through the Dixon–Schneider route: the normalised central characters
//! are the common eigenvectors of the class multiplication matrices, computed over
//! `F_q` with `q ≡ 1 mod e`. Each character is then lifted to `Z[ζ_e]` through its
//! eigenvalue multiplicities on cyclic subgroups, which are small integers and so
//! survive reduction mod `q` unchanged.

use crate::cyclo::{Cyc, CycloField};
use crate::error::{Error, Result};
use crate::group::{Elem, Group};
use crate::util::{is_prime, pow_mod};
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;

/// One irreducible character.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Character {
    pub degree: u32,
    /// values on class representatives, in `Z[ζ_e]`
    #[serde(skip)]
    pub values: Vec<Cyc>,
    /// `eigen[k][α]`: multiplicity of `ζ_m^α` as an eigenvalue on class `k`, `m` its element order
    #[serde(skip)]
    pub eigen: Vec<Vec<u32>>,
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub order: usize,
    /// class representatives (smallest member)
    pub reps: Vec<Elem>,
    pub class_sizes: Vec<usize>,
    pub rep_orders: Vec<u32>,
    /// class of each element
    pub class_of: Vec<usize>,
    /// class of the inverse
    pub inverse_class: Vec<usize>,
    pub field: Arc<CycloField>,
    /// trivial character first
    pub chars: Vec<Character>,
}

impl CharacterTable {
    pub fn exponent(&self) -> usize {
        self.field.conductor()
    }

    pub fn class_count(&self) -> usize {
        self.reps.len()
    }

    /// `χ(x)` for an element.
    pub fn value(&self, chi: usize, x: Elem) -> &Cyc {
        &self.chars[chi].values[self.class_of[x as usize]]
    }

    /// `|G| ⟨χ_i, χ_j⟩`, exactly.
    fn inner_times_order(&self, i: usize, j: usize) -> Cyc {
        let f = &self.field;
        let mut acc = f.zero();
        for k in 0..self.class_count() {
            let term = f.mul(&self.chars[i].values[k], &f.conj(&self.chars[j].values[k]));
            acc = f.add(&acc, &f.scale(&term, self.class_sizes[k] as i64));
        }
        acc
    }

    /// Row and column orthogonality, checked exactly.
    pub fn verify(&self) -> Result<()> {
        let f = &self.field;
        let n = self.class_count();
        if self.chars.len() != n {
            return Err(Error::Consistency(format!("{} characters for {n} classes", self.chars.len())));
        }
        let squares: usize = self.chars.iter().map(|c| (c.degree as usize).pow(2)).sum();
        if squares != self.order {
            return Err(Error::Consistency(format!("degrees squared sum to {squares}, not {}", self.order)));
        }
        for i in 0..n {
            for j in i..n {
                let want = if i == j { self.order as i64 } else { 0 };
                if f.as_integer(&self.inner_times_order(i, j)) != Some(want) {
                    return Err(Error::Consistency(format!("rows {i} and {j} are not orthonormal")));
                }
            }
        }
        for k in 0..n {
            for l in k..n {
                let mut acc = f.zero();
                for c in &self.chars {
                    acc = f.add(&acc, &f.mul(&c.values[k], &f.conj(&c.values[l])));
                }
                let want = if k == l { (self.order / self.class_sizes[k]) as i64 } else { 0 };
                if f.as_integer(&acc) != Some(want) {
                    return Err(Error::Consistency(format!("columns {k} and {l} are not orthogonal")));
                }
            }
        }
        Ok(())
    }

    /// `dim V^H = (1/|H|) Σ_{h ∈ H} χ(h)`.
    pub fn fixed_dimension(&self, chi: usize, h: &[Elem]) -> Result<u32> {
        let f = &self.field;
        let mut acc = f.zero();
        for &x in h {
            acc = f.add(&acc, self.value(chi, x));
        }
        f.as_integer(&acc)
            .filter(|&v| v >= 0 && v % h.len() as i64 == 0)
            .map(|v| (v / h.len() as i64) as u32)
            .ok_or_else(|| Error::Consistency("restriction to a subgroup has a non-integral trivial part".into()))
    }

    /// Index of `χ^σ` for `σ: ζ -> ζ^k`.
    pub fn galois_image(&self, chi: usize, k: i64) -> usize {
        let f = &self.field;
        let target: Vec<Cyc> = self.chars[chi].values.iter().map(|v| f.galois(v, k)).collect();
        self.chars.iter().position(|c| c.values == target).expect("Galois conjugate of a character is a character")
    }
}

fn class_data(g: &Group) -> (Vec<Elem>, Vec<usize>, Vec<usize>, Vec<usize>) {
    let classes = g.conjugacy_classes();
    let reps: Vec<Elem> = classes.iter().map(|c| c[0]).collect();
    let sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
    let class_of: Vec<usize> = (0..g.order() as Elem).map(|x| g.class_of(x)).collect();
    let inverse_class: Vec<usize> = reps.iter().map(|&r| class_of[g.inv(r) as usize]).collect();
    (reps, sizes, class_of, inverse_class)
}

fn abelian_table(g: &Group) -> Result<CharacterTable> {
    let n = g.order();
    let e = g.exponent() as usize;
    let field = CycloField::new(e);
    let gens = g.generators().to_vec();
    // BFS spanning tree: each element as parent * generator
    let mut parent = vec![(usize::MAX, 0usize); n];
    parent[0] = (0, 0);
    let mut order_bfs = vec![0usize];
    let mut head = 0;
    while head < order_bfs.len() {
        let x = order_bfs[head];
        head += 1;
        for (i, &s) in gens.iter().enumerate() {
            let y = g.mul(x as Elem, s) as usize;
            if parent[y].0 == usize::MAX {
                parent[y] = (x, i);
                order_bfs.push(y);
            }
        }
    }
    let ranges: Vec<u64> = gens.iter().map(|&s| g.element_order(s) as u64).collect();
    let mut exps: Vec<Vec<u64>> = Vec::new();
    let mut choice = vec![0u64; gens.len()];
    'outer: loop {
        // images ζ_e^(choice_i * e / m_i)
        let img: Vec<u64> = choice.iter().zip(&ranges).map(|(&c, &m)| c * (e as u64 / m)).collect();
        let mut val = vec![0u64; n];
        for &x in &order_bfs[1..] {
            let (par, i) = parent[x];
            val[x] = (val[par] + img[i]) % e as u64;
        }
        let hom = (0..n).all(|x| gens.iter().enumerate().all(|(i, &s)| val[g.mul(x as Elem, s) as usize] == (val[x] + img[i]) % e as u64));
        if hom && !exps.contains(&val) {
            exps.push(val);
        }
        for i in 0..choice.len() {
            choice[i] += 1;
            if choice[i] < ranges[i] {
                continue 'outer;
            }
            choice[i] = 0;
        }
        break;
    }
    if exps.len() != n {
        return Err(Error::Consistency(format!("found {} linear characters for an abelian group of order {n}", exps.len())));
    }
    let (reps, class_sizes, class_of, inverse_class) = class_data(g);
    let rep_orders: Vec<u32> = reps.iter().map(|&r| g.element_order(r)).collect();
    let chars = exps
        .into_iter()
        .map(|v| {
            let values = reps.iter().map(|&r| field.zeta(v[r as usize] as i64)).collect();
            let eigen = reps
                .iter()
                .zip(&rep_orders)
                .map(|(&r, &m)| {
                    let mut counts = vec![0u32; m as usize];
                    counts[(v[r as usize] as usize * m as usize / e) % m as usize] = 1;
                    counts
                })
                .collect();
            Character { degree: 1, values, eigen }
        })
        .collect();
    finish(CharacterTable { order: n, reps, class_sizes, rep_orders, class_of, inverse_class, field, chars })
}

/// Sorts with the trivial character first, then by degree and values; verifies.
fn finish(mut t: CharacterTable) -> Result<CharacterTable> {
    let one = t.field.int(1);
    t.chars.sort_by(|a, b| {
        let ta = a.values.iter().all(|v| *v == one);
        let tb = b.values.iter().all(|v| *v == one);
        tb.cmp(&ta).then(a.degree.cmp(&b.degree)).then_with(|| a.values.cmp(&b.values))
    });
    t.verify()?;
    Ok(t)
}

/// Arithmetic in `F_q`.
#[derive(Clone, Copy)]
struct Fq(u64);

impl Fq {
    fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.0
    }
    fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.0
    }
    fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.0 - b) % self.0
    }
    fn inv(self, a: u64) -> u64 {
        pow_mod(a, self.0 - 2, self.0)
    }
}

/// Characteristic polynomial via Hessenberg reduction, coefficients low to high.
fn charpoly(f: Fq, mut h: Vec<Vec<u64>>) -> Vec<u64> {
    let n = h.len();
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| h[i][j] != 0) else { continue };
        if piv != j + 1 {
            h.swap(piv, j + 1);
            for row in h.iter_mut() {
                row.swap(piv, j + 1);
            }
        }
        let inv = f.inv(h[j + 1][j]);
        for i in j + 2..n {
            let u = f.mul(h[i][j], inv);
            if u == 0 {
                continue;
            }
            for c in 0..n {
                let t = f.mul(u, h[j + 1][c]);
                h[i][c] = f.sub(h[i][c], t);
            }
            for row in h.iter_mut() {
                let t = f.mul(u, row[i]);
                row[j + 1] = f.add(row[j + 1], t);
            }
        }
    }
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 0..n {
        let pk = &polys[k];
        let mut next = vec![0u64; k + 2];
        for (d, &c) in pk.iter().enumerate() {
            next[d + 1] = f.add(next[d + 1], c);
            next[d] = f.sub(next[d], f.mul(h[k][k], c));
        }
        let mut t = 1u64;
        for i in (0..k).rev() {
            t = f.mul(t, h[i + 1][i]);
            let coef = f.mul(h[i][k], t);
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = f.sub(next[d], f.mul(coef, c));
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// Kernel of a square matrix over `F_q`.
fn kernel(f: Fq, mut m: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let n = m.len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(piv) = (row..n).find(|&i| m[i][col] != 0) else { continue };
        m.swap(row, piv);
        let inv = f.inv(m[row][col]);
        for c in 0..n {
            m[row][c] = f.mul(m[row][c], inv);
        }
        for i in 0..n {
            if i != row && m[i][col] != 0 {
                let u = m[i][col];
                for c in 0..n {
                    let t = f.mul(u, m[row][c]);
                    m[i][c] = f.sub(m[i][c], t);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; n];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.sub(0, m[r][fc]);
            }
            v
        })
        .collect()
}

/// Deterministic generator for the random combinations.
struct SplitMix(u64);

impl SplitMix {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

fn primitive_root_fast(q: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = q - 1;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..q).find(|&g| factors.iter().all(|&f| pow_mod(g, (q - 1) / f, q) != 1)).expect("prime has a primitive root")
}

/// Normalised central characters `ω_χ` over `F_q`, one vector per character.
fn central_characters(f: Fq, a: &[Vec<Vec<u32>>], rng: &mut SplitMix) -> Option<Vec<Vec<u64>>> {
    let n = a.len();
    for _ in 0..16 {
        let r: Vec<u64> = (0..n).map(|_| rng.next() % f.0).collect();
        let mut m = vec![vec![0u64; n]; n];
        for (i, ai) in a.iter().enumerate() {
            for j in 0..n {
                for k in 0..n {
                    if ai[j][k] != 0 {
                        m[j][k] = f.add(m[j][k], f.mul(r[i], ai[j][k] as u64));
                    }
                }
            }
        }
        let cp = charpoly(f, m.clone());
        let roots: Vec<u64> = (0..f.0)
            .filter(|&x| cp.iter().rev().fold(0u64, |acc, &c| f.add(f.mul(acc, x), c)) == 0)
            .collect();
        if roots.len() != n {
            continue;
        }
        let mut out = Vec::with_capacity(n);
        for &lam in &roots {
            let mut shifted = m.clone();
            for (j, row) in shifted.iter_mut().enumerate() {
                row[j] = f.sub(row[j], lam);
            }
            let ker = kernel(f, shifted);
            if ker.len() != 1 || ker[0][0] == 0 {
                return None;
            }
            let inv = f.inv(ker[0][0]);
            out.push(ker[0].iter().map(|&x| f.mul(x, inv)).collect());
        }
        return Some(out);
    }
    None
}

fn dixon_table(g: &Group) -> Result<CharacterTable> {
    let order = g.order();
    let e = g.exponent() as usize;
    let (reps, class_sizes, class_of, inverse_class) = class_data(g);
    let rep_orders: Vec<u32> = reps.iter().map(|&r| g.element_order(r)).collect();
    let n = reps.len();
    // a[i][j][k] = #{x in C_i : x^-1 z_k in C_j}
    let mut a = vec![vec![vec![0u32; n]; n]; n];
    for (k, &z) in reps.iter().enumerate() {
        for x in 0..order as Elem {
            let i = class_of[x as usize];
            let j = class_of[g.mul(g.inv(x), z) as usize];
            a[i][j][k] += 1;
        }
    }
    let field = CycloField::new(e);
    let mut rng = SplitMix(0x5eed ^ order as u64);
    let mut q = ((2 * order as u64).max(1 << 15) / e as u64 + 1) * e as u64 + 1;
    for _ in 0..64 {
        while !is_prime(q) {
            q += e as u64;
        }
        let f = Fq(q);
        let Some(omegas) = central_characters(f, &a, &mut rng) else {
            q += e as u64;
            continue;
        };
        let z_e = pow_mod(primitive_root_fast(q), (q - 1) / e as u64, q);
        let mut chars = Vec::with_capacity(n);
        let mut ok = true;
        for w in &omegas {
            // |G| / d^2 = Σ_k ω_k ω_{k*} / |C_k|
            let s = (0..n).fold(0u64, |acc, k| {
                f.add(acc, f.mul(f.mul(w[k], w[inverse_class[k]]), f.inv(class_sizes[k] as u64 % q)))
            });
            if s == 0 {
                ok = false;
                break;
            }
            let d2 = f.mul(order as u64 % q, f.inv(s));
            let Some(d) = (1..=order as u64).take_while(|d| d * d <= order as u64).find(|d| d * d == d2) else {
                ok = false;
                break;
            };
            let chi: Vec<u64> = (0..n).map(|k| f.mul(f.mul(w[k], d), f.inv(class_sizes[k] as u64))).collect();
            match lift(g, &field, f, z_e, &reps, &rep_orders, &class_of, &chi, d as u32) {
                Some(c) => chars.push(c),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return finish(CharacterTable { order, reps, class_sizes, rep_orders, class_of, inverse_class, field, chars });
        }
        q += e as u64;
    }
    Err(Error::Unsupported(format!("character table of a group of order {order}: no splitting prime found")))
}

/// Exact values from values mod `q` via eigenvalue multiplicities.
#[allow(clippy::too_many_arguments)]
fn lift(
    g: &Group,
    field: &CycloField,
    f: Fq,
    z_e: u64,
    reps: &[Elem],
    rep_orders: &[u32],
    class_of: &[usize],
    chi: &[u64],
    degree: u32,
) -> Option<Character> {
    let e = field.conductor() as u64;
    let mut values = Vec::with_capacity(reps.len());
    let mut eigen = Vec::with_capacity(reps.len());
    for (&r, &m) in reps.iter().zip(rep_orders) {
        let m64 = m as u64;
        let z = pow_mod(z_e, e / m64, f.0);
        let inv_m = f.inv(m64);
        let along: Vec<u64> = (0..m as i64).map(|j| chi[class_of[g.pow(r, j) as usize]]).collect();
        let mut counts = vec![0u32; m as usize];
        let mut acc = vec![0i64; e as usize];
        for (alpha, count) in counts.iter_mut().enumerate() {
            let step = pow_mod(z, (m64 - alpha as u64 % m64) % m64, f.0);
            let mut pw = 1u64;
            let mut s = 0u64;
            for &v in &along {
                s = f.add(s, f.mul(v, pw));
                pw = f.mul(pw, step);
            }
            let n_alpha = f.mul(s, inv_m);
            if n_alpha > degree as u64 {
                return None;
            }
            *count = n_alpha as u32;
            acc[(alpha as u64 * (e / m64)) as usize] += n_alpha as i64;
        }
        if counts.iter().sum::<u32>() != degree {
            return None;
        }
        values.push(field.reduce(&acc));
        eigen.push(counts);
    }
    Some(Character { degree, values, eigen })
}

/// Complete character table, verified by exact orthogonality.
pub fn character_table(g: &Group) -> Result<CharacterTable> {
    if g.is_abelian() {
        abelian_table(g)
    } else {
        dixon_table(g)
    }
}

/// Galois orbit of irreducible characters, one rational irreducible representation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalIrrep {
    pub orbit: Vec<usize>,
    pub degree: u32,
    pub field_degree: usize,
    pub schur_index: u32,
}

/// Partition of the characters into Galois orbits; Schur indices are taken to be 1.
pub fn rational_irreps(t: &CharacterTable) -> Vec<RationalIrrep> {
    let units = t.field.galois_group();
    let mut orbit_of: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut assigned = vec![false; t.chars.len()];
    for i in 0..t.chars.len() {
        if assigned[i] {
            continue;
        }
        let mut orbit: Vec<usize> = units.iter().map(|&k| t.galois_image(i, k)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &j in &orbit {
            assigned[j] = true;
        }
        orbit_of.insert(i, orbit);
    }
    orbit_of
        .into_values()
        .map(|orbit| RationalIrrep {
            degree: t.chars[orbit[0]].degree,
            field_degree: orbit.len(),
            orbit,
            schur_index: 1,
        })
        .collect()
}
