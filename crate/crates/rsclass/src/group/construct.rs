//! Constructors for every group the classification touches.

use super::{Elem, Group, Tag};
use crate::error::{Error, Result};
use crate::util::{inv_mod, mult_order, pow_mod};

const LETTERS: &str = "abcdefghijklmnopqrstuvwxyz";

pub fn cyclic(n: u32) -> Result<Group> {
    cyclic_named(n, "a")
}

/// Cyclic group with element index `k` equal to the `k`-th generator power.
pub fn cyclic_named(n: u32, name: &str) -> Result<Group> {
    if n == 0 {
        return Err(Error::Descriptor("cyclic order must be positive".into()));
    }
    let gens: Vec<u32> = if n == 1 { vec![] } else { vec![1] };
    let names: Vec<&str> = if n == 1 { vec![] } else { vec![name] };
    Group::from_generators(0u32, &gens, &names, |a, b| (a + b) % n, Tag::Cyclic { n })
}

/// Dihedral group of order `2n` on `r` (rotation) and `s` (reflection).
pub fn dihedral(n: u32) -> Result<Group> {
    dihedral_named(n, "r", "s")
}

pub fn dihedral_named(n: u32, rot: &str, refl: &str) -> Result<Group> {
    if n < 2 {
        return Err(Error::Descriptor("dihedral parameter must be at least 2".into()));
    }
    let n = n as i64;
    // affine maps x -> e*x + c of Z_n with e = +-1, composed right to left
    let mul = |f: &(i64, i64), g: &(i64, i64)| (f.0 * g.0, (f.0 * g.1 + f.1).rem_euclid(n));
    Group::from_generators((1i64, 0i64), &[(1, 1), (-1i64, 0)], &[rot, refl], mul, Tag::Dihedral { n: n as u32 })
}

/// Dicyclic group of order `4n`: `b^(2n) = 1`, `x^2 = b^n`, `x b x^-1 = b^-1`.
pub fn dicyclic(n: u32) -> Result<Group> {
    if n < 2 {
        return Err(Error::Descriptor("dicyclic parameter must be at least 2".into()));
    }
    let m = 2 * n as i64;
    let half = n as i64;
    let mul = move |u: &(i64, u8), v: &(i64, u8)| match (u.1, v.1) {
        (0, e) => ((u.0 + v.0).rem_euclid(m), e),
        (_, 0) => ((u.0 - v.0).rem_euclid(m), 1),
        _ => ((u.0 - v.0 + half).rem_euclid(m), 0),
    };
    let tag = if n == 2 { Tag::Quaternion } else { Tag::Dicyclic { n } };
    Group::from_generators((0i64, 0u8), &[(1, 0), (0, 1)], &["b", "x"], mul, tag)
}

pub fn quaternion() -> Result<Group> {
    dicyclic(2)
}

fn compose(p: &Vec<u8>, q: &Vec<u8>) -> Vec<u8> {
    // apply q first
    q.iter().map(|&i| p[i as usize]).collect()
}

fn perm_group(degree: usize, gens: &[Vec<u8>], names: &[&str], tag: Tag) -> Result<Group> {
    let id: Vec<u8> = (0..degree as u8).collect();
    Group::from_generators(id, gens, names, compose, tag)
}

pub fn alternating4() -> Result<Group> {
    // Klein four group on x, y twisted by z of order three
    let v = direct_named(&cyclic(2)?, &cyclic(2)?, &["x", "y"])?;
    let x = v.generators()[0];
    let y = v.generators()[1];
    let xy = v.mul(x, y);
    let mut z_action: Vec<Elem> = (0..4).collect();
    z_action[x as usize] = y;
    z_action[y as usize] = xy;
    z_action[xy as usize] = x;
    let z3 = cyclic_named(3, "z")?;
    Ok(semidirect(&v, &z3, &[z_action])?.with_tag(Tag::Alt4))
}

pub fn symmetric4() -> Result<Group> {
    perm_group(4, &[vec![1, 2, 3, 0], vec![1, 0, 2, 3]], &["c", "t"], Tag::Sym4)
}

pub fn alternating5() -> Result<Group> {
    perm_group(5, &[vec![1, 2, 3, 4, 0], vec![1, 2, 0, 3, 4]], &["c", "d"], Tag::Alt5)
}

pub fn symmetric5() -> Result<Group> {
    perm_group(5, &[vec![1, 2, 3, 4, 0], vec![1, 0, 2, 3, 4]], &["c", "t"], Tag::Sym5)
}

/// `SL(2,5)` as matrices over the field with five elements.
pub fn sl2_5() -> Result<Group> {
    let mul = |a: &[u8; 4], b: &[u8; 4]| {
        let f = |x: u32| (x % 5) as u8;
        let [a0, a1, a2, a3] = a.map(|v| v as u32);
        let [b0, b1, b2, b3] = b.map(|v| v as u32);
        [f(a0 * b0 + a1 * b2), f(a0 * b1 + a1 * b3), f(a2 * b0 + a3 * b2), f(a2 * b1 + a3 * b3)]
    };
    Group::from_generators([1, 0, 0, 1], &[[1, 1, 0, 1], [0, 4, 1, 0]], &["u", "w"], mul, Tag::Named { name: "SL(2,5)".into() })
}

/// `PSL(2,7)` acting on the projective line over the field with seven elements.
pub fn psl2_7() -> Result<Group> {
    // points 0..6 and 7 = infinity
    let inf = 7u8;
    let shift: Vec<u8> = (0..8).map(|x| if x == inf { inf } else { (x + 1) % 7 }).collect();
    let inv7 = |x: u8| inv_mod(x as i64, 7).unwrap() as u8;
    let flip: Vec<u8> = (0..8)
        .map(|x| match x {
            0 => inf,
            7 => 0,
            x => (7 - inv7(x)) % 7,
        })
        .collect();
    perm_group(8, &[shift, flip], &["u", "w"], Tag::Named { name: "PSL(2,7)".into() })
}

/// Multiplication in `GF(2^k)` with the given reduction polynomial (bit mask, top bit included).
fn gf2_mul(a: u8, mut b: u8, k: u32, poly: u32) -> u8 {
    let mut r: u32 = 0;
    let mut x = a as u32;
    while b != 0 {
        if b & 1 == 1 {
            r ^= x;
        }
        b >>= 1;
        x <<= 1;
        if x >> k & 1 == 1 {
            x ^= poly;
        }
    }
    r as u8
}

fn affine_field_perms(k: u32, poly: u32, mult: u8, frobenius: bool) -> Vec<Vec<u8>> {
    let n = 1u8 << k;
    let translate: Vec<u8> = (0..n).map(|v| v ^ 1).collect();
    let scale: Vec<u8> = (0..n).map(|v| gf2_mul(v, mult, k, poly)).collect();
    let mut gens = vec![translate, scale];
    if frobenius {
        gens.push((0..n).map(|v| gf2_mul(v, v, k, poly)).collect());
    }
    gens
}

/// `Z2^3 : Z7`, the affine group of the field of order eight without field automorphisms.
pub fn z2cube_sd_z7() -> Result<Group> {
    let gens = affine_field_perms(3, 0b1011, 2, false);
    perm_group(8, &gens, &["u", "w"], Tag::Named { name: "Z2^3:7Z7".into() })
}

/// The full semilinear affine group of the field of order eight, order 168.
pub fn agaml1_8() -> Result<Group> {
    let gens = affine_field_perms(3, 0b1011, 2, true);
    perm_group(8, &gens, &["u", "w", "f"], Tag::Named { name: "AGammaL(1,8)".into() })
}

/// `Z2^4 : Z5`, translations of the field of order sixteen twisted by an element of order five.
pub fn z2fourth_sd_z5() -> Result<Group> {
    // x^3 has multiplicative order five modulo x^4 + x + 1
    let gens = affine_field_perms(4, 0b10011, 8, false);
    perm_group(16, &gens, &["u", "w"], Tag::Named { name: "Z2^4:5Z5".into() })
}

fn fresh_names(a: &Group, b: &Group) -> Vec<String> {
    let mut used: Vec<String> = a.generator_names().to_vec();
    let mut out = used.clone();
    for name in b.generator_names() {
        if used.contains(name) {
            let fresh = LETTERS
                .chars()
                .map(|c| c.to_string())
                .find(|c| !used.contains(c) && !b.generator_names().contains(c))
                .expect("ran out of generator letters");
            used.push(fresh.clone());
            out.push(fresh);
        } else {
            used.push(name.clone());
            out.push(name.clone());
        }
    }
    out
}

pub fn direct(a: &Group, b: &Group) -> Result<Group> {
    let names = fresh_names(a, b);
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    direct_named(a, b, &refs)
}

/// Direct product; `names` covers the generators of `a` followed by those of `b`.
pub fn direct_named(a: &Group, b: &Group, names: &[&str]) -> Result<Group> {
    let mut gens: Vec<(Elem, Elem)> = a.generators().iter().map(|&g| (g, 0)).collect();
    gens.extend(b.generators().iter().map(|&g| (0, g)));
    if names.len() != gens.len() {
        return Err(Error::Descriptor("generator name count mismatch".into()));
    }
    let tag = Tag::Direct { left: Box::new(a.tag().clone()), right: Box::new(b.tag().clone()) };
    Group::from_generators((0, 0), &gens, names, |u, v| (a.mul(u.0, v.0), b.mul(u.1, v.1)), tag)
}

/// Extends the images of `h`'s generators (automorphisms of `n`) to every element of `h`.
/// Fails naming the first relation of `h` that the images violate.
fn extend_action(n: &Group, h: &Group, images: &[Vec<Elem>]) -> Result<Vec<Vec<Elem>>> {
    if images.len() != h.generators().len() {
        return Err(Error::Descriptor("one automorphism per acting generator is required".into()));
    }
    for (i, img) in images.iter().enumerate() {
        let bijective = {
            let mut seen = vec![false; n.order()];
            img.len() == n.order() && img.iter().all(|&x| !std::mem::replace(&mut seen[x as usize], true))
        };
        let hom = bijective
            && (0..n.order() as Elem).all(|x| {
                n.generators().iter().all(|&g| img[n.mul(x, g) as usize] == n.mul(img[x as usize], img[g as usize]))
            });
        if !hom {
            return Err(Error::Coupling(format!(
                "image of {} is not an automorphism of the normal factor",
                h.generator_names()[i]
            )));
        }
    }
    let mut act: Vec<Option<Vec<Elem>>> = vec![None; h.order()];
    act[0] = Some((0..n.order() as Elem).collect());
    let mut queue = std::collections::VecDeque::from([0 as Elem]);
    while let Some(x) = queue.pop_front() {
        for (i, &g) in h.generators().iter().enumerate() {
            let y = h.mul(x, g);
            let ax = act[x as usize].as_ref().unwrap();
            let composed: Vec<Elem> = images[i].iter().map(|&v| ax[v as usize]).collect();
            match &act[y as usize] {
                None => {
                    act[y as usize] = Some(composed);
                    queue.push_back(y);
                }
                Some(existing) if *existing != composed => {
                    let lhs = if x == 0 {
                        h.generator_names()[i].clone()
                    } else {
                        format!("{}*{}", h.name(x), h.generator_names()[i])
                    };
                    return Err(Error::Coupling(format!("{} = {}", lhs, h.name(y))));
                }
                _ => {}
            }
        }
    }
    Ok(act.into_iter().map(|a| a.unwrap()).collect())
}

/// Semidirect product `n : h` where generator `i` of `h` acts on `n` by `images[i]`.
pub fn semidirect(n: &Group, h: &Group, images: &[Vec<Elem>]) -> Result<Group> {
    let names = fresh_names(n, h);
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    semidirect_named(n, h, images, &refs)
}

pub fn semidirect_named(n: &Group, h: &Group, images: &[Vec<Elem>], names: &[&str]) -> Result<Group> {
    let act = extend_action(n, h, images)?;
    let identity: Vec<Elem> = (0..n.order() as Elem).collect();
    let mut kernel = 0;
    for a in &act {
        if *a == identity {
            kernel += 1;
        }
    }
    let image_order = (h.order() / kernel) as u32;
    let mut gens: Vec<(Elem, Elem)> = n.generators().iter().map(|&g| (g, 0)).collect();
    gens.extend(h.generators().iter().map(|&g| (0, g)));
    if names.len() != gens.len() {
        return Err(Error::Descriptor("generator name count mismatch".into()));
    }
    let tag = if image_order == 1 {
        Tag::Direct { left: Box::new(n.tag().clone()), right: Box::new(h.tag().clone()) }
    } else {
        Tag::Semidirect { normal: Box::new(n.tag().clone()), acting: Box::new(h.tag().clone()), image_order }
    };
    let mul = |u: &(Elem, Elem), v: &(Elem, Elem)| (n.mul(u.0, act[u.1 as usize][v.0 as usize]), h.mul(u.1, v.1));
    Group::from_generators((0, 0), &gens, names, mul, tag)
}

/// `Z_p : h` where generator `i` of `h` acts as `a -> a^units[i]`.
pub fn cyclic_semidirect(p: u32, h: &Group, units: &[u64]) -> Result<Group> {
    let mut names = vec!["a".to_string()];
    names.extend(h.generator_names().iter().cloned());
    if h.generator_names().iter().any(|g| g == "a") {
        return Err(Error::Descriptor("acting group may not use the generator name a".into()));
    }
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    cyclic_semidirect_named(p, h, units, &refs)
}

pub fn cyclic_semidirect_named(p: u32, h: &Group, units: &[u64], names: &[&str]) -> Result<Group> {
    let zp = cyclic_named(p, names[0])?;
    let images: Vec<Vec<Elem>> = units
        .iter()
        .map(|&u| (0..p as u64).map(|k| (k * (u % p as u64) % p as u64) as Elem).collect())
        .collect();
    semidirect_named(&zp, h, &images, names)
}

/// `Z_p x Z2^2 = <t, x, y>`.
pub fn zp_times_v4(p: u32) -> Result<Group> {
    let v = direct_named(&cyclic(2)?, &cyclic(2)?, &["x", "y"])?;
    direct_named(&cyclic(p)?, &v, &["t", "x", "y"])
}

/// Dihedral group of order `4p` on `r` of order `2p` and `s`.
pub fn dihedral_2p(p: u32) -> Result<Group> {
    dihedral(2 * p)
}

/// Cyclic group of order `4p` written as `<a> x <b>` with `a` of order `p` and `b` of order 4.
pub fn z4p_split(p: u32) -> Result<Group> {
    direct_named(&cyclic(p)?, &cyclic(4)?, &["a", "b"])
}

/// `Z_p : Z4` with `b a b^-1 = a^u`, `u` of order `k` in 2 or 4.
pub fn zp_sd_z4(p: u32, k: u32) -> Result<Group> {
    let u = unit_of_order(p, k)
        .ok_or_else(|| Error::Descriptor(format!("no unit of order {k} modulo {p}")))?;
    cyclic_semidirect_named(p, &cyclic_named(4, "b")?, &[u], &["a", "b"])
}

/// `Z_p x D4 = <a, r, s>`.
pub fn zp_times_d4(p: u32) -> Result<Group> {
    direct_named(&cyclic(p)?, &dihedral(4)?, &["a", "r", "s"])
}

/// `D3 x D_p = <r, s, R, S>`.
pub fn d3_times_dp(p: u32) -> Result<Group> {
    direct_named(&dihedral(3)?, &dihedral(p)?, &["r", "s", "R", "S"])
}

/// `Z_p : A4 = <a, x, y, z>`, `z a z^-1 = a^r` with `r` a primitive cube root of unity mod `p`.
pub fn zp_sd3_a4(p: u32) -> Result<Group> {
    let r = unit_of_order(p, 3)
        .ok_or_else(|| Error::Descriptor(format!("no cube root of unity modulo {p}")))?;
    let a4 = alternating4()?;
    cyclic_semidirect_named(p, &a4, &[1, 1, r], &["a", "x", "y", "z"])
}

/// Smallest unit of multiplicative order exactly `k` modulo `p`.
pub fn unit_of_order(p: u32, k: u32) -> Option<u64> {
    (1..p as u64).find(|&u| mult_order(u, p as u64) == Some(k as u64))
}

/// Smallest `r` with `r^3 = 1` mod `p`, `r != 1`.
pub fn cube_root_of_unity(p: u32) -> Option<u64> {
    (2..p as u64).find(|&u| pow_mod(u, 3, p as u64) == 1)
}
