use super::*;
use crate::actions::parse_tuple;
use crate::group::*;
use crate::signatures::Signature;

fn degrees(t: &CharacterTable) -> Vec<u32> {
    t.chars.iter().map(|c| c.degree).collect()
}

/// Index of the character taking the given values on named elements.
fn find_char(g: &Group, t: &CharacterTable, spec: &[(&str, crate::cyclo::Cyc)]) -> usize {
    let hits: Vec<usize> = (0..t.chars.len())
        .filter(|&c| spec.iter().all(|(n, v)| t.value(c, g.element_by_name(n).unwrap()) == v))
        .collect();
    assert_eq!(hits.len(), 1, "character spec is not unique");
    hits[0]
}

#[test]
fn small_tables() {
    let v4 = direct(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap();
    let t = character_table(&v4).unwrap();
    assert_eq!(degrees(&t), vec![1; 4]);
    for c in &t.chars {
        for v in &c.values {
            let x = t.field.as_integer(v).unwrap();
            assert!(x == 1 || x == -1);
        }
    }
    let t = character_table(&alternating5().unwrap()).unwrap();
    let mut d = degrees(&t);
    d.sort_unstable();
    assert_eq!(d, vec![1, 3, 3, 4, 5]);
    let t = character_table(&symmetric4().unwrap()).unwrap();
    assert_eq!(t.chars.len(), 5);
    let t = character_table(&sl2_5().unwrap()).unwrap();
    assert_eq!(t.chars.len(), 9);
}

#[test]
fn family_group_tables() {
    for p in [5u32, 7, 11, 13] {
        let t = character_table(&zp_times_d4(p).unwrap()).unwrap();
        assert_eq!(t.class_count(), 5 * p as usize);
        assert_eq!(degrees(&t).iter().filter(|&&d| d == 1).count(), 4 * p as usize);
        assert_eq!(degrees(&t).iter().filter(|&&d| d == 2).count(), p as usize);
        let t = character_table(&dihedral_2p(p).unwrap()).unwrap();
        assert_eq!(degrees(&t).iter().filter(|&&d| d == 1).count(), 4);
        assert_eq!(degrees(&t).iter().filter(|&&d| d == 2).count(), p as usize - 1);
        let irr = rational_irreps(&character_table(&cyclic(p).unwrap()).unwrap());
        assert_eq!(irr.iter().map(|r| r.field_degree).collect::<Vec<_>>(), vec![1, p as usize - 1]);
    }
}

#[test]
fn rational_irreps_of_zp_times_d4() {
    let p = 7;
    let t = character_table(&zp_times_d4(p).unwrap()).unwrap();
    let irr = rational_irreps(&t);
    let rational: Vec<_> = irr.iter().filter(|r| r.field_degree == 1).collect();
    let big: Vec<_> = irr.iter().filter(|r| r.field_degree == p as usize - 1).collect();
    assert_eq!(rational.len(), 5);
    assert_eq!(big.len(), 5);
    assert_eq!(irr.len(), 10);
}

#[test]
fn chevalley_weil_on_the_pencil_family() {
    for p in [5u32, 7, 11, 13] {
        let g = zp_times_v4(p).unwrap();
        let t = character_table(&g).unwrap();
        let f = t.field.clone();
        let e = t.exponent() as i64;
        let s = Signature::parse("0;2,2,p,2p", Some(p)).unwrap();
        let ske = parse_tuple(&g, &["x", "y", "t", &format!("x*y*t^{}", p - 1)]).unwrap();
        for k in 1..p as i64 {
            let zeta = f.zeta(k * e / p as i64);
            let v1 = find_char(&g, &t, &[("x", f.int(1)), ("y", f.int(-1)), ("t", zeta.clone())]);
            let v3 = find_char(&g, &t, &[("x", f.int(-1)), ("y", f.int(-1)), ("t", zeta)]);
            let want = if 2 * k < p as i64 { 0 } else { 1 };
            assert_eq!(chevalley_weil(&t, v1, &s, &ske).unwrap(), want, "p={p} k={k}");
            assert_eq!(chevalley_weil(&t, v3, &s, &ske).unwrap(), 1);
        }
        assert_eq!(chevalley_weil(&t, 0, &s, &ske).unwrap(), 0);
        let x = g.element_by_name("x").unwrap();
        let y = g.element_by_name("y").unwrap();
        let extra = [NamedSubgroup::generated(&g, &[x]), NamedSubgroup::generated(&g, &[g.mul(x, y)])];
        let r = group_algebra_decomposition(&g, &t, &s, &ske, &extra, &[]).unwrap();
        let half = (p - 1) / 2;
        let mut dims: Vec<u32> = r.nonzero().iter().map(|f| f.2).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![half, half, p - 1]);
        assert_eq!(r.total_dimension(), 2 * (p as u64 - 1));
        assert_eq!(r.quotient("<x>"), Some(half as i64));
        assert_eq!(r.quotient("<x*y>"), Some(p as i64 - 1));
    }
}

#[test]
fn full_decomposition_of_the_dihedral_8_surface() {
    for p in [5u32, 7, 11, 13] {
        let g = zp_times_d4(p).unwrap();
        let t = character_table(&g).unwrap();
        let s = Signature::parse("0;2,2p,4p", Some(p)).unwrap();
        let ske = parse_tuple(&g, &["s", "a^-1*s*r", "a*r^-1"]).unwrap();
        let r = group_algebra_decomposition(&g, &t, &s, &ske, &[], &[]).unwrap();
        let half = (p - 1) / 2;
        let mut nz = r.nonzero();
        nz.sort_unstable();
        assert_eq!(nz, vec![(1, 1, half), (1, 1, half), (2, 2, half)]);
        assert_eq!(r.total_dimension(), 2 * (p as u64 - 1));
    }
}

#[test]
fn reciprocal_family_has_two_squared_factors() {
    for p in [5u32, 7] {
        let g = dihedral_2p(p).unwrap();
        let t = character_table(&g).unwrap();
        let s = Signature::parse("0;2,2,p,2p", Some(p)).unwrap();
        for k in 1..p {
            let w = format!("s*r^{}", 2 * p - 2 * k - 1);
            let ske = parse_tuple(&g, &["s", &w, &format!("r^{}", 2 * k), "r"]).unwrap();
            let r = group_algebra_decomposition(&g, &t, &s, &ske, &[], &[]).unwrap();
            let half = (p - 1) / 2;
            assert_eq!(r.nonzero(), vec![(2, 2, half), (2, 2, half)]);
        }
    }
}
