use super::*;
use crate::fixtures::{dual_numbers, integral_group_ring, integral_trivial, residue_field};
use crate::linalg::Domain;

fn x_complex() -> ChainComplex {
    let r = dual_numbers(2).unwrap();
    let m = FinModule::regular(r.clone(), Side::Right);
    let x = r.regular_action(Side::Left)[1].clone();
    let p = Tail::Periodic { period: 1 };
    ChainComplex::new(r, Side::Right, 0, vec![m.clone(), m], vec![x], p, p).unwrap()
}

/// `⋯ → ℤ[C₂] --(t−1)--> ℤ[C₂] --(t+1)--> ℤ[C₂] → ⋯`, odd degrees `t − 1`.
fn c2_complex() -> ChainComplex {
    let r = integral_group_ring(2).unwrap();
    let m = FinModule::regular(r.clone(), Side::Right);
    let z = Domain::Integer;
    let t = r.regular_action(Side::Left)[1].clone();
    let minus = t.sub(&Matrix::identity(z, 2));
    let plus = t.add(&Matrix::identity(z, 2));
    let p = Tail::Periodic { period: 2 };
    ChainComplex::new(r, Side::Right, 0, vec![m.clone(), m.clone(), m], vec![minus, plus], p, p).unwrap()
}

#[test]
fn x_complex_tensor_residue_field_has_zero_differentials() {
    let t = x_complex();
    let k = ChainComplex::concentrated(residue_field(t.algebra(), Side::Left).unwrap(), 0);
    let frag = tensor_complexes(&t, &k, -3, 3).unwrap();
    for d in -3..=3 {
        assert_eq!(frag.complex.module(d).descriptor().dim(), 1);
    }
    for d in -2..=2 {
        assert_eq!(homology_window(&t, &k, d).unwrap().dim(), 1);
    }
}

#[test]
fn tensor_with_ring_reproduces_complex() {
    let t = x_complex();
    let r = ChainComplex::concentrated(FinModule::regular(t.algebra().clone(), Side::Left), 0);
    for d in -2..=2 {
        assert!(homology_window(&t, &r, d).unwrap().is_zero());
    }
    let frag = tensor_complexes(&t.truncate_above(0), &r, -1, 2).unwrap();
    assert_eq!(frag.complex.homology_at(0).dim(), 1);
}

#[test]
fn integral_cyclic_tensor_alternates() {
    let t = c2_complex();
    let zc = ChainComplex::concentrated(integral_trivial(t.algebra(), Side::Left, 0).unwrap(), 0);
    for d in -4..=4 {
        let h = homology_window(&t, &zc, d).unwrap();
        if d.rem_euclid(2) == 1 {
            assert_eq!(h.to_string(), "Z/2", "degree {d}");
        } else {
            assert!(h.is_zero(), "degree {d}");
        }
    }
}

#[test]
fn shift_commutes_with_tensor() {
    let t = x_complex().truncate_above(0).truncate_below(1);
    let k = ChainComplex::concentrated(residue_field(t.algebra(), Side::Left).unwrap(), 0);
    for d in -1..=3 {
        assert_eq!(homology_window(&t.shift(1), &k, d).unwrap(), homology_window(&t, &k, d - 1).unwrap());
    }
}

#[test]
fn unbounded_pair_is_rejected() {
    let t = x_complex();
    let r = t.algebra().clone();
    let left = ChainComplex::new(
        r.clone(),
        Side::Left,
        0,
        vec![FinModule::regular(r.clone(), Side::Left), FinModule::regular(r.clone(), Side::Left)],
        vec![r.regular_action(Side::Left)[1].clone()],
        Tail::Periodic { period: 1 },
        Tail::Periodic { period: 1 },
    )
    .unwrap();
    assert!(tensor_complexes(&t, &left, 0, 1).is_err());
}
