use super::*;
use crate::algebra::{FinModule, Side};
use crate::complex::ChainComplex;
use crate::fixtures;
use crate::hom::hom_complex;
use crate::linalg::{Domain, Matrix};
use num_traits::Signed;

#[test]
fn residue_field_of_dual_numbers_has_period_one() {
    let alg = fixtures::dual_numbers(2).unwrap();
    let k = fixtures::residue_field(&alg, Side::Right).unwrap();
    let p = projective_resolution(&k, 24).unwrap();
    assert_eq!(p.closure, Closure::Periodic { repeat: 0, period: 1 });
    for i in 0..6 {
        assert_eq!(p.complex.module(i).dim(), 2);
    }
    for i in 1..6 {
        let d = p.complex.diff(i);
        assert!(!d.is_zero());
        assert!(d.mul(&d).is_zero());
    }
    assert_eq!(p.complex.homology_at(0).dim(), 1);
    for i in 1..6 {
        assert!(p.complex.homology_at(i).is_zero(), "degree {i}");
    }
}

#[test]
fn integral_resolution_of_z_mod_two() {
    let z = fixtures::integers();
    let m = FinModule::over_ground(z, 1, Matrix::from_rows_i64(Domain::Integer, &[&[2]])).unwrap();
    let p = truncated_resolution(&m, 5).unwrap();
    assert_eq!(p.closure, Closure::Finite { length: 1 });
    let d = p.complex.diff(1);
    assert_eq!(d.get(0, 0).abs(), Domain::Integer.from_i64(2));
    assert_eq!(p.complex.homology_at(0).to_string(), "Z/2");
}

#[test]
fn splice_of_residue_field_is_regular_everywhere() {
    let alg = fixtures::dual_numbers(3).unwrap();
    let k = fixtures::residue_field(&alg, Side::Right).unwrap();
    let cr = complete_resolution(&k).unwrap();
    cr.validate().unwrap();
    for i in -5..5 {
        assert_eq!(cr.totally_acyclic.module(i).dim(), 2, "degree {i}");
    }
    assert_eq!(cr.sharp_threshold(), Some(0));
    assert_eq!(cr.kernel().sup(), Some(-1));
    let r = FinModule::regular(alg.clone(), Side::Right);
    let h = hom_complex(&cr.totally_acyclic, &r).unwrap();
    let (a, b) = h.probe_range();
    assert!(h.is_acyclic(a, b).unwrap().acyclic);
}

#[test]
fn cyclic_fixture_alternates() {
    let alg = fixtures::integral_group_ring(2).unwrap();
    let cr = cyclic_group_complete_resolution(&alg, Side::Right).unwrap();
    cr.validate().unwrap();
    let t = &cr.totally_acyclic;
    let odd = Matrix::from_rows_i64(Domain::Integer, &[&[-1, 1], &[1, -1]]);
    let even = Matrix::from_rows_i64(Domain::Integer, &[&[1, 1], &[1, 1]]);
    for i in -3i64..5 {
        let expected = if i.rem_euclid(2) == 1 { &odd } else { &even };
        assert_eq!(&t.diff(i), expected, "degree {i}");
    }
    let via_dispatch = complete_resolution(&fixtures::integral_trivial(&alg, Side::Right, 0).unwrap()).unwrap();
    assert_eq!(via_dispatch.threshold, 0);
}

#[test]
fn finite_dimension_construction_over_triangular_matrices() {
    let alg = fixtures::upper_triangular(2).unwrap();
    for side in [Side::Right, Side::Left] {
        for acting in [[0usize], [1]] {
            let s = fixtures::one_dimensional(&alg, side, &acting).unwrap();
            let p = closed_resolution(&s, 8).unwrap();
            let d = p.length().unwrap() as i64;
            let cr = complete_resolution(&s).unwrap();
            cr.validate().unwrap();
            assert_eq!(cr.threshold, d);
            assert_eq!(cr.sharp_threshold(), Some(d));
            // 0 → K → T → P → 0 with T acyclic puts M in degree −1 of K
            assert_eq!(cr.kernel().homology_at(-1), s.descriptor());
            assert!(cr.kernel().homology_at(0).is_zero());
            let r = FinModule::regular(alg.clone(), side);
            let h = hom_complex(&cr.totally_acyclic, &r).unwrap();
            let (a, b) = h.probe_range();
            assert!(h.is_acyclic(a, b).unwrap().acyclic);
        }
    }
}

#[test]
fn shifted_resolution_moves_threshold() {
    let alg = fixtures::dual_numbers(2).unwrap();
    let k = fixtures::residue_field(&alg, Side::Right).unwrap();
    let cr = complete_resolution(&k).unwrap().shift(2);
    cr.validate().unwrap();
    assert_eq!(cr.sharp_threshold(), Some(2));
    assert_eq!(cr.resolved.homology_at(2).dim(), 1);
}

#[test]
fn projectivity_test() {
    let alg = fixtures::upper_triangular(2).unwrap();
    let r = FinModule::regular(alg.clone(), Side::Right);
    assert!(is_projective(&r).unwrap());
    let dual = fixtures::dual_numbers(2).unwrap();
    assert!(!is_projective(&fixtures::residue_field(&dual, Side::Left).unwrap()).unwrap());
}

#[test]
fn assembled_resolution_of_frobenius_complex_is_itself() {
    let alg = fixtures::dual_numbers(2).unwrap();
    let r = FinModule::regular(alg.clone(), Side::Right);
    let id = Matrix::identity(Domain::prime(2).unwrap(), 2);
    let m = ChainComplex::new(alg, Side::Right, -1, vec![r.clone(), r], vec![id], crate::complex::Tail::Zero, crate::complex::Tail::Zero).unwrap();
    let a = assemble_complex_resolution(&m).unwrap();
    assert_eq!(a.cover.sup(), Some(0));
    assert_eq!(a.kernel.sup(), Some(i64::MIN));
}

#[test]
fn assembled_resolution_over_triangular_matrices() {
    let alg = fixtures::upper_triangular(2).unwrap();
    let dom = Domain::prime(2).unwrap();
    let r = FinModule::regular(alg.clone(), Side::Right);
    // E11·R = span{E11, E12}
    let e1r = r.submodule(&Matrix::from_rows_i64(dom, &[&[1, 0], &[0, 0], &[0, 1]])).unwrap();
    let s1 = fixtures::one_dimensional(&alg, Side::Right, &[0]).unwrap();
    let top = Matrix::from_rows_i64(dom, &[&[1, 0]]);
    let m = ChainComplex::new(alg, Side::Right, 0, vec![s1, e1r], vec![top], crate::complex::Tail::Zero, crate::complex::Tail::Zero).unwrap();
    let a = assemble_complex_resolution(&m).unwrap();
    for i in -2..5 {
        assert_eq!(a.resolved.homology_at(i), m.homology_at(i), "degree {i}");
        assert_eq!(a.cover.homology_at(i), m.homology_at(i), "degree {i}");
    }
    let (lo, hi) = a.kernel.probe_range();
    assert!(a.kernel.is_acyclic(lo, hi).unwrap().acyclic);
    assert!(a.cover.sup().unwrap() <= 2);
}

