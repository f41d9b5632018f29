use super::*;
use crate::fixtures::{dual_numbers, integers, residue_field};
use crate::linalg::Domain;

fn two_term_integers() -> ChainComplex {
    let z = integers();
    let m = FinModule::regular(z.clone(), Side::Left);
    let two = Matrix::from_rows_i64(Domain::Integer, &[&[2]]);
    ChainComplex::new(z, Side::Left, 0, vec![m.clone(), m], vec![two], Tail::Zero, Tail::Zero).unwrap()
}

/// All terms `R = 𝔽₂[x]/(x²)`, every differential multiplication by `x`.
fn x_complex() -> ChainComplex {
    let r = dual_numbers(2).unwrap();
    let m = FinModule::regular(r.clone(), Side::Right);
    let x = r.regular_action(Side::Left)[1].clone();
    let p = Tail::Periodic { period: 1 };
    ChainComplex::new(r, Side::Right, 0, vec![m.clone(), m], vec![x], p, p).unwrap()
}

#[test]
fn shift_twists_signs() {
    let c = two_term_integers();
    let s = c.shift(1);
    assert_eq!(s.window(), (1, 2));
    assert_eq!(s.diff(2), Matrix::from_rows_i64(Domain::Integer, &[&[-2]]));
    assert_eq!(c.shift(2).diff(3), c.diff(1));
    assert_eq!(s.shift(-1), c);
    assert_eq!(c.shift(0), c);
}

#[test]
fn integer_homology() {
    let c = two_term_integers();
    assert_eq!(c.homology_at(0).to_string(), "Z/2");
    assert!(c.homology_at(1).is_zero());
    let soft = c.truncate_soft(0).unwrap();
    assert_eq!(soft.window(), (0, 0));
    assert_eq!(soft.module(0).descriptor().to_string(), "Z/2");
    assert_eq!(soft.homology_at(0).to_string(), "Z/2");
}

#[test]
fn periodic_complex_is_acyclic_and_truncates() {
    let t = x_complex();
    for n in -5..=5 {
        assert!(t.homology_at(n).is_zero(), "degree {n}");
    }
    assert!(t.is_acyclic(-3, 3).unwrap().acyclic);
    assert!(t.is_acyclic(0, 1).is_err());
    let above = t.truncate_above(0);
    assert_eq!(above.homology_at(0).dim(), 1);
    for n in 1..6 {
        assert!(above.homology_at(n).is_zero());
    }
    let below = t.truncate_below(-1);
    assert_eq!(below.sup(), Some(-1));
    assert_eq!(below.homology_at(-1).dim(), 1);
    assert!(below.homology_at(-4).is_zero());
    for i in -3..3 {
        assert_eq!(below.module(i).dim() + above.module(i).dim(), t.module(i).dim());
    }
}

#[test]
fn periodicity_of_homology_in_tails() {
    let t = x_complex().truncate_above(0);
    assert_eq!(t.homology_at(7), t.homology_at(8));
}

#[test]
fn identity_on_projective_is_acyclic() {
    let r = dual_numbers(2).unwrap();
    let p = FinModule::regular(r.clone(), Side::Left);
    let id = Matrix::identity(r.domain(), 2);
    let c = ChainComplex::new(r, Side::Left, -1, vec![p.clone(), p], vec![id], Tail::Zero, Tail::Zero).unwrap();
    assert!(c.is_acyclic(-3, 2).unwrap().acyclic);
}

#[test]
fn single_module_is_not_acyclic() {
    let r = dual_numbers(2).unwrap();
    let k = ChainComplex::concentrated(residue_field(&r, Side::Left).unwrap(), 0);
    let cert = k.is_acyclic(-2, 2).unwrap();
    assert!(!cert.acyclic);
    assert_eq!(cert.witness.unwrap().0, 0);
    assert!(ChainComplex::zero(r, Side::Left).is_acyclic(-1, 1).unwrap().acyclic);
}

#[test]
fn square_nonzero_is_rejected() {
    let r = dual_numbers(2).unwrap();
    let m = FinModule::regular(r.clone(), Side::Left);
    let id = Matrix::identity(r.domain(), 2);
    let err = ChainComplex::new(r, Side::Left, 0, vec![m.clone(), m.clone(), m], vec![id.clone(), id], Tail::Zero, Tail::Zero)
        .unwrap_err();
    assert!(err.to_string().contains("d∘d"));
}

#[test]
fn cones() {
    let c = two_term_integers();
    let id = ChainMap::identity(&c);
    let k = cone(&id).unwrap();
    assert!(k.is_acyclic(-3, 4).unwrap().acyclic);
    let les = cone_sequence(&id, -1, 3).unwrap();
    assert!(les.exact());
    // cone of Z --2--> Z as complexes concentrated in degree 0
    let z = integers();
    let zc = ChainComplex::concentrated(FinModule::regular(z, Side::Left), 0);
    let two = ChainMap::new(zc.clone(), zc.clone(), 0, vec![Matrix::from_rows_i64(Domain::Integer, &[&[2]])], Tail::Zero, Tail::Zero)
        .unwrap();
    let k = cone(&two).unwrap();
    assert_eq!(k.homology_at(0).to_string(), "Z/2");
    assert!(k.homology_at(1).is_zero());
    assert!(cone_sequence(&two, -2, 2).unwrap().exact());
    let from_zero = ChainMap::zero(&ChainComplex::zero(integers(), Side::Left), &zc);
    assert_eq!(cone(&from_zero).unwrap().homology_at(0).to_string(), "Z");
}

#[test]
fn periodic_cone_sequence() {
    let t = x_complex();
    let les = cone_sequence(&ChainMap::identity(&t), -2, 2).unwrap();
    assert!(les.exact());
    let half = t.truncate_above(0);
    let id = ChainMap::identity(&half);
    let c = cone(&id).unwrap();
    let (a, b) = c.probe_range();
    assert!(c.is_acyclic(a, b).unwrap().acyclic);
}

#[test]
fn split_kernels() {
    let r = dual_numbers(2).unwrap();
    let f2 = r.domain();
    let p = FinModule::regular(r.clone(), Side::Left);
    let pp = p.direct_sum(&p).unwrap();
    let s = ChainComplex::concentrated(pp.clone(), 0);
    let t = ChainComplex::concentrated(p.clone(), 0);
    let proj = Matrix::hstack(&[&Matrix::identity(f2, 2), &Matrix::zeros(f2, 2, 2)]);
    let f = ChainMap::new(s, t, 0, vec![proj.clone()], Tail::Zero, Tail::Zero).unwrap();
    let k = SplitKernel::new(&f).unwrap();
    assert_eq!(k.kernel.module(0).dim(), 2);
    assert!(section(&proj, &pp, &p).is_ok());
    let id = SplitKernel::new(&ChainMap::identity(&x_complex())).unwrap();
    assert_eq!(id.kernel.module(3).dim(), 0);
}
