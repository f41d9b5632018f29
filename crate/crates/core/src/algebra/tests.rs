use std::sync::Arc;

use super::*;
use crate::fixtures::{dual_numbers, group_algebra, product_field, residue_field, upper_triangular};
use crate::linalg::Domain;

#[test]
fn dual_numbers_are_frobenius() {
    let r = dual_numbers(2).unwrap();
    assert!(r.is_frobenius());
    assert_eq!(r.idempotents().len(), 1);
    assert!(group_algebra(2, 2).unwrap().is_frobenius());
}

#[test]
fn associativity_violation_is_reported() {
    let f2 = Domain::prime(2).unwrap();
    let z = || vec![Scalar::zero(), Scalar::zero()];
    let e = |i: usize| unit_vector(2, i);
    // a·a = b, a·b = b·a = b, b·b = 0: (a·a)·b = 0 but a·(a·b) = b
    let products = vec![vec![e(1), e(1)], vec![e(1), z()]];
    let err = Algebra::new("bad", f2, vec!["a".into(), "b".into()], products, e(0), None, None).unwrap_err();
    assert!(err.to_string().contains("associativity fails at (1,1,2)"), "{err}");
}

#[test]
fn singular_form_is_rejected() {
    let f2 = Domain::prime(2).unwrap();
    let r = dual_numbers(2).unwrap();
    let products: Vec<Vec<Vec<Scalar>>> =
        (0..2).map(|i| (0..2).map(|j| r.product(i, j).to_vec()).collect()).collect();
    let form = Matrix::from_rows_i64(f2, &[&[1, 0], &[0, 0]]);
    assert!(Algebra::new("x", f2, r.labels().to_vec(), products, r.unit().to_vec(), Some(form), None).is_err());
}

#[test]
fn residue_field_tensor_and_hom() {
    let r = dual_numbers(2).unwrap();
    let k_right = residue_field(&r, Side::Right).unwrap();
    let k_left = residue_field(&r, Side::Left).unwrap();
    assert_eq!(module_tensor(&k_right, &k_left).unwrap().descriptor().rank, 1);
    let regular = FinModule::regular(r.clone(), Side::Left);
    assert_eq!(module_tensor(&FinModule::regular(r.clone(), Side::Right), &regular).unwrap().descriptor().rank, 2);
    let zero = FinModule::zero(r.clone(), Side::Right);
    assert_eq!(module_tensor(&zero, &k_left).unwrap().descriptor().rank, 0);
    assert!(module_tensor(&k_left, &k_left).is_err());
    // Hom(k, R) is the socle
    let hom = hom_space(&k_right, &FinModule::regular(r.clone(), Side::Right)).unwrap();
    assert_eq!(hom.dim(), 1);
    assert_eq!(hom_space(&regular, &k_left).unwrap().dim(), 1);
    assert_eq!(hom_space(&k_left, &FinModule::zero(r, Side::Left)).unwrap().dim(), 0);
}

#[test]
fn regular_module_is_self_dual_over_frobenius_algebras() {
    for r in [dual_numbers(2).unwrap(), group_algebra(2, 2).unwrap(), dual_numbers(3).unwrap()] {
        let left = FinModule::regular(r.clone(), Side::Left);
        let d = dual(&FinModule::regular(r.clone(), Side::Right)).unwrap();
        let iso = find_isomorphism(&left, &d).unwrap().expect("D(R) ≅ R");
        assert!(left.is_linear_map(&d, &iso));
        let dd = dual(&dual(&left).unwrap()).unwrap();
        assert!(find_isomorphism(&left, &dd).unwrap().is_some());
    }
}

#[test]
fn injectives_of_small_algebras() {
    let r = dual_numbers(2).unwrap();
    let inj = indecomposable_injectives(&r, Side::Left).unwrap();
    assert_eq!(inj.len(), 1);
    assert!(find_isomorphism(&inj[0], &FinModule::regular(r, Side::Left)).unwrap().is_some());
    let s = product_field(2).unwrap();
    let inj = indecomposable_injectives(&s, Side::Left).unwrap();
    assert_eq!(inj.iter().map(FinModule::dim).collect::<Vec<_>>(), vec![1, 1]);
    let t = upper_triangular(2).unwrap();
    assert_eq!(t.idempotents().len(), 2);
    let inj = indecomposable_injectives(&t, Side::Left).unwrap();
    assert_eq!(inj.iter().map(FinModule::dim).sum::<usize>(), 3);
}

#[test]
fn hom_to_regular_carries_opposite_structure() {
    let r = dual_numbers(2).unwrap();
    let k = residue_field(&r, Side::Right).unwrap();
    let (h, _) = hom_to_regular(&k).unwrap();
    assert_eq!(h.side(), Side::Left);
    assert_eq!(h.dim(), 1);
    let (hr, _) = hom_to_regular(&FinModule::regular(r.clone(), Side::Right)).unwrap();
    assert!(find_isomorphism(&hr, &FinModule::regular(r, Side::Left)).unwrap().is_some());
}

#[test]
fn generators_and_covers() {
    let r = dual_numbers(2).unwrap();
    let free = FinModule::free(r.clone(), Side::Left, 2);
    assert_eq!(free.generators().cols(), 2);
    let k = residue_field(&r, Side::Left).unwrap();
    let (p, phi) = k.cover(&k.generators());
    assert_eq!(p.dim(), 2);
    assert!(p.is_linear_map(&k, &phi));
    let x0 = Matrix::identity(r.domain(), 4).select_columns(&[1]);
    let (q, proj) = free.quotient(&free.generated(&x0)).unwrap();
    assert_eq!(q.dim(), 3);
    assert!(free.is_linear_map(&q, &proj));
}

#[test]
fn integral_modules_keep_torsion() {
    let z = crate::fixtures::integers();
    let m = FinModule::over_ground(z, 1, Matrix::from_rows_i64(Domain::Integer, &[&[2]])).unwrap();
    assert_eq!(m.descriptor().to_string(), "Z/2");
    let zc = crate::fixtures::integral_group_ring(3).unwrap();
    let t = crate::fixtures::integral_trivial(&zc, Side::Left, 0).unwrap();
    let tr = crate::fixtures::integral_trivial(&zc, Side::Right, 0).unwrap();
    assert_eq!(module_tensor(&tr, &t).unwrap().descriptor().to_string(), "Z");
    let _ = Arc::strong_count(&zc);
}
