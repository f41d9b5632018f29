use super::*;
use crate::algebra::{FinModule, Side};
use crate::complex::Tail;
use crate::fixtures;
use crate::linalg::{Domain, Matrix};

fn k_pair() -> (FinModule, FinModule) {
    let alg = fixtures::dual_numbers(2).unwrap();
    (fixtures::residue_field(&alg, Side::Right).unwrap(), fixtures::residue_field(&alg, Side::Left).unwrap())
}

fn integral_pair() -> (FinModule, FinModule) {
    let alg = fixtures::integral_group_ring(2).unwrap();
    (fixtures::integral_trivial(&alg, Side::Right, 0).unwrap(), fixtures::integral_trivial(&alg, Side::Left, 0).unwrap())
}

fn assert_pass(r: &CheckReport) {
    let failing: Vec<_> = r.failing_rows().collect();
    assert!(r.pass, "{} failed: {failing:#?}", r.check);
}

#[test]
fn tate_balance_on_residue_field() {
    let (m, n) = k_pair();
    let r = check_balance_tate(&m, &n, (-3, 3)).unwrap();
    assert_pass(&r);
    assert!(r.rows.iter().filter(|row| row.relation == Relation::Iso).all(|row| row.left == "k"));
}

#[test]
fn tate_balance_on_integral_group_ring_alternates() {
    let (m, n) = integral_pair();
    let r = check_balance_tate(&m, &n, (-2, 3)).unwrap();
    assert_pass(&r);
    let first: Vec<_> = r.rows.iter().filter(|row| row.label == "H(T_M ⊗ N) vs H(M ⊗ T_N)").map(|row| row.left.as_str()).collect();
    assert_eq!(first, ["0", "Z/2", "0", "Z/2", "0", "Z/2"]);
}

#[test]
fn tate_balance_of_projective_is_zero() {
    let alg = fixtures::dual_numbers(2).unwrap();
    let r = FinModule::regular(alg.clone(), Side::Right);
    let k = fixtures::residue_field(&alg, Side::Left).unwrap();
    let report = check_balance_tate(&r, &k, (-2, 2)).unwrap();
    assert_pass(&report);
    assert!(report.rows.iter().all(|row| row.left == "0"));
}

#[test]
fn unbounded_balance_pairs() {
    let (m, n) = k_pair();
    assert_pass(&check_balance_unbounded(&m, &n, (-3, 3)).unwrap());
    let alg = fixtures::upper_triangular(2).unwrap();
    let s = fixtures::one_dimensional(&alg, Side::Right, &[0]).unwrap();
    let e = crate::algebra::indecomposable_injectives(&alg, Side::Left).unwrap();
    for inj in &e {
        assert_pass(&check_balance_unbounded(&s, inj, (-2, 3)).unwrap());
    }
    let zero = FinModule::zero(m.algebra().clone(), Side::Right);
    let r = check_balance_unbounded(&zero, &n, (-2, 2)).unwrap();
    assert_pass(&r);
    assert!(r.rows.iter().all(|row| row.left == "0"));
}

#[test]
fn theorem_c_all_k_sequence() {
    let (m, n) = k_pair();
    let r = check_theorem_c(&m, &n).unwrap();
    assert_pass(&r);
    let isos: Vec<_> = r.rows.iter().filter(|row| row.relation == Relation::Iso).map(|row| row.left.as_str()).collect();
    assert!(isos.iter().all(|v| *v == "k"), "{isos:?}");
}

#[test]
fn theorem_c_degenerate_for_projectives() {
    let alg = fixtures::dual_numbers(2).unwrap();
    let r = check_theorem_c(&FinModule::regular(alg.clone(), Side::Right), &fixtures::residue_field(&alg, Side::Left).unwrap()).unwrap();
    assert_pass(&r);
    let zalg = fixtures::integral_group_ring(2).unwrap();
    let n = fixtures::integral_trivial(&zalg, Side::Left, 0).unwrap();
    let r = check_theorem_c(&FinModule::regular(zalg.clone(), Side::Right), &n).unwrap();
    assert_pass(&r);
}

#[test]
fn theorem_c_rejects_positive_dimension() {
    let alg = fixtures::upper_triangular(2).unwrap();
    let s = fixtures::one_dimensional(&alg, Side::Right, &[0]).unwrap();
    let n = fixtures::one_dimensional(&alg, Side::Left, &[0]).unwrap();
    assert!(matches!(check_theorem_c(&s, &n), Err(crate::Error::Hypothesis(_))));
}

#[test]
fn stable_sequences_on_residue_field() {
    let (m, n) = k_pair();
    let r = check_stor_sequences(&m, &n, &[-1, 0, 2], (-2, 3)).unwrap();
    assert_pass(&r);
    assert!(r.rows.iter().any(|row| row.label.contains("bTor_1(Co T, N) vanishes")));
}

#[test]
fn stable_sequences_over_integral_group_ring() {
    let (m, n) = integral_pair();
    assert_pass(&check_stor_sequences(&m, &n, &[0, 1], (-2, 2)).unwrap());
}

#[test]
fn stable_sequences_for_projective() {
    let alg = fixtures::upper_triangular(2).unwrap();
    let p = fixtures::one_dimensional(&alg, Side::Right, &[1]).unwrap();
    let n = fixtures::one_dimensional(&alg, Side::Left, &[0]).unwrap();
    assert_pass(&check_stor_sequences(&p, &n, &[0], (-2, 2)).unwrap());
}

#[test]
fn relative_comparison_instances() {
    let (m, n) = k_pair();
    let r = check_relative_comparison(&m, &n, (-2, 4)).unwrap();
    assert_pass(&r);
    let alg = fixtures::upper_triangular(2).unwrap();
    let s = fixtures::one_dimensional(&alg, Side::Right, &[0]).unwrap();
    for acting in [[0], [1]] {
        let n = fixtures::one_dimensional(&alg, Side::Left, &acting).unwrap();
        assert_pass(&check_relative_comparison(&s, &n, (0, 3)).unwrap());
    }
}

#[test]
fn vanishing_for_residue_field_and_acyclic() {
    let (m, n) = k_pair();
    let mc = ChainComplex::concentrated(m, 0);
    let r = check_vanishing_and_dim_formulas(&mc, &[n], (-2, 3)).unwrap();
    assert_pass(&r);
    let alg = fixtures::dual_numbers(2).unwrap();
    let reg = FinModule::regular(alg.clone(), Side::Right);
    let id = Matrix::identity(Domain::prime(2).unwrap(), 2);
    let intro = ChainComplex::new(alg.clone(), Side::Right, -1, vec![reg.clone(), reg], vec![id], Tail::Zero, Tail::Zero).unwrap();
    let r = check_vanishing_and_dim_formulas(&intro, &[], (-2, 3)).unwrap();
    assert_pass(&r);
    let b = check_theorem_b(&intro).unwrap();
    assert_pass(&b);
    assert!(b.rows[0].label.contains("strict"));
}

#[test]
fn report_json_is_deterministic() {
    let (m, n) = k_pair();
    let a = serde_json::to_string(&check_theorem_c(&m, &n).unwrap()).unwrap();
    let b = serde_json::to_string(&check_theorem_c(&m, &n).unwrap()).unwrap();
    assert_eq!(a, b);
    assert!(!a.contains("runtime"));
}
