mod common;

use gorhom::algebra::{FinModule, Side};
use gorhom::complex::{cone, cone_sequence, ChainComplex, ChainMap};
use gorhom::corpus::builtin_corpus;
use gorhom::fixtures;
use gorhom::functors::{tate_tor, tor_from_resolution};
use gorhom::gdim::{gfd_detect, DimValue};
use gorhom::linalg::{kernel, rank, Domain, Matrix};
use gorhom::resolution::{complete_resolution, projective_resolution};
use gorhom::tensor::{homology_window, tensor_complexes};
use proptest::prelude::*;

fn f2() -> Domain {
    Domain::prime(2).unwrap()
}

/// A left module over `𝔽₂[x]/(x²)` of dimension at most 3, from the bits of
/// `x`'s matrix; `None` unless `x² = 0`.
fn dual_module(dim: usize, bits: u32) -> Option<FinModule> {
    let alg = fixtures::dual_numbers(2).unwrap();
    let x = Matrix::from_i64(f2(), dim, dim, &(0..dim * dim).map(|b| ((bits >> b) & 1) as i64).collect::<Vec<_>>());
    if !x.mul(&x).is_zero() {
        return None;
    }
    FinModule::new(alg, Side::Left, dim, vec![Matrix::identity(f2(), dim), x], None).ok()
}

/// `cone(id)` of the regular module placed in degree `j`: contractible.
fn contractible(alg: &gorhom::algebra::AlgebraRef, side: Side, j: i64) -> ChainComplex {
    let r = ChainComplex::concentrated(FinModule::regular(alg.clone(), side), j);
    cone(&ChainMap::identity(&r)).unwrap()
}

fn gfd(c: &ChainComplex) -> DimValue {
    gfd_detect(c).unwrap().value
}

fn dual_complexes() -> Vec<ChainComplex> {
    let corpus = builtin_corpus().unwrap();
    ["intro", "D_k", "D_x", "D_xx", "D_aug"].iter().map(|id| corpus.complexes[*id].clone()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tensor_differential_squares_to_zero(seed in any::<u64>(), field in 0usize..3, lm in 1usize..5, ln in 1usize..5) {
        let mut rng = common::rng(seed);
        let alg = common::ground(common::FIELDS[field]);
        let m = common::random_complex(&mut rng, &alg, Side::Right, -1, lm, 3);
        let n = common::random_complex(&mut rng, &alg, Side::Left, 0, ln, 3);
        let t = tensor_complexes(&m, &n, -2, 6).unwrap().complex;
        for d in -1..=6 {
            prop_assert!(t.diff(d - 1).mul(&t.diff(d)).is_zero(), "degree {}", d);
        }
    }

    #[test]
    fn rank_plus_nullity(seed in any::<u64>(), field in 0usize..3, r in 0usize..6, c in 0usize..6) {
        let mut rng = common::rng(seed);
        let a = common::random_matrix(&mut rng, common::FIELDS[field], r, c);
        let k = kernel(&a);
        prop_assert_eq!(rank(&a) + k.cols(), c);
        prop_assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn tor_ignores_contractible_summands(dim in 0usize..4, bits in 0u32..512, j in 0i64..3, i in 0i64..4) {
        let Some(n) = dual_module(dim, bits) else { return Ok(()) };
        let alg = n.algebra().clone();
        let k = fixtures::residue_field(&alg, Side::Right).unwrap();
        let p = projective_resolution(&k, 6).unwrap().complex;
        let padded = p.direct_sum(&contractible(&alg, Side::Right, j)).unwrap();
        let nc = ChainComplex::concentrated(n, 0);
        prop_assert_eq!(tor_from_resolution(&p, &nc, i).unwrap().group, tor_from_resolution(&padded, &nc, i).unwrap().group);
    }

    #[test]
    fn tate_ignores_contractible_summands(dim in 0usize..4, bits in 0u32..512, j in -3i64..3, i in -3i64..4) {
        let Some(n) = dual_module(dim, bits) else { return Ok(()) };
        let alg = n.algebra().clone();
        let cr = complete_resolution(&fixtures::residue_field(&alg, Side::Right).unwrap()).unwrap();
        let padded = cr.totally_acyclic.direct_sum(&contractible(&alg, Side::Right, j)).unwrap();
        let nc = ChainComplex::concentrated(n, 0);
        prop_assert_eq!(tate_tor(&cr, &nc, i).unwrap().group, homology_window(&padded, &nc, i).unwrap());
    }

    #[test]
    fn dimension_shifts_with_the_complex(which in 0usize..5, s in -3i64..4) {
        let c = &dual_complexes()[which];
        let shifted = gfd(&c.shift(s));
        match gfd(c) {
            DimValue::Exact(g) => prop_assert_eq!(shifted, DimValue::Exact(g + s)),
            other => prop_assert_eq!(shifted, other),
        }
    }

    #[test]
    fn dimension_of_sum_is_the_max(a in 0usize..5, b in 0usize..5, s in -2i64..3) {
        let cs = dual_complexes();
        let (x, y) = (&cs[a], &cs[b].shift(s));
        let sum = gfd(&x.direct_sum(y).unwrap());
        let expected = match (gfd(x), gfd(y)) {
            (DimValue::NegInfinity, v) | (v, DimValue::NegInfinity) => v,
            (DimValue::Exact(g), DimValue::Exact(h)) => DimValue::Exact(g.max(h)),
            other => panic!("inexact dimensions {other:?}"),
        };
        prop_assert_eq!(sum, expected);
    }

    #[test]
    fn cone_sequence_is_exact(seed in any::<u64>(), field in 0usize..3, len in 1usize..5) {
        let mut rng = common::rng(seed);
        let alg = common::ground(common::FIELDS[field]);
        let c = common::random_complex(&mut rng, &alg, Side::Left, -1, len, 3);
        let f = common::random_chain_map(&mut rng, &c);
        prop_assert!(cone_sequence(&f, -2, 4).unwrap().exact());
    }
}
