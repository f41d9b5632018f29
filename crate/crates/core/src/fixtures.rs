//! Built-in algebras and modules used by the test corpus and the CLI.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{Algebra, AlgebraRef, FinModule, Side};
use crate::error::Result;
use crate::linalg::{Domain, Matrix, Scalar};

fn table(n: usize, entries: &[(usize, usize, usize)]) -> Vec<Vec<Vec<Scalar>>> {
    let mut t = vec![vec![vec![Scalar::zero(); n]; n]; n];
    for &(i, j, k) in entries {
        t[i][j][k] = Scalar::one();
    }
    t
}

fn coords(n: usize, ones: &[usize]) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    for &i in ones {
        v[i] = Scalar::one();
    }
    v
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// `𝔽ₚ[x]/(x²)` on the basis `1, x`, Frobenius via the pairing `1 ↔ x`.
pub fn dual_numbers(p: u64) -> Result<AlgebraRef> {
    let dom = Domain::prime(p)?;
    let products = table(2, &[(0, 0, 0), (0, 1, 1), (1, 0, 1)]);
    let form = Matrix::from_rows_i64(dom, &[&[0, 1], &[1, 0]]);
    let alg = Algebra::new(format!("F{p}[x]/(x^2)"), dom, labels(&["1", "x"]), products, coords(2, &[0]), Some(form), None)?;
    Ok(Arc::new(alg))
}

/// Group algebra `𝔽ₚ[Cₙ]`.
pub fn group_algebra(p: u64, n: usize) -> Result<AlgebraRef> {
    Ok(Arc::new(Algebra::cyclic_group(Domain::prime(p)?, n)?))
}

/// `𝔽ₚ × 𝔽ₚ` on its two idempotents.
pub fn product_field(p: u64) -> Result<AlgebraRef> {
    let dom = Domain::prime(p)?;
    let products = table(2, &[(0, 0, 0), (1, 1, 1)]);
    let alg = Algebra::new(
        format!("F{p} x F{p}"),
        dom,
        labels(&["e1", "e2"]),
        products,
        coords(2, &[0, 1]),
        Some(Matrix::identity(dom, 2)),
        None,
    )?;
    Ok(Arc::new(alg))
}

/// Upper triangular 2×2 matrices over 𝔽ₚ on the basis `E11, E22, E12`.
/// Hereditary and not self-injective.
pub fn upper_triangular(p: u64) -> Result<AlgebraRef> {
    let dom = Domain::prime(p)?;
    let products = table(3, &[(0, 0, 0), (0, 2, 2), (2, 1, 2), (1, 1, 1)]);
    let alg = Algebra::new(format!("T2(F{p})"), dom, labels(&["E11", "E22", "E12"]), products, coords(3, &[0, 1]), None, None)?;
    Ok(Arc::new(alg))
}

pub fn integers() -> AlgebraRef {
    Arc::new(Algebra::ground(Domain::Integer))
}

pub fn ground(domain: Domain) -> AlgebraRef {
    Arc::new(Algebra::ground(domain))
}

/// `ℤ[Cₙ]`.
pub fn integral_group_ring(n: usize) -> Result<AlgebraRef> {
    Ok(Arc::new(Algebra::cyclic_group(Domain::Integer, n)?))
}

/// The one-dimensional module on which every basis element in `acting`
/// acts as the identity and all others act as zero.
pub fn one_dimensional(algebra: &AlgebraRef, side: Side, acting: &[usize]) -> Result<FinModule> {
    let dom = algebra.domain();
    let action = (0..algebra.dim())
        .map(|i| if acting.contains(&i) { Matrix::identity(dom, 1) } else { Matrix::zeros(dom, 1, 1) })
        .collect();
    FinModule::new(algebra.clone(), side, 1, action, None)
}

/// The module where exactly the unit's support acts as one: the residue
/// field `k` of `𝔽ₚ[x]/(x²)`.
pub fn residue_field(algebra: &AlgebraRef, side: Side) -> Result<FinModule> {
    let unit_only: Vec<usize> = (0..algebra.dim()).filter(|&i| !algebra.unit()[i].is_zero()).collect();
    one_dimensional(algebra, side, &unit_only)
}

/// Trivial module of a group algebra: every group element acts as one.
pub fn trivial_group_module(algebra: &AlgebraRef, side: Side) -> Result<FinModule> {
    one_dimensional(algebra, side, &(0..algebra.dim()).collect::<Vec<_>>())
}

/// `ℤ/m` (or `ℤ` for `m = 0`) with trivial action of the group ring `ℤ[Cₙ]`.
pub fn integral_trivial(algebra: &AlgebraRef, side: Side, m: i64) -> Result<FinModule> {
    let dom = algebra.domain();
    let action = vec![Matrix::identity(dom, 1); algebra.dim()];
    let rels = if m == 0 { Matrix::zeros(dom, 1, 0) } else { Matrix::from_rows_i64(dom, &[&[m]]) };
    FinModule::new(algebra.clone(), side, 1, action, Some(rels))
}
