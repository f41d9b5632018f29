use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{Algebra, AlgebraRef};
use crate::error::{Error, Result};
use crate::linalg::{inverse, solve_matrix, span_basis, Domain, HomologyGroup, Matrix, Presented, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// A one-sided module presented as `𝕜^dim / span(rels)`, with one action
/// matrix per algebra basis element acting on the generator coordinates.
/// Over a field `rels` is usually empty; ℤ-modules carry their torsion there.
#[derive(Clone, Debug)]
pub struct FinModule {
    algebra: AlgebraRef,
    side: Side,
    dim: usize,
    action: Vec<Matrix>,
    rels: Matrix,
}

impl PartialEq for FinModule {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra)
            && self.side == other.side
            && self.dim == other.dim
            && self.action == other.action
            && self.rels == other.rels
    }
}

impl Eq for FinModule {}

pub(crate) fn same_algebra(a: &AlgebraRef, b: &AlgebraRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FinModule {
    pub fn new(algebra: AlgebraRef, side: Side, dim: usize, action: Vec<Matrix>, rels: Option<Matrix>) -> Result<Self> {
        let dom = algebra.domain();
        let n = algebra.dim();
        if action.len() != n {
            return Err(Error::Module(format!("expected {n} action matrices, got {}", action.len())));
        }
        for (i, a) in action.iter().enumerate() {
            if a.shape() != (dim, dim) || a.domain() != dom {
                return Err(Error::Module(format!("action matrix {} must be {dim}x{dim} over {dom}", i + 1)));
            }
        }
        let rels = rels.unwrap_or_else(|| Matrix::zeros(dom, dim, 0));
        if rels.rows() != dim || rels.domain() != dom {
            return Err(Error::Module(format!("relations must have {dim} rows over {dom}")));
        }
        let m = FinModule { algebra, side, dim, action, rels };
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(algebra: AlgebraRef, side: Side, dim: usize, action: Vec<Matrix>, rels: Matrix) -> Self {
        FinModule { algebra, side, dim, action, rels }
    }

    fn validate(&self) -> Result<()> {
        let alg = &self.algebra;
        let dom = alg.domain();
        if self.act(alg.unit()) != Matrix::identity(dom, self.dim) {
            return Err(Error::Module("the unit does not act as the identity".into()));
        }
        let n = alg.dim();
        for i in 0..n {
            for j in 0..n {
                let composite = match self.side {
                    Side::Left => self.action[i].mul(&self.action[j]),
                    Side::Right => self.action[j].mul(&self.action[i]),
                };
                if composite != self.act(alg.product(i, j)) {
                    return Err(Error::Module(format!(
                        "action does not respect the product of basis elements {} and {}",
                        i + 1,
                        j + 1
                    )));
                }
            }
            if self.rels.cols() > 0 && solve_matrix(&self.rels, &self.action[i].mul(&self.rels)).is_none() {
                return Err(Error::Module(format!("relations are not stable under basis element {}", i + 1)));
            }
        }
        Ok(())
    }

    pub fn zero(algebra: AlgebraRef, side: Side) -> Self {
        let dom = algebra.domain();
        let action = vec![Matrix::zeros(dom, 0, 0); algebra.dim()];
        FinModule { algebra, side, dim: 0, action, rels: Matrix::zeros(dom, 0, 0) }
    }

    pub fn regular(algebra: AlgebraRef, side: Side) -> Self {
        Self::free(algebra, side, 1)
    }

    /// `Rᵏ`, with coordinate `j·dim R + b` for basis element `b` of copy `j`.
    pub fn free(algebra: AlgebraRef, side: Side, k: usize) -> Self {
        let dom = algebra.domain();
        let id = Matrix::identity(dom, k);
        let action: Vec<Matrix> = algebra.regular_action(side).iter().map(|a| id.kron(a)).collect();
        let dim = k * algebra.dim();
        FinModule { algebra, side, dim, action, rels: Matrix::zeros(dom, dim, 0) }
    }

    /// A ℤ- or 𝕜-module over the ground algebra with the given relations.
    pub fn over_ground(algebra: AlgebraRef, gens: usize, rels: Matrix) -> Result<Self> {
        if algebra.dim() != 1 {
            return Err(Error::Module("ground modules need a one-dimensional algebra".into()));
        }
        let dom = algebra.domain();
        Self::new(algebra, Side::Left, gens, vec![Matrix::identity(dom, gens)], Some(rels))
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn domain(&self) -> Domain {
        self.algebra.domain()
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.action[i]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    pub fn rels(&self) -> &Matrix {
        &self.rels
    }

    pub fn has_relations(&self) -> bool {
        self.rels.cols() > 0
    }

    pub fn presented(&self) -> Presented {
        Presented { gens: self.dim, rels: self.rels.clone() }
    }

    /// Isomorphism class of the underlying 𝕜-module.
    pub fn descriptor(&self) -> HomologyGroup {
        self.presented().descriptor()
    }

    /// Action matrix of an arbitrary algebra element.
    pub fn act(&self, a: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(self.domain(), self.dim, self.dim);
        for (c, m) in a.iter().zip(&self.action) {
            if !c.is_zero() {
                out = out.add(&m.scale(c));
            }
        }
        out
    }

    pub fn direct_sum(&self, other: &FinModule) -> Result<FinModule> {
        self.compatible(other)?;
        let dom = self.domain();
        let action = self.action.iter().zip(&other.action).map(|(a, b)| Matrix::block_diag(dom, &[a, b])).collect();
        let rels = Matrix::block_diag(dom, &[&self.rels, &other.rels]);
        Ok(FinModule::new_unchecked(self.algebra.clone(), self.side, self.dim + other.dim, action, rels))
    }

    pub(crate) fn compatible(&self, other: &FinModule) -> Result<()> {
        if !same_algebra(&self.algebra, &other.algebra) {
            return Err(Error::Module("modules live over different algebras".into()));
        }
        if self.side != other.side {
            return Err(Error::Module("modules have different sides".into()));
        }
        Ok(())
    }

    /// Whether `f` (target.dim × self.dim) is a well-defined module map.
    pub fn is_linear_map(&self, target: &FinModule, f: &Matrix) -> bool {
        if f.shape() != (target.dim, self.dim) {
            return false;
        }
        let rel_ok = |m: &Matrix| m.cols() == 0 || m.is_zero() || solve_matrix(&target.rels, m).is_some();
        if !rel_ok(&f.mul(&self.rels)) {
            return false;
        }
        self.action.iter().zip(&target.action).all(|(a, b)| rel_ok(&f.mul(a).sub(&b.mul(f))))
    }

    /// Columns spanning the submodule generated by the columns of `v`.
    pub fn generated(&self, v: &Matrix) -> Matrix {
        let parts: Vec<Matrix> = self.action.iter().map(|a| a.mul(v)).collect();
        let refs: Vec<&Matrix> = parts.iter().collect();
        Matrix::hstack(&refs)
    }

    fn spans_everything(&self, v: &Matrix) -> bool {
        let all = Matrix::hstack(&[&self.generated(v), &self.rels]);
        self.dim == 0 || solve_matrix(&all, &Matrix::identity(self.domain(), self.dim)).is_some()
    }

    /// Generators chosen greedily among standard basis vectors and then
    /// pruned to an irredundant set; minimal when the algebra is local.
    pub fn generators(&self) -> Matrix {
        let dom = self.domain();
        let mut chosen: Vec<usize> = Vec::new();
        let id = Matrix::identity(dom, self.dim);
        for j in 0..self.dim {
            let current = Matrix::hstack(&[&self.generated(&id.select_columns(&chosen)), &self.rels]);
            if solve_matrix(&current, &id.select_columns(&[j])).is_none() {
                chosen.push(j);
            }
        }
        let mut k = 0;
        while k < chosen.len() {
            let mut rest = chosen.clone();
            rest.remove(k);
            if self.spans_everything(&id.select_columns(&rest)) {
                chosen = rest;
            } else {
                k += 1;
            }
        }
        id.select_columns(&chosen)
    }

    /// The free module on the given generators and the covering map onto `self`.
    pub fn cover(&self, gens: &Matrix) -> (FinModule, Matrix) {
        let k = gens.cols();
        let n = self.algebra.dim();
        let free = FinModule::free(self.algebra.clone(), self.side, k);
        let mut cols = Vec::with_capacity(k * n);
        for j in 0..k {
            let v = gens.column(j);
            for a in &self.action {
                cols.push(a.mul_vec(&v));
            }
        }
        (free, Matrix::from_columns(self.domain(), self.dim, &cols))
    }

    /// `e R` for a right module, `R e` for a left module, with its basis as
    /// columns in the regular module. Field only.
    pub fn principal_projective(algebra: &AlgebraRef, side: Side, e: &[Scalar]) -> Result<(FinModule, Matrix)> {
        let mult = algebra.multiplication_matrix(side.opposite(), e);
        let basis = span_basis(&mult);
        let module = FinModule::regular(algebra.clone(), side).submodule(&basis)?;
        Ok((module, basis))
    }

    /// Generators lying in the pieces `M e_i` (right) or `e_i M` (left) for the
    /// primitive idempotents, chosen greedily and pruned; each comes with the
    /// index of its idempotent.
    pub fn homogeneous_generators(&self) -> Vec<(usize, Vec<Scalar>)> {
        let dom = self.domain();
        let mut candidates = Vec::new();
        for (i, e) in self.algebra.idempotents().iter().enumerate() {
            let piece = self.act(e);
            if piece.is_zero() {
                continue;
            }
            let basis = span_basis(&piece);
            for j in 0..basis.cols() {
                candidates.push((i, basis.column(j)));
            }
        }
        let as_matrix = |set: &[(usize, Vec<Scalar>)]| {
            let cols: Vec<Vec<Scalar>> = set.iter().map(|(_, v)| v.clone()).collect();
            Matrix::from_columns(dom, self.dim, &cols)
        };
        let mut chosen: Vec<(usize, Vec<Scalar>)> = Vec::new();
        for c in candidates {
            let current = Matrix::hstack(&[&self.generated(&as_matrix(&chosen)), &self.rels]);
            let target = Matrix::from_columns(dom, self.dim, std::slice::from_ref(&c.1));
            if current.cols() == 0 || solve_matrix(&current, &target).is_none() {
                chosen.push(c);
            }
        }
        let mut k = 0;
        while k < chosen.len() {
            let mut rest = chosen.clone();
            rest.remove(k);
            if self.spans_everything(&as_matrix(&rest)) {
                chosen = rest;
            } else {
                k += 1;
            }
        }
        chosen
    }

    /// A projective cover: free over a local algebra, a sum of principal
    /// projectives `e_i R` otherwise.
    pub fn projective_cover(&self) -> Result<(FinModule, Matrix)> {
        let alg = &self.algebra;
        if alg.idempotents().len() <= 1 || !self.domain().is_field() {
            return Ok(self.cover(&self.generators()));
        }
        let mut total = FinModule::zero(alg.clone(), self.side);
        let mut cols = Vec::new();
        for (i, v) in self.homogeneous_generators() {
            let (p, basis) = FinModule::principal_projective(alg, self.side, &alg.idempotents()[i])?;
            for j in 0..basis.cols() {
                cols.push(self.act(&basis.column(j)).mul_vec(&v));
            }
            total = total.direct_sum(&p)?;
        }
        Ok((total, Matrix::from_columns(self.domain(), self.dim, &cols)))
    }

    /// The submodule with the given basis (columns must be independent and
    /// stable). Requires a module without relations.
    pub fn submodule(&self, basis: &Matrix) -> Result<FinModule> {
        if self.has_relations() {
            return Err(Error::Unsupported("submodules of presented modules with relations".into()));
        }
        let dom = self.domain();
        let action = self
            .action
            .iter()
            .map(|a| {
                if basis.cols() == 0 {
                    return Ok(Matrix::zeros(dom, 0, 0));
                }
                solve_matrix(basis, &a.mul(basis)).ok_or_else(|| Error::Module("subspace is not a submodule".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FinModule::new_unchecked(self.algebra.clone(), self.side, basis.cols(), action, Matrix::zeros(dom, basis.cols(), 0)))
    }

    /// Quotient by the submodule spanned by `sub` (plus existing relations),
    /// realized on a complement so the result has no relations. Field only.
    /// Returns the quotient and the projection matrix.
    pub fn quotient(&self, sub: &Matrix) -> Result<(FinModule, Matrix)> {
        let dom = self.domain();
        if !dom.is_field() {
            return Err(Error::Unsupported("quotients over the integers".into()));
        }
        let all = Matrix::hstack(&[sub, &self.rels]);
        let s = if all.cols() == 0 { Matrix::zeros(dom, self.dim, 0) } else { span_basis(&all) };
        let id = Matrix::identity(dom, self.dim);
        let mut basis = s.clone();
        let mut complement = Vec::new();
        for j in 0..self.dim {
            let e = id.select_columns(&[j]);
            if basis.cols() == 0 || solve_matrix(&basis, &e).is_none() {
                basis = Matrix::hstack(&[&basis, &e]);
                complement.push(j);
            }
        }
        let c = id.select_columns(&complement);
        let inv = inverse(&basis).expect("completed basis is invertible");
        let proj = inv.submatrix(s.cols()..self.dim, 0..self.dim);
        let action = self.action.iter().map(|a| proj.mul(&a.mul(&c))).collect();
        let q = complement.len();
        Ok((FinModule::new_unchecked(self.algebra.clone(), self.side, q, action, Matrix::zeros(dom, q, 0)), proj))
    }

    /// Over a field, an isomorphic module without relations, with the
    /// projection onto it. Identity when there are no relations.
    pub fn reduced(&self) -> Result<(FinModule, Matrix)> {
        if !self.has_relations() {
            return Ok((self.clone(), Matrix::identity(self.domain(), self.dim)));
        }
        self.quotient(&Matrix::zeros(self.domain(), self.dim, 0))
    }

    /// The quotient by a submodule given by spanning columns, kept as extra
    /// relations on the same generators.
    pub fn with_relations(&self, extra: &Matrix) -> Result<FinModule> {
        let rels = Matrix::hstack(&[&self.rels, extra]);
        for (i, a) in self.action.iter().enumerate() {
            if extra.cols() > 0 && solve_matrix(&rels, &a.mul(extra)).is_none() {
                return Err(Error::Module(format!("relations are not stable under basis element {}", i + 1)));
            }
        }
        Ok(FinModule { rels, ..self.clone() })
    }

    /// Same data viewed over an equal algebra handle.
    pub fn with_algebra(&self, algebra: AlgebraRef) -> FinModule {
        debug_assert!(same_algebra(&self.algebra, &algebra));
        FinModule { algebra, ..self.clone() }
    }

    pub fn ground_algebra(&self) -> Algebra {
        Algebra::ground(self.domain())
    }
}
