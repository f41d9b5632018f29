use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::module::same_algebra;
use super::{column, enumerate_combinations, AlgebraRef, FinModule, Side};
use crate::error::{Error, Result};
use crate::linalg::{is_invertible, kernel, solve_matrix, span_basis, HomologyGroup, Matrix, Presented, Scalar};

/// `M ⊗_R N` as a presented 𝕜-module on the generators `mᵢ ⊗ nⱼ`
/// (index `i·dim N + j`).
#[derive(Clone, Debug)]
pub struct TensorSpace {
    pub left_dim: usize,
    pub right_dim: usize,
    pub space: Presented,
}

impl TensorSpace {
    pub fn descriptor(&self) -> HomologyGroup {
        self.space.descriptor()
    }
}

/// Relations spanning `m·r ⊗ n − m ⊗ r·n` together with the relations of
/// both factors. `m_actions` act on the left factor, `n_actions` on the right.
pub(crate) fn balanced_relations(
    m_actions: &[Matrix],
    m_rels: &Matrix,
    n_actions: &[Matrix],
    n_rels: &Matrix,
) -> Matrix {
    let dom = m_rels.domain();
    let (dm, dn) = (m_rels.rows(), n_rels.rows());
    let im = Matrix::identity(dom, dm);
    let in_ = Matrix::identity(dom, dn);
    let mut parts: Vec<Matrix> = m_actions
        .iter()
        .zip(n_actions)
        .map(|(a, b)| a.kron(&in_).sub(&im.kron(b)))
        .filter(|m| !m.is_zero())
        .collect();
    if m_rels.cols() > 0 {
        parts.push(m_rels.kron(&in_));
    }
    if n_rels.cols() > 0 {
        parts.push(im.kron(n_rels));
    }
    if parts.is_empty() {
        return Matrix::zeros(dom, dm * dn, 0);
    }
    let refs: Vec<&Matrix> = parts.iter().collect();
    let all = Matrix::hstack(&refs);
    if dom.is_field() && all.cols() > 0 {
        span_basis(&all)
    } else {
        all
    }
}

/// `M ⊗_R N` for a right module `M` and a left module `N`.
pub fn module_tensor(m: &FinModule, n: &FinModule) -> Result<TensorSpace> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::Module("tensor factors live over different algebras".into()));
    }
    if m.side() != Side::Right || n.side() != Side::Left {
        return Err(Error::Module("tensor product needs a right module on the left and a left module on the right".into()));
    }
    let rels = balanced_relations(m.actions(), m.rels(), n.actions(), n.rels());
    Ok(TensorSpace { left_dim: m.dim(), right_dim: n.dim(), space: Presented { gens: m.dim() * n.dim(), rels } })
}

/// Basis of `Hom_R(M, N)`; each element is a `dim N × dim M` matrix.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source_dim: usize,
    pub target_dim: usize,
    pub basis: Vec<Matrix>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The basis flattened row-major into columns of one matrix.
    pub fn as_columns(&self, dom: crate::linalg::Domain) -> Matrix {
        let len = self.source_dim * self.target_dim;
        let cols: Vec<Vec<Scalar>> = self.basis.iter().map(flatten).collect();
        Matrix::from_columns(dom, len, &cols)
    }

    /// Coordinates of a homomorphism in the basis.
    pub fn coords(&self, f: &Matrix) -> Option<Vec<Scalar>> {
        let dom = f.domain();
        if self.basis.is_empty() {
            return f.is_zero().then(Vec::new);
        }
        let a = self.as_columns(dom);
        solve_matrix(&a, &column(dom, &flatten(f))).map(|x| x.column(0))
    }
}

fn flatten(f: &Matrix) -> Vec<Scalar> {
    (0..f.rows()).flat_map(|i| f.row(i)).collect()
}

fn require_plain(m: &FinModule) -> Result<()> {
    if !m.domain().is_field() || m.has_relations() {
        return Err(Error::Unsupported("Hom requires modules over a field without relations".into()));
    }
    Ok(())
}

/// All 𝕜-linear maps `M → N` commuting with every basis action.
pub fn hom_space(m: &FinModule, n: &FinModule) -> Result<HomSpace> {
    m.compatible(n)?;
    require_plain(m)?;
    require_plain(n)?;
    let (dm, dn) = (m.dim(), n.dim());
    let dom = m.domain();
    let unknowns = dm * dn;
    if unknowns == 0 {
        return Ok(HomSpace { source_dim: dm, target_dim: dn, basis: Vec::new() });
    }
    let r = m.algebra().dim();
    let mut eqs = Matrix::zeros(dom, r * dn * dm, unknowns);
    for k in 0..r {
        let (am, an) = (m.action(k), n.action(k));
        for a in 0..dn {
            for c in 0..dm {
                let row = (k * dn + a) * dm + c;
                for b in 0..dm {
                    let v = am.get(b, c);
                    if !v.is_zero() {
                        let idx = a * dm + b;
                        let cur = eqs.get(row, idx).clone();
                        eqs.set(row, idx, dom.add(&cur, v));
                    }
                }
                for d in 0..dn {
                    let v = an.get(a, d);
                    if !v.is_zero() {
                        let idx = d * dm + c;
                        let cur = eqs.get(row, idx).clone();
                        eqs.set(row, idx, dom.sub(&cur, v));
                    }
                }
            }
        }
    }
    let ker = kernel(&eqs);
    let basis = (0..ker.cols())
        .map(|j| Matrix::from_scalars(dom, dn, dm, ker.column(j)).expect("kernel vector reshapes"))
        .collect();
    Ok(HomSpace { source_dim: dm, target_dim: dn, basis })
}

/// `Hom_R(M, R)` with its residual module structure of the opposite side,
/// together with the basis used for its coordinates.
pub fn hom_to_regular(m: &FinModule) -> Result<(FinModule, HomSpace)> {
    let alg = m.algebra().clone();
    let regular = FinModule::regular(alg.clone(), m.side());
    let hom = hom_space(m, &regular)?;
    // the other multiplication on R commutes with the action used by M
    let other = alg.regular_action(m.side().opposite());
    let dom = m.domain();
    let h = hom.dim();
    let mut action = Vec::with_capacity(alg.dim());
    for mult in &other {
        let mut a = Matrix::zeros(dom, h, h);
        for (k, phi) in hom.basis.iter().enumerate() {
            let coords = hom.coords(&mult.mul(phi)).expect("residual action preserves homomorphisms");
            for (i, c) in coords.into_iter().enumerate() {
                a.set(i, k, c);
            }
        }
        action.push(a);
    }
    let module = FinModule::new(alg, m.side().opposite(), h, action, None)?;
    Ok((module, hom))
}

/// `D(M) = Hom_𝕜(M, 𝕜)`: transposed actions on the opposite side.
pub fn dual(m: &FinModule) -> Result<FinModule> {
    let (m, _) = m.reduced()?;
    require_plain(&m)?;
    let action = m.actions().iter().map(Matrix::transpose).collect();
    Ok(FinModule::new_unchecked(m.algebra().clone(), m.side().opposite(), m.dim(), action, Matrix::zeros(m.domain(), m.dim(), 0)))
}

/// `{D(eᵢR)}` for `side = Left`, `{D(Reᵢ)}` for `side = Right`, over the
/// algebra's primitive idempotents.
pub fn indecomposable_injectives(algebra: &AlgebraRef, side: Side) -> Result<Vec<FinModule>> {
    if !algebra.domain().is_field() {
        return Err(Error::Unsupported("injectives over the integers".into()));
    }
    let proj_side = side.opposite();
    let regular = FinModule::regular(algebra.clone(), proj_side);
    let n = algebra.dim();
    let dom = algebra.domain();
    algebra
        .idempotents()
        .iter()
        .map(|e| {
            let cols: Vec<Vec<Scalar>> = (0..n)
                .map(|b| {
                    let basis = super::unit_vector(n, b);
                    match proj_side {
                        Side::Right => algebra.mul(e, &basis),
                        Side::Left => algebra.mul(&basis, e),
                    }
                })
                .collect();
            let span = span_basis(&Matrix::from_columns(dom, n, &cols));
            dual(&regular.submodule(&span)?)
        })
        .collect()
}

/// An explicit isomorphism `M → N` (a `dim N × dim M` matrix) or `None`.
/// Searches the intertwiner space exhaustively when it has at most 4096
/// elements and by seeded random combinations otherwise, so a `None` from
/// the random branch is not a proof of non-isomorphism.
pub fn find_isomorphism(m: &FinModule, n: &FinModule) -> Result<Option<Matrix>> {
    m.compatible(n)?;
    if m.dim() != n.dim() {
        return Ok(None);
    }
    let dom = m.domain();
    if m.dim() == 0 {
        return Ok(Some(Matrix::zeros(dom, 0, 0)));
    }
    let hom = hom_space(m, n)?;
    let h = hom.dim();
    if h == 0 {
        return Ok(None);
    }
    let combine = |coeffs: &[Scalar]| -> Matrix {
        let mut f = Matrix::zeros(dom, n.dim(), m.dim());
        for (c, b) in coeffs.iter().zip(&hom.basis) {
            if !c.is_zero() {
                f = f.add(&b.scale(c));
            }
        }
        f
    };
    // single basis elements first: cheap and often enough
    for b in &hom.basis {
        if is_invertible(b) {
            return Ok(Some(b.clone()));
        }
    }
    match dom.order() {
        Some(p) if (p as f64).powi(h as i32) <= 4096.0 => {
            for coeffs in enumerate_combinations(dom, p, h) {
                let f = combine(&coeffs);
                if is_invertible(&f) {
                    return Ok(Some(f));
                }
            }
            Ok(None)
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(0x150);
            for _ in 0..2048 {
                let coeffs: Vec<Scalar> = (0..h)
                    .map(|_| match dom.order() {
                        Some(p) => dom.from_i64(rng.gen_range(0..p as i64)),
                        None => dom.from_i64(rng.gen_range(-3..=3)),
                    })
                    .collect();
                let f = combine(&coeffs);
                if is_invertible(&f) {
                    return Ok(Some(f));
                }
            }
            Ok(None)
        }
    }
}
