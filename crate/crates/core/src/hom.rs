//! Hom complexes `Hom_R(C, N)` over the coefficient ring.

use std::sync::Arc;

use crate::algebra::{hom_space, Algebra, FinModule, HomSpace};
use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::linalg::{Domain, Matrix, Scalar};

/// Coordinates on `Hom_R(C_i, N)`.
enum HomCoords {
    /// `C_i = R^k`: a map is the image of each generator.
    Free { rank: usize },
    Basis(HomSpace),
}

/// `k` when `m` is literally the free module `R^k`.
pub(crate) fn free_rank(m: &FinModule) -> Option<usize> {
    let n = m.algebra().dim();
    if n == 0 || !m.dim().is_multiple_of(n) || m.has_relations() {
        return None;
    }
    let k = m.dim() / n;
    (FinModule::free(m.algebra().clone(), m.side(), k) == *m).then_some(k)
}

impl HomCoords {
    fn of(source: &FinModule, target: &FinModule) -> Result<HomCoords> {
        if let Some(rank) = free_rank(source) {
            return Ok(HomCoords::Free { rank });
        }
        if !source.domain().is_field() {
            return Err(Error::Unsupported("Hom out of a non-free module over the integers".into()));
        }
        Ok(HomCoords::Basis(hom_space(source, target)?))
    }

    fn dim(&self, target: &FinModule) -> usize {
        match self {
            HomCoords::Free { rank } => rank * target.dim(),
            HomCoords::Basis(h) => h.dim(),
        }
    }

    fn rels(&self, target: &FinModule) -> Matrix {
        match self {
            HomCoords::Free { rank } => {
                let blocks: Vec<&Matrix> = (0..*rank).map(|_| target.rels()).collect();
                Matrix::block_diag(target.domain(), &blocks)
            }
            HomCoords::Basis(h) => Matrix::zeros(target.domain(), h.dim(), 0),
        }
    }

    /// The map with coordinate vector `c`, as a `dim N × dim C_i` matrix.
    fn to_matrix(&self, c: &[Scalar], source: &FinModule, target: &FinModule) -> Matrix {
        let dom = target.domain();
        match self {
            HomCoords::Free { rank } => {
                let (n, nd) = (source.algebra().dim(), target.dim());
                let mut m = Matrix::zeros(dom, nd, rank * n);
                for l in 0..*rank {
                    let image = Matrix::from_columns(dom, nd, &[c[l * nd..(l + 1) * nd].to_vec()]);
                    for b in 0..n {
                        m.paste(0, l * n + b, &target.action(b).mul(&image));
                    }
                }
                m
            }
            HomCoords::Basis(h) => {
                let mut m = Matrix::zeros(dom, target.dim(), source.dim());
                for (k, b) in h.basis.iter().enumerate() {
                    m = m.add(&b.scale(&c[k]));
                }
                m
            }
        }
    }

    fn coords(&self, f: &Matrix, source: &FinModule) -> Result<Vec<Scalar>> {
        match self {
            HomCoords::Free { rank } => {
                let alg = source.algebra();
                let n = alg.dim();
                let mut out = Vec::new();
                for l in 0..*rank {
                    let mut u = vec![source.domain().zero(); rank * n];
                    for (b, x) in alg.unit().iter().enumerate() {
                        u[l * n + b] = x.clone();
                    }
                    out.extend(f.mul_vec(&u));
                }
                Ok(out)
            }
            HomCoords::Basis(h) => h.coords(f).ok_or_else(|| Error::Module("composite is not a module map".into())),
        }
    }
}

/// `Hom_R(C, N)` as a chain complex over the coefficients with
/// `Hom(C_i, N)` in degree `−i`; `H_{−i}` is cohomology in degree `i`.
pub fn hom_complex(c: &ChainComplex, n: &FinModule) -> Result<ChainComplex> {
    if c.side() != n.side() {
        return Err(Error::Module("Hom needs modules on the same side".into()));
    }
    let dom: Domain = c.domain();
    let (lo, hi) = c.window();
    let coords: Vec<HomCoords> = (lo..=hi).map(|i| HomCoords::of(c.module(i), n)).collect::<Result<_>>()?;
    let at = |i: i64| &coords[(i - lo) as usize];
    let ground = Arc::new(Algebra::ground(dom));
    let mut modules = Vec::new();
    for j in -hi..=-lo {
        let h = at(-j);
        modules.push(FinModule::over_ground(ground.clone(), h.dim(n), h.rels(n))?);
    }
    let mut diffs = Vec::new();
    for j in -hi + 1..=-lo {
        // Hom(C_{−j}, N) → Hom(C_{−j+1}, N), φ ↦ φ ∘ ∂_{−j+1}
        let (src, tgt) = (at(-j), at(-j + 1));
        let (cs, ct) = (c.module(-j), c.module(-j + 1));
        let d = c.diff(-j + 1);
        let sd = src.dim(n);
        let mut cols = Vec::with_capacity(sd);
        for s in 0..sd {
            let mut e = vec![dom.zero(); sd];
            e[s] = dom.one();
            let phi = src.to_matrix(&e, cs, n);
            cols.push(tgt.coords(&phi.mul(&d), ct)?);
        }
        diffs.push(Matrix::from_columns(dom, tgt.dim(n), &cols));
    }
    ChainComplex::new(ground, crate::algebra::Side::Left, -hi, modules, diffs, c.upper_tail(), c.lower_tail())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::resolution::projective_resolution;

    #[test]
    fn ext_of_residue_field_over_dual_numbers_is_k_everywhere() {
        let alg = fixtures::dual_numbers(2).unwrap();
        let k = fixtures::residue_field(&alg, crate::algebra::Side::Right).unwrap();
        let p = projective_resolution(&k, 24).unwrap();
        let h = hom_complex(&p.complex, &k).unwrap();
        for i in 0..6 {
            assert_eq!(h.homology_at(-i).dim(), 1, "Ext^{i}");
        }
        assert!(h.homology_at(1).is_zero());
    }

    #[test]
    fn integral_free_hom_matches_coefficients() {
        let alg = fixtures::integral_group_ring(2).unwrap();
        let z2 = fixtures::integral_trivial(&alg, crate::algebra::Side::Right, 2).unwrap();
        let r = ChainComplex::concentrated(FinModule::regular(alg.clone(), crate::algebra::Side::Right), 0);
        let h = hom_complex(&r, &z2).unwrap();
        assert_eq!(h.homology_at(0).to_string(), "Z/2");
    }
}
