//! Tensor products of complexes, evaluated degreewise on finite windows.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{same_algebra, Algebra, AlgebraRef, FinModule, Side};
use crate::complex::{ChainComplex, Tail};
use crate::error::{Error, Result};
use crate::linalg::{HomologyGroup, Matrix};

/// One summand `M_i ⊗ N_{d−i}` of a graded piece.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub i: i64,
    pub offset: usize,
    pub left_dim: usize,
    pub right_dim: usize,
}

impl Block {
    pub fn size(&self) -> usize {
        self.left_dim * self.right_dim
    }
}

/// A finite fragment of `M ⊗_R N` over the coefficient ring, with the block
/// layout of every graded piece.
#[derive(Clone, Debug)]
pub struct TensorComplex {
    pub complex: ChainComplex,
    pub layout: BTreeMap<i64, Vec<Block>>,
}

impl TensorComplex {
    pub fn blocks(&self, d: i64) -> &[Block] {
        self.layout.get(&d).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Coordinate inclusion of the blocks of `self` (a tensor fragment of a
    /// hard truncation) into the matching blocks of `whole` in degree `d`.
    pub fn inclusion_into(&self, whole: &TensorComplex, d: i64) -> Result<Matrix> {
        let dom = self.complex.domain();
        let rows = whole.complex.module(d).dim();
        let cols = self.complex.module(d).dim();
        let mut m = Matrix::zeros(dom, rows, cols);
        for b in self.blocks(d) {
            if b.size() == 0 {
                continue;
            }
            let target = whole
                .blocks(d)
                .iter()
                .find(|w| w.i == b.i)
                .filter(|w| w.size() == b.size())
                .ok_or_else(|| Error::Complex(format!("block {} of degree {d} has no counterpart", b.i)))?;
            m.paste(target.offset, b.offset, &Matrix::identity(dom, b.size()));
        }
        Ok(m)
    }
}

impl TensorComplex {
    /// `f ⊗ id` in degree `d` from the fragment `source` into `self`, where
    /// `f(i)` maps the left factor of `source` in degree `i` into that of
    /// `self`; the right factors must agree.
    pub fn map_from(&self, source: &TensorComplex, d: i64, f: impl Fn(i64) -> Matrix) -> Result<Matrix> {
        let dom = self.complex.domain();
        let mut m = Matrix::zeros(dom, self.complex.module(d).dim(), source.complex.module(d).dim());
        for b in source.blocks(d).iter().filter(|b| b.size() > 0) {
            let Some(t) = self.blocks(d).iter().find(|t| t.i == b.i && t.size() > 0) else {
                continue;
            };
            if t.right_dim != b.right_dim {
                return Err(Error::Complex(format!("right factors differ in block {} of degree {d}", b.i)));
            }
            let fi = f(b.i);
            if fi.shape() != (t.left_dim, b.left_dim) {
                return Err(Error::Shape(format!("map in degree {} has the wrong shape", b.i)));
            }
            m.paste(t.offset, b.offset, &fi.kron(&Matrix::identity(dom, b.right_dim)));
        }
        Ok(m)
    }
}

/// Support of a complex as `(inf, sup)`, `None` for an unbounded side.
fn support(c: &ChainComplex) -> (Option<i64>, Option<i64>) {
    (c.inf(), c.sup())
}

/// Range of `i` with `M_i ⊗ N_{d−i}` possibly nonzero.
fn contributing(m: &ChainComplex, n: &ChainComplex, d: i64) -> Result<Option<(i64, i64)>> {
    let (m_inf, m_sup) = support(m);
    let (n_inf, n_sup) = support(n);
    if m_inf == Some(i64::MAX) || n_inf == Some(i64::MAX) {
        return Ok(None);
    }
    let lo = [m_inf, n_sup.map(|s| d - s)].into_iter().flatten().max();
    let hi = [m_sup, n_inf.map(|t| d - t)].into_iter().flatten().min();
    match (lo, hi) {
        (Some(lo), Some(hi)) => Ok((lo <= hi).then_some((lo, hi))),
        _ => Err(Error::Unsupported(format!(
            "degree {d} of a tensor product of complexes unbounded on opposite sides"
        ))),
    }
}

/// Degrees `lo..=hi` of `M ⊗_R N` for right `M` and left `N`, as a complex
/// over the coefficient ring with zero tails. Homology is only meaningful
/// strictly inside the window.
pub fn tensor_complexes(m: &ChainComplex, n: &ChainComplex, lo: i64, hi: i64) -> Result<TensorComplex> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::Complex("tensor factors live over different algebras".into()));
    }
    if m.side() != Side::Right || n.side() != Side::Left {
        return Err(Error::Complex("tensor product needs right modules on the left and left modules on the right".into()));
    }
    let dom = m.domain();
    let ground: AlgebraRef = Arc::new(Algebra::ground(dom));
    let mut layout = BTreeMap::new();
    let mut modules = Vec::new();
    for d in lo..=hi {
        let mut blocks = Vec::new();
        let mut rels = Vec::new();
        let mut offset = 0;
        if let Some((a, b)) = contributing(m, n, d)? {
            for i in a..=b {
                let (mi, nj) = (m.module(i), n.module(d - i));
                let block = Block { i, offset, left_dim: mi.dim(), right_dim: nj.dim() };
                if block.size() > 0 {
                    rels.push((offset, crate::algebra::balanced_relations(mi.actions(), mi.rels(), nj.actions(), nj.rels())));
                }
                offset += block.size();
                blocks.push(block);
            }
        }
        let rel_cols: usize = rels.iter().map(|(_, r)| r.cols()).sum();
        let mut rel = Matrix::zeros(dom, offset, rel_cols);
        let mut c = 0;
        for (off, r) in &rels {
            rel.paste(*off, c, r);
            c += r.cols();
        }
        modules.push(FinModule::new_unchecked(ground.clone(), Side::Left, offset, vec![Matrix::identity(dom, offset)], rel));
        layout.insert(d, blocks);
    }
    let mut diffs = Vec::new();
    for d in lo + 1..=hi {
        let (src, tgt) = (&layout[&d], &layout[&(d - 1)]);
        let rows = modules[(d - 1 - lo) as usize].dim();
        let cols = modules[(d - lo) as usize].dim();
        let mut diff = Matrix::zeros(dom, rows, cols);
        for b in src.iter().filter(|b| b.size() > 0) {
            let i = b.i;
            let idn = Matrix::identity(dom, b.right_dim);
            let idm = Matrix::identity(dom, b.left_dim);
            // ∂x ⊗ y lands in block i−1
            if let Some(t) = tgt.iter().find(|t| t.i == i - 1 && t.size() > 0) {
                diff.paste(t.offset, b.offset, &m.diff(i).kron(&idn));
            }
            // (−1)^i x ⊗ ∂y lands in block i
            if let Some(t) = tgt.iter().find(|t| t.i == i && t.size() > 0) {
                let part = idm.kron(&n.diff(d - i));
                diff.paste(t.offset, b.offset, &if i.rem_euclid(2) == 1 { part.neg() } else { part });
            }
        }
        diffs.push(diff);
    }
    let complex = ChainComplex::new(ground, Side::Left, lo, modules, diffs, Tail::Zero, Tail::Zero)?;
    Ok(TensorComplex { complex, layout })
}

/// Which tensor factor a window plan truncates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Factor {
    Left,
    Right,
}

/// Truncation of one factor needed for one homology degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowPlan {
    pub degree: i64,
    pub truncated: Factor,
    /// Kept degrees of the truncated factor.
    pub kept: (i64, i64),
}

fn bounds(c: &ChainComplex) -> Option<(i64, i64)> {
    Some((c.inf()?, c.sup()?))
}

/// For the other factor in degrees `[t, s]`, the truncated factor keeps
/// `[n−s−1, n−t+1]`, clipped to its own support. The right factor is kept
/// whole when it is bounded.
pub fn window_plan(m: &ChainComplex, n: &ChainComplex, degree: i64) -> Result<WindowPlan> {
    let (truncated, other, cut) = match (bounds(n), bounds(m)) {
        (Some(b), _) => (Factor::Left, b, m),
        (None, Some(b)) => (Factor::Right, b, n),
        (None, None) => return Err(Error::Unsupported("windowed homology needs a bounded factor".into())),
    };
    let (t, s) = other;
    if t > s {
        return Ok(WindowPlan { degree, truncated, kept: (degree, degree - 1) });
    }
    let (mut a, mut b) = (degree - s - 1, degree - t + 1);
    if let Some(i) = cut.inf() {
        a = a.max(i);
    }
    if let Some(j) = cut.sup() {
        b = b.min(j);
    }
    Ok(WindowPlan { degree, truncated, kept: (a, b) })
}

fn truncated(m: &ChainComplex, a: i64, b: i64) -> ChainComplex {
    if a > b {
        return ChainComplex::zero(m.algebra().clone(), m.side());
    }
    m.truncate_above(a).truncate_below(b)
}

fn windowed(m: &ChainComplex, n: &ChainComplex, plan: &WindowPlan, widen: i64) -> Result<HomologyGroup> {
    let (a, b) = (plan.kept.0 - widen, plan.kept.1 + widen);
    let degree = plan.degree;
    let frag = match plan.truncated {
        Factor::Left => tensor_complexes(&truncated(m, a, b), n, degree - 1, degree + 1)?,
        Factor::Right => tensor_complexes(m, &truncated(n, a, b), degree - 1, degree + 1)?,
    };
    Ok(frag.complex.homology_at(degree))
}

/// `H_n(M ⊗ N)` with one factor bounded, from the truncation of the other
/// given by the window plan; recomputed with both bounds widened by one and
/// compared.
pub fn homology_window(m: &ChainComplex, n: &ChainComplex, degree: i64) -> Result<HomologyGroup> {
    let plan = window_plan(m, n, degree)?;
    let h = windowed(m, n, &plan, 0)?;
    let wide = windowed(m, n, &plan, 1)?;
    if h != wide {
        return Err(Error::Complex(format!("window self-check failed in degree {degree}: {h} vs {wide}")));
    }
    Ok(h)
}

/// `H_n(M ⊗ N)` for `n` in `lo..=hi`.
pub fn homology_range(m: &ChainComplex, n: &ChainComplex, lo: i64, hi: i64) -> Result<Vec<(i64, HomologyGroup)>> {
    (lo..=hi).map(|d| Ok((d, homology_window(m, n, d)?))).collect()
}

#[cfg(test)]
mod tests;
