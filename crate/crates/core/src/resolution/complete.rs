use serde::{Deserialize, Serialize};

use super::projective::{closed_resolution, truncated_resolution, ProjectiveResolution, DEFAULT_HORIZON};
use crate::algebra::{dual, Algebra, AlgebraRef, FinModule, Side};
use crate::complex::{ChainComplex, ChainMap, SplitKernel, Tail};
use crate::error::{Error, Result};
use crate::linalg::{is_invertible, kernel, Domain, Matrix};

/// Which class the complete resolution is meant to witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    /// `Hom(T, R)` acyclic: a complete projective resolution.
    Projective,
    /// `T ⊗ E` acyclic for injective `E`: a Tate flat resolution.
    Flat,
}

/// `T → P ≃ M` with `T` totally acyclic, `P` a projective resolution and
/// the comparison bijective in degrees `≥ threshold`.
#[derive(Clone, Debug)]
pub struct CompleteResolution {
    pub flavor: Flavor,
    pub totally_acyclic: ChainComplex,
    pub approximation: ChainComplex,
    pub comparison: ChainMap,
    pub threshold: i64,
    /// The complex being resolved.
    pub resolved: ChainComplex,
    kernel: ChainComplex,
    /// `K` is the hard truncation `T_{≤g−1}` rather than a computed kernel.
    truncated_kernel: bool,
}

impl CompleteResolution {
    /// Assembles the data and computes the kernel of the comparison.
    pub fn new(
        flavor: Flavor,
        totally_acyclic: ChainComplex,
        approximation: ChainComplex,
        comparison: ChainMap,
        threshold: i64,
        resolved: ChainComplex,
    ) -> Result<Self> {
        let (kernel, truncated_kernel) = comparison_kernel(&totally_acyclic, &approximation, &comparison, threshold)?;
        Ok(CompleteResolution {
            flavor,
            totally_acyclic,
            approximation,
            comparison,
            threshold,
            resolved,
            kernel,
            truncated_kernel,
        })
    }

    /// `K = Ker(T → P)`, bounded above.
    pub fn kernel(&self) -> &ChainComplex {
        &self.kernel
    }

    /// The inclusion `K_i → T_i` in the coordinates of both modules.
    pub fn kernel_inclusion(&self, i: i64) -> Matrix {
        let dom = self.totally_acyclic.domain();
        let t = self.totally_acyclic.module(i).dim();
        if !self.truncated_kernel {
            return kernel(&self.comparison.at(i));
        }
        if self.kernel.module(i).dim() == 0 {
            Matrix::zeros(dom, t, 0)
        } else {
            Matrix::identity(dom, t)
        }
    }

    pub fn side(&self) -> Side {
        self.totally_acyclic.side()
    }

    pub fn algebra(&self) -> &AlgebraRef {
        self.totally_acyclic.algebra()
    }

    /// The complete resolution of `Σⁿ M`.
    pub fn shift(&self, n: i64) -> CompleteResolution {
        CompleteResolution {
            flavor: self.flavor,
            totally_acyclic: self.totally_acyclic.shift(n),
            approximation: self.approximation.shift(n),
            comparison: self.comparison.shift(n),
            threshold: self.threshold + n,
            resolved: self.resolved.shift(n),
            kernel: self.kernel.shift(n),
            truncated_kernel: self.truncated_kernel,
        }
    }

    /// Same data read as the other flavor; finitely generated projectives
    /// are flat, so only the acyclicity condition being checked changes.
    pub fn with_flavor(&self, flavor: Flavor) -> CompleteResolution {
        CompleteResolution { flavor, ..self.clone() }
    }

    /// Least `g` with the comparison bijective in every degree `≥ g`, or
    /// `None` when it is bijective everywhere.
    pub fn sharp_threshold(&self) -> Option<i64> {
        let (a, b) = self.comparison.probe_range();
        let (ta, _) = self.totally_acyclic.probe_range();
        let (pa, _) = self.approximation.probe_range();
        let bottom = a.min(ta).min(pa);
        let mut g = None;
        for i in (bottom..=b).rev() {
            if !self.bijective_at(i) {
                g = Some(i + 1);
                break;
            }
        }
        g
    }

    fn bijective_at(&self, i: i64) -> bool {
        let f = self.comparison.at(i);
        if f.rows() != f.cols() {
            return false;
        }
        f.rows() == 0 || is_invertible(&f)
    }

    /// Structural checks: `T` acyclic, `P` resolves the target, and the
    /// comparison is bijective from the threshold on.
    pub fn validate(&self) -> Result<()> {
        let (a, b) = self.totally_acyclic.probe_range();
        if let Some((i, h)) = self.totally_acyclic.is_acyclic(a, b)?.witness {
            return Err(Error::Resolution(format!("complete resolution has homology {h} in degree {i}")));
        }
        let (a, b) = self.comparison.probe_range();
        for i in self.threshold.max(a)..=b {
            if !self.bijective_at(i) {
                return Err(Error::Resolution(format!("comparison is not bijective in degree {i}")));
            }
        }
        let (pa, pb) = self.approximation.probe_range();
        let (ra, rb) = self.resolved.probe_range();
        for i in pa.min(ra)..=pb.max(rb) {
            let (hp, hm) = (self.approximation.homology_at(i), self.resolved.homology_at(i));
            if hp != hm {
                return Err(Error::Resolution(format!("approximation has homology {hp} in degree {i}, expected {hm}")));
            }
        }
        for i in pa..=pb {
            if self.approximation.module(i).dim() > 0 && i < self.resolved.inf().unwrap_or(i64::MIN) {
                return Err(Error::Resolution(format!("approximation is nonzero below the target in degree {i}")));
            }
        }
        Ok(())
    }
}

fn comparison_kernel(t: &ChainComplex, p: &ChainComplex, tau: &ChainMap, g: i64) -> Result<(ChainComplex, bool)> {
    let (a, b) = tau.probe_range();
    let plain = (a..=b).all(|i| {
        if i >= g {
            t.module(i) == p.module(i) && tau.at(i) == Matrix::identity(t.domain(), t.module(i).dim())
        } else {
            p.module(i).dim() == 0
        }
    });
    if plain && p.lower_tail() == Tail::Zero {
        return Ok((t.truncate_below(g - 1), true));
    }
    Ok((SplitKernel::new(tau)?.kernel, false))
}

/// The complete resolution of an acyclic complex: everything zero.
pub fn zero_resolution(alg: AlgebraRef, side: Side) -> Result<CompleteResolution> {
    let z = ChainComplex::zero(alg, side);
    let tau = ChainMap::identity(&z);
    CompleteResolution::new(Flavor::Projective, z.clone(), z.clone(), tau, i64::MIN / 4, z)
}

/// Splices a projective resolution of `M` with the dual of a projective
/// resolution of `D(M)`; needs a Frobenius algebra over a field.
pub fn frobenius_complete_resolution(m: &FinModule) -> Result<CompleteResolution> {
    let alg = m.algebra().clone();
    if !alg.is_frobenius() || !m.domain().is_field() {
        return Err(Error::Unsupported("splicing needs a Frobenius algebra over a field".into()));
    }
    let p = closed_resolution(m, DEFAULT_HORIZON)?;
    if p.module.dim() == 0 {
        return zero_resolution(alg, m.side());
    }
    let q = closed_resolution(&dual(&p.module)?, DEFAULT_HORIZON)?;
    splice(&p, &q)
}

fn splice(p: &ProjectiveResolution, q: &ProjectiveResolution) -> Result<CompleteResolution> {
    let (pc, qc) = (&p.complex, &q.complex);
    let alg = pc.algebra().clone();
    let side = pc.side();
    let (_, hi_p) = pc.window();
    let (_, hi_q) = qc.window();
    let lo = -1 - hi_q;
    let link = q.augmentation.transpose().mul(&p.augmentation);
    let mut modules = Vec::new();
    for i in lo..=hi_p {
        modules.push(if i >= 0 { pc.module(i).clone() } else { dual(qc.module(-1 - i))? });
    }
    let diffs = (lo + 1..=hi_p)
        .map(|i| match i {
            i if i >= 1 => pc.diff(i),
            0 => link.clone(),
            i => qc.diff(-i).transpose(),
        })
        .collect();
    let t = ChainComplex::new(alg, side, lo, modules, diffs, qc.upper_tail(), pc.upper_tail())?;
    let dom = t.domain();
    let maps = (lo..=hi_p)
        .map(|i| if i >= 0 { Matrix::identity(dom, t.module(i).dim()) } else { Matrix::zeros(dom, 0, t.module(i).dim()) })
        .collect();
    let tau = ChainMap::new(t.clone(), pc.clone(), lo, maps, Tail::Zero, pc.upper_tail())?;
    let resolved = ChainComplex::concentrated(p.module.clone(), 0);
    CompleteResolution::new(Flavor::Projective, t, pc.clone(), tau, 0, resolved)
}

/// For `pd M = d < ∞`: `T = (P_d → P_d)` in degrees `d, d−1` mapped onto the
/// top of `P`, then padded with a contractible complex to make the comparison
/// surjective.
pub fn finite_dimension_complete_resolution(m: &FinModule) -> Result<CompleteResolution> {
    let p = if m.domain().is_field() {
        closed_resolution(m, DEFAULT_HORIZON)?
    } else {
        truncated_resolution(m, DEFAULT_HORIZON)?
    };
    let d = p
        .length()
        .ok_or_else(|| Error::Unsupported("module of infinite projective dimension over a non-Frobenius algebra".into()))?;
    let pc = &p.complex;
    let alg = pc.algebra().clone();
    if p.module.dim() == 0 {
        return zero_resolution(alg, m.side());
    }
    let d = d as i64;
    let resolved = ChainComplex::concentrated(p.module.clone(), 0);
    pad_split_surjective(pc, resolved, d)
}

/// `T = (P_g → P_g)` in degrees `g, g−1` with comparison `(id, ∂_g)`, plus
/// the contractible `T″_i = X_i ⊕ X_{i+1}` for `X = P_{<g}` with
/// `∂″(x, y) = (∂x, −x − ∂y)` and comparison `(x, y) ↦ x`, which makes the
/// comparison surjective.
pub fn pad_split_surjective(pc: &ChainComplex, resolved: ChainComplex, g: i64) -> Result<CompleteResolution> {
    let alg = pc.algebra().clone();
    let side = pc.side();
    let dom = pc.domain();
    let zero = FinModule::zero(alg.clone(), side);
    let x = |i: i64| if i < g { pc.module(i).clone() } else { zero.clone() };
    let xdim = |i: i64| x(i).dim();
    let xd = |i: i64| if i < g { pc.diff(i) } else { Matrix::zeros(dom, xdim(i - 1), xdim(i)) };
    let top = pc.module(g).clone();
    let core = |i: i64| if i == g || i == g - 1 { top.clone() } else { zero.clone() };
    let (lo, hi) = ((g - 1).min(-1), g);
    let mut modules = Vec::new();
    for i in lo..=hi {
        modules.push(core(i).direct_sum(&x(i))?.direct_sum(&x(i + 1))?);
    }
    let diffs = (lo + 1..=hi)
        .map(|i| {
            let (c0, x0, x1) = (core(i).dim(), xdim(i), xdim(i + 1));
            let (c1, y0, y1) = (core(i - 1).dim(), xdim(i - 1), xdim(i));
            let mut d = Matrix::zeros(dom, c1 + y0 + y1, c0 + x0 + x1);
            if i == g {
                d.paste(0, 0, &Matrix::identity(dom, top.dim()));
            }
            d.paste(c1, c0, &xd(i));
            d.paste(c1 + y0, c0, &Matrix::identity(dom, x0).neg());
            d.paste(c1 + y0, c0 + x0, &xd(i + 1).neg());
            d
        })
        .collect();
    let t = ChainComplex::new(alg, side, lo, modules, diffs, Tail::Zero, Tail::Zero)?;
    let maps = (lo..=hi)
        .map(|i| {
            let (c0, x0, x1) = (core(i).dim(), xdim(i), xdim(i + 1));
            let mut f = Matrix::zeros(dom, pc.module(i).dim(), c0 + x0 + x1);
            if i == g {
                f.paste(0, 0, &Matrix::identity(dom, c0));
            } else if i == g - 1 {
                f.paste(0, 0, &pc.diff(g));
            }
            f.paste(0, c0, &Matrix::identity(dom, x0));
            f
        })
        .collect();
    let tau = ChainMap::new(t.clone(), pc.clone(), lo, maps, Tail::Zero, Tail::Zero)?;
    CompleteResolution::new(Flavor::Projective, t, pc.clone(), tau, g, resolved)
}

fn is_integral_cyclic_group(alg: &Algebra) -> Option<usize> {
    if alg.domain() != Domain::Integer {
        return None;
    }
    let n = alg.dim();
    let model = Algebra::cyclic_group(Domain::Integer, n).ok()?;
    let same = alg.unit() == model.unit()
        && (0..n).all(|i| (0..n).all(|j| alg.product(i, j) == model.product(i, j)));
    same.then_some(n)
}

fn trivial_module(alg: &AlgebraRef, side: Side) -> Result<FinModule> {
    let dom = alg.domain();
    let acting = vec![Matrix::identity(dom, 1); alg.dim()];
    FinModule::new(alg.clone(), side, 1, acting, None)
}

/// The periodic complete resolution of the trivial module `ℤ` over `ℤ[Cₙ]`:
/// every term is the group ring, `∂` is `t − 1` in odd and the norm element
/// in even degrees.
pub fn cyclic_group_complete_resolution(alg: &AlgebraRef, side: Side) -> Result<CompleteResolution> {
    let n = is_integral_cyclic_group(alg)
        .filter(|&n| n > 1)
        .ok_or_else(|| Error::Unsupported(format!("{} is not an integral cyclic group ring", alg.name())))?;
    let dom = Domain::Integer;
    let r = FinModule::regular(alg.clone(), side);
    let mut t_minus_one = vec![dom.zero(); n];
    t_minus_one[0] = dom.from_i64(-1);
    t_minus_one[1] = dom.one();
    let norm = vec![dom.one(); n];
    let odd = r.act(&t_minus_one);
    let even = r.act(&norm);
    let t = ChainComplex::new(
        alg.clone(),
        side,
        0,
        vec![r.clone(), r.clone(), r],
        vec![odd, even],
        Tail::Periodic { period: 2 },
        Tail::Periodic { period: 2 },
    )?;
    let p = t.truncate_above(0);
    let (lo, hi) = p.window();
    let maps = (lo..=hi).map(|i| Matrix::identity(dom, p.module(i).dim())).collect();
    let tau = ChainMap::new(t.clone(), p.clone(), lo, maps, Tail::Zero, p.upper_tail())?;
    let resolved = ChainComplex::concentrated(trivial_module(alg, side)?, 0);
    CompleteResolution::new(Flavor::Projective, t, p, tau, 0, resolved)
}

/// Picks a construction: the integral cyclic fixture for the trivial module,
/// splicing over Frobenius algebras, the finite-dimension construction
/// otherwise.
pub fn complete_resolution(m: &FinModule) -> Result<CompleteResolution> {
    let alg = m.algebra().clone();
    if is_integral_cyclic_group(&alg).is_some() && m.dim() == 1 && !m.has_relations() {
        let trivial = trivial_module(&alg, m.side())?;
        if trivial == *m && alg.dim() > 1 {
            return cyclic_group_complete_resolution(&alg, m.side());
        }
    }
    if alg.is_frobenius() && m.domain().is_field() {
        return frobenius_complete_resolution(m);
    }
    finite_dimension_complete_resolution(m)
}
