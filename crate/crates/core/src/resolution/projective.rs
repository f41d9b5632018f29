use serde::{Deserialize, Serialize};

use crate::algebra::{find_isomorphism, FinModule};
use crate::complex::{section, ChainComplex, Tail};
use crate::error::{Error, Result};
use crate::linalg::{kernel, span_basis, Matrix};

/// Default number of syzygies examined before giving up on closing a
/// resolution.
pub const DEFAULT_HORIZON: usize = 24;

/// How a computed resolution ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Closure {
    /// Exact and zero above its window.
    Finite { length: usize },
    /// The syzygy in degree `repeat + period` matched the one in degree `repeat`.
    Periodic { repeat: usize, period: usize },
    /// Stopped at the requested length; not exact in the top degree.
    Truncated { length: usize },
}

/// `⋯ → P₁ → P₀ → M → 0` with its augmentation.
#[derive(Clone, Debug)]
pub struct ProjectiveResolution {
    pub module: FinModule,
    pub complex: ChainComplex,
    /// `P₀ → M` in the generator coordinates of `module`.
    pub augmentation: Matrix,
    pub closure: Closure,
}

impl ProjectiveResolution {
    /// Whether the resolution is exact in every degree (finite or periodic).
    pub fn is_complete(&self) -> bool {
        !matches!(self.closure, Closure::Truncated { .. })
    }

    pub fn length(&self) -> Option<usize> {
        match self.closure {
            Closure::Finite { length } => Some(length),
            _ => None,
        }
    }
}

struct Step {
    free: FinModule,
    cover: Matrix,
    /// The syzygy `X_j` this step covers, in its own coordinates.
    syzygy: FinModule,
    /// Inclusion `X_j → F_{j−1}` (identity-free for `j = 0`).
    inclusion: Option<Matrix>,
}

fn kernel_of_cover(free: &FinModule, cover: &Matrix, target: &FinModule) -> Result<Matrix> {
    let dom = free.domain();
    let stacked = Matrix::hstack(&[cover, target.rels()]);
    let ker = kernel(&stacked);
    let proj = ker.submatrix(0..free.dim(), 0..ker.cols());
    if proj.cols() == 0 || proj.is_zero() {
        return Ok(Matrix::zeros(dom, free.dim(), 0));
    }
    Ok(span_basis(&proj))
}

/// Minimal projective resolution of `m` computed until it closes (becomes
/// zero or repeats a syzygy up to isomorphism) or reaches `length` steps.
/// Periodicity is only searched over fields.
pub fn projective_resolution(m: &FinModule, length: usize) -> Result<ProjectiveResolution> {
    resolve(m, length, true)
}

/// Like [`projective_resolution`] but fails unless the resolution closes
/// within `horizon` steps.
pub fn closed_resolution(m: &FinModule, horizon: usize) -> Result<ProjectiveResolution> {
    let res = resolve(m, horizon, true)?;
    if !res.is_complete() {
        return Err(Error::Resolution(format!("no period found within {horizon} syzygies")));
    }
    Ok(res)
}

/// Resolution without periodicity detection, exact in degrees below `length`.
pub fn truncated_resolution(m: &FinModule, length: usize) -> Result<ProjectiveResolution> {
    resolve(m, length, false)
}

fn resolve(m: &FinModule, length: usize, detect: bool) -> Result<ProjectiveResolution> {
    let module = if m.domain().is_field() { m.reduced()?.0 } else { m.clone() };
    let alg = module.algebra().clone();
    let side = module.side();
    let detect = detect && module.domain().is_field();
    let mut steps: Vec<Step> = Vec::new();
    let mut current = module.clone();
    let mut inclusion: Option<Matrix> = None;
    let mut closure = None;
    for j in 0..=length {
        if current.dim() == 0 && j > 0 {
            closure = Some(Closure::Finite { length: j - 1 });
            break;
        }
        if detect && j > 0 {
            let mut matched = None;
            for (i, earlier) in steps.iter().enumerate() {
                if earlier.syzygy.dim() == current.dim() && earlier.syzygy.dim() > 0 {
                    if let Some(iso) = find_isomorphism(&earlier.syzygy, &current)? {
                        matched = Some((i, iso));
                        break;
                    }
                }
            }
            if let Some((i, iso)) = matched {
                // P_j := P_i with ∂_j = ι_j ∘ ψ ∘ φ_i
                let incl = inclusion.take().expect("syzygy of positive degree has an inclusion");
                let seam = incl.mul(&iso).mul(&steps[i].cover);
                steps.push(Step { free: steps[i].free.clone(), cover: seam, syzygy: current.clone(), inclusion: None });
                closure = Some(Closure::Periodic { repeat: i, period: j - i });
                break;
            }
        }
        if j == length {
            break;
        }
        let (free, cover) = current.projective_cover()?;
        let ker = kernel_of_cover(&free, &cover, &current)?;
        let next = free.submodule(&ker)?;
        steps.push(Step { free, cover, syzygy: current, inclusion: inclusion.take() });
        inclusion = Some(ker);
        current = next;
    }
    let closure = closure.unwrap_or(Closure::Truncated { length: steps.len().saturating_sub(1) });
    if steps.is_empty() {
        // the zero module
        let complex = ChainComplex::zero(alg, side);
        let augmentation = Matrix::zeros(module.domain(), 0, 0);
        return Ok(ProjectiveResolution { module, complex, augmentation, closure: Closure::Finite { length: 0 } });
    }
    let modules: Vec<FinModule> = steps.iter().map(|s| s.free.clone()).collect();
    let mut diffs = Vec::new();
    for j in 1..steps.len() {
        let d = match (&steps[j].inclusion, closure) {
            (Some(incl), _) => incl.mul(&steps[j].cover),
            // the periodic seam already stores ∂_j in `cover`
            (None, Closure::Periodic { .. }) if j + 1 == steps.len() => steps[j].cover.clone(),
            _ => return Err(Error::Resolution("inconsistent resolution steps".into())),
        };
        diffs.push(d);
    }
    let upper = match closure {
        Closure::Periodic { period, .. } => Tail::Periodic { period },
        _ => Tail::Zero,
    };
    let complex = ChainComplex::new(alg, side, 0, modules, diffs, Tail::Zero, upper)?;
    let augmentation = steps[0].cover.clone();
    Ok(ProjectiveResolution { module, complex, augmentation, closure })
}

/// Whether `m` is projective: its projective cover splits.
pub fn is_projective(m: &FinModule) -> Result<bool> {
    if !m.domain().is_field() {
        return Err(Error::Unsupported("projectivity test over the integers".into()));
    }
    let m = m.reduced()?.0;
    if m.dim() == 0 {
        return Ok(true);
    }
    let (cover_module, cover) = m.projective_cover()?;
    Ok(section(&cover, &cover_module, &m).is_ok())
}
