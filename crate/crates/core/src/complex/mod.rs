//! Chain complexes with a finite explicit window and zero or periodic tails.

mod map;
mod sequence;

pub use map::{cone, section, ChainMap, SplitKernel};
pub use sequence::{cone_sequence, sequence_exactness, LongExactSequence, SequenceTerm, ShortExactSequence};

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraRef, FinModule, Side};
use crate::error::{Error, Result};
use crate::linalg::{solve_matrix, Domain, HomologyGroup, Matrix, Subquotient};

/// Behaviour beyond one end of the window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Tail {
    Zero,
    Periodic { period: usize },
}

impl Tail {
    pub fn period(self) -> usize {
        match self {
            Tail::Zero => 0,
            Tail::Periodic { period } => period,
        }
    }
}

/// `⋯ → C_{i+1} → C_i → C_{i−1} → ⋯` with explicit modules in `[lo, hi]`.
///
/// Above `hi` a periodic tail repeats the last `period` degrees of the
/// window (modules and differentials); below `lo` it repeats the first ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    algebra: AlgebraRef,
    side: Side,
    lo: i64,
    hi: i64,
    modules: Vec<FinModule>,
    /// `diffs[k]` is `∂_{lo+1+k} : C_{lo+1+k} → C_{lo+k}`.
    diffs: Vec<Matrix>,
    lower: Tail,
    upper: Tail,
    zero: FinModule,
}

pub(crate) fn fold_up(i: i64, hi: i64, p: usize) -> i64 {
    let p = p as i64;
    if i <= hi {
        i
    } else {
        i - p * ((i - hi + p - 1) / p)
    }
}

pub(crate) fn fold_down(i: i64, lo: i64, p: usize) -> i64 {
    let p = p as i64;
    if i >= lo {
        i
    } else {
        i + p * ((lo - i + p - 1) / p)
    }
}

impl ChainComplex {
    /// Validates shapes, module linearity of every differential, `∂² = 0`
    /// across the window, seams and one period of each tail, and the seam
    /// conditions of periodic tails.
    pub fn new(
        algebra: AlgebraRef,
        side: Side,
        lo: i64,
        modules: Vec<FinModule>,
        diffs: Vec<Matrix>,
        lower: Tail,
        upper: Tail,
    ) -> Result<Self> {
        if modules.is_empty() {
            return Err(Error::Complex("window must contain at least one degree".into()));
        }
        let hi = lo + modules.len() as i64 - 1;
        if diffs.len() + 1 != modules.len() {
            return Err(Error::Complex(format!("expected {} differentials, got {}", modules.len() - 1, diffs.len())));
        }
        for (k, m) in modules.iter().enumerate() {
            if m.side() != side || !crate::algebra::same_algebra(m.algebra(), &algebra) {
                return Err(Error::Complex(format!("module in degree {} has the wrong algebra or side", lo + k as i64)));
            }
        }
        let zero = FinModule::zero(algebra.clone(), side);
        let c = ChainComplex { algebra, side, lo, hi, modules, diffs, lower, upper, zero };
        c.validate()?;
        Ok(c)
    }

    /// The zero complex.
    pub fn zero(algebra: AlgebraRef, side: Side) -> Self {
        let zero = FinModule::zero(algebra.clone(), side);
        ChainComplex {
            algebra,
            side,
            lo: 0,
            hi: 0,
            modules: vec![zero.clone()],
            diffs: Vec::new(),
            lower: Tail::Zero,
            upper: Tail::Zero,
            zero,
        }
    }

    /// A single module in degree `n`.
    pub fn concentrated(module: FinModule, n: i64) -> Self {
        let algebra = module.algebra().clone();
        let side = module.side();
        ChainComplex::new(algebra, side, n, vec![module], Vec::new(), Tail::Zero, Tail::Zero)
            .expect("a single module is a complex")
    }

    /// Builds the window `[lo, hi]` from degree functions; the tails are
    /// validated like any other complex.
    pub fn from_fn(
        algebra: AlgebraRef,
        side: Side,
        lo: i64,
        hi: i64,
        mut module: impl FnMut(i64) -> FinModule,
        mut diff: impl FnMut(i64) -> Matrix,
        lower: Tail,
        upper: Tail,
    ) -> Result<Self> {
        let modules = (lo..=hi).map(&mut module).collect();
        let diffs = (lo + 1..=hi).map(&mut diff).collect();
        ChainComplex::new(algebra, side, lo, modules, diffs, lower, upper)
    }

    fn validate(&self) -> Result<()> {
        for (name, tail, len) in [("upper", self.upper, self.hi - self.lo), ("lower", self.lower, self.hi - self.lo)] {
            if let Tail::Periodic { period } = tail {
                if period == 0 || len < period as i64 {
                    return Err(Error::Complex(format!("{name} tail of period {period} needs a window of {} degrees", period + 1)));
                }
            }
        }
        if let Tail::Periodic { period } = self.upper {
            if self.module(self.hi) != self.module(self.hi - period as i64) {
                return Err(Error::Complex(format!("upper seam: degree {} does not repeat degree {}", self.hi, self.hi - period as i64)));
            }
        }
        if let Tail::Periodic { period } = self.lower {
            if self.module(self.lo) != self.module(self.lo + period as i64) {
                return Err(Error::Complex(format!("lower seam: degree {} does not repeat degree {}", self.lo, self.lo + period as i64)));
            }
        }
        for i in self.lo + 1..=self.hi {
            let d = self.diff(i);
            let (src, tgt) = (self.module(i), self.module(i - 1));
            if d.shape() != (tgt.dim(), src.dim()) {
                return Err(Error::Complex(format!("differential in degree {i} has the wrong shape")));
            }
            if !src.is_linear_map(tgt, &d) {
                return Err(Error::Complex(format!("differential in degree {i} is not a module map")));
            }
        }
        let (a, b) = self.probe_range();
        for i in a..=b + 1 {
            let comp = self.diff(i - 1).mul(&self.diff(i));
            let rels = self.module(i - 2).rels();
            if !comp.is_zero() && solve_matrix(rels, &comp).is_none() {
                return Err(Error::Complex(format!("d∘d ≠ 0 at degree {i}")));
            }
        }
        Ok(())
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

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn lower_tail(&self) -> Tail {
        self.lower
    }

    pub fn upper_tail(&self) -> Tail {
        self.upper
    }

    /// Window extended by one period of each periodic tail: every degree's
    /// data is a copy of some degree in this range.
    pub fn probe_range(&self) -> (i64, i64) {
        (self.lo - self.lower.period() as i64 - 1, self.hi + self.upper.period() as i64 + 1)
    }

    pub fn module(&self, i: i64) -> &FinModule {
        if i > self.hi {
            match self.upper {
                Tail::Zero => &self.zero,
                Tail::Periodic { period } => self.module(fold_up(i, self.hi, period)),
            }
        } else if i < self.lo {
            match self.lower {
                Tail::Zero => &self.zero,
                Tail::Periodic { period } => self.module(fold_down(i, self.lo, period)),
            }
        } else {
            &self.modules[(i - self.lo) as usize]
        }
    }

    /// `∂_i : C_i → C_{i−1}`.
    pub fn diff(&self, i: i64) -> Matrix {
        if i > self.lo && i <= self.hi {
            return self.diffs[(i - self.lo - 1) as usize].clone();
        }
        if i > self.hi {
            if let Tail::Periodic { period } = self.upper {
                return self.diff(fold_up(i, self.hi, period));
            }
        } else if let Tail::Periodic { period } = self.lower {
            return self.diff(fold_down(i, self.lo + 1, period));
        }
        Matrix::zeros(self.domain(), self.module(i - 1).dim(), self.module(i).dim())
    }

    /// Largest degree with a nonzero module, or `None` when unbounded above.
    pub fn sup(&self) -> Option<i64> {
        match self.upper {
            Tail::Periodic { .. } => None,
            Tail::Zero => (self.lo..=self.hi).rev().find(|&i| self.module(i).dim() > 0).or(Some(i64::MIN)),
        }
    }

    /// Smallest degree with a nonzero module, or `None` when unbounded below.
    pub fn inf(&self) -> Option<i64> {
        match self.lower {
            Tail::Periodic { .. } => None,
            Tail::Zero => (self.lo..=self.hi).find(|&i| self.module(i).dim() > 0).or(Some(i64::MAX)),
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.lower == Tail::Zero && self.upper == Tail::Zero
    }

    /// Same complex with the explicit window widened to contain `[a, b]`.
    pub fn unrolled(&self, a: i64, b: i64) -> ChainComplex {
        let (lo, hi) = (a.min(self.lo), b.max(self.hi));
        if (lo, hi) == (self.lo, self.hi) {
            return self.clone();
        }
        let modules = (lo..=hi).map(|i| self.module(i).clone()).collect();
        let diffs = (lo + 1..=hi).map(|i| self.diff(i)).collect();
        ChainComplex { modules, diffs, lo, hi, ..self.clone() }
    }

    /// `Σⁿ C`: `(ΣⁿC)_i = C_{i−n}`, `∂^{ΣⁿC}_i = (−1)ⁿ ∂_{i−n}`.
    pub fn shift(&self, n: i64) -> ChainComplex {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let diffs = self.diffs.iter().map(|d| if sign == 1 { d.clone() } else { d.neg() }).collect();
        ChainComplex { lo: self.lo + n, hi: self.hi + n, diffs, ..self.clone() }
    }

    /// `C_{≤n}`: the subcomplex vanishing above `n`.
    pub fn truncate_below(&self, n: i64) -> ChainComplex {
        if n < self.lo && self.lower == Tail::Zero {
            return ChainComplex::zero(self.algebra.clone(), self.side);
        }
        let base = self.unrolled(n - self.lower.period() as i64, n);
        let hi = n;
        let len = (hi - base.lo + 1) as usize;
        let modules = base.modules[..len].to_vec();
        let diffs = base.diffs[..len - 1].to_vec();
        ChainComplex { modules, diffs, hi, upper: Tail::Zero, ..base }
    }

    /// `C_{≥n}`: the quotient complex vanishing below `n`.
    pub fn truncate_above(&self, n: i64) -> ChainComplex {
        if n > self.hi && self.upper == Tail::Zero {
            return ChainComplex::zero(self.algebra.clone(), self.side);
        }
        let base = self.unrolled(n, n + self.upper.period() as i64);
        let skip = (n - base.lo) as usize;
        let modules = base.modules[skip..].to_vec();
        let diffs = base.diffs[skip..].to_vec();
        ChainComplex { modules, diffs, lo: n, lower: Tail::Zero, ..base }
    }

    /// `Tsa_n C`: degrees above `n` removed and `C_n` replaced by `Co_n C`,
    /// kept as the same generators with the image of `∂_{n+1}` added to the relations.
    pub fn truncate_soft(&self, n: i64) -> Result<ChainComplex> {
        if n < self.lo && self.lower == Tail::Zero {
            return Ok(ChainComplex::zero(self.algebra.clone(), self.side));
        }
        let hard = self.truncate_below(n);
        let image = self.diff(n + 1);
        let co = self.module(n).with_relations(&image)?;
        let mut modules = hard.modules.clone();
        *modules.last_mut().expect("window is nonempty") = co;
        ChainComplex::new(self.algebra.clone(), self.side, hard.lo, modules, hard.diffs.clone(), hard.lower, Tail::Zero)
    }

    /// `Co_n C = C_n / im ∂_{n+1}`.
    pub fn cokernel_module(&self, n: i64) -> Result<FinModule> {
        self.module(n).with_relations(&self.diff(n + 1))
    }

    pub fn subquotient_at(&self, n: i64) -> Subquotient {
        let incoming = Matrix::hstack(&[&self.diff(n + 1), self.module(n).rels()]);
        Subquotient::new(&self.diff(n), self.module(n - 1).rels(), &incoming)
    }

    pub fn homology_at(&self, n: i64) -> HomologyGroup {
        self.subquotient_at(n).descriptor()
    }

    /// Homology over `[a, b]`; the range must cover the probe range so the
    /// verdict extends to every degree.
    pub fn is_acyclic(&self, a: i64, b: i64) -> Result<AcyclicityCertificate> {
        let (pa, pb) = self.probe_range();
        if a > pa || b < pb {
            return Err(Error::Complex(format!("probe range {a}..{b} does not cover {pa}..{pb}")));
        }
        for i in a..=b {
            let h = self.homology_at(i);
            if !h.is_zero() {
                return Ok(AcyclicityCertificate { acyclic: false, witness: Some((i, h)) });
            }
        }
        Ok(AcyclicityCertificate { acyclic: true, witness: None })
    }

    /// Direct sum of two complexes over the same algebra and side.
    pub fn direct_sum(&self, other: &ChainComplex) -> Result<ChainComplex> {
        let period = lcm_tails(self.upper, other.upper).max(lcm_tails(self.lower, other.lower));
        let lo = self.lo.min(other.lo) - period as i64;
        let hi = self.hi.max(other.hi) + period as i64;
        let dom = self.domain();
        let mut modules = Vec::new();
        for i in lo..=hi {
            modules.push(self.module(i).direct_sum(other.module(i))?);
        }
        let diffs = (lo + 1..=hi).map(|i| Matrix::block_diag(dom, &[&self.diff(i), &other.diff(i)])).collect();
        ChainComplex::new(
            self.algebra.clone(),
            self.side,
            lo,
            modules,
            diffs,
            combine_tails(self.lower, other.lower),
            combine_tails(self.upper, other.upper),
        )
    }
}

pub(crate) fn lcm_tails(a: Tail, b: Tail) -> usize {
    let (p, q) = (a.period(), b.period());
    match (p, q) {
        (0, q) => q,
        (p, 0) => p,
        (p, q) => p / gcd(p, q) * q,
    }
}

pub(crate) fn combine_tails(a: Tail, b: Tail) -> Tail {
    match lcm_tails(a, b) {
        0 => Tail::Zero,
        period => Tail::Periodic { period },
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AcyclicityCertificate {
    pub acyclic: bool,
    /// First degree with nonzero homology, if any.
    pub witness: Option<(i64, HomologyGroup)>,
}

#[cfg(test)]
mod tests;
