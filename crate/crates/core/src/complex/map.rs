use super::{combine_tails, fold_down, fold_up, lcm_tails, ChainComplex, Tail};
use crate::algebra::{hom_space, FinModule};
use crate::error::{Error, Result};
use crate::linalg::{kernel, rank, solve_matrix, Matrix};

/// Degreewise module maps `S_i → T_i` commuting with the differentials.
/// Outside the explicit window the maps vanish or repeat periodically.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    lo: i64,
    maps: Vec<Matrix>,
    lower: Tail,
    upper: Tail,
}

impl ChainMap {
    pub fn new(
        source: ChainComplex,
        target: ChainComplex,
        lo: i64,
        maps: Vec<Matrix>,
        lower: Tail,
        upper: Tail,
    ) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::Complex("chain map window must be nonempty".into()));
        }
        let f = ChainMap { source, target, lo, maps, lower, upper };
        f.validate()?;
        Ok(f)
    }

    pub fn identity(c: &ChainComplex) -> ChainMap {
        let (lo, hi) = c.window();
        let maps = (lo..=hi).map(|i| Matrix::identity(c.domain(), c.module(i).dim())).collect();
        ChainMap { source: c.clone(), target: c.clone(), lo, maps, lower: c.lower_tail(), upper: c.upper_tail() }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> ChainMap {
        let dom = source.domain();
        ChainMap {
            source: source.clone(),
            target: target.clone(),
            lo: 0,
            maps: vec![Matrix::zeros(dom, target.module(0).dim(), source.module(0).dim())],
            lower: Tail::Zero,
            upper: Tail::Zero,
        }
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    fn hi(&self) -> i64 {
        self.lo + self.maps.len() as i64 - 1
    }

    pub fn at(&self, i: i64) -> Matrix {
        let hi = self.hi();
        if i > hi {
            if let Tail::Periodic { period } = self.upper {
                return self.at(fold_up(i, hi, period));
            }
        } else if i < self.lo {
            if let Tail::Periodic { period } = self.lower {
                return self.at(fold_down(i, self.lo, period));
            }
        } else {
            return self.maps[(i - self.lo) as usize].clone();
        }
        Matrix::zeros(self.source.domain(), self.target.module(i).dim(), self.source.module(i).dim())
    }

    /// Degrees whose data determines the map and both complexes everywhere.
    pub fn probe_range(&self) -> (i64, i64) {
        let (sa, sb) = self.source.probe_range();
        let (ta, tb) = self.target.probe_range();
        let a = sa.min(ta).min(self.lo - self.lower.period() as i64 - 1);
        let b = sb.max(tb).max(self.hi() + self.upper.period() as i64 + 1);
        (a, b)
    }

    fn validate(&self) -> Result<()> {
        let hi = self.hi();
        for (tail, len) in [(self.upper, hi - self.lo), (self.lower, hi - self.lo)] {
            if let Tail::Periodic { period } = tail {
                if len < period as i64 {
                    return Err(Error::Complex("chain map window shorter than its period".into()));
                }
            }
        }
        let (a, b) = self.probe_range();
        for i in a..=b {
            let (s, t) = (self.source.module(i), self.target.module(i));
            let f = self.at(i);
            if f.shape() != (t.dim(), s.dim()) {
                return Err(Error::Complex(format!("chain map has the wrong shape in degree {i}")));
            }
            if !s.is_linear_map(t, &f) {
                return Err(Error::Complex(format!("chain map is not a module map in degree {i}")));
            }
            let defect = self.target.diff(i).mul(&f).sub(&self.at(i - 1).mul(&self.source.diff(i)));
            if !defect.is_zero() && solve_matrix(self.target.module(i - 1).rels(), &defect).is_none() {
                return Err(Error::Complex(format!("chain map does not commute with differentials in degree {i}")));
            }
        }
        Ok(())
    }

    /// The same maps between `Σⁿ` of source and target.
    pub fn shift(&self, n: i64) -> ChainMap {
        ChainMap {
            source: self.source.shift(n),
            target: self.target.shift(n),
            lo: self.lo + n,
            maps: self.maps.clone(),
            lower: self.lower,
            upper: self.upper,
        }
    }

    /// Explicit window of the map.
    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi())
    }

    /// Composite `self ∘ other`.
    pub fn compose(&self, other: &ChainMap) -> Result<ChainMap> {
        let lower = combine_tails(self.lower, other.lower);
        let upper = combine_tails(self.upper, other.upper);
        let (a1, b1) = self.probe_range();
        let (a2, b2) = other.probe_range();
        let (lo, hi) = (a1.min(a2), b1.max(b2));
        let maps = (lo..=hi).map(|i| self.at(i).mul(&other.at(i))).collect();
        ChainMap::new(other.source.clone(), self.target.clone(), lo, maps, lower, upper)
    }
}

fn sides_period(a: Tail, b: Tail, c: Tail) -> usize {
    lcm_tails(combine_tails(a, b), c)
}

fn tail_of(period: usize) -> Tail {
    if period == 0 {
        Tail::Zero
    } else {
        Tail::Periodic { period }
    }
}

/// `Cone(f)_i = S_{i−1} ⊕ T_i` with `∂(x, y) = (−∂x, f(x) + ∂y)`.
pub fn cone(f: &ChainMap) -> Result<ChainComplex> {
    let (s, t) = (&f.source, &f.target);
    let dom = s.domain();
    let up = sides_period(s.upper_tail(), t.upper_tail(), f.upper);
    let down = sides_period(s.lower_tail(), t.lower_tail(), f.lower);
    let (a, b) = f.probe_range();
    let (lo, hi) = (a - down as i64, b + up as i64 + 1);
    ChainComplex::from_fn(
        s.algebra().clone(),
        s.side(),
        lo,
        hi,
        |i| s.module(i - 1).direct_sum(t.module(i)).expect("same algebra and side"),
        |i| {
            let (s1, s2) = (s.module(i - 1).dim(), s.module(i - 2).dim());
            let (t0, t1) = (t.module(i).dim(), t.module(i - 1).dim());
            let mut d = Matrix::zeros(dom, s2 + t1, s1 + t0);
            d.paste(0, 0, &s.diff(i - 1).neg());
            d.paste(s2, 0, &f.at(i - 1));
            d.paste(s2, s1, &t.diff(i));
            d
        },
        tail_of(down),
        tail_of(up),
    )
}

/// Kernel of a degreewise split surjection of complexes over a field.
#[derive(Clone, Debug)]
pub struct SplitKernel {
    pub kernel: ChainComplex,
    pub inclusion: ChainMap,
}

impl SplitKernel {
    pub fn new(f: &ChainMap) -> Result<SplitKernel> {
        let s = &f.source;
        let dom = s.domain();
        if !dom.is_field() {
            return Err(Error::Unsupported("kernels of chain maps over the integers".into()));
        }
        let up = sides_period(s.upper_tail(), f.target.upper_tail(), f.upper);
        let down = sides_period(s.lower_tail(), f.target.lower_tail(), f.lower);
        let (a, b) = f.probe_range();
        let (lo, hi) = (a - down as i64, b + up as i64 + 1);
        let mut bases = Vec::new();
        let mut modules = Vec::new();
        for i in lo..=hi {
            let fi = f.at(i);
            if rank(&fi) != f.target.module(i).dim() {
                return Err(Error::Complex(format!("map is not surjective in degree {i}")));
            }
            let basis = kernel(&fi);
            modules.push(s.module(i).submodule(&basis)?);
            bases.push(basis);
        }
        let diffs = (lo + 1..=hi)
            .map(|i| {
                let (k, k1) = (&bases[(i - lo) as usize], &bases[(i - lo - 1) as usize]);
                let img = s.diff(i).mul(k);
                if k1.cols() == 0 {
                    Matrix::zeros(dom, 0, k.cols())
                } else {
                    solve_matrix(k1, &img).expect("differential preserves the kernel")
                }
            })
            .collect();
        let kernel = ChainComplex::new(s.algebra().clone(), s.side(), lo, modules, diffs, tail_of(down), tail_of(up))?;
        let inclusion = ChainMap::new(kernel.clone(), s.clone(), lo, bases, tail_of(down), tail_of(up))?;
        Ok(SplitKernel { kernel, inclusion })
    }
}

/// A module section `σ` of `f_i` (`f_i σ = id`), certifying split surjectivity.
pub fn section(f: &Matrix, source: &FinModule, target: &FinModule) -> Result<Matrix> {
    let dom = f.domain();
    let hom = hom_space(target, source)?;
    let id = Matrix::identity(dom, target.dim());
    if target.dim() == 0 {
        return Ok(Matrix::zeros(dom, source.dim(), 0));
    }
    let images: Vec<Vec<_>> = hom.basis.iter().map(|b| flat(&f.mul(b))).collect();
    let rows = target.dim() * target.dim();
    let system = Matrix::from_columns(dom, rows, &images);
    let rhs = Matrix::from_columns(dom, rows, &[flat(&id)]);
    if hom.basis.is_empty() {
        return Err(Error::Complex("no module section exists".into()));
    }
    let coeffs = solve_matrix(&system, &rhs).ok_or_else(|| Error::Complex("no module section exists".into()))?;
    let mut out = Matrix::zeros(dom, source.dim(), target.dim());
    for (k, b) in hom.basis.iter().enumerate() {
        out = out.add(&b.scale(coeffs.get(k, 0)));
    }
    Ok(out)
}

fn flat(m: &Matrix) -> Vec<crate::linalg::Scalar> {
    (0..m.rows()).flat_map(|i| m.row(i)).collect()
}
