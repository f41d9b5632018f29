use super::{certificate_at, group_at, plain, truncation_sequence, CheckReport, ReportBuilder};
use crate::algebra::{hom_space, hom_to_regular, module_tensor, FinModule, Side};
use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::functors::{tate_tor, tate_tor_right};
use crate::hom::free_rank;
use crate::linalg::{HomologyGroup, Matrix, Presented, Subquotient};
use crate::resolution::{complete_resolution, CompleteResolution};

/// `Hom(Hom(M, R), N)`: through the residual module structure over a field,
/// and as `N^k` for `M = R^k` over the integers.
pub(crate) fn double_hom(m: &FinModule, n: &FinModule) -> Result<HomologyGroup> {
    let dom = m.domain();
    if dom.is_field() {
        let (hm, _) = hom_to_regular(m)?;
        return Ok(HomologyGroup::free(dom, hom_space(&hm, n)?.dim()));
    }
    match free_rank(m) {
        Some(k) => Ok((0..k).fold(HomologyGroup::zero(dom), |acc, _| acc.direct_sum(&n.descriptor()))),
        None => Err(Error::Unsupported("Hom(Hom(M, R), N) for a non-free module over the integers".into())),
    }
}

/// `θ : M ⊗ N → Hom(Hom(M, R), N)`, `m ⊗ n ↦ (φ ↦ φ(m)·n)`, in the
/// generators `mₐ ⊗ n_b` and the basis of the target.
fn evaluation_map(m: &FinModule, n: &FinModule) -> Result<Matrix> {
    let dom = m.domain();
    let (hm, duals) = hom_to_regular(m)?;
    let target = hom_space(&hm, n)?;
    let mut cols = Vec::with_capacity(m.dim() * n.dim());
    for a in 0..m.dim() {
        for b in 0..n.dim() {
            let images: Vec<_> = duals.basis.iter().map(|phi| n.act(&phi.column(a)).column(b)).collect();
            let psi = Matrix::from_columns(dom, n.dim(), &images);
            let coords = target
                .coords(&psi)
                .ok_or_else(|| Error::Module("evaluation is not a module map".into()))?;
            cols.push(coords);
        }
    }
    Ok(Matrix::from_columns(dom, target.dim(), &cols))
}

/// Tate homology of `(M, N)` through a complete resolution of `N` when one
/// is available, else through that of `M`.
pub(crate) struct TateRoute<'a> {
    left: &'a CompleteResolution,
    m: ChainComplex,
    n: ChainComplex,
    right: Option<CompleteResolution>,
}

impl<'a> TateRoute<'a> {
    pub(crate) fn new(left: &'a CompleteResolution, m: &FinModule, n: &FinModule) -> Result<Self> {
        let right = match complete_resolution(n) {
            Ok(cn) => Some(cn),
            Err(Error::Unsupported(_)) => None,
            Err(e) => return Err(e),
        };
        let (m, n) = (ChainComplex::concentrated(m.clone(), 0), ChainComplex::concentrated(n.clone(), 0));
        Ok(TateRoute { left, m, n, right })
    }

    pub(crate) fn at(&self, i: i64) -> Result<HomologyGroup> {
        match &self.right {
            Some(cn) => Ok(tate_tor_right(&self.m, cn, i)?.group),
            None => Ok(tate_tor(self.left, &self.n, i)?.group),
        }
    }
}

/// `0 → Ĥ_0(M, N) → M ⊗ N → Hom(Hom(M, R), N) → Ĥ_{−1}(M, N) → 0` for a
/// finitely generated Gorenstein projective `M`: the sequence is the
/// homology sequence of `0 → T_{≤−1} ⊗ N → T ⊗ N → T_{≥0} ⊗ N → 0`, its
/// terms are matched against independent computations, and over a field the
/// middle map is rebuilt as the evaluation map `θ`.
pub fn check_theorem_c(m: &FinModule, n: &FinModule) -> Result<CheckReport> {
    if m.side() != Side::Right || n.side() != Side::Left {
        return Err(Error::Module("the sequence takes a right module and a left module".into()));
    }
    let mut report = ReportBuilder::new("theorem_c", format!("M = {}, N = {}", m.descriptor(), n.descriptor()));
    let (m, n) = (&plain(m)?, &plain(n)?);
    let cr = complete_resolution(m)?;
    cr.validate()?;
    if let Some(g) = cr.sharp_threshold() {
        if g > 0 {
            return Err(Error::Hypothesis(format!("M has Gorenstein projective dimension {g}")));
        }
    }
    let nc = ChainComplex::concentrated(n.clone(), 0);
    let les = truncation_sequence(&cr.totally_acyclic, 0, &nc, -1, 0)?;
    let term = |t: &str, d: i64| group_at(&les, t, d).cloned().expect("term in range");
    report.zero("left end H_0(T_{<=-1} ⊗ N)", Some(0), &term("sub", 0));
    for (t, d, name) in [("mid", 0, "Tate_0"), ("quot", 0, "M ⊗ N"), ("sub", -1, "Hom(Hom(M,R),N)"), ("mid", -1, "Tate_-1")] {
        let cert = certificate_at(&les, t, d).expect("interior spot");
        report.exact(format!("exact at {name}"), Some(d), cert);
    }
    report.zero("right end H_-1(T_{>=0} ⊗ N)", Some(-1), &term("quot", -1));

    let route = TateRoute::new(&cr, m, n)?;
    let (tate0, tate1) = (route.at(0)?, route.at(-1)?);
    report.iso("Tate_0 vs H_0(T ⊗ N)", Some(0), &tate0, &term("mid", 0));
    report.iso("M ⊗ N vs H_0(T_{>=0} ⊗ N)", Some(0), &module_tensor(m, n)?.descriptor(), &term("quot", 0));
    match double_hom(m, n) {
        Ok(h) => report.iso("Hom(Hom(M,R),N) vs H_-1(T_{<=-1} ⊗ N)", Some(-1), &h, &term("sub", -1)),
        Err(Error::Unsupported(_)) => {}
        Err(e) => return Err(e),
    }
    report.iso("Tate_-1 vs H_-1(T ⊗ N)", Some(-1), &tate1, &term("mid", -1));

    if m.domain().is_field() {
        let theta = evaluation_map(m, n)?;
        let rels = module_tensor(m, n)?.space.rels;
        let dom = m.domain();
        let well_defined = theta.mul(&rels).is_zero();
        report.equal("evaluation kills the tensor relations", None, true, well_defined);
        if !well_defined {
            return Ok(report.finish());
        }
        let ker = Subquotient::new(&theta, &Matrix::zeros(dom, theta.rows(), 0), &rels).descriptor();
        let coker = Presented { gens: theta.rows(), rels: theta }.descriptor();
        report.iso("ker(evaluation) vs Tate_0", Some(0), &ker, &tate0);
        report.iso("coker(evaluation) vs Tate_-1", Some(-1), &coker, &tate1);
    }
    Ok(report.finish())
}
