use super::theorem_c::TateRoute;
use super::{certificate_at, group_at, les_rows, plain, truncation_sequence, CheckReport, ReportBuilder};
use crate::algebra::{module_tensor, FinModule};
use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::functors::{tor, unbounded_tor, Argument};
use crate::resolution::{complete_resolution, CompleteResolution};
use crate::tensor::homology_window;

/// A complete resolution of `Co_n T` built from scratch, when the ring allows it.
fn fresh_resolution(co: &FinModule) -> Result<Option<CompleteResolution>> {
    if !co.domain().is_field() {
        return Ok(None);
    }
    match complete_resolution(co) {
        Ok(cr) => Ok(Some(cr)),
        Err(Error::Unsupported(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// For each split degree `s` in `splits`, the homology sequence of
/// `0 → T_{≤s−1} ⊗ N → T ⊗ N → T_{≥s} ⊗ N → 0` is certified exact over
/// `range`, and its terms are matched with `sTor_d(M, N)`,
/// `Tor_{d−s}(Co_s T, N)` and `bTor_{d−s+1}(Co_s T, N)` computed from fresh
/// resolutions of `Co_s T`. Also certifies the four-term sequence
/// `0 → sTor_s → Co_s T ⊗ N → bTor_0(Co_s T, N) → sTor_{s−1} → 0` and the
/// vanishing of `bTor_j(Co_s T, N)` for `j ≥ 1`.
pub fn check_stor_sequences(m: &FinModule, n: &FinModule, splits: &[i64], range: (i64, i64)) -> Result<CheckReport> {
    let mut report = ReportBuilder::new("stor_sequences", format!("M = {}, N = {}", m.descriptor(), n.descriptor()));
    let (m, n) = (&plain(m)?, &plain(n)?);
    let cr = complete_resolution(m)?;
    cr.validate()?;
    let t = &cr.totally_acyclic;
    let nc = ChainComplex::concentrated(n.clone(), 0);
    let nm = Argument::Module(n.clone());
    let route = TateRoute::new(&cr, m, n)?;
    for &s in splits {
        let (bottom, top) = (range.0.min(s - 1), range.1.max(s + 1));
        let les = truncation_sequence(t, s, &nc, bottom, top)?;
        let tag = format!("split {s}");
        les_rows(&mut report, &tag, &les);
        let co = plain(&t.cokernel_module(s)?)?;
        let fresh = fresh_resolution(&co)?;
        for d in bottom..=top {
            let term = |name: &str| group_at(&les, name, d).cloned().expect("term in range");
            let stor = route.at(d)?;
            report.iso(format!("{tag}: sTor vs H(T ⊗ N)"), Some(d), &stor, &term("mid"));
            if d >= s {
                let tor_value = tor(&Argument::Module(co.clone()), &nm, d - s)?.group;
                report.iso(format!("{tag}: Tor_(d-{s})(Co T, N) vs H(T_>= ⊗ N)"), Some(d), &tor_value, &term("quot"));
            } else {
                report.zero(format!("{tag}: H(T_>= ⊗ N) below the split"), Some(d), &term("quot"));
            }
            if let Some(fr) = &fresh {
                let b = unbounded_tor(fr, &nc, d - s + 1)?.group;
                report.iso(format!("{tag}: bTor_(d-{}) (Co T, N) vs H(T_<= ⊗ N)", s - 1), Some(d), &b, &term("sub"));
            }
        }
        for j in 1..=3 {
            let v = match &fresh {
                Some(fr) => unbounded_tor(fr, &nc, j)?.group,
                None => homology_window(&t.truncate_below(s - 1), &nc, j + s - 1)?,
            };
            report.zero(format!("{tag}: bTor_{j}(Co T, N) vanishes"), Some(j), &v);
        }
        report.zero(format!("{tag}: four-term left end bTor_1(Co T, N)"), Some(s), &group_at(&les, "sub", s).cloned().expect("term"));
        for (name, d) in [("mid", s), ("quot", s), ("sub", s - 1), ("mid", s - 1)] {
            let cert = certificate_at(&les, name, d).expect("interior spot");
            report.exact(format!("{tag}: four-term exact at {name}"), Some(d), cert);
        }
        report.zero(format!("{tag}: four-term right end"), Some(s - 1), &group_at(&les, "quot", s - 1).cloned().expect("term"));
        let tensor = module_tensor(&co, n)?.descriptor();
        report.iso(format!("{tag}: Co T ⊗ N vs H(T_>= ⊗ N)"), Some(s), &tensor, &group_at(&les, "quot", s).cloned().expect("term"));
    }
    Ok(report.finish())
}
