use super::theorem_c::double_hom;
use super::{plain, CheckReport, ReportBuilder};
use crate::algebra::{hom_to_regular, indecomposable_injectives, FinModule, Side};
use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::functors::{ext, unbounded_tor};
use crate::gdim::{gfd_detect, theorem_b_bound, Quantity};
use crate::resolution::{complete_resolution, zero_resolution, CompleteResolution};

/// A complete resolution of an acyclic complex (zero) or of a shifted module.
pub fn complete_resolution_of_complex(m: &ChainComplex) -> Result<CompleteResolution> {
    let (lo, hi) = m.probe_range();
    if m.is_bounded() && m.is_acyclic(lo, hi)?.acyclic {
        let mut cr = zero_resolution(m.algebra().clone(), m.side())?;
        cr.resolved = m.clone();
        return Ok(cr);
    }
    match (m.inf(), m.sup()) {
        (Some(a), Some(b)) if a == b => Ok(complete_resolution(&plain(m.module(a))?)?.shift(a)),
        _ => Err(Error::Unsupported("complete resolutions of complexes with several nonzero modules".into())),
    }
}

fn show(v: Option<i64>) -> String {
    v.map_or_else(|| "-inf".to_string(), |g| g.to_string())
}

/// With `g = Gfd M` certified: `bTor_i(M, N) = 0` for `i > g` over the test
/// modules and the indecomposable injectives, the largest nonvanishing degree
/// over that list equals `g`, and for a finitely generated Gorenstein
/// projective module `bTor_i(M, N) ≅ Ext^{−i}(Hom(M, R), N)` for `i ≤ 0`
/// with `bTor_0(M, N) ≅ Hom(Hom(M, R), N)`.
pub fn check_vanishing_and_dim_formulas(m: &ChainComplex, tests: &[FinModule], range: (i64, i64)) -> Result<CheckReport> {
    let mut report = ReportBuilder::new("vanishing_and_dimension", format!("M with window {:?}", m.window()));
    let dim = gfd_detect(m)?;
    let g = dim.value.exact().ok_or_else(|| Error::Hypothesis(format!("Gfd is only known as {}", dim.value)))?;
    let upper = dim.upper.as_ref().and_then(|u| u.bound);
    report.equal("upper witness matches Gfd", None, show(upper), show(g));
    report.equal("lower witness matches Gfd", None, show(dim.lower.as_ref().map(|l| l.degree)), show(g));

    let cr = complete_resolution_of_complex(m)?;
    let mut list: Vec<FinModule> = tests.iter().map(plain).collect::<Result<_>>()?;
    list.extend(indecomposable_injectives(m.algebra(), Side::Left)?);
    let gp_module = match (m.inf(), m.sup()) {
        (Some(0), Some(0)) if m.domain().is_field() && g.is_none_or(|g| g <= 0) => Some(plain(m.module(0))?),
        _ => None,
    };
    let dual = gp_module.as_ref().map(hom_to_regular).transpose()?;
    let mut top: Option<i64> = None;
    for (k, n) in list.iter().enumerate() {
        let nc = ChainComplex::concentrated(n.clone(), 0);
        for i in range.0..=range.1 {
            let b = unbounded_tor(&cr, &nc, i)?.group;
            if !b.is_zero() {
                top = top.max(Some(i));
            }
            if g.is_none_or(|g| i > g) {
                report.zero(format!("test module {k}: bTor vanishes above Gfd"), Some(i), &b);
            }
            if let (Some(x), Some((hm, _))) = (&gp_module, &dual) {
                if i == 0 {
                    report.iso(format!("test module {k}: bTor_0 vs Hom(Hom(M,R),N)"), Some(0), &b, &double_hom(x, n)?);
                }
                if i <= 0 {
                    let e = ext(hm, n, -i)?.group;
                    report.iso(format!("test module {k}: bTor vs Ext^(-i)(Hom(M,R),N)"), Some(i), &b, &e);
                }
            }
        }
    }
    report.equal("largest nonvanishing degree over the list", None, show(top), show(g));
    Ok(report.finish())
}

/// `Gfd M ≤ max_i Gfd M_i + sup M` for a bounded complex; the label records
/// whether the inequality is strict.
pub fn check_theorem_b(m: &ChainComplex) -> Result<CheckReport> {
    let mut report = ReportBuilder::new("theorem_b", format!("M with window {:?}", m.window()));
    let dim = gfd_detect(m)?;
    let bound = theorem_b_bound(m, Quantity::Gfd)?;
    let holds = dim.value.at_most(bound.bound);
    let strict = holds && dim.value.exact() != Some(bound.bound);
    let label = if strict { "Gfd <= component bound (strict)" } else { "Gfd <= component bound" };
    report.at_most(label, dim.value, show(bound.bound), holds);
    Ok(report.finish())
}
