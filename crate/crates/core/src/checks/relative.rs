use super::{certificate_at, group_at, plain, CheckReport, ReportBuilder};
use crate::algebra::FinModule;
use crate::complex::{section, ChainComplex, ShortExactSequence};
use crate::error::{Error, Result};
use crate::functors::{relative_tor_gp, tor, unbounded_tor, Argument};
use crate::linalg::{induced_map, Matrix, Presented};
use crate::resolution::complete_resolution;
use crate::tensor::tensor_complexes;

/// `bTor_i(M, N) ≅ Tor^GP_i(M, N)` for `i ≥ 2` with the relative groups
/// taken over the assembled Gorenstein projective resolution, and in degree
/// one the left exact `0 → Tor^GP_1 → bTor_1 → sTor_0` read off the homology
/// sequence of `0 → K ⊗ N → T ⊗ N → P ⊗ N → 0`, where `Tor^GP_1` appears as
/// the cokernel of `H_1(T ⊗ N) → H_1(P ⊗ N)`.
pub fn check_relative_comparison(m: &FinModule, n: &FinModule, range: (i64, i64)) -> Result<CheckReport> {
    if !m.domain().is_field() {
        return Err(Error::Unsupported("relative comparison over the integers".into()));
    }
    let mut report = ReportBuilder::new("relative_comparison", format!("M = {}, N = {}", m.descriptor(), n.descriptor()));
    let (m, n) = (&plain(m)?, &plain(n)?);
    let cr = complete_resolution(m)?;
    cr.validate()?;
    let nc = ChainComplex::concentrated(n.clone(), 0);
    for i in 2..=range.1.max(2) {
        let b = unbounded_tor(&cr, &nc, i)?.group;
        let r = relative_tor_gp(m, &nc, i)?.group;
        report.iso("bTor vs Tor^GP", Some(i), &b, &r);
    }

    let (lo, hi) = (-2, 2);
    let (t, p) = (&cr.totally_acyclic, &cr.approximation);
    let sub = tensor_complexes(cr.kernel(), &nc, lo, hi)?;
    let mid = tensor_complexes(t, &nc, lo, hi)?;
    let quot = tensor_complexes(p, &nc, lo, hi)?;
    let mut incl = Vec::new();
    let mut proj = Vec::new();
    let mut sect = Vec::new();
    // N sits in degree 0, so degree d of each fragment is the single block i = d
    let sections: Vec<Matrix> =
        (lo..=hi).map(|i| section(&cr.comparison.at(i), t.module(i), p.module(i))).collect::<Result<_>>()?;
    for d in lo..=hi {
        incl.push(mid.map_from(&sub, d, |i| cr.kernel_inclusion(i))?);
        proj.push(quot.map_from(&mid, d, |i| cr.comparison.at(i))?);
        sect.push(mid.map_from(&quot, d, |i| sections[(i - lo) as usize].clone())?);
    }
    let at = move |v: &Vec<Matrix>, d: i64| v[(d - lo) as usize].clone();
    let proj_one = at(&proj, 1);
    let ses = ShortExactSequence {
        sub: &sub.complex,
        mid: &mid.complex,
        quot: &quot.complex,
        incl: Box::new(move |d| at(&incl, d)),
        proj: Box::new(move |d| at(&proj, d)),
        section: Box::new(move |d| at(&sect, d)),
    };
    let les = ses.long_exact_sequence(0, 1)?;
    report.exact("Tor^GP_1 → bTor_1 injective", Some(1), certificate_at(&les, "quot", 1).expect("interior"));
    report.exact("exact at bTor_1", Some(0), certificate_at(&les, "sub", 0).expect("interior"));

    let hb = mid.complex.subquotient_at(1);
    let hc = quot.complex.subquotient_at(1);
    let pi = induced_map(&hb, &hc, &proj_one);
    let coker = Presented { gens: hc.cycles.cols(), rels: Matrix::hstack(&[&hc.boundaries, &pi]) }.descriptor();
    let gp1 = relative_tor_gp(m, &nc, 1)?.group;
    report.iso("Tor^GP_1 vs coker(H_1(T ⊗ N) → H_1(P ⊗ N))", Some(1), &gp1, &coker);
    let b1 = unbounded_tor(&cr, &nc, 1)?.group;
    report.iso("bTor_1 vs H_0(K ⊗ N)", Some(1), &b1, group_at(&les, "sub", 0).expect("term"));
    let t1 = tor(&Argument::Module(m.clone()), &Argument::Module(n.clone()), 1)?.group;
    report.iso("Tor_1 vs H_1(P ⊗ N)", Some(1), &t1, group_at(&les, "quot", 1).expect("term"));
    Ok(report.finish())
}
