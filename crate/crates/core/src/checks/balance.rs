use super::{CheckReport, ReportBuilder};
use crate::algebra::{FinModule, Side};
use crate::complex::{cone, ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::functors::{tate_tor, tate_tor_right, unbounded_tor, unbounded_tor_right};
use crate::resolution::{complete_resolution, truncated_resolution};
use crate::tensor::homology_window;

fn sides(m: &FinModule, n: &FinModule) -> Result<()> {
    if m.side() != Side::Right || n.side() != Side::Left {
        return Err(Error::Module("balance checks take a right module and a left module".into()));
    }
    Ok(())
}

/// `Cone(id_R)` in degrees 0 and 1: a contractible complex of projectives.
fn contractible(side: Side, like: &ChainComplex) -> Result<ChainComplex> {
    let r = ChainComplex::concentrated(FinModule::regular(like.algebra().clone(), side), 0);
    cone(&ChainMap::identity(&r))
}

/// Cokernel in degree `s` of a projective resolution of `x`.
fn syzygy_cokernel(x: &FinModule, s: i64) -> Result<FinModule> {
    let p = truncated_resolution(x, (s + 2) as usize)?;
    p.complex.cokernel_module(s)
}

/// `Ĥ_i(M, N) = H_i(T_M ⊗ N)` against `H_i(M ⊗ T_N)` (part a), against
/// `H_i(M ⊗ S)` for a second complete resolution `S = T_N ⊕ Cone(id_R)`
/// (part b), and against the syzygy routes `H_{i−s}(T_M ⊗ Co_s F′)` and
/// `H_{i−s}(Co_s F ⊗ T_N)` through projective resolutions `F, F′`.
pub fn check_balance_tate(m: &FinModule, n: &FinModule, range: (i64, i64)) -> Result<CheckReport> {
    sides(m, n)?;
    let mut report = ReportBuilder::new("balance_tate", format!("M = {}, N = {}", m.descriptor(), n.descriptor()));
    let cm = complete_resolution(m)?;
    let cn = complete_resolution(n)?;
    cm.validate()?;
    cn.validate()?;
    let (mc, nc) = (ChainComplex::concentrated(m.clone(), 0), ChainComplex::concentrated(n.clone(), 0));
    let s = cn.totally_acyclic.direct_sum(&contractible(Side::Left, &nc)?)?;
    let gm = 1;
    let co_n: Vec<(i64, ChainComplex)> = [1, 2]
        .iter()
        .map(|&k| Ok((k, ChainComplex::concentrated(syzygy_cokernel(n, k)?, 0))))
        .collect::<Result<_>>()?;
    let co_m = ChainComplex::concentrated(syzygy_cokernel(m, gm)?, 0);
    for i in range.0..=range.1 {
        let left = tate_tor(&cm, &nc, i)?.group;
        let right = tate_tor_right(&mc, &cn, i)?.group;
        report.iso("H(T_M ⊗ N) vs H(M ⊗ T_N)", Some(i), &left, &right);
        let other = homology_window(&mc, &s, i)?;
        report.iso("H(T_M ⊗ N) vs H(M ⊗ S)", Some(i), &left, &other);
        for (k, co) in &co_n {
            let g = homology_window(&cm.totally_acyclic, co, i - k)?;
            report.iso(format!("H(T_M ⊗ N) vs H_(i-{k})(T_M ⊗ Co_{k} F')"), Some(i), &left, &g);
        }
        let g = homology_window(&co_m, &cn.totally_acyclic, i - gm)?;
        report.iso(format!("H(M ⊗ T_N) vs H_(i-{gm})(Co_{gm} F ⊗ T_N)"), Some(i), &right, &g);
    }
    Ok(report.finish())
}

/// `bTor_i(M, N)` from the kernel of the comparison of `M` against the same
/// group from the kernel of the comparison of `N`.
pub fn check_balance_unbounded(m: &FinModule, n: &FinModule, range: (i64, i64)) -> Result<CheckReport> {
    sides(m, n)?;
    let mut report = ReportBuilder::new("balance_unbounded", format!("M = {}, N = {}", m.descriptor(), n.descriptor()));
    let cm = complete_resolution(m)?;
    let cn = complete_resolution(n)?;
    cm.validate()?;
    cn.validate()?;
    let (mc, nc) = (ChainComplex::concentrated(m.clone(), 0), ChainComplex::concentrated(n.clone(), 0));
    for i in range.0..=range.1 {
        let left = unbounded_tor(&cm, &nc, i)?.group;
        let right = unbounded_tor_right(&mc, &cn, i)?.group;
        report.iso("bTor(M, N) vs bTor(N, M)", Some(i), &left, &right);
    }
    Ok(report.finish())
}
