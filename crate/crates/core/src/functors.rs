//! Tor, Tate Tor, unbounded and stable Tor, relative Tor and Ext.

use std::collections::HashMap;
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use crate::algebra::FinModule;
use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::hom::hom_complex;
use crate::linalg::HomologyGroup;
use crate::resolution::{
    assemble_complex_resolution, closed_resolution, truncated_resolution, CompleteResolution, ProjectiveResolution,
    DEFAULT_HORIZON,
};
use crate::tensor::homology_window;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctorKind {
    Tor,
    Tate,
    Btor,
    Stor,
    GpRelative,
    GfRelative,
    Ext,
}

impl std::fmt::Display for FunctorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            FunctorKind::Tor => "tor",
            FunctorKind::Tate => "tate",
            FunctorKind::Btor => "btor",
            FunctorKind::Stor => "stor",
            FunctorKind::GpRelative => "gp_relative",
            FunctorKind::GfRelative => "gf_relative",
            FunctorKind::Ext => "ext",
        };
        f.write_str(s)
    }
}

/// A module, or a complex of modules.
#[derive(Clone, Debug)]
pub enum Argument {
    Module(FinModule),
    Complex(ChainComplex),
}

impl Argument {
    pub fn as_complex(&self) -> ChainComplex {
        match self {
            Argument::Module(m) => ChainComplex::concentrated(m.clone(), 0),
            Argument::Complex(c) => c.clone(),
        }
    }

    pub fn as_module(&self) -> Option<&FinModule> {
        match self {
            Argument::Module(m) => Some(m),
            Argument::Complex(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorValue {
    pub functor: FunctorKind,
    pub degree: i64,
    pub group: HomologyGroup,
    /// Zero for degree reasons alone, without any computation.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub definitionally_zero: bool,
}

impl FunctorValue {
    fn computed(functor: FunctorKind, degree: i64, group: HomologyGroup) -> Self {
        FunctorValue { functor, degree, group, definitionally_zero: false }
    }

    fn trivial(functor: FunctorKind, degree: i64, dom: crate::linalg::Domain) -> Self {
        FunctorValue { functor, degree, group: HomologyGroup::zero(dom), definitionally_zero: true }
    }
}

/// A projective resolution exact through degree `depth`: closed when it
/// closes, truncated with two degrees of slack otherwise.
pub fn resolution_to_depth(m: &FinModule, depth: i64) -> Result<ProjectiveResolution> {
    let depth = depth.max(0) as usize;
    if m.domain().is_field() {
        if let Ok(p) = closed_resolution(m, DEFAULT_HORIZON.max(depth + 2)) {
            return Ok(p);
        }
    }
    truncated_resolution(m, depth + 2)
}

fn negative_module_degree(functor: FunctorKind, i: i64) -> Error {
    Error::Unsupported(format!("{functor} of modules in negative degree {i}"))
}

fn bounded(c: &ChainComplex, what: &str) -> Result<(i64, i64)> {
    match (c.inf(), c.sup()) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(Error::Unsupported(format!("{what} must be bounded"))),
    }
}

/// `Tor_i(M, N)`: resolve a module argument and tensor with the other.
pub fn tor(m: &Argument, n: &Argument, i: i64) -> Result<FunctorValue> {
    let kind = FunctorKind::Tor;
    let (mc, nc) = (m.as_complex(), n.as_complex());
    let dom = mc.domain();
    if i < 0 && m.as_module().is_some() && n.as_module().is_some() {
        return Err(negative_module_degree(kind, i));
    }
    let (m_inf, _) = bounded(&mc, "left argument")?;
    let (n_inf, _) = bounded(&nc, "right argument")?;
    if m_inf > i64::MAX / 2 || n_inf > i64::MAX / 2 || i < m_inf.saturating_add(n_inf) {
        return Ok(FunctorValue::trivial(kind, i, dom));
    }
    let group = if let Some(module) = m.as_module() {
        let p = resolution_to_depth(module, i - n_inf + 1)?;
        homology_window(&p.complex, &nc, i)?
    } else if let Some(module) = n.as_module() {
        let q = resolution_to_depth(module, i - m_inf + 1)?;
        homology_window(&mc, &q.complex, i)?
    } else {
        return Err(Error::Unsupported("Tor of two complexes needs a module argument".into()));
    };
    Ok(FunctorValue::computed(kind, i, group))
}

/// `Tor_i(M, N)` for a left argument given by a projective resolution.
pub fn tor_from_resolution(p: &ChainComplex, n: &ChainComplex, i: i64) -> Result<FunctorValue> {
    Ok(FunctorValue::computed(FunctorKind::Tor, i, homology_window(p, n, i)?))
}

/// `Ĥ_i = H_i(T ⊗ N)` for the complete resolution `T` of the left argument.
pub fn tate_tor(cr: &CompleteResolution, n: &ChainComplex, i: i64) -> Result<FunctorValue> {
    Ok(FunctorValue::computed(FunctorKind::Tate, i, homology_window(&cr.totally_acyclic, n, i)?))
}

/// `H_i(M ⊗ T′)` for the complete resolution `T′` of the right argument.
pub fn tate_tor_right(m: &ChainComplex, cr: &CompleteResolution, i: i64) -> Result<FunctorValue> {
    Ok(FunctorValue::computed(FunctorKind::Tate, i, homology_window(m, &cr.totally_acyclic, i)?))
}

/// `bTor_i(M, N) = H_{i−1}(K ⊗ N)` with `K` the kernel of the comparison.
pub fn unbounded_tor(cr: &CompleteResolution, n: &ChainComplex, i: i64) -> Result<FunctorValue> {
    bounded(n, "right argument")?;
    Ok(FunctorValue::computed(FunctorKind::Btor, i, homology_window(cr.kernel(), n, i - 1)?))
}

/// `bTor_i(N, M)` with the roles swapped: `H_{i−1}(N ⊗ K′)` for the kernel
/// `K′` of a complete resolution of the left module `M`.
pub fn unbounded_tor_right(n: &ChainComplex, cr: &CompleteResolution, i: i64) -> Result<FunctorValue> {
    bounded(n, "left argument")?;
    Ok(FunctorValue::computed(FunctorKind::Btor, i, homology_window(n, cr.kernel(), i - 1)?))
}

/// `sTor_i(M, N) = H_i(T ⊗ N)`.
pub fn stable_tor(cr: &CompleteResolution, n: &ChainComplex, i: i64) -> Result<FunctorValue> {
    bounded(n, "right argument")?;
    Ok(FunctorValue::computed(FunctorKind::Stor, i, homology_window(&cr.totally_acyclic, n, i)?))
}

/// `Tor^GP_i(M, N) = H_i(G ⊗ N)` over the proper Gorenstein projective
/// resolution `G → M`. Also used for `Tor^GF`.
pub fn relative_tor_gp(m: &FinModule, n: &ChainComplex, i: i64) -> Result<FunctorValue> {
    relative(FunctorKind::GpRelative, m, n, i)
}

/// `Tor^GF_i`, computed as `Tor^GP_i`: over the supported rings finitely
/// generated Gorenstein flat and Gorenstein projective modules coincide.
pub fn relative_tor_gf(m: &FinModule, n: &ChainComplex, i: i64) -> Result<FunctorValue> {
    relative(FunctorKind::GfRelative, m, n, i)
}

fn relative(kind: FunctorKind, m: &FinModule, n: &ChainComplex, i: i64) -> Result<FunctorValue> {
    if i < 0 {
        return Err(negative_module_degree(kind, i));
    }
    let m = if m.domain().is_field() { m.reduced()?.0 } else { m.clone() };
    let g = assemble_complex_resolution(&ChainComplex::concentrated(m, 0))?;
    Ok(FunctorValue::computed(kind, i, homology_window(&g.cover, n, i)?))
}

/// `Ext^i(M, N)`: cohomology of `Hom(P, N)` in degree `i`.
pub fn ext(m: &FinModule, n: &FinModule, i: i64) -> Result<FunctorValue> {
    if i < 0 {
        return Err(negative_module_degree(FunctorKind::Ext, i));
    }
    let p = resolution_to_depth(m, i + 1)?;
    let h = hom_complex(&p.complex, n)?;
    Ok(FunctorValue::computed(FunctorKind::Ext, i, h.homology_at(-i)))
}

/// Memo of computed values keyed by functor, argument label and degree.
/// Readers share the lock; inserts take it exclusively.
#[derive(Debug, Default)]
pub struct FunctorCache {
    entries: RwLock<HashMap<(FunctorKind, String, i64), FunctorValue>>,
}

impl FunctorCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, kind: FunctorKind, key: &str, degree: i64) -> Option<FunctorValue> {
        self.entries.read().expect("cache lock").get(&(kind, key.to_string(), degree)).cloned()
    }

    pub fn get_or_compute(
        &self,
        kind: FunctorKind,
        key: &str,
        degree: i64,
        compute: impl FnOnce() -> Result<FunctorValue>,
    ) -> Result<FunctorValue> {
        if let Some(v) = self.get(kind, key, degree) {
            return Ok(v);
        }
        let v = compute()?;
        self.entries.write().expect("cache lock").entry((kind, key.to_string(), degree)).or_insert_with(|| v.clone());
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
