//! Gorenstein projective and flat dimensions of modules and bounded complexes.

use serde::{Deserialize, Serialize};

use crate::algebra::{indecomposable_injectives, FinModule, Side};
use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::functors::{tor, Argument};
use crate::linalg::HomologyGroup;
use crate::resolution::{complete_resolution, CompleteResolution};

/// Scan depth used when no upper bound can be computed.
pub const DEFAULT_SCAN_CAP: i64 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Gpd,
    Gfd,
}

/// A dimension in `ℤ ∪ {−∞}`, or a one-sided estimate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum DimValue {
    NegInfinity,
    Exact(i64),
    /// Only an upper bound is known.
    AtMost(i64),
    /// Only a lower bound is known.
    AtLeast(i64),
}

impl DimValue {
    /// The value as a point of `ℤ ∪ {−∞}` (`None` is `−∞`) when exact.
    pub fn exact(self) -> Option<Option<i64>> {
        match self {
            DimValue::NegInfinity => Some(None),
            DimValue::Exact(v) => Some(Some(v)),
            _ => None,
        }
    }

    /// Whether the value is known to be at most `bound` (`None` is `−∞`).
    pub fn at_most(self, bound: Option<i64>) -> bool {
        match (self, bound) {
            (DimValue::NegInfinity, _) => true,
            (_, None) => false,
            (DimValue::Exact(v) | DimValue::AtMost(v), Some(b)) => v <= b,
            (DimValue::AtLeast(_), Some(_)) => false,
        }
    }
}

impl std::fmt::Display for DimValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DimValue::NegInfinity => write!(f, "-inf"),
            DimValue::Exact(v) => write!(f, "{v}"),
            DimValue::AtMost(v) => write!(f, "<= {v}"),
            DimValue::AtLeast(v) => write!(f, ">= {v}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperWitness {
    pub method: String,
    /// `None` stands for `−∞`.
    pub bound: Option<i64>,
}

/// `Tor_degree(M, E) ≠ 0` for the indecomposable injective number `injective`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerWitness {
    pub injective: usize,
    pub degree: i64,
    pub group: HomologyGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub quantity: Quantity,
    pub value: DimValue,
    pub upper: Option<UpperWitness>,
    pub lower: Option<LowerWitness>,
    pub method: String,
}

fn is_acyclic(m: &ChainComplex) -> Result<bool> {
    let (a, b) = m.probe_range();
    Ok(m.is_acyclic(a, b)?.acyclic)
}

fn as_single_module(m: &ChainComplex) -> Option<(FinModule, i64)> {
    let (a, b) = (m.inf()?, m.sup()?);
    (a == b).then(|| (m.module(a).clone(), a))
}

fn reduced(m: &FinModule) -> Result<FinModule> {
    if m.domain().is_field() {
        Ok(m.reduced()?.0)
    } else {
        Ok(m.clone())
    }
}

/// Upper bound from a complete resolution when `M` is a shifted module, from
/// the component bound otherwise.
fn upper_bound(m: &ChainComplex) -> Result<Option<UpperWitness>> {
    if let Some((module, d)) = as_single_module(m) {
        return match complete_resolution(&reduced(&module)?) {
            Ok(cr) => {
                let cr = cr.shift(d);
                cr.validate()?;
                Ok(Some(UpperWitness { method: "complete resolution".into(), bound: cr.sharp_threshold() }))
            }
            Err(Error::Unsupported(_)) => Ok(None),
            Err(e) => Err(e),
        };
    }
    match theorem_b_bound(m, Quantity::Gfd) {
        Ok(b) => Ok(Some(UpperWitness { method: "component bound".into(), bound: b.bound })),
        Err(Error::Unsupported(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Largest `n` with `Tor_n(M, E) ≠ 0` for an indecomposable injective `E`,
/// scanned over `from..=to`.
fn scan(m: &ChainComplex, from: i64, to: i64) -> Result<Option<LowerWitness>> {
    let injectives = indecomposable_injectives(m.algebra(), Side::Left)?;
    let arg = match as_single_module(m) {
        Some((module, 0)) => Argument::Module(module),
        _ => Argument::Complex(m.clone()),
    };
    let mut best: Option<LowerWitness> = None;
    for n in (from..=to).rev() {
        for (idx, e) in injectives.iter().enumerate() {
            let v = tor(&arg, &Argument::Module(e.clone()), n)?;
            if !v.group.is_zero() {
                best = Some(LowerWitness { injective: idx, degree: n, group: v.group });
                break;
            }
        }
        if best.is_some() {
            break;
        }
    }
    Ok(best)
}

/// `Gfd M = sup{n | Tor_n(M, E) ≠ 0, E injective}`, or `−∞` for acyclic
/// `M`. The scan stops two degrees past the certified upper bound, beyond
/// which all these groups vanish; without a bound only a lower bound is
/// reported.
pub fn gfd_detect(m: &ChainComplex) -> Result<DimensionReport> {
    gfd_detect_with_cap(m, DEFAULT_SCAN_CAP)
}

pub fn gfd_detect_with_cap(m: &ChainComplex, cap: i64) -> Result<DimensionReport> {
    let quantity = Quantity::Gfd;
    if !m.is_bounded() {
        return Err(Error::Unsupported("dimension detection for unbounded complexes".into()));
    }
    if is_acyclic(m)? {
        return Ok(DimensionReport {
            quantity,
            value: DimValue::NegInfinity,
            upper: Some(UpperWitness { method: "acyclic".into(), bound: None }),
            lower: None,
            method: "acyclicity".into(),
        });
    }
    let inf = m.inf().expect("bounded");
    let upper = upper_bound(m)?;
    let top = match &upper {
        Some(UpperWitness { bound: Some(b), .. }) => b + 2,
        Some(UpperWitness { bound: None, .. }) => {
            return Err(Error::Resolution("a non-acyclic complex was given the bound −∞".into()));
        }
        None => m.sup().expect("bounded") + cap,
    };
    let lower = scan(m, inf, top)?;
    let value = match (&upper, &lower) {
        (Some(u), Some(l)) => {
            let b = u.bound.expect("finite bound");
            if l.degree > b {
                return Err(Error::Resolution(format!(
                    "Tor in degree {} exceeds the certified bound {b}",
                    l.degree
                )));
            }
            DimValue::Exact(l.degree)
        }
        (Some(_), None) => {
            return Err(Error::Resolution("scan exhausted without a nonvanishing Tor".into()));
        }
        (None, Some(l)) => DimValue::AtLeast(l.degree),
        (None, None) => DimValue::AtLeast(inf),
    };
    Ok(DimensionReport { quantity, value, upper, lower, method: "tor against injectives".into() })
}

/// Reads `Gpd` off a complete resolution: the least degree from which the
/// comparison is bijective, confirmed by a nonvanishing Tor there.
pub fn gpd_from_resolution(cr: &CompleteResolution) -> Result<DimensionReport> {
    cr.validate()?;
    let quantity = Quantity::Gpd;
    let g = cr.sharp_threshold();
    let upper = Some(UpperWitness { method: "complete resolution".into(), bound: g });
    let Some(g) = g else {
        return Ok(DimensionReport { quantity, value: DimValue::NegInfinity, upper, lower: None, method: "complete resolution".into() });
    };
    let m = &cr.resolved;
    let lower = if m.is_bounded() { scan(m, g, g)? } else { None };
    let value = if lower.is_some() { DimValue::Exact(g) } else { DimValue::AtMost(g) };
    Ok(DimensionReport { quantity, value, upper, lower, method: "complete resolution".into() })
}

/// Dimension of one component module.
pub fn module_dimension(m: &FinModule, quantity: Quantity) -> Result<DimValue> {
    let c = ChainComplex::concentrated(reduced(m)?, 0);
    let report = match quantity {
        Quantity::Gfd => gfd_detect(&c)?,
        Quantity::Gpd => {
            if m.dim() == 0 {
                return Ok(DimValue::NegInfinity);
            }
            gpd_from_resolution(&complete_resolution(&reduced(m)?)?)?
        }
    };
    Ok(report.value)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentBound {
    pub quantity: Quantity,
    /// `max_i dim M_i + sup M`, `None` for `−∞`.
    pub bound: Option<i64>,
    pub sup: Option<i64>,
    pub table: Vec<(i64, DimValue)>,
}

/// `max{dim M_i} + sup M` with the table of component dimensions.
pub fn theorem_b_bound(m: &ChainComplex, quantity: Quantity) -> Result<ComponentBound> {
    let (inf, sup) = match (m.inf(), m.sup()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::Unsupported("component bound for unbounded complexes".into())),
    };
    if inf > sup {
        return Ok(ComponentBound { quantity, bound: None, sup: None, table: Vec::new() });
    }
    let mut table = Vec::new();
    let mut best: Option<i64> = None;
    for i in inf..=sup {
        let v = module_dimension(m.module(i), quantity)?;
        match v {
            DimValue::NegInfinity => {}
            DimValue::Exact(d) | DimValue::AtMost(d) => best = Some(best.map_or(d, |b| b.max(d))),
            DimValue::AtLeast(_) => {
                return Err(Error::Unsupported(format!("component in degree {i} has unknown dimension")));
            }
        }
        table.push((i, v));
    }
    Ok(ComponentBound { quantity, bound: best.map(|b| b + sup), sup: Some(sup), table })
}
