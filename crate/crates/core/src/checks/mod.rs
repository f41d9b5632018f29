//! Machine-checked instances of the comparison theorems on concrete inputs.
//!
//! Every row compares two values obtained along different routes, or
//! certifies exactness of an explicitly assembled sequence by ranks.

use std::fmt::Display;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::algebra::FinModule;
use crate::complex::{ChainComplex, LongExactSequence, ShortExactSequence};
use crate::error::Result;
use crate::linalg::{ExactnessCertificate, HomologyGroup, Matrix};
use crate::tensor::tensor_complexes;

mod balance;
mod relative;
mod sequences;
mod suite;
mod theorem_c;
mod vanishing;

pub use balance::{check_balance_tate, check_balance_unbounded};
pub use relative::check_relative_comparison;
pub use sequences::check_stor_sequences;
pub use suite::{resolve_selection, run_instance, run_suite, SuiteReport, CHECK_TAGS};
pub use theorem_c::check_theorem_c;
pub use vanishing::{check_theorem_b, check_vanishing_and_dim_formulas, complete_resolution_of_complex};

/// Probe range used when none is given.
pub const DEFAULT_RANGE: (i64, i64) = (-4, 6);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// Isomorphic descriptors.
    Iso,
    /// The left value vanishes.
    Zero,
    /// Exactness at a spot of a sequence.
    Exact,
    /// `left ≤ right`.
    AtMost,
    Equal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub degree: Option<i64>,
    pub relation: Relation,
    pub left: String,
    pub right: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub instance: String,
    pub rows: Vec<Row>,
    pub pass: bool,
    #[serde(skip)]
    pub runtime: Duration,
    /// Full description of the instance, attached when the check fails.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<serde_json::Value>,
}

impl CheckReport {
    pub fn failing_rows(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| !r.pass)
    }
}

/// Accumulates rows; `finish` stamps the verdict and the runtime.
pub(crate) struct ReportBuilder {
    check: String,
    instance: String,
    rows: Vec<Row>,
    start: Instant,
}

impl ReportBuilder {
    pub(crate) fn new(check: &str, instance: impl Into<String>) -> Self {
        ReportBuilder { check: check.into(), instance: instance.into(), rows: Vec::new(), start: Instant::now() }
    }

    fn push(&mut self, label: String, degree: Option<i64>, relation: Relation, left: String, right: String, pass: bool) {
        self.rows.push(Row { label, degree, relation, left, right, pass });
    }

    pub(crate) fn iso(&mut self, label: impl Into<String>, degree: Option<i64>, left: &HomologyGroup, right: &HomologyGroup) {
        self.push(label.into(), degree, Relation::Iso, left.to_string(), right.to_string(), left == right);
    }

    pub(crate) fn zero(&mut self, label: impl Into<String>, degree: Option<i64>, group: &HomologyGroup) {
        self.push(label.into(), degree, Relation::Zero, group.to_string(), "0".into(), group.is_zero());
    }

    pub(crate) fn exact(&mut self, label: impl Into<String>, degree: Option<i64>, cert: &ExactnessCertificate) {
        let left = format!("image rank {}, kernel rank {}", cert.image_rank, cert.kernel_rank);
        let right = format!("defect {}", cert.homology);
        self.push(label.into(), degree, Relation::Exact, left, right, cert.exact());
    }

    pub(crate) fn at_most(&mut self, label: impl Into<String>, left: impl Display, right: impl Display, pass: bool) {
        self.push(label.into(), None, Relation::AtMost, left.to_string(), right.to_string(), pass);
    }

    pub(crate) fn equal<T: Display + PartialEq>(&mut self, label: impl Into<String>, degree: Option<i64>, left: T, right: T) {
        let pass = left == right;
        self.push(label.into(), degree, Relation::Equal, left.to_string(), right.to_string(), pass);
    }

    pub(crate) fn finish(self) -> CheckReport {
        let pass = self.rows.iter().all(|r| r.pass);
        CheckReport {
            check: self.check,
            instance: self.instance,
            rows: self.rows,
            pass,
            runtime: self.start.elapsed(),
            witness: None,
        }
    }
}

/// Locates the exactness certificate for a term of a long exact sequence;
/// `None` at the two ends, where no certificate is issued.
pub(crate) fn certificate_at<'a>(les: &'a LongExactSequence, term: &str, degree: i64) -> Option<&'a ExactnessCertificate> {
    let k = les.terms.iter().position(|t| t.term == term && t.degree == degree)?;
    if k == 0 {
        return None;
    }
    les.certificates.get(k - 1)
}

/// The group recorded for a term of a long exact sequence.
pub(crate) fn group_at<'a>(les: &'a LongExactSequence, term: &str, degree: i64) -> Option<&'a HomologyGroup> {
    les.terms.iter().find(|t| t.term == term && t.degree == degree).map(|t| &t.group)
}

/// Exactness rows for every certified spot of a long exact sequence.
pub(crate) fn les_rows(report: &mut ReportBuilder, prefix: &str, les: &LongExactSequence) {
    for (k, cert) in les.certificates.iter().enumerate() {
        let t = &les.terms[k + 1];
        report.exact(format!("{prefix}: exact at {}", t.term), Some(t.degree), cert);
    }
}

/// The module without relations over a field; unchanged over the integers.
pub(crate) fn plain(m: &FinModule) -> Result<FinModule> {
    if m.domain().is_field() && m.has_relations() {
        Ok(m.reduced()?.0)
    } else {
        Ok(m.clone())
    }
}

/// Long exact sequence of `0 → T_{≤s−1} ⊗ N → T ⊗ N → T_{≥s} ⊗ N → 0`
/// for degrees `bottom..=top`, with the maps induced by the coordinate
/// inclusions and projections of the tensor blocks.
pub(crate) fn truncation_sequence(t: &ChainComplex, s: i64, n: &ChainComplex, bottom: i64, top: i64) -> Result<LongExactSequence> {
    let (lo, hi) = (bottom - 2, top + 1);
    let sub = tensor_complexes(&t.truncate_below(s - 1), n, lo, hi)?;
    let mid = tensor_complexes(t, n, lo, hi)?;
    let quot = tensor_complexes(&t.truncate_above(s), n, lo, hi)?;
    let incl: Vec<Matrix> = (lo..=hi).map(|d| sub.inclusion_into(&mid, d)).collect::<Result<_>>()?;
    let section: Vec<Matrix> = (lo..=hi).map(|d| quot.inclusion_into(&mid, d)).collect::<Result<_>>()?;
    let at = move |v: &Vec<Matrix>, d: i64| v[(d - lo) as usize].clone();
    let section2 = section.clone();
    let ses = ShortExactSequence {
        sub: &sub.complex,
        mid: &mid.complex,
        quot: &quot.complex,
        incl: Box::new(move |d| at(&incl, d)),
        proj: Box::new(move |d| at(&section, d).transpose()),
        section: Box::new(move |d| at(&section2, d)),
    };
    ses.long_exact_sequence(bottom, top)
}

#[cfg(test)]
mod tests;
