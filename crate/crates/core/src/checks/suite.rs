use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{
    check_balance_tate, check_balance_unbounded, check_relative_comparison, check_stor_sequences, check_theorem_b,
    check_theorem_c, check_vanishing_and_dim_formulas, CheckReport, Relation, Row, DEFAULT_RANGE,
};
use crate::algebra::FinModule;
use crate::complex::ChainComplex;
use crate::corpus::{Corpus, InstanceSpec};
use crate::error::{Error, Result};

/// Check tags accepted by corpus instances and the command line.
pub const CHECK_TAGS: [&str; 7] =
    ["balance_tate", "balance_unbounded", "theorem_c", "stor_sequences", "relative_comparison", "vanishing", "theorem_b"];

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub reports: Vec<CheckReport>,
    pub pass: bool,
}

/// Expands `all` and rejects unknown tags.
pub fn resolve_selection(selection: &[String]) -> Result<Vec<&'static str>> {
    let mut tags = Vec::new();
    for s in selection {
        if s == "all" {
            tags.extend(CHECK_TAGS);
        } else {
            let tag = CHECK_TAGS.iter().find(|t| **t == s).ok_or_else(|| Error::Parse(format!("unknown check {s:?}")))?;
            tags.push(*tag);
        }
    }
    tags.sort_unstable();
    tags.dedup();
    Ok(tags)
}

fn right_module<'a>(corpus: &'a Corpus, inst: &InstanceSpec) -> Result<&'a FinModule> {
    let id = inst.right.as_deref().ok_or_else(|| Error::Parse(format!("{} needs a right argument", inst.check)))?;
    corpus.module(id)
}

fn as_complex(corpus: &Corpus, id: &str) -> Result<ChainComplex> {
    match corpus.complexes.get(id) {
        Some(c) => Ok(c.clone()),
        None => Ok(ChainComplex::concentrated(corpus.module(id)?.clone(), 0)),
    }
}

/// Runs one instance; an explicit `range` overrides the instance's own.
pub fn run_instance(corpus: &Corpus, inst: &InstanceSpec, range: Option<(i64, i64)>) -> Result<CheckReport> {
    let range = range.or(inst.range).unwrap_or(DEFAULT_RANGE);
    match inst.check.as_str() {
        "balance_tate" => check_balance_tate(corpus.module(&inst.left)?, right_module(corpus, inst)?, range),
        "balance_unbounded" => check_balance_unbounded(corpus.module(&inst.left)?, right_module(corpus, inst)?, range),
        "theorem_c" => check_theorem_c(corpus.module(&inst.left)?, right_module(corpus, inst)?),
        "stor_sequences" => {
            let splits = if inst.splits.is_empty() { vec![0] } else { inst.splits.clone() };
            check_stor_sequences(corpus.module(&inst.left)?, right_module(corpus, inst)?, &splits, range)
        }
        "relative_comparison" => check_relative_comparison(corpus.module(&inst.left)?, right_module(corpus, inst)?, range),
        "vanishing" => {
            let tests = inst.tests.iter().map(|t| corpus.module(t).cloned()).collect::<Result<Vec<_>>>()?;
            check_vanishing_and_dim_formulas(&as_complex(corpus, &inst.left)?, &tests, range)
        }
        "theorem_b" => check_theorem_b(&as_complex(corpus, &inst.left)?),
        other => Err(Error::Parse(format!("unknown check {other:?}"))),
    }
}

fn describe(inst: &InstanceSpec) -> String {
    match &inst.right {
        Some(r) => format!("{} / {}", inst.left, r),
        None => inst.left.clone(),
    }
}

fn error_report(inst: &InstanceSpec, err: &Error, start: Instant) -> CheckReport {
    CheckReport {
        check: inst.check.clone(),
        instance: describe(inst),
        rows: vec![Row {
            label: "error".into(),
            degree: None,
            relation: Relation::Equal,
            left: err.to_string(),
            right: "a completed check".into(),
            pass: false,
        }],
        pass: false,
        runtime: start.elapsed(),
        witness: None,
    }
}

/// Runs every selected instance of the corpus on a pool of worker threads.
/// Reports come back in corpus order; failures carry a replayable witness.
pub fn run_suite(corpus: &Corpus, selection: &[String], range: Option<(i64, i64)>) -> Result<SuiteReport> {
    let tags = resolve_selection(selection)?;
    let selected: Vec<&InstanceSpec> = corpus.instances.iter().filter(|i| tags.contains(&i.check.as_str())).collect();
    let slots: Vec<Mutex<Option<CheckReport>>> = selected.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(selected.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some(inst) = selected.get(k) else { break };
                let start = Instant::now();
                let mut report = match run_instance(corpus, inst, range) {
                    Ok(mut r) => {
                        r.instance = format!("{} ({})", describe(inst), r.instance);
                        r
                    }
                    Err(e) => error_report(inst, &e, start),
                };
                if !report.pass {
                    report.witness = Some(corpus.witness(inst));
                }
                *slots[k].lock().expect("slot") = Some(report);
            });
        }
    });
    let reports: Vec<CheckReport> =
        slots.into_iter().map(|s| s.into_inner().expect("slot").expect("every slot is filled")).collect();
    let pass = reports.iter().all(|r| r.pass);
    Ok(SuiteReport { reports, pass })
}
