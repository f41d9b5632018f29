//! Corpus files: named algebras, modules, complexes and check instances,
//! validated at load time, plus the built-in fixture registry.

use std::collections::BTreeMap;
use std::path::Path;

use serde_json::json;

use crate::algebra::{indecomposable_injectives, Algebra, AlgebraRef, FinModule, Side};
use crate::complex::{ChainComplex, Tail};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::functors::Argument;
use crate::linalg::{Domain, Matrix, Scalar};

mod schema;

pub use schema::{
    AlgebraSpec, ComplexSpec, CorpusFile, InstanceSpec, MatrixRows, ModuleSpec, TailSpec, WindowEntry, SCHEMA_VERSION,
};

const BUILTIN: &str = include_str!("builtin.json");

/// Validated objects of one or more corpus files.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub algebras: BTreeMap<String, AlgebraRef>,
    pub modules: BTreeMap<String, FinModule>,
    pub complexes: BTreeMap<String, ChainComplex>,
    pub instances: Vec<InstanceSpec>,
    raw: CorpusFile,
}

fn schema_error(path: impl Into<String>, reason: impl ToString) -> Error {
    Error::Schema { path: path.into(), reason: reason.to_string() }
}

/// Parses one corpus file; `origin` prefixes every error path.
pub fn parse_corpus(text: &str, origin: &str) -> Result<CorpusFile> {
    let file: CorpusFile = serde_json::from_str(text).map_err(|e| schema_error(origin, e))?;
    match file.schema_version {
        None => Err(schema_error(format!("{origin}: schema_version"), "missing")),
        Some(SCHEMA_VERSION) => Ok(file),
        Some(v) => Err(schema_error(format!("{origin}: schema_version"), format!("unsupported version {v}"))),
    }
}

/// Reads, merges and validates corpus files. Ids must be unique across files.
pub fn load_corpus<P: AsRef<Path>>(paths: &[P]) -> Result<Corpus> {
    let mut merged = CorpusFile {
        schema_version: Some(SCHEMA_VERSION),
        algebras: BTreeMap::new(),
        modules: BTreeMap::new(),
        complexes: BTreeMap::new(),
        instances: Vec::new(),
    };
    for path in paths {
        let origin = path.as_ref().display().to_string();
        let text = std::fs::read_to_string(path.as_ref()).map_err(|e| schema_error(&origin, e))?;
        let file = parse_corpus(&text, &origin)?;
        merge(&mut merged, file, &origin)?;
    }
    Corpus::build(merged, "corpus")
}

fn merge(into: &mut CorpusFile, file: CorpusFile, origin: &str) -> Result<()> {
    fn put<T>(map: &mut BTreeMap<String, T>, items: BTreeMap<String, T>, kind: &str, origin: &str) -> Result<()> {
        for (id, v) in items {
            if map.insert(id.clone(), v).is_some() {
                return Err(schema_error(format!("{origin}: {kind}.{id}"), "duplicate id"));
            }
        }
        Ok(())
    }
    put(&mut into.algebras, file.algebras, "algebras", origin)?;
    put(&mut into.modules, file.modules, "modules", origin)?;
    put(&mut into.complexes, file.complexes, "complexes", origin)?;
    into.instances.extend(file.instances);
    Ok(())
}

/// The fixture registry shipped with the crate.
pub fn builtin_corpus() -> Result<Corpus> {
    Corpus::build(parse_corpus(BUILTIN, "builtin")?, "builtin")
}

fn parse_domain(s: &str) -> Result<Domain> {
    match s {
        "Q" => Ok(Domain::Rational),
        "Z" => Ok(Domain::Integer),
        _ => match s.strip_prefix('F').and_then(|p| p.parse().ok()) {
            Some(p) => Domain::prime(p),
            None => Err(Error::Parse(format!("unknown domain {s:?}"))),
        },
    }
}

fn parse_side(s: &str) -> Result<Side> {
    match s {
        "left" => Ok(Side::Left),
        "right" => Ok(Side::Right),
        _ => Err(Error::Parse(format!("side must be \"left\" or \"right\", got {s:?}"))),
    }
}

/// `name:arg:arg` into the name and parsed integer arguments.
fn fixture_args(s: &str) -> Result<(&str, Vec<i64>)> {
    let mut parts = s.split(':');
    let name = parts.next().unwrap_or_default();
    let args = parts
        .map(|a| a.parse::<i64>().map_err(|_| Error::Parse(format!("bad fixture argument {a:?} in {s:?}"))))
        .collect::<Result<_>>()?;
    Ok((name, args))
}

fn arity(s: &str, args: &[i64], n: usize) -> Result<()> {
    if args.len() != n {
        return Err(Error::Parse(format!("fixture {s:?} takes {n} argument(s)")));
    }
    Ok(())
}

fn unsigned(v: i64) -> Result<usize> {
    usize::try_from(v).map_err(|_| Error::Parse(format!("{v} is negative")))
}

fn algebra_fixture(s: &str) -> Result<AlgebraRef> {
    let (name, args) = fixture_args(s)?;
    let p = |k: usize| args.get(k).map(|&v| v as u64).unwrap_or(0);
    match name {
        "dual_numbers" => arity(s, &args, 1).and_then(|_| fixtures::dual_numbers(p(0))),
        "group_algebra" => arity(s, &args, 2).and_then(|_| fixtures::group_algebra(p(0), unsigned(args[1])?)),
        "integral_group_ring" => arity(s, &args, 1).and_then(|_| fixtures::integral_group_ring(unsigned(args[0])?)),
        "upper_triangular" => arity(s, &args, 1).and_then(|_| fixtures::upper_triangular(p(0))),
        "product_field" => arity(s, &args, 1).and_then(|_| fixtures::product_field(p(0))),
        "integers" => arity(s, &args, 0).map(|_| fixtures::integers()),
        _ => Err(Error::Parse(format!("unknown algebra fixture {s:?}"))),
    }
}

fn scalars(dom: Domain, v: &[String]) -> Result<Vec<Scalar>> {
    v.iter().map(|x| dom.parse(x)).collect()
}

fn matrix(dom: Domain, rows: &MatrixRows, shape: (usize, usize)) -> Result<Matrix> {
    let m = Matrix::from_strings(dom, rows, shape.1)?;
    if m.shape() != shape {
        return Err(Error::Shape(format!("expected a {}x{} matrix, got {}x{}", shape.0, shape.1, m.rows(), m.cols())));
    }
    Ok(m)
}

fn build_algebra(spec: &AlgebraSpec, id: &str) -> Result<AlgebraRef> {
    if let Some(f) = &spec.fixture {
        return algebra_fixture(f);
    }
    let missing = |field: &str| Error::Parse(format!("missing field {field}"));
    let dom = parse_domain(spec.domain.as_deref().ok_or_else(|| missing("domain"))?)?;
    let dim = spec.dim.ok_or_else(|| missing("dim"))?;
    let labels = spec.labels.clone().unwrap_or_else(|| (0..dim).map(|i| format!("e{i}")).collect());
    if labels.len() != dim {
        return Err(Error::Shape(format!("{} labels for dimension {dim}", labels.len())));
    }
    let constants = spec.constants.as_ref().ok_or_else(|| missing("constants"))?;
    let products = constants
        .iter()
        .map(|row| row.iter().map(|v| scalars(dom, v)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let unit = scalars(dom, spec.unit.as_ref().ok_or_else(|| missing("unit"))?)?;
    let form = spec.frobenius_form.as_ref().map(|f| matrix(dom, f, (dim, dim))).transpose()?;
    let name = spec.name.clone().unwrap_or_else(|| id.to_string());
    Ok(std::sync::Arc::new(Algebra::new(name, dom, labels, products, unit, form, None)?))
}

fn module_fixture(s: &str, alg: &AlgebraRef, side: Side) -> Result<FinModule> {
    let (name, args) = fixture_args(s)?;
    match name {
        "zero" => Ok(FinModule::zero(alg.clone(), side)),
        "regular" => Ok(FinModule::regular(alg.clone(), side)),
        "free" => arity(s, &args, 1).map(|_| FinModule::free(alg.clone(), side, args[0].max(0) as usize)),
        "residue_field" => fixtures::residue_field(alg, side),
        "trivial" if alg.domain().is_field() => fixtures::trivial_group_module(alg, side),
        "trivial" => fixtures::integral_trivial(alg, side, 0),
        "integral_trivial" => arity(s, &args, 1).and_then(|_| fixtures::integral_trivial(alg, side, args[0])),
        "simple" => {
            arity(s, &args, 1)?;
            fixtures::one_dimensional(alg, side, &[unsigned(args[0])?])
        }
        "injective" => {
            arity(s, &args, 1)?;
            let list = indecomposable_injectives(alg, side)?;
            list.get(unsigned(args[0])?).cloned().ok_or_else(|| Error::Parse(format!("no injective number {}", args[0])))
        }
        _ => Err(Error::Parse(format!("unknown module fixture {s:?}"))),
    }
}

fn build_module(spec: &ModuleSpec, alg: &AlgebraRef) -> Result<FinModule> {
    let side = parse_side(&spec.side)?;
    if let Some(f) = &spec.fixture {
        return module_fixture(f, alg, side);
    }
    let dim = spec.dim.ok_or_else(|| Error::Parse("missing field dim".into()))?;
    let action = spec.action.as_ref().ok_or_else(|| Error::Parse("missing field action".into()))?;
    if action.len() != alg.dim() {
        return Err(Error::Shape(format!("{} action matrices for an algebra of dimension {}", action.len(), alg.dim())));
    }
    let mats = action.iter().map(|a| matrix(alg.domain(), a, (dim, dim))).collect::<Result<_>>()?;
    FinModule::new(alg.clone(), side, dim, mats, None)
}

fn build_complex(spec: &ComplexSpec, corpus: &Corpus) -> Result<ChainComplex> {
    let alg = corpus.algebras.get(&spec.ring_id).ok_or_else(|| Error::Parse(format!("unknown ring {:?}", spec.ring_id)))?;
    let mut window = spec.window.clone();
    window.sort_by_key(|e| e.degree);
    let first = window.first().ok_or_else(|| Error::Complex("window is empty".into()))?;
    let lo = first.degree;
    let mut modules = Vec::new();
    for (k, e) in window.iter().enumerate() {
        if e.degree != lo + k as i64 {
            return Err(Error::Complex(format!("window skips degree {}", lo + k as i64)));
        }
        let m = corpus.modules.get(&e.module_id).ok_or_else(|| Error::Parse(format!("unknown module {:?}", e.module_id)))?;
        modules.push(m.clone());
    }
    if let Some(d) = &first.differential_matrix {
        if d.iter().any(|row| !row.is_empty()) {
            return Err(Error::Complex(format!("differential of the lowest degree {lo} is fixed by the tail")));
        }
    }
    let side = modules[0].side();
    let mut diffs = Vec::new();
    for k in 1..window.len() {
        let e = &window[k];
        let rows = e.differential_matrix.as_ref().ok_or_else(|| {
            Error::Complex(format!("missing differential in degree {}", e.degree))
        })?;
        let shape = (modules[k - 1].dim(), modules[k].dim());
        let d = matrix(alg.domain(), rows, shape)
            .map_err(|err| Error::Complex(format!("differential in degree {}: {err}", e.degree)))?;
        diffs.push(d);
    }
    let tail = |t: TailSpec| match t {
        TailSpec::Zero => Tail::Zero,
        TailSpec::Periodic { period } => Tail::Periodic { period },
    };
    ChainComplex::new(alg.clone(), side, lo, modules, diffs, tail(spec.lower_tail), tail(spec.upper_tail))
}

impl Corpus {
    /// Validates every object of `file`; errors carry the offending id.
    pub fn build(file: CorpusFile, origin: &str) -> Result<Corpus> {
        let mut corpus = Corpus {
            algebras: BTreeMap::new(),
            modules: BTreeMap::new(),
            complexes: BTreeMap::new(),
            instances: file.instances.clone(),
            raw: file.clone(),
        };
        for (id, spec) in &file.algebras {
            let alg = build_algebra(spec, id).map_err(|e| schema_error(format!("{origin}: algebras.{id}"), e))?;
            corpus.algebras.insert(id.clone(), alg);
        }
        for (id, spec) in &file.modules {
            let path = format!("{origin}: modules.{id}");
            let alg = corpus
                .algebras
                .get(&spec.algebra_id)
                .ok_or_else(|| schema_error(&path, format!("unknown algebra {:?}", spec.algebra_id)))?;
            let m = build_module(spec, alg).map_err(|e| schema_error(&path, e))?;
            corpus.modules.insert(id.clone(), m);
        }
        for (id, spec) in &file.complexes {
            let c = build_complex(spec, &corpus).map_err(|e| schema_error(format!("{origin}: complexes.{id}"), e))?;
            corpus.complexes.insert(id.clone(), c);
        }
        for (k, inst) in file.instances.iter().enumerate() {
            let path = format!("{origin}: instances[{k}]");
            for id in std::iter::once(&inst.left).chain(inst.right.iter()).chain(inst.tests.iter()) {
                if !corpus.modules.contains_key(id) && !corpus.complexes.contains_key(id) {
                    return Err(schema_error(&path, format!("unknown object {id:?}")));
                }
            }
        }
        Ok(corpus)
    }

    /// A module or complex by id.
    pub fn argument(&self, id: &str) -> Result<Argument> {
        if let Some(m) = self.modules.get(id) {
            return Ok(Argument::Module(m.clone()));
        }
        if let Some(c) = self.complexes.get(id) {
            return Ok(Argument::Complex(c.clone()));
        }
        Err(Error::Parse(format!("unknown object {id:?}")))
    }

    pub fn module(&self, id: &str) -> Result<&FinModule> {
        self.modules.get(id).ok_or_else(|| Error::Parse(format!("unknown module {id:?}")))
    }

    /// The instance together with the source of every object it refers to,
    /// enough to replay it as a standalone corpus file.
    pub fn witness(&self, inst: &InstanceSpec) -> serde_json::Value {
        let mut modules = BTreeMap::new();
        let mut complexes = BTreeMap::new();
        let mut algebras = BTreeMap::new();
        let ids = std::iter::once(&inst.left).chain(inst.right.iter()).chain(inst.tests.iter());
        for id in ids {
            if let Some(c) = self.raw.complexes.get(id) {
                complexes.insert(id.clone(), c.clone());
                for e in &c.window {
                    if let Some(m) = self.raw.modules.get(&e.module_id) {
                        modules.insert(e.module_id.clone(), m.clone());
                    }
                }
                if let Some(a) = self.raw.algebras.get(&c.ring_id) {
                    algebras.insert(c.ring_id.clone(), a.clone());
                }
            }
            if let Some(m) = self.raw.modules.get(id) {
                modules.insert(id.clone(), m.clone());
            }
        }
        for m in modules.values() {
            if let Some(a) = self.raw.algebras.get(&m.algebra_id) {
                algebras.insert(m.algebra_id.clone(), a.clone());
            }
        }
        json!({
            "schema_version": SCHEMA_VERSION,
            "algebras": algebras,
            "modules": modules,
            "complexes": complexes,
            "instances": [inst],
        })
    }
}
