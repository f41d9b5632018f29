use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gorhom::algebra::Side;
use gorhom::checks::{complete_resolution_of_complex, run_suite, DEFAULT_RANGE};
use gorhom::corpus::{builtin_corpus, load_corpus, Corpus};
use gorhom::fixtures;
use gorhom::functors::{ext, relative_tor_gp, stable_tor, tate_tor, tor, unbounded_tor, Argument, FunctorValue};
use gorhom::gdim::{gfd_detect, gpd_from_resolution};
use gorhom::linalg::MatrixJson;
use gorhom::resolution::{complete_resolution, cyclic_group_complete_resolution, projective_resolution, CompleteResolution};
use gorhom::tensor::homology_range;
use gorhom::{Error, Result};

#[derive(Parser)]
#[command(name = "gorhom", about = "Tate, stable and unbounded homology over finite algebras", version)]
struct Cli {
    /// Corpus files to load instead of the built-in fixtures.
    #[arg(long, global = true)]
    corpus: Vec<PathBuf>,
    /// Also write the result as JSON to this file.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate corpus files and list their contents.
    Load { files: Vec<PathBuf> },
    /// Projective or complete resolution of a module.
    Resolve(ResolveArgs),
    /// Homology of M ⊗ N.
    Tensor(PairArgs),
    Tor(PairArgs),
    /// Tate homology from a complete resolution of the left argument.
    Tate(PairArgs),
    /// Unbounded homology.
    Btor(PairArgs),
    /// Stable homology.
    Stor(PairArgs),
    /// Relative homology over Gorenstein projective resolutions.
    Gptor(PairArgs),
    Ext(PairArgs),
    /// Gorenstein flat or projective dimension.
    Gdim(GdimArgs),
    /// Run theorem checks from the corpus.
    Check {
        /// Check tags, or `all`.
        #[arg(required = true)]
        tags: Vec<String>,
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        range: Option<(i64, i64)>,
    },
}

#[derive(Args)]
struct ResolveArgs {
    #[arg(long, required_unless_present = "fixture")]
    module: Option<String>,
    #[arg(long, default_value_t = 4)]
    length: usize,
    #[arg(long)]
    complete: bool,
    /// `cyclic:<n>`: the periodic complete resolution of ℤ over ℤ[Cₙ].
    #[arg(long)]
    fixture: Option<String>,
}

#[derive(Args)]
struct PairArgs {
    #[arg(long)]
    left: String,
    #[arg(long)]
    right: String,
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    range: Option<(i64, i64)>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Flavor {
    Gfd,
    Gpd,
}

#[derive(Args)]
struct GdimArgs {
    #[arg(long, value_enum, default_value = "gfd")]
    flavor: Flavor,
    #[arg(long)]
    target: String,
}

fn parse_range(s: &str) -> std::result::Result<(i64, i64), String> {
    let (a, b) = s.split_once("..").ok_or("expected a..b")?;
    let a: i64 = a.trim().parse().map_err(|e| format!("{a}: {e}"))?;
    let b: i64 = b.trim().parse().map_err(|e| format!("{b}: {e}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(pass) => {
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn corpus(cli: &Cli) -> Result<Corpus> {
    if cli.corpus.is_empty() {
        builtin_corpus()
    } else {
        load_corpus(&cli.corpus)
    }
}

fn write_json(cli: &Cli, value: &Value) -> Result<()> {
    if let Some(path) = &cli.json {
        let text = serde_json::to_string_pretty(value)?;
        std::fs::write(path, text + "\n")?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Load { files } => {
            if files.is_empty() {
                return Err(Error::Parse("no files given".into()));
            }
            let c = load_corpus(files)?;
            println!(
                "{} algebras, {} modules, {} complexes, {} instances",
                c.algebras.len(),
                c.modules.len(),
                c.complexes.len(),
                c.instances.len()
            );
            write_json(
                cli,
                &json!({
                    "algebras": c.algebras.keys().collect::<Vec<_>>(),
                    "modules": c.modules.keys().collect::<Vec<_>>(),
                    "complexes": c.complexes.keys().collect::<Vec<_>>(),
                    "instances": c.instances.len(),
                }),
            )?;
            Ok(true)
        }
        Command::Resolve(args) => resolve(cli, args),
        Command::Tensor(args) => tensor(cli, args),
        Command::Tor(args) | Command::Tate(args) | Command::Btor(args) | Command::Stor(args) | Command::Gptor(args)
        | Command::Ext(args) => functor(cli, args),
        Command::Gdim(args) => {
            let c = corpus(cli)?;
            let m = c.argument(&args.target)?.as_complex();
            let report = match args.flavor {
                Flavor::Gfd => gfd_detect(&m)?,
                Flavor::Gpd => gpd_from_resolution(&complete_resolution_of_complex(&m)?)?,
            };
            println!("{:?} {} = {} ({})", report.quantity, args.target, report.value, report.method);
            write_json(cli, &serde_json::to_value(&report)?)?;
            Ok(true)
        }
        Command::Check { tags, range } => {
            let c = corpus(cli)?;
            let suite = run_suite(&c, tags, *range)?;
            for r in &suite.reports {
                let verdict = if r.pass { "PASS" } else { "FAIL" };
                println!("{verdict} {:<20} {} [{} rows, {:.0?}]", r.check, r.instance, r.rows.len(), r.runtime);
                for row in r.failing_rows() {
                    let deg = row.degree.map(|d| format!(" @{d}")).unwrap_or_default();
                    println!("    {}{deg}: {} vs {} ({:?})", row.label, row.left, row.right, row.relation);
                }
            }
            let failed = suite.reports.iter().filter(|r| !r.pass).count();
            println!("{} checks, {failed} failed", suite.reports.len());
            write_json(cli, &serde_json::to_value(&suite)?)?;
            Ok(suite.pass)
        }
    }
}

fn complex_json(c: &gorhom::complex::ChainComplex) -> Value {
    let (lo, hi) = c.window();
    let degrees: Vec<Value> = (lo..=hi)
        .map(|i| json!({ "degree": i, "dim": c.module(i).dim(), "differential": MatrixJson::from_matrix(&c.diff(i)) }))
        .collect();
    json!({ "window": [lo, hi], "lower_tail": c.lower_tail(), "upper_tail": c.upper_tail(), "degrees": degrees })
}

fn complete_json(cr: &CompleteResolution) -> Result<Value> {
    let certified = cr.validate().map(|_| "totally acyclic, comparison certified".to_string());
    let (lo, hi) = cr.totally_acyclic.window();
    let comparison: Vec<Value> =
        (lo..=hi).map(|i| json!({ "degree": i, "map": MatrixJson::from_matrix(&cr.comparison.at(i)) })).collect();
    Ok(json!({
        "flavor": cr.flavor,
        "threshold": cr.threshold,
        "sharp_threshold": cr.sharp_threshold(),
        "totally_acyclic": complex_json(&cr.totally_acyclic),
        "approximation": complex_json(&cr.approximation),
        "comparison": comparison,
        "certificate": certified.map_err(|e| e.to_string()),
    }))
}

fn resolve(cli: &Cli, args: &ResolveArgs) -> Result<bool> {
    let value = if let Some(f) = &args.fixture {
        let n = f
            .strip_prefix("cyclic:")
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| Error::Parse(format!("unknown fixture {f:?}; expected cyclic:<n>")))?;
        let alg = fixtures::integral_group_ring(n)?;
        complete_json(&cyclic_group_complete_resolution(&alg, Side::Right)?)?
    } else {
        let c = corpus(cli)?;
        let m = c.module(args.module.as_deref().expect("clap requires module"))?;
        if args.complete {
            complete_json(&complete_resolution(m)?)?
        } else {
            let p = projective_resolution(m, args.length)?;
            json!({ "closure": p.closure, "complex": complex_json(&p.complex), "augmentation": MatrixJson::from_matrix(&p.augmentation) })
        }
    };
    println!("{}", serde_json::to_string_pretty(&value)?);
    write_json(cli, &value)?;
    Ok(true)
}

fn tensor(cli: &Cli, args: &PairArgs) -> Result<bool> {
    let c = corpus(cli)?;
    let (m, n) = (c.argument(&args.left)?.as_complex(), c.argument(&args.right)?.as_complex());
    let (lo, hi) = args.range.unwrap_or(DEFAULT_RANGE);
    let rows = homology_range(&m, &n, lo, hi)?;
    for (i, g) in &rows {
        println!("H_{i}(M ⊗ N) = {g}");
    }
    let rows: Vec<Value> = rows.iter().map(|(i, g)| json!({ "degree": i, "group": g })).collect();
    write_json(cli, &Value::Array(rows))?;
    Ok(true)
}

fn functor(cli: &Cli, args: &PairArgs) -> Result<bool> {
    let c = corpus(cli)?;
    let (m, n) = (c.argument(&args.left)?, c.argument(&args.right)?);
    let one_sided = matches!(cli.command, Command::Tor(_) | Command::Gptor(_) | Command::Ext(_));
    let (lo, hi) = args.range.unwrap_or(if one_sided { (0, 4) } else { DEFAULT_RANGE });
    let module = |a: &Argument| a.as_module().cloned().ok_or_else(|| Error::Parse("expected a module".into()));
    let cr = match cli.command {
        Command::Tate(_) | Command::Btor(_) | Command::Stor(_) => Some(complete_resolution_of_complex(&m.as_complex())?),
        _ => None,
    };
    let nc = n.as_complex();
    let mut values: Vec<FunctorValue> = Vec::new();
    for i in lo..=hi {
        let v = match &cli.command {
            Command::Tor(_) => tor(&m, &n, i)?,
            Command::Tate(_) => tate_tor(cr.as_ref().expect("resolved"), &nc, i)?,
            Command::Btor(_) => unbounded_tor(cr.as_ref().expect("resolved"), &nc, i)?,
            Command::Stor(_) => stable_tor(cr.as_ref().expect("resolved"), &nc, i)?,
            Command::Gptor(_) => relative_tor_gp(&module(&m)?, &nc, i)?,
            Command::Ext(_) => ext(&module(&m)?, &module(&n)?, i)?,
            _ => unreachable!("not a functor command"),
        };
        println!("{}_{i} = {}", v.functor, v.group);
        values.push(v);
    }
    write_json(cli, &serde_json::to_value(&values)?)?;
    Ok(true)
}
