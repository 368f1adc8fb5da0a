//! Command-line front end.
//!
//! Exit codes: 0 success, 1 internal error, 2 parse or usage error,
//! 3 resource budget exceeded, 4 verification failure.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::divres::{divides_with_quotient, pseudo_quotient, sylvester_resultant, ExactPit, Pit};
use crate::engine::{self, DeltaSampler, EngineConfig, FactorReport, Input, InputKind, PitMode, Stats};
use crate::error::Error;
use crate::formula::{Formula, DEFAULT_TERM_BUDGET};
use crate::poly::{parse_expression, parse_poly, SparsePoly};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

/// Variables up to this count default to guaranteed mode.
const GUARANTEED_MAX_ARITY: usize = 3;
const DEFAULT_DELTA_BUDGET: u64 = 10_000;

#[derive(Parser, Debug)]
#[command(name = "lowfact", version, about = "Low-degree factors of multivariate polynomials over the rationals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// All irreducible factors of degree at most d, with multiplicities.
    Factor(FactorArgs),
    /// Whether g divides f, with the quotient.
    Divides(PairArgs),
    /// Truncated power-series quotient of f by g.
    PseudoQuotient(PairArgs),
    /// Sylvester resultant of g and h with respect to one variable.
    Resultant(ResultantArgs),
    /// Identity test, with a nonzero point when the polynomial is nonzero.
    Pit(PitArgs),
    /// Re-check a factor report against its input by long division.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Guaranteed,
    Budgeted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    /// Accept parentheses and powers of subexpressions, expanding on read.
    #[arg(long)]
    pub expand: bool,
    /// Number of variables (defaults to the largest index that occurs).
    #[arg(long)]
    pub arity: Option<usize>,
}

#[derive(Args, Debug)]
pub struct FactorArgs {
    /// Polynomial text, or formula JSON (a file whose first character is `{`).
    pub input: PathBuf,
    #[arg(long, short = 'd')]
    pub degree: u32,
    /// Defaults to guaranteed for at most 3 variables, budgeted otherwise.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Points per direction in budgeted mode.
    #[arg(long)]
    pub delta_budget: Option<u64>,
    /// Cap on points per direction in guaranteed mode.
    #[arg(long, default_value_t = 5_000)]
    pub visit_budget: u64,
    /// Term cap when expanding formula input.
    #[arg(long, default_value_t = DEFAULT_TERM_BUDGET)]
    pub term_budget: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Sample shift points at random (seeded) instead of the graded order.
    /// Not deterministic across seeds; implies budgeted mode.
    #[arg(long)]
    pub randomized: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub input_args: InputArgs,
}

#[derive(Args, Debug)]
pub struct PairArgs {
    pub f: PathBuf,
    pub g: PathBuf,
    #[command(flatten)]
    pub input_args: InputArgs,
}

#[derive(Args, Debug)]
pub struct ResultantArgs {
    pub g: PathBuf,
    pub h: PathBuf,
    /// The eliminated variable, 1-based (`--var 2` means x2).
    #[arg(long)]
    pub var: usize,
    #[command(flatten)]
    pub input_args: InputArgs,
}

#[derive(Args, Debug)]
pub struct PitArgs {
    pub f: PathBuf,
    #[command(flatten)]
    pub input_args: InputArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub report: PathBuf,
    pub f: PathBuf,
    #[command(flatten)]
    pub input_args: InputArgs,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FactorEntry {
    pub poly: String,
    pub multiplicity: u32,
}

/// The JSON report written by `factor`.
#[derive(Debug, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub degree: u32,
    pub mode: String,
    pub factors: Vec<FactorEntry>,
    pub complete_product: bool,
    /// The search proved that no factor of degree at most `degree` was missed.
    pub complete: bool,
    pub stats: Value,
}

/// Failure with the exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::Formula { .. } | Error::Precondition(_) => EXIT_PARSE,
            Error::ArityMismatch { .. } | Error::PointLength { .. } => EXIT_PARSE,
            Error::DivisionByZero | Error::ZeroPolynomial(_) => EXIT_PARSE,
            Error::Resource(_) => EXIT_RESOURCE,
            Error::Internal(_) => EXIT_INTERNAL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_PARSE,
        message: message.into(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn with_path(path: &Path, e: Error) -> Failure {
    let mut f = Failure::from(e);
    f.message = format!("{}: {}", path.display(), f.message);
    f
}

fn read_poly(path: &Path, args: &InputArgs) -> Result<SparsePoly, Failure> {
    let text = read(path)?;
    let parsed = if args.expand {
        parse_expression(text.trim(), args.arity)
    } else {
        parse_poly(text.trim(), args.arity)
    };
    parsed.map_err(|e| with_path(path, e))
}

/// Two polynomials over a common set of variables.
fn read_pair(a: &Path, b: &Path, args: &InputArgs) -> Result<(SparsePoly, SparsePoly), Failure> {
    let f = read_poly(a, args)?;
    let g = read_poly(b, args)?;
    let n = f.arity().max(g.arity());
    let pad = |p: SparsePoly| p.with_arity(n).map_err(Failure::from);
    Ok((pad(f)?, pad(g)?))
}

fn read_input(path: &Path, args: &InputArgs) -> Result<Input, Failure> {
    let text = read(path)?;
    if text.trim_start().starts_with('{') {
        let formula = Formula::from_json_str(&text, args.arity).map_err(|e| with_path(path, e))?;
        Ok(Input::Formula(formula))
    } else {
        read_poly(path, args).map(Input::Sparse)
    }
}

fn emit(out: &mut dyn Write, value: &Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure {
        code: EXIT_INTERNAL,
        message: e.to_string(),
    })?;
    writeln!(out, "{text}").map_err(|e| Failure {
        code: EXIT_INTERNAL,
        message: e.to_string(),
    })
}

fn engine_config(args: &FactorArgs, arity: usize, kind: InputKind, err: &mut dyn Write) -> Result<EngineConfig, Failure> {
    let mode = match (args.mode, args.randomized) {
        (Some(ModeArg::Guaranteed), true) => {
            return Err(usage("--randomized cannot be combined with --mode guaranteed"));
        }
        (Some(ModeArg::Guaranteed), false) => PitMode::Guaranteed,
        (Some(ModeArg::Budgeted), _) => PitMode::Budgeted,
        (None, true) => PitMode::Budgeted,
        (None, false) if arity <= GUARANTEED_MAX_ARITY => PitMode::Guaranteed,
        (None, false) => {
            let _ = writeln!(
                err,
                "note: {arity} variables; using budgeted mode with delta budget {} (pass --mode guaranteed to insist on completeness)",
                args.delta_budget.unwrap_or(DEFAULT_DELTA_BUDGET)
            );
            PitMode::Budgeted
        }
    };
    if args.randomized {
        let _ = writeln!(err, "note: --randomized samples shift points; results are not deterministic across seeds");
    }
    let cfg = EngineConfig {
        d: args.degree,
        mode,
        delta_budget: args.delta_budget.unwrap_or(DEFAULT_DELTA_BUDGET),
        visit_budget: args.visit_budget,
        term_budget: args.term_budget,
        sampler: if args.randomized {
            DeltaSampler::Random { seed: args.seed }
        } else {
            DeltaSampler::Graded
        },
        threads: args.threads,
        input_kind: kind,
        ..EngineConfig::guaranteed(args.degree)
    };
    cfg.validate()?;
    Ok(cfg)
}

pub fn build_report(report: &FactorReport, cfg: &EngineConfig) -> Report {
    let stats: &Stats = &report.stats;
    Report {
        schema_version: SCHEMA_VERSION,
        degree: cfg.d,
        mode: match cfg.mode {
            PitMode::Guaranteed => "guaranteed".into(),
            PitMode::Budgeted => "budgeted".into(),
        },
        factors: report
            .factors
            .entries
            .iter()
            .map(|(g, e)| FactorEntry {
                poly: g.to_string(),
                multiplicity: *e,
            })
            .collect(),
        complete_product: report.complete_product,
        complete: report.complete,
        stats: serde_json::to_value(stats).unwrap_or(Value::Null),
    }
}

fn cmd_factor(args: &FactorArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let input = read_input(&args.input, &args.input_args)?;
    let (arity, kind) = match &input {
        Input::Sparse(p) => (p.arity(), InputKind::Sparse),
        Input::Formula(f) => (f.arity(), InputKind::Formula),
    };
    let cfg = engine_config(args, arity, kind, err)?;
    let result = engine::factor(&input, &cfg)?;
    let report = build_report(&result, &cfg);
    match args.format {
        Format::Json => emit(out, &serde_json::to_value(&report).expect("report serializes"))?,
        Format::Text => {
            let io = |e: std::io::Error| Failure {
                code: EXIT_INTERNAL,
                message: e.to_string(),
            };
            for f in &report.factors {
                writeln!(out, "({})^{}", f.poly, f.multiplicity).map_err(io)?;
            }
            writeln!(out, "complete_product: {}", report.complete_product).map_err(io)?;
            writeln!(out, "complete: {}", report.complete).map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_divides(args: &PairArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let (f, g) = read_pair(&args.f, &args.g, &args.input_args)?;
    if g.is_zero() {
        return Err(usage("g is the zero polynomial"));
    }
    let value = match divides_with_quotient(&f, &g, &ExactPit)? {
        Some(q) => json!({ "divides": true, "quotient": q.to_string() }),
        None => json!({ "divides": false }),
    };
    emit(out, &value)?;
    Ok(EXIT_OK)
}

fn cmd_pseudo_quotient(args: &PairArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let (f, g) = read_pair(&args.f, &args.g, &args.input_args)?;
    let pq = pseudo_quotient(&f, &g)?;
    emit(
        out,
        &json!({
            "quotient": pq.q.to_string(),
            "g_at_origin": pq.beta.to_string(),
            "exact": (&f - &(&g * &pq.q)).is_zero(),
        }),
    )?;
    Ok(EXIT_OK)
}

fn cmd_resultant(args: &ResultantArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let (g, h) = read_pair(&args.g, &args.h, &args.input_args)?;
    if args.var == 0 || args.var > g.arity() {
        return Err(usage(format!("--var must be between 1 and {}", g.arity())));
    }
    let r = sylvester_resultant(&g, &h, args.var - 1)?;
    emit(
        out,
        &json!({ "resultant": r.to_string(), "zero": r.is_zero() }),
    )?;
    Ok(EXIT_OK)
}

fn cmd_pit(args: &PitArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let f = read_poly(&args.f, &args.input_args)?;
    let value = if ExactPit.is_zero(&f) {
        json!({ "zero": true })
    } else {
        let point = ExactPit
            .find_nonzero_point(&f, f.degree().max(0) as u32)
            .ok_or_else(|| Failure::from(Error::Internal("no nonzero point on the grid".into())))?;
        let value = f.evaluate(&point)?;
        json!({
            "zero": false,
            "point": point.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "value": value.to_string(),
        })
    };
    emit(out, &value)?;
    Ok(EXIT_OK)
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let text = read(&args.report)?;
    let report: Report = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", args.report.display())))?;
    if report.schema_version != SCHEMA_VERSION {
        return Err(usage(format!("unsupported schema_version {}", report.schema_version)));
    }
    let f = read_poly(&args.f, &args.input_args)?;
    let mut bad = Vec::new();
    let mut entries = Vec::new();
    for (k, entry) in report.factors.iter().enumerate() {
        let g = parse_poly(&entry.poly, None)
            .and_then(|g| g.with_arity(f.arity()))
            .map_err(|e| usage(format!("factor {k}: {e}")))?;
        if entry.multiplicity == 0 || !engine::verify_factor(&f, &g, entry.multiplicity)? {
            bad.push(json!({ "index": k, "poly": entry.poly, "multiplicity": entry.multiplicity }));
        }
        entries.push((g, entry.multiplicity));
    }
    let list = engine::FactorList { entries };
    let product_ok = engine::degree_accounts_for(&f, &list) == report.complete_product;
    let ok = bad.is_empty() && product_ok;
    emit(
        out,
        &json!({ "ok": ok, "offending": bad, "complete_product_consistent": product_ok }),
    )?;
    Ok(if ok { EXIT_OK } else { EXIT_VERIFY })
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
        }
    };
    let result = match &cli.command {
        Command::Factor(a) => cmd_factor(a, out, err),
        Command::Divides(a) => cmd_divides(a, out),
        Command::PseudoQuotient(a) => cmd_pseudo_quotient(a, out),
        Command::Resultant(a) => cmd_resultant(a, out),
        Command::Pit(a) => cmd_pit(a, out),
        Command::Verify(a) => cmd_verify(a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
