//! The `hh-verify` command line: `verify`, `coeff`, `sweep` and `means`.
//!
//! Exit status is 0 when everything checked holds, 1 when something was
//! violated (or a closed form disagrees with its oracle) and 2 on usage,
//! domain or I/O errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::coefficients::{
    family, family_oracle, lambda123, lambda123_oracle, mu12, mu12_oracle, Coefficient,
    CoefficientName, OracleComparison,
};
use crate::convexity::{RealFunction, SampleScheme};
use crate::error::{Error, Result};
use crate::inequalities::{HypothesisScope, DEFAULT_TOLERANCE};
use crate::means::{self, MeanKind};
use crate::report::VerificationReport;
use crate::statement::{Statement, StatementParams};
use crate::sweep::{self, Format, ParamRange, SweepConfig, SweepRanges};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Relative `--output` paths are resolved against this directory when set.
pub const OUTPUT_DIR_ENV: &str = "HH_VERIFY_OUTPUT_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "hh-verify",
    version,
    about = "Evaluate Hermite-Hadamard type bounds for harmonically (alpha, m)-convex functions"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Absolute tolerance on margins.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    /// Sample the convexity assumption before judging a bound.
    #[arg(long, global = true)]
    pub check_hypothesis: bool,
    /// Window for --check-hypothesis.
    #[arg(long, global = true, value_enum, default_value_t = ScopeArg::Local)]
    pub hypothesis_scope: ScopeArg,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScopeArg {
    Local,
    Wide,
}

impl From<ScopeArg> for HypothesisScope {
    fn from(s: ScopeArg) -> Self {
        match s {
            ScopeArg::Local => HypothesisScope::Local,
            ScopeArg::Wide => HypothesisScope::Wide,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one statement and print its report.
    Verify(VerifyArgs),
    /// Print a coefficient, optionally next to its quadrature oracle.
    Coeff(CoeffArgs),
    /// Evaluate statements over seeded random parameter tuples.
    Sweep(SweepArgs),
    /// Print the two-point means and the four mean inequalities.
    Means(MeansArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Statement id, e.g. thm-2.2 or lemma-1-1.
    pub statement: String,
    /// Registry function: pow:s, square, identity, neg-identity, log, exp, const:c.
    #[arg(long = "fn")]
    pub function: Option<String>,
    #[arg(long)]
    pub a: f64,
    #[arg(long)]
    pub b: f64,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    pub m: f64,
    #[arg(long, default_value_t = 1.0)]
    pub q: f64,
    /// Conjugate exponent; defaults to q/(q-1) where needed.
    #[arg(long)]
    pub p: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Lambda,
    Mu,
    Nu,
    Lambda123,
    Mu12,
}

#[derive(Debug, Args)]
pub struct CoeffArgs {
    #[arg(value_enum)]
    pub family: FamilyArg,
    #[arg(long, default_value_t = 0.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    pub q: f64,
    #[arg(long)]
    pub a: f64,
    #[arg(long)]
    pub b: f64,
    /// Also integrate the defining integral and compare.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    /// Statement ids; repeat or separate with commas.
    #[arg(long = "statement", value_delimiter = ',', required = true)]
    pub statements: Vec<String>,
    /// Registry functions; `pow:*` draws s from --s-range.
    #[arg(long = "fn", value_delimiter = ',')]
    pub functions: Vec<String>,
    #[arg(long, default_value = "0.5:2")]
    pub a_range: String,
    #[arg(long, default_value = "1:4")]
    pub b_range: String,
    #[arg(long, default_value = "0:1")]
    pub alpha_range: String,
    #[arg(long, default_value = "0.5:1")]
    pub m_range: String,
    #[arg(long, default_value = "1:3")]
    pub q_range: String,
    #[arg(long, default_value = "0.1:1")]
    pub s_range: String,
}

#[derive(Debug, Args)]
pub struct MeansArgs {
    #[arg(long)]
    pub a: f64,
    #[arg(long)]
    pub b: f64,
    /// Weight of the weighted mean and exponent parameter of the inequalities.
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub q: f64,
    /// Order of the logarithmic mean and conjugate exponent of q.
    #[arg(long)]
    pub p: f64,
}

/// Parse `args` (including the program name), run, and return the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "hh-verify: {e}");
            EXIT_ERROR
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let g = &cli.global;
    if !(g.tolerance >= 0.0) {
        return Err(Error::Usage(format!(
            "--tolerance must be nonnegative, got {}",
            g.tolerance
        )));
    }
    if g.format == FormatArg::Csv && !matches!(cli.command, Command::Sweep(_)) {
        return Err(Error::Usage(
            "csv output is only available for sweep".into(),
        ));
    }
    let (text, code) = match &cli.command {
        Command::Verify(args) => verify(g, args)?,
        Command::Coeff(args) => coeff(args)?,
        Command::Sweep(args) => run_sweep_cmd(g, args)?,
        Command::Means(args) => means_cmd(g, args)?,
    };
    emit(g.output.as_deref(), &text, out)?;
    Ok(code)
}

/// Where `--output` actually writes, after applying [`OUTPUT_DIR_ENV`].
pub fn resolve_output(path: &Path) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => {
            let target = resolve_output(p);
            std::fs::write(&target, text)
                .map_err(|e| Error::Io(format!("cannot write {}: {e}", target.display())))
        }
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serialises");
    s.push('\n');
    s
}

fn exit_for(holds: bool) -> i32 {
    if holds {
        EXIT_OK
    } else {
        EXIT_VIOLATED
    }
}

fn verify(g: &GlobalArgs, args: &VerifyArgs) -> Result<(String, i32)> {
    let statement: Statement = args.statement.parse()?;
    let f = match (&args.function, statement.takes_function()) {
        (Some(spec), true) => Some(RealFunction::parse(spec)?),
        (None, true) => {
            return Err(Error::Usage(format!("{statement} needs a function (--fn)")));
        }
        (_, false) => None,
    };
    let mut params = StatementParams::new(args.a, args.b)
        .alpha(args.alpha)
        .m(args.m)
        .q(args.q);
    params.p = args.p;
    let mut report = statement
        .evaluate(f.as_ref(), &params)?
        .with_tolerance(g.tolerance);
    if g.check_hypothesis {
        if let Some(f) = &f {
            let scheme = SampleScheme {
                seed: g.seed,
                ..SampleScheme::default()
            };
            if let Some(h) = statement.hypothesis(f, &params, g.hypothesis_scope.into(), &scheme)? {
                report = attach_hypothesis(report, &h);
            }
        }
    }
    let code = exit_for(report.holds);
    Ok((report.to_json() + "\n", code))
}

fn attach_hypothesis(report: VerificationReport, h: &VerificationReport) -> VerificationReport {
    let mut report = report
        .with_detail("hypothesis_holds", if h.holds { 1.0 } else { 0.0 })
        .with_detail("hypothesis_margin", h.margin);
    if !h.holds {
        let note = match &h.counterexample {
            Some(c) => format!(
                "hypothesis not satisfied: {} fails {} at x = {}, y = {}, t = {}",
                h.inputs.function.as_deref().unwrap_or("f"),
                h.statement_id,
                c.x,
                c.y,
                c.t
            ),
            None => "hypothesis not satisfied".to_string(),
        };
        report.push_note(note);
    }
    report
}

#[derive(Debug, Serialize)]
struct CoeffRow {
    #[serde(flatten)]
    coefficient: Coefficient,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleComparison>,
}

fn coeff(args: &CoeffArgs) -> Result<(String, i32)> {
    let CoeffArgs {
        alpha,
        q,
        a,
        b,
        oracle,
        ..
    } = *args;
    let (closed, oracles): (Vec<Coefficient>, Option<Vec<Coefficient>>) = match args.family {
        FamilyArg::Lambda | FamilyArg::Mu | FamilyArg::Nu => {
            let name = match args.family {
                FamilyArg::Lambda => CoefficientName::Lambda,
                FamilyArg::Mu => CoefficientName::Mu,
                _ => CoefficientName::Nu,
            };
            let c = vec![family(name, alpha, q, a, b)?];
            let o = if oracle {
                Some(vec![family_oracle(name, alpha, q, a, b)?])
            } else {
                None
            };
            (c, o)
        }
        FamilyArg::Lambda123 => {
            let c = lambda123(a, b)?.to_vec();
            let o = if oracle {
                Some(lambda123_oracle(a, b)?.to_vec())
            } else {
                None
            };
            (c, o)
        }
        FamilyArg::Mu12 => {
            let c = mu12(q, a, b)?.to_vec();
            let o = if oracle {
                Some(mu12_oracle(q, a, b)?.to_vec())
            } else {
                None
            };
            (c, o)
        }
    };
    let rows: Vec<CoeffRow> = closed
        .into_iter()
        .enumerate()
        .map(|(i, c)| CoeffRow {
            coefficient: c,
            oracle: oracles
                .as_ref()
                .map(|o| OracleComparison::new(c.value, o[i].value)),
        })
        .collect();
    let agrees = rows.iter().all(|r| r.oracle.is_none_or(|o| o.agrees));
    Ok((json(&rows), exit_for(agrees)))
}

fn run_sweep_cmd(g: &GlobalArgs, args: &SweepArgs) -> Result<(String, i32)> {
    let statements = args
        .statements
        .iter()
        .map(|s| s.parse())
        .collect::<Result<Vec<Statement>>>()?;
    let mut config = SweepConfig::new(g.seed, args.count, statements, args.functions.clone());
    config.ranges = SweepRanges {
        a: args.a_range.parse::<ParamRange>()?,
        b: args.b_range.parse()?,
        alpha: args.alpha_range.parse()?,
        m: args.m_range.parse()?,
        q: args.q_range.parse()?,
        s: args.s_range.parse()?,
    };
    config.tolerance = g.tolerance;
    config.check_hypothesis = g.check_hypothesis;
    config.hypothesis_scope = g.hypothesis_scope.into();
    let outcome = sweep::run_sweep(&config)?;
    let format = match g.format {
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
    };
    Ok((outcome.render(format)?, exit_for(outcome.summary.all_hold)))
}

#[derive(Debug, Serialize)]
struct MeansOutput {
    a: f64,
    b: f64,
    weighted_arithmetic: f64,
    arithmetic: f64,
    geometric: f64,
    harmonic: f64,
    logarithmic: f64,
    inequalities: Vec<VerificationReport>,
}

fn means_cmd(g: &GlobalArgs, args: &MeansArgs) -> Result<(String, i32)> {
    let MeansArgs { a, b, alpha, q, p } = *args;
    let value = |kind| means::mean(kind, a, b);
    let reports = vec![
        means::check_prop31(a, b, alpha)?,
        means::check_prop32(a, b, alpha, q)?,
        means::check_prop33(a, b, alpha, q)?,
        means::check_prop34(a, b, alpha, q, p)?,
    ];
    let reports: Vec<VerificationReport> = reports
        .into_iter()
        .map(|r| r.with_tolerance(g.tolerance))
        .collect();
    let output = MeansOutput {
        a,
        b,
        weighted_arithmetic: value(MeanKind::WeightedArithmetic { w: alpha })?,
        arithmetic: value(MeanKind::Arithmetic)?,
        geometric: value(MeanKind::Geometric)?,
        harmonic: value(MeanKind::Harmonic)?,
        logarithmic: value(MeanKind::Logarithmic { p })?,
        inequalities: reports,
    };
    let holds = output.inequalities.iter().all(|r| r.holds);
    Ok((json(&output), exit_for(holds)))
}
