//! Seeded parameter sweeps over statements, with counterexample shrinking.
//!
//! Tuple `i` is drawn from a ChaCha8 stream seeded by the sweep seed and
//! positioned at stream `i`, so every tuple is a pure function of
//! `(seed, i)`. Tuples are evaluated in parallel and emitted in index order,
//! which makes the output independent of the worker count.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::convexity::{RealFunction, SampleScheme};
use crate::error::{Error, Result};
use crate::inequalities::{HypothesisScope, DEFAULT_TOLERANCE};
use crate::statement::{Statement, StatementParams};

/// Attempts per tuple at drawing a < b before the sweep gives up.
pub const MAX_REJECTIONS: usize = 1000;

/// Bisection steps spent shrinking one counterexample.
pub const MAX_SHRINK_STEPS: usize = 48;

/// In a function list, `pow:*` draws the exponent from the `s` range.
pub const POW_WILDCARD: &str = "pow:*";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamRange {
    pub lo: f64,
    pub hi: f64,
}

impl ParamRange {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn point(v: f64) -> Self {
        Self { lo: v, hi: v }
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> f64 {
        if self.lo == self.hi {
            self.lo
        } else {
            rng.gen_range(self.lo..=self.hi)
        }
    }

    fn validate(&self, name: &str, admissible: impl Fn(f64) -> bool, what: &str) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo <= self.hi) {
            return Err(Error::Usage(format!(
                "{name} range [{}, {}] must be finite with lo <= hi",
                self.lo, self.hi
            )));
        }
        if !admissible(self.lo) || !admissible(self.hi) {
            return Err(Error::Usage(format!(
                "{name} range [{}, {}] must lie in {what}",
                self.lo, self.hi
            )));
        }
        Ok(())
    }
}

impl fmt::Display for ParamRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

/// `lo:hi` or a single value.
impl FromStr for ParamRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Usage(format!("bad range '{s}': expected lo:hi or a number")))
        };
        match s.split_once(':') {
            Some((lo, hi)) => Ok(Self::new(num(lo)?, num(hi)?)),
            None => Ok(Self::point(num(s)?)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRanges {
    pub a: ParamRange,
    pub b: ParamRange,
    pub alpha: ParamRange,
    pub m: ParamRange,
    pub q: ParamRange,
    /// Exponent range for `pow:*`.
    pub s: ParamRange,
}

impl Default for SweepRanges {
    fn default() -> Self {
        Self {
            a: ParamRange::new(0.5, 2.0),
            b: ParamRange::new(1.0, 4.0),
            alpha: ParamRange::new(0.0, 1.0),
            m: ParamRange::new(0.5, 1.0),
            q: ParamRange::new(1.0, 3.0),
            s: ParamRange::new(0.1, 1.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub seed: u64,
    pub count: usize,
    pub statements: Vec<Statement>,
    /// Registry addresses; `pow:*` is allowed.
    pub functions: Vec<String>,
    pub ranges: SweepRanges,
    pub tolerance: f64,
    pub check_hypothesis: bool,
    pub hypothesis_scope: HypothesisScope,
}

impl SweepConfig {
    pub fn new(
        seed: u64,
        count: usize,
        statements: Vec<Statement>,
        functions: Vec<String>,
    ) -> Self {
        Self {
            seed,
            count,
            statements,
            functions,
            ranges: SweepRanges::default(),
            tolerance: DEFAULT_TOLERANCE,
            check_hypothesis: false,
            hypothesis_scope: HypothesisScope::Local,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::Usage("sweep count must be at least 1".into()));
        }
        if self.statements.is_empty() {
            return Err(Error::Usage("sweep needs at least one statement".into()));
        }
        if !(self.tolerance >= 0.0) {
            return Err(Error::Usage(format!(
                "tolerance must be nonnegative, got {}",
                self.tolerance
            )));
        }
        let needs_f = self.statements.iter().any(|s| s.takes_function());
        if needs_f && self.functions.is_empty() {
            return Err(Error::Usage(
                "sweep needs at least one function (--fn)".into(),
            ));
        }
        for spec in &self.functions {
            if spec != POW_WILDCARD {
                RealFunction::parse(spec)?;
            }
        }
        let r = &self.ranges;
        r.a.validate("a", |v| v > 0.0, "(0, inf)")?;
        r.b.validate("b", |v| v > 0.0, "(0, inf)")?;
        r.m.validate("m", |v| v > 0.0 && v <= 1.0, "(0, 1]")?;
        r.s.validate("s", |_| true, "the reals")?;
        if self.statements.iter().any(|s| s.needs_open_alpha()) {
            r.alpha.validate(
                "alpha",
                |v| v > 0.0 && v < 1.0,
                "(0, 1) for the mean inequalities",
            )?;
        } else {
            r.alpha
                .validate("alpha", |v| (0.0..=1.0).contains(&v), "[0, 1]")?;
        }
        if self.statements.iter().any(|s| s.needs_q_above_one()) {
            r.q.validate("q", |v| v > 1.0, "(1, inf) for the Hölder-type bounds")?;
        } else {
            r.q.validate("q", |v| v >= 1.0, "[1, inf)")?;
        }
        if !(r.a.lo < r.b.hi) {
            return Err(Error::Usage(format!(
                "a range {} and b range {} admit no pair with a < b",
                r.a, r.b
            )));
        }
        Ok(())
    }
}

/// One drawn parameter tuple.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tuple {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub function: Option<String>,
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
    pub m: f64,
    pub q: f64,
}

impl Tuple {
    fn params(&self) -> StatementParams {
        StatementParams::new(self.a, self.b)
            .alpha(self.alpha)
            .m(self.m)
            .q(self.q)
    }
}

pub fn draw_tuple(config: &SweepConfig, index: usize) -> Result<Tuple> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(index as u64);
    let r = &config.ranges;
    let function = if config.functions.is_empty() {
        None
    } else {
        let pick = &config.functions[rng.gen_range(0..config.functions.len())];
        Some(if pick == POW_WILDCARD {
            format!("pow:{}", r.s.draw(&mut rng))
        } else {
            pick.clone()
        })
    };
    let alpha = r.alpha.draw(&mut rng);
    let m = r.m.draw(&mut rng);
    let q = r.q.draw(&mut rng);
    let domain = match &function {
        Some(spec) => Some(RealFunction::parse(spec)?.domain()),
        None => None,
    };
    for _ in 0..MAX_REJECTIONS {
        let a = r.a.draw(&mut rng);
        let b = r.b.draw(&mut rng);
        let inside = domain.is_none_or(|d| {
            d.contains(a) && d.contains(b) && d.contains(a / m) && d.contains(b / m)
        });
        if a < b && inside {
            return Ok(Tuple {
                function,
                a,
                b,
                alpha,
                m,
                q,
            });
        }
    }
    Err(Error::Usage(format!(
        "tuple {index}: no admissible (a, b) found in {MAX_REJECTIONS} draws from a in {}, b in {}",
        r.a, r.b
    )))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowStatus {
    Ok,
    Violated,
    HypothesisFailed,
    Error,
}

impl fmt::Display for RowStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RowStatus::Ok => "ok",
            RowStatus::Violated => "violated",
            RowStatus::HypothesisFailed => "hypothesis-failed",
            RowStatus::Error => "error",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub statement_id: String,
    pub tuple: usize,
    #[serde(flatten)]
    pub inputs: Tuple,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub holds: bool,
    pub status: RowStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

fn evaluate(config: &SweepConfig, statement: Statement, index: usize, t: &Tuple) -> SweepRow {
    let mut row = SweepRow {
        statement_id: statement.id().to_string(),
        tuple: index,
        inputs: t.clone(),
        lhs: f64::NAN,
        rhs: f64::NAN,
        margin: f64::NAN,
        holds: false,
        status: RowStatus::Error,
        message: None,
    };
    let outcome = (|| -> Result<(bool, bool)> {
        let f = match (&t.function, statement.takes_function()) {
            (Some(spec), true) => Some(RealFunction::parse(spec)?),
            _ => None,
        };
        let params = t.params();
        let report = statement
            .evaluate(f.as_ref(), &params)?
            .with_tolerance(config.tolerance);
        row.lhs = report.lhs;
        row.rhs = report.rhs;
        row.margin = report.margin;
        row.holds = report.holds;
        let hypothesis_ok = match (&f, config.check_hypothesis) {
            (Some(f), true) => {
                let scheme = SampleScheme::light(config.seed ^ index as u64);
                statement
                    .hypothesis(f, &params, config.hypothesis_scope, &scheme)?
                    .is_none_or(|r| r.holds)
            }
            _ => true,
        };
        Ok((report.holds, hypothesis_ok))
    })();
    match outcome {
        Ok((_, false)) => row.status = RowStatus::HypothesisFailed,
        Ok((true, true)) => row.status = RowStatus::Ok,
        Ok((false, true)) => row.status = RowStatus::Violated,
        Err(e) => row.message = Some(e.to_string()),
    }
    row
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub rows: usize,
    pub ok: usize,
    pub violated: usize,
    pub hypothesis_failed: usize,
    pub errors: usize,
    pub all_hold: bool,
}

/// A violation pulled toward a passing tuple of the same statement and
/// function family until one more halving step would make it pass.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinimizedCounterexample {
    pub statement_id: String,
    pub tuple: usize,
    /// The passing tuple the search moved toward, if one existed.
    pub anchor_tuple: Option<usize>,
    pub original: Tuple,
    pub minimized: Tuple,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepOutcome {
    pub config: SweepConfig,
    pub summary: SweepSummary,
    pub rows: Vec<SweepRow>,
    pub counterexamples: Vec<MinimizedCounterexample>,
}

fn family(spec: &Option<String>) -> Option<(&str, Option<f64>)> {
    let spec = spec.as_deref()?;
    Some(match spec.split_once(':') {
        Some((name, v)) => (name, v.parse().ok()),
        None => (spec, None),
    })
}

fn midpoint(bad: &Tuple, good: &Tuple) -> Tuple {
    let mid = |x: f64, y: f64| x + 0.5 * (y - x);
    let function = match (family(&bad.function), family(&good.function)) {
        (Some((name, Some(x))), Some((_, Some(y)))) => Some(format!("{name}:{}", mid(x, y))),
        _ => bad.function.clone(),
    };
    Tuple {
        function,
        a: mid(bad.a, good.a),
        b: mid(bad.b, good.b),
        alpha: mid(bad.alpha, good.alpha),
        m: mid(bad.m, good.m),
        q: mid(bad.q, good.q),
    }
}

fn converged(bad: &Tuple, good: &Tuple) -> bool {
    let close = |x: f64, y: f64| (x - y).abs() <= 1e-9 * x.abs().max(1.0);
    let s_close = match (family(&bad.function), family(&good.function)) {
        (Some((_, Some(x))), Some((_, Some(y)))) => close(x, y),
        _ => true,
    };
    s_close
        && close(bad.a, good.a)
        && close(bad.b, good.b)
        && close(bad.alpha, good.alpha)
        && close(bad.m, good.m)
        && close(bad.q, good.q)
}

fn shrink(
    config: &SweepConfig,
    rows: &[SweepRow],
    violation: &SweepRow,
) -> MinimizedCounterexample {
    let statement: Statement = violation.statement_id.parse().expect("row ids are valid");
    let fam = family(&violation.inputs.function).map(|f| f.0);
    let anchor = rows.iter().find(|r| {
        r.statement_id == violation.statement_id
            && r.status == RowStatus::Ok
            && family(&r.inputs.function).map(|f| f.0) == fam
    });
    let mut bad = violation.inputs.clone();
    let (mut lhs, mut rhs, mut margin) = (violation.lhs, violation.rhs, violation.margin);
    let mut steps = 0;
    if let Some(anchor) = anchor {
        let mut good = anchor.inputs.clone();
        while steps < MAX_SHRINK_STEPS && !converged(&bad, &good) {
            steps += 1;
            let mid = midpoint(&bad, &good);
            let row = evaluate(config, statement, violation.tuple, &mid);
            if row.status == RowStatus::Violated {
                bad = mid;
                (lhs, rhs, margin) = (row.lhs, row.rhs, row.margin);
            } else {
                good = mid;
            }
        }
    }
    MinimizedCounterexample {
        statement_id: violation.statement_id.clone(),
        tuple: violation.tuple,
        anchor_tuple: anchor.map(|r| r.tuple),
        original: violation.inputs.clone(),
        minimized: bad,
        lhs,
        rhs,
        margin,
        steps,
    }
}

/// Draw, evaluate and summarise. Violations are shrunk, one per statement
/// and function family.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepOutcome> {
    config.validate()?;
    let tuples: Vec<Tuple> = (0..config.count)
        .into_par_iter()
        .map(|i| draw_tuple(config, i))
        .collect::<Result<_>>()?;
    let rows: Vec<SweepRow> = tuples
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, t)| {
            config
                .statements
                .iter()
                .map(move |&s| evaluate(config, s, i, t))
        })
        .collect();

    let mut summary = SweepSummary {
        rows: rows.len(),
        ..SweepSummary::default()
    };
    for r in &rows {
        match r.status {
            RowStatus::Ok => summary.ok += 1,
            RowStatus::Violated => summary.violated += 1,
            RowStatus::HypothesisFailed => summary.hypothesis_failed += 1,
            RowStatus::Error => summary.errors += 1,
        }
    }
    summary.all_hold = summary.violated == 0 && summary.errors == 0;

    let mut firsts: Vec<&SweepRow> = Vec::new();
    for r in rows.iter().filter(|r| r.status == RowStatus::Violated) {
        let key = (&r.statement_id, family(&r.inputs.function).map(|f| f.0));
        if !firsts
            .iter()
            .any(|f| (&f.statement_id, family(&f.inputs.function).map(|f| f.0)) == key)
        {
            firsts.push(r);
        }
    }
    let counterexamples = firsts
        .par_iter()
        .map(|v| shrink(config, &rows, v))
        .collect();

    Ok(SweepOutcome {
        config: config.clone(),
        summary,
        rows,
        counterexamples,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::Usage(format!(
                "unknown format '{other}'; use json or csv"
            ))),
        }
    }
}

/// 17 significant digits, enough to round-trip any f64.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

pub const CSV_COLUMNS: [&str; 14] = [
    "statement_id",
    "tuple",
    "function",
    "a",
    "b",
    "alpha",
    "m",
    "q",
    "lhs",
    "rhs",
    "margin",
    "holds",
    "status",
    "message",
];

pub const CSV_COUNTEREXAMPLE_COLUMNS: [&str; 13] = [
    "statement_id",
    "tuple",
    "anchor_tuple",
    "function",
    "a",
    "b",
    "alpha",
    "m",
    "q",
    "lhs",
    "rhs",
    "margin",
    "steps",
];

/// Marker line between the row table and the counterexample table.
pub const CSV_COUNTEREXAMPLE_MARKER: &str = "# minimized counterexamples";

impl SweepOutcome {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("sweep outcome serialises");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> Result<String> {
        let csv_err = |e: csv::Error| Error::Io(e.to_string());
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_COLUMNS).map_err(csv_err)?;
        for r in &self.rows {
            let t = &r.inputs;
            w.write_record([
                r.statement_id.clone(),
                r.tuple.to_string(),
                t.function.clone().unwrap_or_default(),
                format_float(t.a),
                format_float(t.b),
                format_float(t.alpha),
                format_float(t.m),
                format_float(t.q),
                format_float(r.lhs),
                format_float(r.rhs),
                format_float(r.margin),
                r.holds.to_string(),
                r.status.to_string(),
                r.message.clone().unwrap_or_default(),
            ])
            .map_err(csv_err)?;
        }
        let mut out = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        if !self.counterexamples.is_empty() {
            out.extend_from_slice(CSV_COUNTEREXAMPLE_MARKER.as_bytes());
            out.push(b'\n');
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_COUNTEREXAMPLE_COLUMNS)
                .map_err(csv_err)?;
            for c in &self.counterexamples {
                let t = &c.minimized;
                w.write_record([
                    c.statement_id.clone(),
                    c.tuple.to_string(),
                    c.anchor_tuple.map(|i| i.to_string()).unwrap_or_default(),
                    t.function.clone().unwrap_or_default(),
                    format_float(t.a),
                    format_float(t.b),
                    format_float(t.alpha),
                    format_float(t.m),
                    format_float(t.q),
                    format_float(c.lhs),
                    format_float(c.rhs),
                    format_float(c.margin),
                    c.steps.to_string(),
                ])
                .map_err(csv_err)?;
            }
            out.extend(w.into_inner().map_err(|e| Error::Io(e.to_string()))?);
        }
        String::from_utf8(out).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(self.to_json()),
            Format::Csv => self.to_csv(),
        }
    }
}
