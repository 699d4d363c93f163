//! Uniform dispatch over every evaluator by statement id.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::convexity::{RealFunction, SampleScheme};
use crate::error::{Error, Result};
use crate::inequalities::{self, ids, HypothesisScope};
use crate::means;
use crate::report::VerificationReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Statement {
    ClassicalHh,
    HarmonicHh,
    TrapezoidIdentity,
    HarmonicPowerMeanBound,
    HarmonicHolderBound,
    IntegralMeanBound,
    PowerMeanBound,
    WeightedPowerMeanBound,
    HolderBound,
    PowerIntegralMean,
    PowerMeanTrapezoid,
    WeightedPowerMeanTrapezoid,
    HolderTrapezoid,
}

impl Statement {
    pub const ALL: [Statement; 13] = [
        Statement::ClassicalHh,
        Statement::HarmonicHh,
        Statement::TrapezoidIdentity,
        Statement::HarmonicPowerMeanBound,
        Statement::HarmonicHolderBound,
        Statement::IntegralMeanBound,
        Statement::PowerMeanBound,
        Statement::WeightedPowerMeanBound,
        Statement::HolderBound,
        Statement::PowerIntegralMean,
        Statement::PowerMeanTrapezoid,
        Statement::WeightedPowerMeanTrapezoid,
        Statement::HolderTrapezoid,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Statement::ClassicalHh => ids::CLASSICAL_HH,
            Statement::HarmonicHh => ids::HARMONIC_HH,
            Statement::TrapezoidIdentity => ids::TRAPEZOID_IDENTITY,
            Statement::HarmonicPowerMeanBound => ids::HARMONIC_POWER_MEAN_BOUND,
            Statement::HarmonicHolderBound => ids::HARMONIC_HOLDER_BOUND,
            Statement::IntegralMeanBound => ids::INTEGRAL_MEAN_BOUND,
            Statement::PowerMeanBound => ids::POWER_MEAN_BOUND,
            Statement::WeightedPowerMeanBound => ids::WEIGHTED_POWER_MEAN_BOUND,
            Statement::HolderBound => ids::HOLDER_BOUND,
            Statement::PowerIntegralMean => means::ids::POWER_INTEGRAL_MEAN,
            Statement::PowerMeanTrapezoid => means::ids::POWER_MEAN_TRAPEZOID,
            Statement::WeightedPowerMeanTrapezoid => means::ids::WEIGHTED_POWER_MEAN_TRAPEZOID,
            Statement::HolderTrapezoid => means::ids::HOLDER_TRAPEZOID,
        }
    }

    /// Mean inequalities are about fixed power functions and take no f.
    pub fn takes_function(self) -> bool {
        !matches!(
            self,
            Statement::PowerIntegralMean
                | Statement::PowerMeanTrapezoid
                | Statement::WeightedPowerMeanTrapezoid
                | Statement::HolderTrapezoid
        )
    }

    /// Whether q must exceed 1 rather than merely reach it.
    pub fn needs_q_above_one(self) -> bool {
        matches!(
            self,
            Statement::HarmonicHolderBound | Statement::HolderBound | Statement::HolderTrapezoid
        )
    }

    /// Whether α must lie strictly inside (0, 1).
    pub fn needs_open_alpha(self) -> bool {
        !self.takes_function()
    }

    pub fn evaluate(
        self,
        f: Option<&RealFunction>,
        p: &StatementParams,
    ) -> Result<VerificationReport> {
        let StatementParams {
            a, b, alpha, m, q, ..
        } = *p;
        let need_f =
            || f.ok_or_else(|| Error::Usage(format!("{} needs a function (--fn)", self.id())));
        match self {
            Statement::ClassicalHh => inequalities::check_classical_hh(need_f()?, a, b),
            Statement::HarmonicHh => inequalities::check_hh_harmonic(need_f()?, a, b),
            Statement::TrapezoidIdentity => inequalities::check_trapezoid_identity(need_f()?, a, b),
            Statement::HarmonicPowerMeanBound => inequalities::check_thm15(need_f()?, a, b, q),
            Statement::HarmonicHolderBound => inequalities::check_thm16(need_f()?, a, b, q),
            Statement::IntegralMeanBound => inequalities::check_thm22(need_f()?, a, b, alpha, m),
            Statement::PowerMeanBound => inequalities::check_thm23(need_f()?, a, b, alpha, m, q),
            Statement::WeightedPowerMeanBound => {
                inequalities::check_thm24(need_f()?, a, b, alpha, m, q)
            }
            Statement::HolderBound => inequalities::check_thm25(need_f()?, a, b, alpha, m, q),
            Statement::PowerIntegralMean => means::check_prop31(a, b, alpha),
            Statement::PowerMeanTrapezoid => means::check_prop32(a, b, alpha, q),
            Statement::WeightedPowerMeanTrapezoid => means::check_prop33(a, b, alpha, q),
            Statement::HolderTrapezoid => {
                let p = match p.p {
                    Some(p) => p,
                    None => means::conjugate(q)?,
                };
                means::check_prop34(a, b, alpha, q, p)
            }
        }
    }

    /// Sample the convexity assumption of this statement, if it has one on f.
    pub fn hypothesis(
        self,
        f: &RealFunction,
        p: &StatementParams,
        scope: HypothesisScope,
        scheme: &SampleScheme,
    ) -> Result<Option<VerificationReport>> {
        if !self.takes_function() {
            return Ok(None);
        }
        inequalities::check_hypothesis(self.id(), f, p.a, p.b, p.alpha, p.m, p.q, scope, scheme)
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Statement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Statement::ALL
            .into_iter()
            .find(|st| st.id() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = Statement::ALL.iter().map(|s| s.id()).collect();
                Error::Usage(format!(
                    "unknown statement '{s}'; expected one of {}",
                    known.join(", ")
                ))
            })
    }
}

impl TryFrom<String> for Statement {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Statement> for String {
    fn from(s: Statement) -> String {
        s.id().to_string()
    }
}

/// Numeric inputs shared by all statements; each reads the ones it uses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StatementParams {
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
    pub m: f64,
    pub q: f64,
    pub p: Option<f64>,
}

impl StatementParams {
    pub fn new(a: f64, b: f64) -> Self {
        Self {
            a,
            b,
            alpha: 1.0,
            m: 1.0,
            q: 1.0,
            p: None,
        }
    }

    pub fn alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn m(mut self, m: f64) -> Self {
        self.m = m;
        self
    }

    pub fn q(mut self, q: f64) -> Self {
        self.q = q;
        self
    }

    pub fn p(mut self, p: f64) -> Self {
        self.p = Some(p);
        self
    }
}
