use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Parameters a report was produced from, echoed so the check can be re-run.
///
/// Floats are serialised with the shortest representation that round-trips,
/// so feeding the echoed values back reproduces the report bit for bit.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ReportInputs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub function: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extra: BTreeMap<String, f64>,
}

impl ReportInputs {
    pub fn interval(a: f64, b: f64) -> Self {
        Self {
            a: Some(a),
            b: Some(b),
            ..Self::default()
        }
    }

    pub fn with_function(mut self, spec: impl Into<String>) -> Self {
        self.function = Some(spec.into());
        self
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = Some(alpha);
        self
    }

    pub fn with_m(mut self, m: f64) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_q(mut self, q: f64) -> Self {
        self.q = Some(q);
        self
    }

    pub fn with_p(mut self, p: f64) -> Self {
        self.p = Some(p);
        self
    }

    pub fn with_extra(mut self, key: &str, value: f64) -> Self {
        self.extra.insert(key.to_string(), value);
        self
    }
}

/// A sample at which a pointwise inequality failed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub x: f64,
    pub y: f64,
    pub t: f64,
    pub lhs: f64,
    pub rhs: f64,
}

/// Outcome of evaluating one inequality: both sides, the margin `rhs − lhs`
/// and whether the margin clears `−tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub statement_id: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub holds: bool,
    pub tolerance: f64,
    pub inputs: ReportInputs,
    /// Named intermediate values: bound candidates, coefficients, residuals.
    #[serde(default)]
    pub details: BTreeMap<String, f64>,
    #[serde(default)]
    pub notes: Vec<String>,
    #[serde(default)]
    pub counterexample: Option<Counterexample>,
}

impl VerificationReport {
    pub fn new(
        statement_id: impl Into<String>,
        lhs: f64,
        rhs: f64,
        tolerance: f64,
        inputs: ReportInputs,
    ) -> Self {
        let margin = rhs - lhs;
        Self {
            statement_id: statement_id.into(),
            lhs,
            rhs,
            margin,
            holds: margin >= -tolerance,
            tolerance,
            inputs,
            details: BTreeMap::new(),
            notes: Vec::new(),
            counterexample: None,
        }
    }

    pub fn with_detail(mut self, key: &str, value: f64) -> Self {
        self.details.insert(key.to_string(), value);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.push_note(note);
        self
    }

    pub fn push_note(&mut self, note: impl Into<String>) {
        let note = note.into();
        if !self.notes.contains(&note) {
            self.notes.push(note);
        }
    }

    pub fn detail(&self, key: &str) -> Option<f64> {
        self.details.get(key).copied()
    }

    /// Replace the tolerance and recompute `holds`.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self.holds = self.margin >= -tolerance;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn holds_iff_margin_clears_tolerance() {
        let r = VerificationReport::new("x", 1.0, 1.0 - 5e-10, 1e-9, ReportInputs::default());
        assert!(r.holds);
        let r = r.with_tolerance(1e-10);
        assert!(!r.holds);
        let nan = VerificationReport::new("x", f64::NAN, 1.0, 1e-9, ReportInputs::default());
        assert!(!nan.holds);
    }

    #[test]
    fn inputs_round_trip_bit_exact() {
        let inputs = ReportInputs::interval(0.1 + 0.2, 1.0 / 3.0)
            .with_function("pow:0.5")
            .with_alpha(std::f64::consts::FRAC_1_SQRT_2)
            .with_extra("s", 1e-300);
        let json = serde_json::to_string(&inputs).unwrap();
        let back: ReportInputs = serde_json::from_str(&json).unwrap();
        assert_eq!(back, inputs);
        assert_eq!(back.a.unwrap().to_bits(), (0.1f64 + 0.2).to_bits());
    }
}
