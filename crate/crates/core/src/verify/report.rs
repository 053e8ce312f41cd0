use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::config::SuiteConfig;
use super::sample::TrialInput;
use super::theorem::TheoremId;

/// Most failure witnesses kept per result; the count is always exact.
pub const MAX_WITNESSES: usize = 16;
/// Most error messages kept per result.
pub const MAX_ERRORS: usize = 8;
/// Largest tolerated relative disagreement between constants that should
/// coincide.
pub const CROSS_CHECK_TOL: f64 = 1e-12;

/// A violating trial, with everything needed to re-evaluate it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub trial: usize,
    pub slack: f64,
    #[serde(flatten)]
    pub input: TrialInput,
}

/// Outcome of one check at one dimension.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InequalityResult {
    pub theorem: TheoremId,
    pub variant: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub function: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    pub dim: usize,
    pub trials: usize,
    pub evaluated: usize,
    pub skipped: usize,
    /// Smallest normalized slack over evaluated trials; this is also the
    /// observed tightness of the inequality.
    pub min_slack: Option<f64>,
    pub tightest_trial: Option<usize>,
    pub failure_count: usize,
    pub failures: Vec<Witness>,
    pub error_count: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub errors: Vec<String>,
    /// Smallest slack of each named step.
    pub steps: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_check_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slacks: Option<Vec<Option<f64>>>,
    pub pass: bool,
}

/// A run over several checks and dimensions.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub version: String,
    pub config: SuiteConfig,
    pub checks: Vec<String>,
    pub results: Vec<InequalityResult>,
    pub pass: bool,
    pub elapsed_ms: u64,
}

/// Shortest round-trip representation, as used in the JSON output.
pub fn format_float(x: f64) -> String {
    serde_json::to_string(&x).expect("float formats")
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One row per result: `theorem,trials,dim,min_slack,failures`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["theorem", "trials", "dim", "min_slack", "failures"])
            .expect("in-memory write");
        for r in &self.results {
            let slack = r.min_slack.map(format_float).unwrap_or_default();
            w.write_record([
                r.variant.clone(),
                r.trials.to_string(),
                r.dim.to_string(),
                slack,
                r.failure_count.to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
    }

    pub fn failures(&self) -> usize {
        self.results.iter().map(|r| r.failure_count).sum()
    }
}
