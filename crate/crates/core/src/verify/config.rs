use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_DIM: usize = 32;

/// How a weight is chosen per trial.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightSpec {
    /// Uniform on `[0, 1]`, with 5% of draws landing exactly on an endpoint.
    Uniform,
    Fixed(f64),
}

/// Fixed spectral bounds `mI <= A, B <= MI`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumBounds {
    pub m: f64,
    #[serde(rename = "M")]
    pub big_m: f64,
}

impl SpectrumBounds {
    pub fn new(m: f64, big_m: f64) -> Result<Self> {
        if !(m > 0.0 && m <= big_m && big_m.is_finite()) {
            return Err(Error::invalid(format!("spectrum bounds require 0 < m <= M, got m = {m}, M = {big_m}")));
        }
        Ok(Self { m, big_m })
    }
}

/// Settings for one check at one dimension.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialConfig {
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    /// Pins `m, M` for every trial; drawn per trial when absent.
    pub spectrum: Option<SpectrumBounds>,
    /// Upper bound on `M/m` and on the spread of `A^{-1/2} B A^{-1/2}`.
    pub max_ratio: f64,
    pub alpha: WeightSpec,
    pub beta: WeightSpec,
    /// Normalized slack below `-tol` counts as a failure.
    pub tol: f64,
    /// Worker threads: 0 uses every core, 1 runs inline.
    #[serde(skip)]
    pub jobs: usize,
    /// Keep every per-trial slack in the result.
    #[serde(skip)]
    pub keep_slacks: bool,
}

impl Default for TrialConfig {
    fn default() -> Self {
        Self {
            dim: 4,
            trials: 1000,
            seed: 0,
            spectrum: None,
            max_ratio: 25.0,
            alpha: WeightSpec::Uniform,
            beta: WeightSpec::Uniform,
            tol: 1e-9,
            jobs: 0,
            keep_slacks: false,
        }
    }
}

impl TrialConfig {
    pub fn validate(&self) -> Result<()> {
        if !(1..=MAX_DIM).contains(&self.dim) {
            return Err(Error::invalid(format!("dimension must lie in 1..={MAX_DIM}, got {}", self.dim)));
        }
        if self.trials == 0 {
            return Err(Error::invalid("at least one trial is required"));
        }
        if let Some(b) = self.spectrum {
            SpectrumBounds::new(b.m, b.big_m)?;
        }
        if !(self.max_ratio >= 1.0 && self.max_ratio.is_finite()) {
            return Err(Error::invalid(format!("max ratio must be finite and >= 1, got {}", self.max_ratio)));
        }
        for w in [self.alpha, self.beta] {
            if let WeightSpec::Fixed(x) = w {
                if !(0.0..=1.0).contains(&x) {
                    return Err(Error::invalid(format!("weight must lie in [0, 1], got {x}")));
                }
            }
        }
        if !(self.tol >= 0.0 && self.tol.is_finite()) {
            return Err(Error::invalid(format!("tolerance must be non-negative, got {}", self.tol)));
        }
        Ok(())
    }
}

/// A full run: the same settings swept over several dimensions.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub dims: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub spectrum: Option<SpectrumBounds>,
    pub max_ratio: f64,
    pub alpha: WeightSpec,
    pub beta: WeightSpec,
    pub tol: f64,
    #[serde(skip)]
    pub jobs: usize,
    #[serde(skip)]
    pub keep_slacks: bool,
    /// Record wall-clock time; off by default so reports are reproducible
    /// byte for byte.
    #[serde(skip)]
    pub timing: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        let t = TrialConfig::default();
        Self {
            dims: vec![1, 2, 4, 8],
            trials: t.trials,
            seed: t.seed,
            spectrum: t.spectrum,
            max_ratio: t.max_ratio,
            alpha: t.alpha,
            beta: t.beta,
            tol: t.tol,
            jobs: t.jobs,
            keep_slacks: false,
            timing: false,
        }
    }
}

impl SuiteConfig {
    pub fn trial_config(&self, dim: usize) -> TrialConfig {
        TrialConfig {
            dim,
            trials: self.trials,
            seed: self.seed,
            spectrum: self.spectrum,
            max_ratio: self.max_ratio,
            alpha: self.alpha,
            beta: self.beta,
            tol: self.tol,
            jobs: self.jobs,
            keep_slacks: self.keep_slacks,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dims.is_empty() {
            return Err(Error::invalid("at least one dimension is required"));
        }
        self.dims.iter().try_for_each(|&d| self.trial_config(d).validate())
    }
}
