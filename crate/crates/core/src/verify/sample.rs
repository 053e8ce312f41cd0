use rand::Rng;
use serde::{Deserialize, Serialize};

use super::config::{TrialConfig, WeightSpec};
use super::theorem::{Check, SamplingMode, TheoremId};
use crate::bounds::{corollary26_lambda, corollary_lambda, kantorovich, lambda_bound, mu_bound, specht, BoundParams};
use crate::error::Result;
use crate::linalg::calculus::matrix_sqrt;
use crate::linalg::random::{random_hpd_with, rng_from_seed};
use crate::linalg::HermitianMatrix;
use crate::means::sandwich_interval;
use crate::seeding::derive_rng;

/// Probability that a uniform weight lands exactly on 0 or 1.
const ENDPOINT_WEIGHT_PROB: f64 = 0.05;
/// Probability that a trial uses `B = A`.
const EQUAL_OPERANDS_PROB: f64 = 0.03;

/// Everything needed to evaluate one trial of a check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialInput {
    #[serde(rename = "A")]
    pub a: HermitianMatrix,
    #[serde(rename = "B")]
    pub b: HermitianMatrix,
    pub alpha: f64,
    pub beta: f64,
    /// Interval the constants were computed from: tight for sandwich
    /// sampling, widened to contain 1 for the operator-function checks, and
    /// tight but informational in spectrum mode.
    pub s: f64,
    pub t: f64,
    pub lambda: Option<f64>,
    pub mu: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<f64>,
    #[serde(default, rename = "M", skip_serializing_if = "Option::is_none")]
    pub big_m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
}

impl TrialInput {
    /// `(cA, cB)` with the spectral bounds scaled to match.
    pub fn scaled(&self, c: f64) -> TrialInput {
        TrialInput {
            a: self.a.scale(c),
            b: self.b.scale(c),
            m: self.m.map(|m| m * c),
            big_m: self.big_m.map(|m| m * c),
            ..self.clone()
        }
    }
}

fn draw_weight<R: Rng>(rng: &mut R, spec: WeightSpec) -> f64 {
    match spec {
        WeightSpec::Fixed(x) => x,
        WeightSpec::Uniform => {
            if rng.random_bool(ENDPOINT_WEIGHT_PROB) {
                if rng.random_bool(0.5) {
                    1.0
                } else {
                    0.0
                }
            } else {
                rng.random::<f64>()
            }
        }
    }
}

fn log_uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    if lo == hi {
        return lo;
    }
    rng.random_range(lo.ln()..=hi.ln()).exp()
}

fn draw_bounds<R: Rng>(rng: &mut R, cfg: &TrialConfig) -> (f64, f64) {
    match cfg.spectrum {
        Some(b) => (b.m, b.big_m),
        None => {
            let m = log_uniform(rng, 0.5, 2.0);
            (m, m * log_uniform(rng, 1.0, cfg.max_ratio))
        }
    }
}

/// Stable per-variant seed label; the λ multiplier is left out so shadow
/// checks see the same operands as the real one.
fn seed_label(check: &Check, dim: usize) -> String {
    let mut base = check.clone();
    base.lambda_scale = 1.0;
    format!("{}/dim{dim}", base.label())
}

/// Draws the inputs of trial `trial`; depends only on the check, `cfg` and
/// `trial`, never on execution order.
pub fn sample_trial(check: &Check, cfg: &TrialConfig, trial: usize) -> Result<TrialInput> {
    let mut rng = derive_rng(cfg.seed, &seed_label(check, cfg.dim), trial as u64);
    let theorem = check.theorem;
    let alpha = match theorem {
        TheoremId::Fujii => 0.5,
        _ => draw_weight(&mut rng, cfg.alpha),
    };
    let beta = match theorem {
        TheoremId::Fujii | TheoremId::GeometricChain => 0.5,
        TheoremId::Young | TheoremId::Tominaga | TheoremId::Seo | TheoremId::AndoHiai => alpha,
        _ => draw_weight(&mut rng, cfg.beta),
    };
    let equal = rng.random_bool(EQUAL_OPERANDS_PROB);
    let dim = cfg.dim;
    // one sub-stream for the operands so weights never shift them
    let mut mrng = rng_from_seed(rng.random());

    let (a, b, m, big_m, interval) = match theorem.sampling() {
        SamplingMode::Spectrum => {
            let (m, big_m) = draw_bounds(&mut mrng, cfg);
            let a = random_hpd_with(&mut mrng, dim, m, big_m)?;
            let b = if equal {
                a.clone()
            } else {
                random_hpd_with(&mut mrng, dim, m, big_m)?
            };
            let iv = sandwich_interval(&a, &b)?;
            (a, b, Some(m), Some(big_m), iv)
        }
        mode => {
            let (ma, mb) = draw_bounds(&mut mrng, cfg);
            let a = random_hpd_with(&mut mrng, dim, ma, mb)?;
            let r = cfg.max_ratio.sqrt();
            let (s0, t0) = if mode == SamplingMode::Straddle {
                (1.0 / log_uniform(&mut mrng, 1.0, r), log_uniform(&mut mrng, 1.0, r))
            } else {
                let x = log_uniform(&mut mrng, 1.0 / r, r);
                let y = log_uniform(&mut mrng, 1.0 / r, r);
                (x.min(y), x.max(y))
            };
            let b = if equal {
                a.clone()
            } else {
                let x = random_hpd_with(&mut mrng, dim, s0, t0)?;
                x.congruence(matrix_sqrt(&a)?.as_matrix())?
            };
            let tight = sandwich_interval(&a, &b)?;
            let iv = if mode == SamplingMode::Straddle {
                tight.widened_to_one()
            } else {
                tight
            };
            (a, b, None, None, iv)
        }
    };

    let mut input = TrialInput {
        a,
        b,
        alpha,
        beta,
        s: interval.s,
        t: interval.t,
        lambda: None,
        mu: None,
        m,
        big_m,
        p: check.p,
    };
    assign_constants(check, &mut input)?;
    Ok(input)
}

/// Fills in λ and μ for the check from the sampled interval or bounds.
fn assign_constants(check: &Check, input: &mut TrialInput) -> Result<()> {
    let scale = check.lambda_scale;
    let (alpha, beta) = (input.alpha, input.beta);
    let h = match (input.m, input.big_m) {
        (Some(m), Some(big_m)) => Some((m, big_m)),
        _ => None,
    };
    let (lambda, mu) = match check.theorem {
        TheoremId::Young | TheoremId::AndoHiai => (None, None),
        TheoremId::Fujii => {
            let (m, big_m) = h.expect("spectrum mode");
            let k = kantorovich(big_m / m)?.sqrt();
            (Some(k * scale), Some(k))
        }
        TheoremId::Tominaga | TheoremId::Seo => {
            let (m, big_m) = h.expect("spectrum mode");
            (Some(specht(big_m / m)? * scale), None)
        }
        TheoremId::SpectrumChain => {
            let (m, big_m) = h.expect("spectrum mode");
            let l = corollary_lambda(m, big_m, alpha, beta)?;
            (Some(l * scale), Some(l))
        }
        TheoremId::GeometricChain => {
            let (m, big_m) = h.expect("spectrum mode");
            let l = corollary26_lambda(m, big_m, alpha)?;
            (Some(l * scale), Some(l))
        }
        _ => {
            let params = BoundParams::new(input.s, input.t, alpha, beta)?;
            let mu = matches!(check.theorem, TheoremId::SandwichChain | TheoremId::GeneralMeans)
                .then(|| mu_bound(&params));
            (Some(lambda_bound(&params) * scale), mu)
        }
    };
    input.lambda = lambda;
    input.mu = mu;
    Ok(())
}
