use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use rayon::ThreadPool;

use super::config::{SuiteConfig, TrialConfig};
use super::evaluate::{Evaluation, Prepared};
use super::report::{InequalityResult, VerificationReport, Witness, CROSS_CHECK_TOL, MAX_ERRORS, MAX_WITNESSES};
use super::sample::{sample_trial, TrialInput};
use super::theorem::{Check, MeanKind, TheoremId};
use crate::error::{Error, Result};

struct Outcome {
    input: TrialInput,
    eval: Evaluation,
}

fn run_trial(prep: &Prepared, cfg: &TrialConfig, trial: usize) -> Result<Outcome> {
    let input = sample_trial(&prep.check, cfg, trial)?;
    let eval = prep.evaluate(&input, cfg.tol)?;
    Ok(Outcome { input, eval })
}

fn build_pool(jobs: usize) -> Result<Option<ThreadPool>> {
    if jobs <= 1 {
        return Ok(None);
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map(Some)
        .map_err(|e| Error::invalid(format!("cannot start {jobs} worker threads: {e}")))
}

fn run_trials(prep: &Prepared, cfg: &TrialConfig, pool: Option<&ThreadPool>) -> Vec<Result<Outcome>> {
    let go = || (0..cfg.trials).into_par_iter().map(|i| run_trial(prep, cfg, i)).collect();
    match (cfg.jobs, pool) {
        (1, _) => (0..cfg.trials).map(|i| run_trial(prep, cfg, i)).collect(),
        (_, Some(pool)) => pool.install(go),
        _ => go(),
    }
}

fn aggregate(check: &Check, cfg: &TrialConfig, outcomes: Vec<Result<Outcome>>) -> InequalityResult {
    let mut result = InequalityResult {
        theorem: check.theorem,
        variant: check.label(),
        function: check.function.clone(),
        p: check.p,
        dim: cfg.dim,
        trials: cfg.trials,
        evaluated: 0,
        skipped: 0,
        min_slack: None,
        tightest_trial: None,
        failure_count: 0,
        failures: Vec::new(),
        error_count: 0,
        errors: Vec::new(),
        steps: BTreeMap::new(),
        cross_check_error: None,
        slacks: cfg.keep_slacks.then(Vec::new),
        pass: false,
    };
    for (trial, outcome) in outcomes.into_iter().enumerate() {
        let Outcome { input, eval } = match outcome {
            Ok(o) => o,
            Err(e) => {
                result.error_count += 1;
                if result.errors.len() < MAX_ERRORS {
                    result.errors.push(format!("trial {trial}: {e}"));
                }
                if let Some(s) = result.slacks.as_mut() {
                    s.push(None);
                }
                continue;
            }
        };
        if let Some(s) = result.slacks.as_mut() {
            s.push(eval.slack);
        }
        if let Some(err) = eval.cross_check {
            result.cross_check_error = Some(result.cross_check_error.map_or(err, |e: f64| e.max(err)));
        }
        let Some(slack) = eval.slack else {
            result.skipped += 1;
            continue;
        };
        result.evaluated += 1;
        if result.min_slack.is_none_or(|m| slack < m) {
            result.min_slack = Some(slack);
            result.tightest_trial = Some(trial);
        }
        for (name, v) in eval.parts {
            let e = result.steps.entry(name.to_string()).or_insert(v);
            *e = e.min(v);
        }
        if slack < -cfg.tol {
            result.failure_count += 1;
            if result.failures.len() < MAX_WITNESSES {
                result.failures.push(Witness { trial, slack, input });
            }
        }
    }
    result.pass = result.failure_count == 0
        && result.error_count == 0
        && result.cross_check_error.is_none_or(|e| e <= CROSS_CHECK_TOL);
    result
}

fn run_with_pool(check: &Check, cfg: &TrialConfig, pool: Option<&ThreadPool>) -> Result<InequalityResult> {
    cfg.validate()?;
    let prep = Prepared::new(check)?;
    let outcomes = run_trials(&prep, cfg, pool);
    Ok(aggregate(check, cfg, outcomes))
}

/// Runs every trial of one check at `cfg.dim`. Violations are recorded in
/// the result, not returned as errors.
pub fn run_check(check: &Check, cfg: &TrialConfig) -> Result<InequalityResult> {
    let pool = build_pool(cfg.jobs)?;
    run_with_pool(check, cfg, pool.as_ref())
}

/// Runs `checks` at every dimension in `cfg.dims`.
pub fn run_suite(cfg: &SuiteConfig, checks: &[Check]) -> Result<VerificationReport> {
    let start = Instant::now();
    cfg.validate()?;
    let pool = build_pool(cfg.jobs)?;
    let mut results = Vec::with_capacity(checks.len() * cfg.dims.len());
    for check in checks {
        for &dim in &cfg.dims {
            results.push(run_with_pool(check, &cfg.trial_config(dim), pool.as_ref())?);
        }
    }
    let elapsed_ms = if cfg.timing { start.elapsed().as_millis() as u64 } else { 0 };
    Ok(VerificationReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: cfg.clone(),
        checks: checks.iter().map(Check::label).collect(),
        pass: results.iter().all(|r| r.pass),
        results,
        elapsed_ms,
    })
}

/// Re-evaluates a recorded witness and returns its slack.
pub fn reevaluate(check: &Check, witness: &Witness, tol: f64) -> Result<Option<f64>> {
    Ok(Prepared::new(check)?.evaluate(&witness.input, tol)?.slack)
}

pub fn check_young(cfg: &TrialConfig) -> Result<InequalityResult> {
    run_check(&Check::new(TheoremId::Young), cfg)
}

pub fn check_fujii(cfg: &TrialConfig) -> Result<InequalityResult> {
    run_check(&Check::new(TheoremId::Fujii), cfg)
}

pub fn check_tominaga(cfg: &TrialConfig) -> Result<InequalityResult> {
    run_check(&Check::new(TheoremId::Tominaga), cfg)
}

pub fn check_thm21(cfg: &TrialConfig) -> Result<InequalityResult> {
    run_check(&Check::new(TheoremId::SandwichChain), cfg)
}

pub fn check_remark22(cfg: &TrialConfig, sigma: MeanKind, tau: MeanKind) -> Result<InequalityResult> {
    run_check(&Check::new(TheoremId::GeneralMeans).with_means(sigma, tau), cfg)
}

pub fn check_cor23(cfg: &TrialConfig) -> Result<InequalityResult> {
    run_check(&Check::new(TheoremId::SpectrumChain), cfg)
}

pub fn check_cor26(cfg: &TrialConfig) -> Result<InequalityResult> {
    run_check(&Check::new(TheoremId::GeometricChain), cfg)
}

pub fn check_thm34(cfg: &TrialConfig, f: &str) -> Result<InequalityResult> {
    run_check(&Check::new(TheoremId::MonotoneFunction).with_function(f), cfg)
}

pub fn check_cor35(cfg: &TrialConfig, p: f64) -> Result<InequalityResult> {
    run_check(&Check::new(TheoremId::PowerMeans).with_p(p), cfg)
}

pub fn check_norm_chain(cfg: &TrialConfig, p: f64) -> Result<InequalityResult> {
    run_check(&Check::new(TheoremId::NormChain).with_p(p), cfg)
}

pub fn check_seo(cfg: &TrialConfig, p: f64) -> Result<InequalityResult> {
    run_check(&Check::new(TheoremId::Seo).with_p(p), cfg)
}

pub fn check_ando_hiai(cfg: &TrialConfig, p: f64) -> Result<InequalityResult> {
    run_check(&Check::new(TheoremId::AndoHiai).with_p(p), cfg)
}

pub fn check_cor36(cfg: &TrialConfig, f: &str, p: f64) -> Result<InequalityResult> {
    run_check(&Check::new(TheoremId::KwongTransform).with_function(f).with_p(p), cfg)
}

pub fn check_cor38(cfg: &TrialConfig, g: &str, p: f64) -> Result<InequalityResult> {
    run_check(&Check::new(TheoremId::ConvexTransform).with_function(g).with_p(p), cfg)
}

pub fn check_remark39(cfg: &TrialConfig, g: &str, p: f64) -> Result<InequalityResult> {
    run_check(&Check::new(TheoremId::ConvexTransformGeometric).with_function(g).with_p(p), cfg)
}
