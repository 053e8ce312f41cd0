//! Kwong and Loewner matrices, and sampled positivity classification of
//! scalar functions.
//!
//! Every classifier here tests a *necessary* condition on finitely many
//! samples. A verdict is either `Refuted` (with a reproducible witness) or
//! `Consistent`; nothing is ever proved.

mod theorems;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::function::ScalarFunction;
use crate::linalg::random::with_spectrum;
use crate::linalg::{eigenvalues, map_spectrum, HermitianMatrix, Matrix, C64};
use crate::seeding::derive_rng;

pub use theorems::{
    check_audenaert_equivalence, check_theorem31, check_theorem32, extrapolate_at_zero, AudenaertCheck,
    Implication, Theorem31Check, Theorem32Check,
};

/// Largest matrix size used for classification; Kwong and Loewner matrices
/// beyond this become too ill-conditioned for a 1e-9 relative tolerance.
pub const MAX_SAMPLE_SIZE: usize = 12;

const POINT_LO: f64 = 1e-3;
const POINT_HI: f64 = 1e3;
const PROGRESSION_RATIOS: [f64; 3] = [1.1, 2.0, 10.0];

/// Distinct positive sample points.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SamplePoints(Vec<f64>);

impl SamplePoints {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::invalid("at least one sample point is required"));
        }
        if let Some(bad) = points.iter().find(|x| !(**x > 0.0 && x.is_finite())) {
            return Err(Error::invalid(format!("sample points must be positive and finite, got {bad}")));
        }
        let mut sorted = points.clone();
        sorted.sort_by(f64::total_cmp);
        for w in sorted.windows(2) {
            if (w[1] - w[0]) <= 1e-12 * w[1] {
                return Err(Error::invalid(format!("sample points {} and {} are not distinct", w[0], w[1])));
            }
        }
        Ok(Self(points))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn evaluate_at(f: &ScalarFunction, pts: &SamplePoints) -> Result<Vec<f64>> {
    pts.as_slice()
        .iter()
        .map(|&x| {
            let y = f.eval(x);
            if y.is_finite() {
                Ok(y)
            } else {
                Err(Error::Evaluation {
                    function: f.id().to_string(),
                    x,
                })
            }
        })
        .collect()
}

fn real_symmetric(n: usize, entry: impl Fn(usize, usize) -> f64) -> HermitianMatrix {
    let m = Matrix::from_fn(n, n, |i, j| {
        let (a, b) = if i >= j { (i, j) } else { (j, i) };
        C64::new(entry(a, b), 0.0)
    });
    HermitianMatrix::hermitian_part(&m)
}

/// `[(f(x_i) + f(x_j)) / (x_i + x_j)]`.
pub fn kwong_matrix(f: &ScalarFunction, pts: &SamplePoints) -> Result<HermitianMatrix> {
    let x = pts.as_slice();
    let y = evaluate_at(f, pts)?;
    Ok(real_symmetric(x.len(), |i, j| (y[i] + y[j]) / (x[i] + x[j])))
}

/// Divided differences `(f(x_i) - f(x_j)) / (x_i - x_j)` with `f'(x_i)` on
/// the diagonal.
pub fn loewner_matrix(f: &ScalarFunction, pts: &SamplePoints) -> Result<HermitianMatrix> {
    let x = pts.as_slice();
    let y = evaluate_at(f, pts)?;
    let d: Vec<f64> = x.iter().map(|&xi| f.derivative(xi)).collect();
    if let Some(i) = d.iter().position(|v| !v.is_finite()) {
        return Err(Error::Evaluation {
            function: format!("{}'", f.id()),
            x: x[i],
        });
    }
    Ok(real_symmetric(x.len(), |i, j| {
        if i == j {
            d[i]
        } else {
            (y[i] - y[j]) / (x[i] - x[j])
        }
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Consistent,
    Refuted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Monotonicity {
    Increasing,
    /// Tested through the negated function.
    Decreasing,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvexityOperands {
    pub a: HermitianMatrix,
    pub b: HermitianMatrix,
    pub alpha: f64,
}

/// Evidence for a refutation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub trial: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub operands: Option<ConvexityOperands>,
    /// The matrix that failed to be PSD.
    pub matrix: HermitianMatrix,
    pub min_eigenvalue: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationVerdict {
    pub function: String,
    pub test: String,
    pub verdict: Verdict,
    pub trials: usize,
    /// Trials whose matrix could not be formed (non-finite values).
    pub skipped: usize,
    /// Smallest `min eig / max(1, ||M||_F)` seen over evaluated trials.
    pub worst_normalized_eigenvalue: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl ClassificationVerdict {
    pub fn is_refuted(&self) -> bool {
        self.verdict == Verdict::Refuted
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ClassifyConfig {
    /// Largest sample size; sizes are drawn from `2..=n_max`.
    pub n_max: usize,
    pub trials: usize,
    pub seed: u64,
    /// Relative eigenvalue tolerance.
    pub tol: f64,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        Self {
            n_max: 8,
            trials: 200,
            seed: 0,
            tol: 1e-9,
        }
    }
}

impl ClassifyConfig {
    fn validate(&self) -> Result<()> {
        if !(2..=MAX_SAMPLE_SIZE).contains(&self.n_max) {
            return Err(Error::invalid(format!("n_max must lie in 2..={MAX_SAMPLE_SIZE}, got {}", self.n_max)));
        }
        if self.trials == 0 {
            return Err(Error::invalid("at least one trial is required"));
        }
        if !(self.tol > 0.0) {
            return Err(Error::invalid("tolerance must be positive"));
        }
        Ok(())
    }
}

/// Point set for classification trial `trial`. Even trials draw log-uniform
/// points in `[1e-3, 1e3]`; odd trials use a geometric progression with
/// ratio 1.1, 2 or 10 that fits inside the same range. The set depends only
/// on `(seed, n_max, trial)`, so Kwong and Loewner tests see identical points.
pub fn sample_points(seed: u64, n_max: usize, trial: usize) -> SamplePoints {
    let mut rng = derive_rng(seed, "kwong-points", trial as u64);
    let n = rng.random_range(2..=n_max.max(2));
    let span = (POINT_HI / POINT_LO).ln();
    let log_uniform = |rng: &mut rand_chacha::ChaCha8Rng, lo: f64, hi: f64| {
        (lo.ln() + rng.random::<f64>() * (hi.ln() - lo.ln())).exp()
    };
    loop {
        let pts = if trial % 2 == 0 {
            (0..n).map(|_| log_uniform(&mut rng, POINT_LO, POINT_HI)).collect()
        } else {
            let ratio = PROGRESSION_RATIOS[(trial / 2) % PROGRESSION_RATIOS.len()];
            let fit = (span / ratio.ln()).floor() as usize + 1;
            let n = n.min(fit);
            let top = POINT_HI / ratio.powi(n as i32 - 1);
            let start = log_uniform(&mut rng, POINT_LO, top.max(POINT_LO));
            (0..n).map(|k| start * ratio.powi(k as i32)).collect()
        };
        if let Ok(p) = SamplePoints::new(pts) {
            return p;
        }
    }
}

fn normalized_min_eig(m: &HermitianMatrix) -> Result<(f64, f64)> {
    let min = eigenvalues(m)?[0];
    Ok((min, min / m.frobenius_norm().max(1.0)))
}

fn classify_with(
    f: &ScalarFunction,
    cfg: &ClassifyConfig,
    test: &str,
    build: impl Fn(&ScalarFunction, &SamplePoints) -> Result<HermitianMatrix>,
) -> Result<ClassificationVerdict> {
    cfg.validate()?;
    let mut skipped = 0;
    let mut worst = f64::INFINITY;
    for trial in 0..cfg.trials {
        let pts = sample_points(cfg.seed, cfg.n_max, trial);
        let m = match build(f, &pts) {
            Ok(m) if m.frobenius_norm().is_finite() => m,
            Ok(_) | Err(Error::Evaluation { .. }) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        let (min, normalized) = normalized_min_eig(&m)?;
        worst = worst.min(normalized);
        if normalized < -cfg.tol {
            // trials run in index order, so the first refutation is the
            // smallest trial index
            return Ok(ClassificationVerdict {
                function: f.id().to_string(),
                test: test.to_string(),
                verdict: Verdict::Refuted,
                trials: trial + 1,
                skipped,
                worst_normalized_eigenvalue: worst,
                witness: Some(Witness {
                    trial,
                    points: Some(pts.as_slice().to_vec()),
                    operands: None,
                    matrix: m,
                    min_eigenvalue: min,
                }),
            });
        }
    }
    Ok(ClassificationVerdict {
        function: f.id().to_string(),
        test: test.to_string(),
        verdict: Verdict::Consistent,
        trials: cfg.trials,
        skipped,
        worst_normalized_eigenvalue: worst,
        witness: None,
    })
}

/// Sampled Kwong-matrix positivity.
pub fn classify_kwong(f: &ScalarFunction, cfg: &ClassifyConfig) -> Result<ClassificationVerdict> {
    classify_with(f, cfg, "kwong", kwong_matrix)
}

/// Sampled Loewner-matrix positivity (operator monotonicity, necessary
/// condition). Decreasing monotonicity is tested on `-f`.
pub fn classify_operator_monotone(
    f: &ScalarFunction,
    direction: Monotonicity,
    cfg: &ClassifyConfig,
) -> Result<ClassificationVerdict> {
    match direction {
        Monotonicity::Increasing => classify_with(f, cfg, "loewner", loewner_matrix),
        Monotonicity::Decreasing => {
            let mut v = classify_with(&f.negated(), cfg, "loewner-decreasing", loewner_matrix)?;
            v.function = f.id().to_string();
            Ok(v)
        }
    }
}

/// Configuration of the matrix convexity test.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConvexityConfig {
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for ConvexityConfig {
    fn default() -> Self {
        Self {
            dim: 2,
            trials: 500,
            seed: 0,
            tol: 1e-9,
        }
    }
}

/// Checks `g((1-α)A + αB) <= (1-α)g(A) + αg(B)` on random HPD pairs.
///
/// Each operand gets its own spectrum, log-uniform in `[m, M]` with `m`
/// log-uniform in `[0.1, 1]` and `M/m` log-uniform in `[1, 100]`. The
/// endpoints are deliberately not pinned: two 2x2 operands sharing the
/// spectrum `{m, M}` never violate convexity of `x^3` or `exp`.
pub fn classify_operator_convex(g: &ScalarFunction, cfg: &ConvexityConfig) -> Result<ClassificationVerdict> {
    if cfg.dim == 0 || cfg.trials == 0 {
        return Err(Error::invalid("dimension and trial count must be positive"));
    }
    let mut worst = f64::INFINITY;
    for trial in 0..cfg.trials {
        let mut rng = derive_rng(cfg.seed, "operator-convex", trial as u64);
        let m = 10f64.powf(rng.random_range(-1.0..=0.0));
        let big_m = m * 10f64.powf(rng.random_range(0.0..=2.0));
        let (lo, hi) = (m.ln(), big_m.ln());
        let mut operand = || -> Result<HermitianMatrix> {
            let spectrum: Vec<f64> = (0..cfg.dim).map(|_| rng.random_range(lo..=hi).exp()).collect();
            with_spectrum(&mut rng, &spectrum)
        };
        let a = operand()?;
        let b = operand()?;
        let alpha: f64 = rng.random_range(0.0..=1.0);
        let diff = convexity_gap(g, &a, &b, alpha)?;
        let (min, _) = normalized_min_eig(&diff.gap)?;
        let normalized = min / diff.scale;
        worst = worst.min(normalized);
        if normalized < -cfg.tol {
            return Ok(ClassificationVerdict {
                function: g.id().to_string(),
                test: "operator-convex".into(),
                verdict: Verdict::Refuted,
                trials: trial + 1,
                skipped: 0,
                worst_normalized_eigenvalue: worst,
                witness: Some(Witness {
                    trial,
                    points: None,
                    operands: Some(ConvexityOperands { a, b, alpha }),
                    matrix: diff.gap,
                    min_eigenvalue: min,
                }),
            });
        }
    }
    Ok(ClassificationVerdict {
        function: g.id().to_string(),
        test: "operator-convex".into(),
        verdict: Verdict::Consistent,
        trials: cfg.trials,
        skipped: 0,
        worst_normalized_eigenvalue: worst,
        witness: None,
    })
}

pub(crate) struct ConvexityGap {
    pub gap: HermitianMatrix,
    pub scale: f64,
}

/// `(1-α)g(A) + αg(B) - g((1-α)A + αB)` and its normalization scale.
pub(crate) fn convexity_gap(
    g: &ScalarFunction,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    alpha: f64,
) -> Result<ConvexityGap> {
    let eval = |m: &HermitianMatrix| map_spectrum(m, |x| g.eval(x));
    let mix = a.scale(1.0 - alpha).try_add(&b.scale(alpha))?;
    let lhs = eval(&mix)?;
    let rhs = eval(a)?.scale(1.0 - alpha).try_add(&eval(b)?.scale(alpha))?;
    let scale = ((lhs.frobenius_norm() + rhs.frobenius_norm()) / 2.0).max(1.0);
    Ok(ConvexityGap {
        gap: rhs.try_sub(&lhs)?,
        scale,
    })
}
