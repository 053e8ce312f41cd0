use super::sample::TrialInput;
use super::theorem::{Check, MeanKind, TheoremId};
use crate::bounds::{corollary26_lambda, corollary_lambda, lambda_bound, mu_bound, specht, BoundParams};
use crate::error::{Error, Result};
use crate::function::ScalarFunction;
use crate::linalg::calculus::{apply_scalar_function, map_spectrum, matrix_power};
use crate::linalg::eigen::{eigenvalues, min_eigenvalue};
use crate::linalg::norms::singular_values;
use crate::linalg::HermitianMatrix;
use crate::means::{arithmetic_mean, geometric_mean, harmonic_mean, kubo_ando_mean, Weight};

/// Outcome of one trial.
#[derive(Clone, Debug, PartialEq)]
pub struct Evaluation {
    /// Smallest normalized slack over every inequality in the check; `None`
    /// when the trial was skipped because a hypothesis failed.
    pub slack: Option<f64>,
    /// Slacks of the individual steps, by name.
    pub parts: Vec<(&'static str, f64)>,
    /// Relative disagreement of constants that should coincide.
    pub cross_check: Option<f64>,
}

impl Evaluation {
    fn from_parts(parts: Vec<(&'static str, f64)>) -> Self {
        let slack = parts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
        Self {
            slack: Some(slack),
            parts,
            cross_check: None,
        }
    }

    fn with_cross_check(mut self, err: f64) -> Self {
        self.cross_check = Some(err);
        self
    }
}

fn normalizer(lhs: f64, rhs: f64) -> f64 {
    1f64.max(0.5 * (lhs + rhs))
}

/// `λ_min(RHS - LHS) / max(1, (‖LHS‖_F + ‖RHS‖_F) / 2)`.
pub fn loewner_slack(lhs: &HermitianMatrix, rhs: &HermitianMatrix) -> Result<f64> {
    let gap = min_eigenvalue(&rhs.try_sub(lhs)?)?;
    Ok(gap / normalizer(lhs.frobenius_norm(), rhs.frobenius_norm()))
}

/// Ky Fan `k = 1..n` norms followed by the Schatten 2-norm. The Ky Fan list
/// already holds the trace norm (`k = n`) and the operator norm (`k = 1`).
fn norm_family(a: &HermitianMatrix) -> Result<Vec<f64>> {
    let sv = singular_values(a)?;
    let mut out = Vec::with_capacity(sv.len() + 1);
    let mut acc = 0.0;
    for s in &sv {
        acc += s;
        out.push(acc);
    }
    out.push(sv.iter().map(|s| s * s).sum::<f64>().sqrt());
    Ok(out)
}

/// Worst scalar slack of `|||LHS||| <= |||RHS|||` over the norm family.
pub fn norm_slack(lhs: &HermitianMatrix, rhs: &HermitianMatrix) -> Result<f64> {
    let l = norm_family(lhs)?;
    let r = norm_family(rhs)?;
    Ok(l.iter()
        .zip(&r)
        .map(|(&x, &y)| (y - x) / normalizer(x, y))
        .fold(f64::INFINITY, f64::min))
}

fn weight(x: f64) -> Result<Weight> {
    Weight::new(x)
}

fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

/// A check with its catalog lookups done once.
pub(crate) struct Prepared {
    pub check: Check,
    f: Option<ScalarFunction>,
    sigma: Option<ScalarFunction>,
    tau: Option<ScalarFunction>,
}

impl Prepared {
    pub fn new(check: &Check) -> Result<Self> {
        check.validate()?;
        let resolve = |k: &Option<MeanKind>| k.as_ref().map(MeanKind::resolve).transpose().map(Option::flatten);
        Ok(Self {
            f: check.resolve_function()?,
            sigma: resolve(&check.sigma)?,
            tau: resolve(&check.tau)?,
            check: check.clone(),
        })
    }

    fn function(&self) -> &ScalarFunction {
        self.f.as_ref().expect("validated check carries a function")
    }

    fn mean(
        &self,
        kind: &MeanKind,
        f: &Option<ScalarFunction>,
        a: &HermitianMatrix,
        b: &HermitianMatrix,
        alpha: f64,
    ) -> Result<HermitianMatrix> {
        match kind {
            MeanKind::Arithmetic => arithmetic_mean(a, b, weight(alpha)?),
            MeanKind::Geometric => geometric_mean(a, b, weight(alpha)?),
            MeanKind::Harmonic => harmonic_mean(a, b, weight(alpha)?),
            MeanKind::Function(_) => kubo_ando_mean(a, b, f.as_ref().expect("resolved")),
        }
    }

    pub fn evaluate(&self, x: &TrialInput, tol: f64) -> Result<Evaluation> {
        let (a, b) = (&x.a, &x.b);
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch {
                expected: format!("dim {}", a.dim()),
                found: format!("dim {}", b.dim()),
            });
        }
        let (wa, wb) = (weight(x.alpha)?, weight(x.beta)?);
        let lambda = || x.lambda.ok_or_else(|| Error::invalid("trial input is missing lambda"));
        let mu = || x.mu.ok_or_else(|| Error::invalid("trial input is missing mu"));
        let bounds = || match (x.m, x.big_m) {
            (Some(m), Some(big_m)) => Ok((m, big_m)),
            _ => Err(Error::invalid("trial input is missing spectral bounds")),
        };
        let p = || x.p.ok_or_else(|| Error::invalid("trial input is missing the exponent"));

        Ok(match self.check.theorem {
            TheoremId::Young => {
                let ar = arithmetic_mean(a, b, wa)?;
                let ge = geometric_mean(a, b, wa)?;
                let ha = harmonic_mean(a, b, wa)?;
                Evaluation::from_parts(vec![
                    ("geometric<=arithmetic", loewner_slack(&ge, &ar)?),
                    ("harmonic<=geometric", loewner_slack(&ha, &ge)?),
                ])
            }
            TheoremId::Fujii => {
                let ar = arithmetic_mean(a, b, Weight::HALF)?;
                let ge = geometric_mean(a, b, Weight::HALF)?;
                let ha = harmonic_mean(a, b, Weight::HALF)?;
                Evaluation::from_parts(vec![
                    ("lower", loewner_slack(&ar.scale(1.0 / lambda()?), &ge)?),
                    ("upper", loewner_slack(&ge, &ha.scale(mu()?))?),
                ])
            }
            TheoremId::Tominaga => {
                let ar = arithmetic_mean(a, b, wa)?;
                let ge = geometric_mean(a, b, wa)?;
                Evaluation::from_parts(vec![("reverse-young", loewner_slack(&ar, &ge.scale(lambda()?))?)])
            }
            TheoremId::SandwichChain | TheoremId::SpectrumChain | TheoremId::GeometricChain => {
                let ar = arithmetic_mean(a, b, wa)?;
                let ge = geometric_mean(a, b, wb)?;
                let ha = harmonic_mean(a, b, wa)?;
                let eval = Evaluation::from_parts(vec![
                    ("lower", loewner_slack(&ar.scale(1.0 / lambda()?), &ge)?),
                    ("upper", loewner_slack(&ge, &ha.scale(mu()?))?),
                ]);
                match self.check.theorem {
                    TheoremId::SpectrumChain => {
                        let (m, big_m) = bounds()?;
                        let c = corollary_lambda(m, big_m, x.alpha, x.beta)?;
                        let params = BoundParams::new(m / big_m, big_m / m, x.alpha, x.beta)?;
                        let err = rel_diff(c, lambda_bound(&params)).max(rel_diff(c, mu_bound(&params)));
                        eval.with_cross_check(err)
                    }
                    TheoremId::GeometricChain => {
                        let (m, big_m) = bounds()?;
                        let c = corollary26_lambda(m, big_m, x.alpha)?;
                        let params = BoundParams::new(m / big_m, big_m / m, x.alpha, 0.5)?;
                        let err = rel_diff(c, corollary_lambda(m, big_m, x.alpha, 0.5)?)
                            .max(rel_diff(c, lambda_bound(&params)))
                            .max(rel_diff(c, mu_bound(&params)));
                        eval.with_cross_check(err)
                    }
                    _ => eval,
                }
            }
            TheoremId::GeneralMeans => {
                let (sk, tk) = (
                    self.check.sigma.as_ref().expect("validated"),
                    self.check.tau.as_ref().expect("validated"),
                );
                let sigma = self.mean(sk, &self.sigma, a, b, x.alpha)?;
                let tau = self.mean(tk, &self.tau, a, b, x.alpha)?;
                let ar = arithmetic_mean(a, b, wa)?;
                let ha = harmonic_mean(a, b, wa)?;
                let hyp = loewner_slack(&sigma, &ar)?.min(loewner_slack(&ha, &tau)?);
                if hyp < -tol {
                    return Ok(Evaluation {
                        slack: None,
                        parts: vec![("hypothesis", hyp)],
                        cross_check: None,
                    });
                }
                let ge = geometric_mean(a, b, wb)?;
                Evaluation::from_parts(vec![
                    ("lower", loewner_slack(&sigma.scale(1.0 / lambda()?), &ge)?),
                    ("upper", loewner_slack(&ge, &tau.scale(mu()?))?),
                ])
            }
            TheoremId::MonotoneFunction => {
                let f = self.function();
                let l = lambda()?;
                let ge = geometric_mean(a, b, wb)?;
                let ar = arithmetic_mean(a, b, wa)?;
                let lhs = arithmetic_mean(&apply_scalar_function(a, f)?, &apply_scalar_function(b, f)?, wa)?;
                let f_mean = apply_scalar_function(&ar, f)?;
                let f_scaled = apply_scalar_function(&ge.scale(l), f)?;
                let rhs = apply_scalar_function(&ge, f)?.scale(l);
                let mut eval = Evaluation::from_parts(vec![("bound", loewner_slack(&lhs, &rhs)?)]);
                eval.parts.extend([
                    ("concavity", loewner_slack(&lhs, &f_mean)?),
                    ("monotonicity", loewner_slack(&f_mean, &f_scaled)?),
                    ("scaling", loewner_slack(&f_scaled, &rhs)?),
                ]);
                eval
            }
            TheoremId::PowerMeans => {
                let p = p()?;
                let lhs = arithmetic_mean(&matrix_power(a, p)?, &matrix_power(b, p)?, wa)?;
                let rhs = matrix_power(&geometric_mean(a, b, wb)?, p)?.scale(lambda()?.powf(p));
                Evaluation::from_parts(vec![("bound", loewner_slack(&lhs, &rhs)?)])
            }
            TheoremId::NormChain => {
                let p = p()?;
                let (ap, bp) = (matrix_power(a, p)?, matrix_power(b, p)?);
                let ge = geometric_mean(&ap, &bp, wa)?;
                let ar = arithmetic_mean(&ap, &bp, wa)?;
                let rhs = matrix_power(&geometric_mean(a, b, wb)?, p)?.scale(lambda()?.powf(p));
                Evaluation::from_parts(vec![
                    ("geometric<=arithmetic", norm_slack(&ge, &ar)?),
                    ("arithmetic<=bound", norm_slack(&ar, &rhs)?),
                ])
            }
            TheoremId::Seo => {
                let p = p()?;
                let lhs = geometric_mean(&matrix_power(a, p)?, &matrix_power(b, p)?, wa)?;
                let rhs = matrix_power(&geometric_mean(a, b, wa)?, p)?.scale(lambda()?.powf(p));
                let (m, big_m) = bounds()?;
                let params = BoundParams::new(m / big_m, big_m / m, x.alpha, x.alpha)?;
                let sh = specht(big_m / m)?;
                let excess = (lambda_bound(&params) - sh).max(0.0) / sh;
                Evaluation::from_parts(vec![("bound", norm_slack(&lhs, &rhs)?)]).with_cross_check(excess)
            }
            TheoremId::AndoHiai => {
                let p = p()?;
                let lhs = geometric_mean(&matrix_power(a, p)?, &matrix_power(b, p)?, wa)?;
                let rhs = matrix_power(&geometric_mean(a, b, wa)?, p)?;
                Evaluation::from_parts(vec![("bound", norm_slack(&lhs, &rhs)?)])
            }
            TheoremId::KwongTransform => {
                let p = p()?;
                let f = self.function();
                let transform = |m: &HermitianMatrix| {
                    map_spectrum(m, |v| {
                        let y = v.powf(p);
                        y * f.eval(y)
                    })
                };
                let lhs = arithmetic_mean(&transform(a)?, &transform(b)?, wa)?;
                let rhs = transform(&geometric_mean(a, b, wb)?)?.scale(lambda()?);
                // α = β specialization with the Specht ratio of the joint spectral range
                let ea = eigenvalues(a)?;
                let eb = eigenvalues(b)?;
                let lo = ea[0].min(eb[0]);
                let hi = ea[ea.len() - 1].max(eb[eb.len() - 1]);
                let special = transform(&geometric_mean(a, b, wa)?)?.scale(specht(hi / lo)?);
                Evaluation::from_parts(vec![
                    ("bound", loewner_slack(&lhs, &rhs)?),
                    ("alpha=beta", loewner_slack(&lhs, &special)?),
                ])
            }
            TheoremId::ConvexTransform | TheoremId::ConvexTransformGeometric => {
                let p = p()?;
                let g = self.function();
                let transform = |m: &HermitianMatrix| map_spectrum(m, |v| g.eval(v.powf(p)));
                let (ga, gb) = (transform(a)?, transform(b)?);
                let lhs = if self.check.theorem == TheoremId::ConvexTransform {
                    arithmetic_mean(&ga, &gb, wa)?
                } else {
                    geometric_mean(&ga, &gb, wa)?
                };
                let rhs = transform(&geometric_mean(a, b, wb)?)?.scale(lambda()?);
                Evaluation::from_parts(vec![("bound", loewner_slack(&lhs, &rhs)?)])
            }
        })
    }
}

/// Evaluates one trial input against a check.
pub fn evaluate(check: &Check, input: &TrialInput, tol: f64) -> Result<Evaluation> {
    Prepared::new(check)?.evaluate(input, tol)
}
