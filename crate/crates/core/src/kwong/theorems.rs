//! Numerical checks of the transformation theorems linking Kwong functions,
//! operator monotone functions and operator convex functions.

use serde::Serialize;

use super::{classify_kwong, classify_operator_monotone, ClassificationVerdict, ClassifyConfig, Monotonicity};
use crate::error::{Error, Result};
use crate::function::{catalog, ScalarFunction};

/// Probe grid for non-negativity checks.
fn nonneg_on_grid(f: &ScalarFunction) -> bool {
    (0..=60).all(|k| {
        let x = 10f64.powf(-3.0 + 0.1 * k as f64);
        let y = f.eval(x);
        y.is_finite() && y >= 0.0
    })
}

/// Kwong-ness of `f` against operator monotonicity of `g(t) = √t f(√t)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AudenaertCheck {
    pub function: String,
    pub kwong: ClassificationVerdict,
    pub transform_monotone: ClassificationVerdict,
    pub transform_nonnegative: bool,
    /// Both sides agree: `f` refuted as Kwong iff the transform is refuted
    /// as a non-negative operator monotone function.
    pub coherent: bool,
}

pub fn check_audenaert_equivalence(f: &ScalarFunction, cfg: &ClassifyConfig) -> Result<AudenaertCheck> {
    let kwong = classify_kwong(f, cfg)?;
    let g = f.sqrt_transform();
    let transform_monotone = classify_operator_monotone(&g, Monotonicity::Increasing, cfg)?;
    let transform_nonnegative = nonneg_on_grid(&g);
    let transform_refuted = transform_monotone.is_refuted() || !transform_nonnegative;
    Ok(AudenaertCheck {
        function: f.id().to_string(),
        coherent: kwong.is_refuted() == transform_refuted,
        kwong,
        transform_monotone,
        transform_nonnegative,
    })
}

/// One implication `premise ⇒ conclusion`, tested on samples.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Implication {
    pub part: String,
    pub statement: String,
    pub applicable: bool,
    pub premise: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conclusion: Option<ClassificationVerdict>,
    /// Premise holds and the conclusion was refuted.
    pub failure: bool,
}

impl Implication {
    fn not_applicable(part: &str, statement: &str) -> Self {
        Self {
            part: part.into(),
            statement: statement.into(),
            applicable: false,
            premise: false,
            conclusion: None,
            failure: false,
        }
    }

    fn tested(part: &str, statement: &str, premise: bool, conclusion: ClassificationVerdict) -> Self {
        Self {
            part: part.into(),
            statement: statement.into(),
            applicable: true,
            premise,
            failure: premise && conclusion.is_refuted(),
            conclusion: Some(conclusion),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Theorem31Check {
    pub function: String,
    pub p: f64,
    pub parts: Vec<Implication>,
}

impl Theorem31Check {
    pub fn failed(&self) -> bool {
        self.parts.iter().any(|i| i.failure)
    }
}

/// The three implications between `f` being Kwong and the power transforms
/// `x^p f(x^p)` (monotone) and `f(x^p)/x^p` (monotone decreasing).
///
/// (i) `p >= 1/2` and `x^p f(x^p)` non-negative monotone ⇒ `f` Kwong; the
/// premise is taken from the sampled test of the transform.
/// (ii) and (iii) `p <= 1/2` and `f` claimed Kwong ⇒ the transforms are
/// monotone-consistent.
pub fn check_theorem31(f: &ScalarFunction, p: f64, cfg: &ClassifyConfig) -> Result<Theorem31Check> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("exponent p must lie in [0, 1], got {p}")));
    }
    let up = f.power_times_transform(p);
    let down = f.power_over_transform(p);
    let mut parts = Vec::with_capacity(3);

    const PART_I: &str = "x^p f(x^p) non-negative operator monotone and p >= 1/2 => f Kwong";
    if p >= 0.5 {
        let transform = classify_operator_monotone(&up, Monotonicity::Increasing, cfg)?;
        let premise = !transform.is_refuted() && nonneg_on_grid(&up);
        parts.push(Implication::tested("i", PART_I, premise, classify_kwong(f, cfg)?));
    } else {
        parts.push(Implication::not_applicable("i", PART_I));
    }

    const PART_II: &str = "f Kwong and p <= 1/2 => x^p f(x^p) non-negative operator monotone";
    const PART_III: &str = "f Kwong and p <= 1/2 => f(x^p)/x^p non-negative operator monotone decreasing";
    if p <= 0.5 {
        let premise = f.claims().kwong;
        let mut ii = classify_operator_monotone(&up, Monotonicity::Increasing, cfg)?;
        if !nonneg_on_grid(&up) {
            ii.verdict = super::Verdict::Refuted;
        }
        parts.push(Implication::tested("ii", PART_II, premise, ii));
        let mut iii = classify_operator_monotone(&down, Monotonicity::Decreasing, cfg)?;
        if !nonneg_on_grid(&down) {
            iii.verdict = super::Verdict::Refuted;
        }
        parts.push(Implication::tested("iii", PART_III, premise, iii));
    } else {
        parts.push(Implication::not_applicable("ii", PART_II));
        parts.push(Implication::not_applicable("iii", PART_III));
    }

    Ok(Theorem31Check {
        function: f.id().to_string(),
        p,
        parts,
    })
}

const EXTRAPOLATION_STEP: f64 = 1e-4;

/// `g(0⁺)` by Richardson extrapolation of `g` at `1e-4, 5e-5, 2.5e-5`.
///
/// Returns `None` when the successive differences grow, i.e. `g` does not
/// settle towards a finite limit at the origin.
pub fn extrapolate_at_zero(g: &ScalarFunction) -> Option<f64> {
    let h = EXTRAPOLATION_STEP;
    let (g1, g2, g4) = (g.eval(h), g.eval(h / 2.0), g.eval(h / 4.0));
    if !(g1.is_finite() && g2.is_finite() && g4.is_finite()) {
        return None;
    }
    let d1 = g2 - g1;
    let d2 = g4 - g2;
    if d2.abs() > d1.abs() + 1e-12 * (1.0 + g1.abs()) {
        return None;
    }
    // eliminates the O(h) and O(h²) error terms
    Some((8.0 * g4 - 6.0 * g2 + g1) / 3.0)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Theorem32Check {
    pub function: String,
    pub p: f64,
    /// `g` claimed operator convex, non-negative on the probe grid, and with
    /// a finite limit at 0.
    pub premise: bool,
    pub g_at_zero: Option<f64>,
    pub conclusion: ClassificationVerdict,
    /// `(g(x) - g(0)) / x` monotone-consistent; absent when `g(0)` is not finite.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub difference_quotient_monotone: Option<ClassificationVerdict>,
    pub power_kwong: ClassificationVerdict,
    pub failure: bool,
}

/// `g` non-negative operator convex and `-1 <= p <= 1` ⇒ `g(x^p)/x^p` Kwong.
pub fn check_theorem32(g: &ScalarFunction, p: f64, cfg: &ClassifyConfig) -> Result<Theorem32Check> {
    if !(-1.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("exponent p must lie in [-1, 1], got {p}")));
    }
    let g0 = extrapolate_at_zero(g);
    let premise = g.claims().operator_convex && nonneg_on_grid(g) && g0.is_some();
    let conclusion = classify_kwong(&g.power_over_transform(p), cfg)?;

    let difference_quotient_monotone = match g0 {
        Some(c) => {
            let eval = g.eval_fn();
            let q = ScalarFunction::new(format!("(({})(x) - g0)/x", g.id()), move |x| (eval(x) - c) / x);
            Some(classify_operator_monotone(&q, Monotonicity::Increasing, cfg)?)
        }
        None => None,
    };
    let power_kwong = classify_kwong(&catalog::power(p, &format!("power:{p}")), cfg)?;

    Ok(Theorem32Check {
        function: g.id().to_string(),
        p,
        premise,
        g_at_zero: g0,
        failure: premise && conclusion.is_refuted(),
        conclusion,
        difference_quotient_monotone,
        power_kwong,
    })
}
