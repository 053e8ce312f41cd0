//! Scalar functions on `(0, ∞)` with claimed operator-theoretic classes,
//! and the named catalog used by the CLI and the verification harness.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Where the function may be evaluated on a spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    /// Strictly positive arguments only.
    Positive,
    Real,
}

/// Classes a catalog entry is known to belong to on `(0, ∞)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Claims {
    pub nonneg_operator_monotone: bool,
    pub operator_monotone_decreasing: bool,
    pub operator_convex: bool,
    pub kwong: bool,
    /// `f(1) = 1`.
    pub representing: bool,
}

#[derive(Clone)]
pub struct ScalarFunction {
    id: String,
    eval: RealFn,
    derivative: Option<RealFn>,
    claims: Claims,
    domain: Domain,
    note: String,
}

impl fmt::Debug for ScalarFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarFunction")
            .field("id", &self.id)
            .field("claims", &self.claims)
            .field("domain", &self.domain)
            .field("closed_form_derivative", &self.derivative.is_some())
            .finish()
    }
}

impl ScalarFunction {
    pub fn new(id: impl Into<String>, eval: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            id: id.into(),
            eval: Arc::new(eval),
            derivative: None,
            claims: Claims::default(),
            domain: Domain::Positive,
            note: String::new(),
        }
    }

    pub fn with_derivative(mut self, d: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.derivative = Some(Arc::new(d));
        self
    }

    pub fn with_claims(mut self, claims: Claims) -> Self {
        self.claims = claims;
        self
    }

    pub fn with_domain(mut self, domain: Domain) -> Self {
        self.domain = domain;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn claims(&self) -> Claims {
        self.claims
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn note(&self) -> &str {
        &self.note
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    pub fn has_closed_form_derivative(&self) -> bool {
        self.derivative.is_some()
    }

    /// Closed-form derivative when available, otherwise a 5-point central
    /// difference with step `x * 1e-5`.
    pub fn derivative(&self, x: f64) -> f64 {
        match &self.derivative {
            Some(d) => d(x),
            None => five_point_derivative(&*self.eval, x),
        }
    }

    /// Derivative as a standalone closure (closed form or finite difference).
    pub fn derivative_fn(&self) -> RealFn {
        match &self.derivative {
            Some(d) => d.clone(),
            None => {
                let f = self.eval.clone();
                Arc::new(move |x| five_point_derivative(&*f, x))
            }
        }
    }

    pub(crate) fn eval_fn(&self) -> RealFn {
        self.eval.clone()
    }

    /// `-f`, used to test decreasing monotonicity.
    pub fn negated(&self) -> ScalarFunction {
        let f = self.eval.clone();
        let d = self.derivative_fn();
        ScalarFunction::new(format!("-({})", self.id), move |x| -f(x))
            .with_derivative(move |x| -d(x))
            .with_domain(self.domain)
    }

    /// `1/f`.
    pub fn reciprocal(&self) -> ScalarFunction {
        let f = self.eval.clone();
        let f2 = self.eval.clone();
        let d = self.derivative_fn();
        ScalarFunction::new(format!("1/({})", self.id), move |x| 1.0 / f(x))
            .with_derivative(move |x| {
                let y = f2(x);
                -d(x) / (y * y)
            })
            .with_domain(self.domain)
    }

    /// `t ↦ √t · f(√t)`.
    pub fn sqrt_transform(&self) -> ScalarFunction {
        self.power_times_transform(0.5)
    }

    /// `x ↦ x^p f(x^p)`.
    pub fn power_times_transform(&self, p: f64) -> ScalarFunction {
        let f = self.eval.clone();
        let f2 = self.eval.clone();
        let d = self.derivative_fn();
        ScalarFunction::new(format!("x^{p}*({})(x^{p})", self.id), move |x| {
            let y = x.powf(p);
            y * f(y)
        })
        .with_derivative(move |x| {
            if p == 0.0 {
                return 0.0;
            }
            // d/dx [y f(y)] = (f(y) + y f'(y)) p x^(p-1)
            let y = x.powf(p);
            (f2(y) + y * d(y)) * p * x.powf(p - 1.0)
        })
    }

    /// `x ↦ f(x^p) / x^p`.
    pub fn power_over_transform(&self, p: f64) -> ScalarFunction {
        let f = self.eval.clone();
        let f2 = self.eval.clone();
        let d = self.derivative_fn();
        ScalarFunction::new(format!("({})(x^{p})/x^{p}", self.id), move |x| {
            let y = x.powf(p);
            f(y) / y
        })
        .with_derivative(move |x| {
            if p == 0.0 {
                return 0.0;
            }
            // d/dx [f(y)/y] = (f'(y) y - f(y)) / y^2 * p x^(p-1)
            let y = x.powf(p);
            (d(y) * y - f2(y)) / (y * y) * p * x.powf(p - 1.0)
        })
    }
}

fn five_point_derivative(f: &(dyn Fn(f64) -> f64 + Send + Sync), x: f64) -> f64 {
    let h = if x != 0.0 { x.abs() * 1e-5 } else { 1e-5 };
    (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h)
}

/// Named functions with closed-form derivatives and claims.
pub mod catalog {
    use super::*;

    /// Plain ids; parameterized families are listed with an example value.
    pub const IDS: &[&str] = &[
        "identity",
        "const1",
        "power:0.5",
        "sqrt",
        "inverse",
        "square",
        "exp",
        "log1p",
        "sinh_inv",
        "representing:arith:0.5",
        "representing:harm:0.5",
    ];

    pub fn entries() -> Vec<ScalarFunction> {
        IDS.iter().map(|id| lookup(id).expect("catalog ids parse")).collect()
    }

    pub fn lookup(id: &str) -> Result<ScalarFunction> {
        let id = id.trim();
        let f = match id {
            "identity" => ScalarFunction::new(id, |x| x)
                .with_derivative(|_| 1.0)
                .with_domain(Domain::Real)
                .with_claims(Claims {
                    nonneg_operator_monotone: true,
                    operator_convex: true,
                    kwong: true,
                    representing: true,
                    ..Claims::default()
                })
                .with_note("operator monotone and affine; Kwong matrix is all ones"),
            "const1" => ScalarFunction::new(id, |_| 1.0)
                .with_derivative(|_| 0.0)
                .with_domain(Domain::Real)
                .with_claims(Claims {
                    nonneg_operator_monotone: true,
                    operator_monotone_decreasing: true,
                    operator_convex: true,
                    kwong: true,
                    representing: true,
                })
                .with_note("constant 1; Kwong matrix is a Cauchy matrix"),
            "sqrt" => power(0.5, id),
            "inverse" => ScalarFunction::new(id, |x| 1.0 / x)
                .with_derivative(|x| -1.0 / (x * x))
                .with_claims(Claims {
                    operator_monotone_decreasing: true,
                    operator_convex: true,
                    kwong: true,
                    representing: true,
                    ..Claims::default()
                })
                .with_note("non-negative operator monotone decreasing, hence Kwong"),
            "square" => ScalarFunction::new(id, |x| x * x)
                .with_derivative(|x| 2.0 * x)
                .with_domain(Domain::Real)
                .with_claims(Claims {
                    operator_convex: true,
                    representing: true,
                    ..Claims::default()
                })
                .with_note("operator convex; not Kwong (2-point Kwong matrix at {1, 2} is indefinite)"),
            "exp" => ScalarFunction::new(id, f64::exp)
                .with_derivative(f64::exp)
                .with_domain(Domain::Real)
                .with_note("neither operator monotone, operator convex nor Kwong"),
            "log1p" => ScalarFunction::new(id, f64::ln_1p)
                .with_derivative(|x| 1.0 / (1.0 + x))
                .with_claims(Claims {
                    nonneg_operator_monotone: true,
                    kwong: true,
                    ..Claims::default()
                })
                .with_note("ln(1+x): non-negative operator monotone on (0,∞)"),
            "sinh_inv" => ScalarFunction::new(id, f64::asinh)
                .with_derivative(|x| 1.0 / (x * x + 1.0).sqrt())
                .with_domain(Domain::Real)
                .with_claims(Claims {
                    kwong: true,
                    ..Claims::default()
                })
                .with_note("ln(x+√(x²+1)): Kwong on (0,∞)"),
            _ => return parse_family(id),
        };
        Ok(f)
    }

    fn parse_family(id: &str) -> Result<ScalarFunction> {
        let unknown = || Error::UnknownFunction(id.to_string());
        let number = |s: &str| -> Result<f64> {
            let v: f64 = s.parse().map_err(|_| unknown())?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(unknown())
            }
        };
        if let Some(p) = id.strip_prefix("power:") {
            return Ok(power(number(p)?, id));
        }
        if let Some(a) = id.strip_prefix("representing:arith:") {
            return representing_arith(number(a)?, id);
        }
        if let Some(a) = id.strip_prefix("representing:harm:") {
            return representing_harm(number(a)?, id);
        }
        Err(unknown())
    }

    /// `x^p` with the classical class memberships for real `p`.
    pub fn power(p: f64, id: &str) -> ScalarFunction {
        ScalarFunction::new(id, move |x| x.powf(p))
            .with_derivative(move |x| if p == 0.0 { 0.0 } else { p * x.powf(p - 1.0) })
            .with_claims(Claims {
                nonneg_operator_monotone: (0.0..=1.0).contains(&p),
                operator_monotone_decreasing: (-1.0..=0.0).contains(&p),
                operator_convex: (1.0..=2.0).contains(&p) || (-1.0..=0.0).contains(&p),
                kwong: (-1.0..=1.0).contains(&p),
                representing: true,
            })
            .with_note("x^p: operator monotone for p in [0,1], Kwong for p in [-1,1]")
    }

    /// Representing function of the weighted arithmetic mean, `(1-α) + αx`.
    pub fn representing_arith(alpha: f64, id: &str) -> Result<ScalarFunction> {
        check_weight(alpha)?;
        Ok(ScalarFunction::new(id, move |x| (1.0 - alpha) + alpha * x)
            .with_derivative(move |_| alpha)
            .with_claims(Claims {
                nonneg_operator_monotone: true,
                operator_convex: true,
                kwong: true,
                representing: true,
                ..Claims::default()
            })
            .with_note("representing function of the weighted arithmetic mean"))
    }

    /// Representing function of the weighted harmonic mean,
    /// `((1-α) + α/x)^{-1} = x / ((1-α)x + α)`.
    pub fn representing_harm(alpha: f64, id: &str) -> Result<ScalarFunction> {
        check_weight(alpha)?;
        Ok(ScalarFunction::new(id, move |x| x / ((1.0 - alpha) * x + alpha))
            .with_derivative(move |x| {
                let d = (1.0 - alpha) * x + alpha;
                alpha / (d * d)
            })
            .with_claims(Claims {
                nonneg_operator_monotone: true,
                operator_convex: alpha == 0.0 || alpha == 1.0,
                kwong: true,
                representing: true,
                ..Claims::default()
            })
            .with_note("representing function of the weighted harmonic mean"))
    }

    /// Representing function of the weighted geometric mean, `x^α`.
    pub fn representing_geo(alpha: f64) -> Result<ScalarFunction> {
        check_weight(alpha)?;
        Ok(power(alpha, &format!("power:{alpha}")))
    }

    fn check_weight(alpha: f64) -> Result<()> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::invalid(format!("weight must lie in [0, 1], got {alpha}")));
        }
        Ok(())
    }
}
