//! Scalar constants for reverse mean inequalities: Kantorovich and Specht
//! ratios, the sandwich constants λ, μ, γ and their spectrum-bound forms.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::means::{SandwichInterval, Weight};

/// Below this distance from 1 the Specht ratio is evaluated by its series.
const SPECHT_SERIES_RADIUS: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundParams {
    pub interval: SandwichInterval,
    pub alpha: Weight,
    pub beta: Weight,
}

impl BoundParams {
    pub fn new(s: f64, t: f64, alpha: f64, beta: f64) -> Result<Self> {
        Ok(Self {
            interval: SandwichInterval::new(s, t)?,
            alpha: Weight::new(alpha)?,
            beta: Weight::new(beta)?,
        })
    }
}

fn positive(x: f64, what: &str) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!("{what} requires a positive finite argument, got {x}")))
    }
}

/// `K(x) = (1+x)² / (4x)`.
pub fn kantorovich(x: f64) -> Result<f64> {
    positive(x, "Kantorovich constant")?;
    Ok((1.0 + x) * (1.0 + x) / (4.0 * x))
}

/// Specht's ratio `S(x) = x^{1/(x-1)} / (e ln x^{1/(x-1)})`, with `S(1) = 1`.
///
/// Writing `r = ln x / (x-1)` the ratio is `e^{r-1} / r`. Near `x = 1` the
/// even series `ln S = u²/8 - u⁴/576 + ...` in `u = ln x` is used.
pub fn specht(x: f64) -> Result<f64> {
    positive(x, "Specht ratio")?;
    if (x - 1.0).abs() < SPECHT_SERIES_RADIUS {
        let u = (x - 1.0).ln_1p();
        let u2 = u * u;
        return Ok((u2 / 8.0 - u2 * u2 / 576.0).exp());
    }
    let r = x.ln() / (x - 1.0);
    Ok((r - 1.0).exp() / r)
}

/// `f_{α,β}(x) = ((1-α) + αx) / x^β`.
pub fn f_alpha_beta(x: f64, alpha: f64, beta: f64) -> Result<f64> {
    positive(x, "f_alpha_beta")?;
    Ok(((1.0 - alpha) + alpha * x) / x.powf(beta))
}

/// Stationary point `β(1-α) / (α(1-β))` of `f_{α,β}`; `None` when `α = 0`
/// or `β = 1`, where `f_{α,β}` is monotone.
pub fn critical_point(alpha: f64, beta: f64) -> Option<f64> {
    if alpha <= 0.0 || beta >= 1.0 {
        return None;
    }
    Some(beta * (1.0 - alpha) / (alpha * (1.0 - beta)))
}

/// Closed-form derivative of `f_{α,β}`:
/// `α(1-β) / x^{β+1} · (x - β(1-α)/(α(1-β)))`, expanded so that it also
/// covers the degenerate weights.
pub fn f_alpha_beta_derivative(x: f64, alpha: f64, beta: f64) -> Result<f64> {
    positive(x, "f_alpha_beta derivative")?;
    Ok((alpha * (1.0 - beta) * x - beta * (1.0 - alpha)) / x.powf(beta + 1.0))
}

/// `λ = max{t^{-β} ∇_α t^{1-β}, s^{-β} ∇_α s^{1-β}}`, the maximum of
/// `f_{α,β}` over `[s, t]`. No `λ >= 1` guarantee: it can fall below 1 when
/// the interval excludes 1.
pub fn lambda_bound(params: &BoundParams) -> f64 {
    let (a, b) = (params.alpha.get(), params.beta.get());
    let SandwichInterval { s, t } = params.interval;
    let at = |x: f64| ((1.0 - a) + a * x) / x.powf(b);
    at(t).max(at(s))
}

/// `μ = max{t^β ∇_α t^{-(1-β)}, s^β ∇_α s^{-(1-β)}}`.
pub fn mu_bound(params: &BoundParams) -> f64 {
    let (a, b) = (params.alpha.get(), params.beta.get());
    let SandwichInterval { s, t } = params.interval;
    let at = |x: f64| (1.0 - a) * x.powf(b) + a * x.powf(b - 1.0);
    at(t).max(at(s))
}

/// `γ = max{S(s), S(t)}`.
pub fn gamma_bound(interval: &SandwichInterval) -> f64 {
    let s = specht(interval.s).expect("interval endpoints are positive");
    let t = specht(interval.t).expect("interval endpoints are positive");
    s.max(t)
}

fn spectrum_bounds(m: f64, big_m: f64) -> Result<()> {
    if !(m > 0.0 && m <= big_m && big_m.is_finite()) {
        return Err(Error::invalid(format!("spectrum bounds require 0 < m <= M, got m = {m}, M = {big_m}")));
    }
    Ok(())
}

/// λ for `mI <= A, B <= MI`:
/// `max{(1-α)(m/M)^β + α(M/m)^{1-β}, (1-α)(M/m)^β + α(m/M)^{1-β}}`.
pub fn corollary_lambda(m: f64, big_m: f64, alpha: f64, beta: f64) -> Result<f64> {
    spectrum_bounds(m, big_m)?;
    let (a, b) = (Weight::new(alpha)?.get(), Weight::new(beta)?.get());
    let lo = m / big_m;
    let hi = big_m / m;
    let first = (1.0 - a) * lo.powf(b) + a * hi.powf(1.0 - b);
    let second = (1.0 - a) * hi.powf(b) + a * lo.powf(1.0 - b);
    Ok(first.max(second))
}

/// λ for the geometric mean `A♯B` (β = 1/2), piecewise in α.
pub fn corollary26_lambda(m: f64, big_m: f64, alpha: f64) -> Result<f64> {
    spectrum_bounds(m, big_m)?;
    let a = Weight::new(alpha)?.get();
    let r = (big_m / m).sqrt();
    let ri = (m / big_m).sqrt();
    Ok(if a >= 0.5 {
        (1.0 - a) * ri + a * r
    } else {
        (1.0 - a) * r + a * ri
    })
}
