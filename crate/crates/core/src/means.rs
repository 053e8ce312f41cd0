//! Weighted operator means of strictly positive matrices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::{Domain, ScalarFunction};
use crate::linalg::calculus::{apply_to_spectrum, positive_spectrum};
use crate::linalg::eigen::eig_hermitian;
use crate::linalg::HermitianMatrix;

/// Tolerance for the `f(1) = 1` check on representing functions.
pub const REPRESENTING_TOL: f64 = 1e-12;

/// A weight in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Weight(f64);

impl Weight {
    pub const HALF: Weight = Weight(0.5);

    pub fn new(alpha: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&alpha) {
            Ok(Self(alpha))
        } else {
            Err(Error::invalid(format!("weight must lie in [0, 1], got {alpha}")))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Weight {
    type Error = Error;

    fn try_from(v: f64) -> Result<Self> {
        Weight::new(v)
    }
}

impl From<Weight> for f64 {
    fn from(w: Weight) -> f64 {
        w.0
    }
}

/// Scalars with `sA <= B <= tA`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SandwichInterval {
    pub s: f64,
    pub t: f64,
}

impl SandwichInterval {
    pub fn new(s: f64, t: f64) -> Result<Self> {
        if !(s > 0.0 && s <= t && t.is_finite()) {
            return Err(Error::invalid(format!("sandwich interval requires 0 < s <= t, got s = {s}, t = {t}")));
        }
        Ok(Self { s, t })
    }

    /// `(m/M, M/m)` from spectral bounds `mI <= A, B <= MI`.
    pub fn from_spectrum_bounds(m: f64, big_m: f64) -> Result<Self> {
        if !(m > 0.0 && m <= big_m && big_m.is_finite()) {
            return Err(Error::invalid(format!("spectrum bounds require 0 < m <= M, got m = {m}, M = {big_m}")));
        }
        Self::new(m / big_m, big_m / m)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.s <= x && x <= self.t
    }

    /// Smallest interval containing both this one and `1`.
    pub fn widened_to_one(&self) -> Self {
        Self {
            s: self.s.min(1.0),
            t: self.t.max(1.0),
        }
    }
}

fn same_dim(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: format!("dim {}", a.dim()),
            found: format!("dim {}", b.dim()),
        });
    }
    Ok(())
}

/// `(1-α)A + αB`.
pub fn arithmetic_mean(a: &HermitianMatrix, b: &HermitianMatrix, alpha: Weight) -> Result<HermitianMatrix> {
    same_dim(a, b)?;
    let w = alpha.get();
    a.scale(1.0 - w).try_add(&b.scale(w))
}

/// `((1-α)A^{-1} + αB^{-1})^{-1}`.
pub fn harmonic_mean(a: &HermitianMatrix, b: &HermitianMatrix, alpha: Weight) -> Result<HermitianMatrix> {
    same_dim(a, b)?;
    let w = alpha.get();
    let ai = positive_spectrum(a)?.map(|x| 1.0 / x);
    let bi = positive_spectrum(b)?.map(|x| 1.0 / x);
    let mix = ai.scale(1.0 - w).try_add(&bi.scale(w))?;
    Ok(positive_spectrum(&mix)?.map(|x| 1.0 / x))
}

/// `A^{1/2} g(A^{-1/2} B A^{-1/2}) A^{1/2}` for a spectral map `g`.
fn sandwich_apply(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    g: impl FnOnce(&HermitianMatrix) -> Result<HermitianMatrix>,
) -> Result<HermitianMatrix> {
    same_dim(a, b)?;
    let spec = positive_spectrum(a)?;
    positive_spectrum(b)?;
    let half = spec.map(f64::sqrt);
    let inv_half = spec.map(|x| 1.0 / x.sqrt());
    let inner = b.congruence(inv_half.as_matrix())?;
    let mapped = g(&inner)?;
    mapped.congruence(half.as_matrix())
}

/// `A ♯_β B = A^{1/2}(A^{-1/2} B A^{-1/2})^β A^{1/2}`.
pub fn geometric_mean(a: &HermitianMatrix, b: &HermitianMatrix, beta: Weight) -> Result<HermitianMatrix> {
    let w = beta.get();
    sandwich_apply(a, b, |x| Ok(positive_spectrum(x)?.map(|v| v.powf(w))))
}

/// Kubo-Ando mean with representing function `f`; `f(1) = 1` and `f > 0` on
/// the probed spectrum are checked at runtime.
pub fn kubo_ando_mean(a: &HermitianMatrix, b: &HermitianMatrix, f: &ScalarFunction) -> Result<HermitianMatrix> {
    let at_one = f.eval(1.0);
    if !((at_one - 1.0).abs() <= REPRESENTING_TOL) {
        return Err(Error::RepresentingFunction {
            function: f.id().to_string(),
            reason: format!("f(1) = {at_one}, expected 1"),
        });
    }
    sandwich_apply(a, b, |x| {
        let spec = eig_hermitian(x)?;
        for &v in &spec.eigenvalues {
            let y = if f.domain() == Domain::Positive && v <= 0.0 { f64::NAN } else { f.eval(v) };
            if !(y > 0.0) {
                return Err(Error::RepresentingFunction {
                    function: f.id().to_string(),
                    reason: format!("f({v:e}) = {y} is not positive"),
                });
            }
        }
        apply_to_spectrum(&spec, f)
    })
}

/// Tightest `s, t` with `sA <= B <= tA`: the extreme eigenvalues of
/// `A^{-1/2} B A^{-1/2}`.
pub fn sandwich_interval(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<SandwichInterval> {
    same_dim(a, b)?;
    let inv_half = positive_spectrum(a)?.map(|x| 1.0 / x.sqrt());
    positive_spectrum(b)?;
    let inner = b.congruence(inv_half.as_matrix())?;
    let spec = positive_spectrum(&inner)?;
    SandwichInterval::new(spec.min_eigenvalue(), spec.max_eigenvalue())
}
