//! Positive semidefiniteness and the Loewner order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::eigen::min_eigenvalue;
use crate::linalg::matrix::HermitianMatrix;

/// Numerical tolerances shared by the linear-algebra core.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Relative slack allowed below zero in PSD tests.
    pub eps_psd: f64,
    pub eps_recon: f64,
    pub eps_orth: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            eps_psd: 1e-9,
            eps_recon: 1e-10,
            eps_orth: 1e-10,
        }
    }
}

impl ToleranceConfig {
    pub fn new(eps_psd: f64, eps_recon: f64, eps_orth: f64) -> Result<Self> {
        for (name, v) in [("eps_psd", eps_psd), ("eps_recon", eps_recon), ("eps_orth", eps_orth)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::invalid(format!("{name} must be strictly positive, got {v}")));
            }
        }
        Ok(Self {
            eps_psd,
            eps_recon,
            eps_orth,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PsdCheck {
    pub is_psd: bool,
    pub min_eigenvalue: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LoewnerCheck {
    pub holds: bool,
    /// Minimum eigenvalue of `B - A`.
    pub slack: f64,
}

/// `min eig(A) >= -eps_psd * max(1, ||A||_F)`.
pub fn is_positive_semidefinite(a: &HermitianMatrix, tol: &ToleranceConfig) -> Result<PsdCheck> {
    let min = min_eigenvalue(a)?;
    let bound = -tol.eps_psd * a.frobenius_norm().max(1.0);
    Ok(PsdCheck {
        is_psd: min >= bound,
        min_eigenvalue: min,
    })
}

/// `A <= B` in the Loewner order, i.e. `B - A` is PSD.
pub fn loewner_leq(a: &HermitianMatrix, b: &HermitianMatrix, tol: &ToleranceConfig) -> Result<LoewnerCheck> {
    let diff = b.try_sub(a)?;
    let psd = is_positive_semidefinite(&diff, tol)?;
    Ok(LoewnerCheck {
        holds: psd.is_psd,
        slack: psd.min_eigenvalue,
    })
}
