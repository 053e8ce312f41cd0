//! Unitarily invariant norms of Hermitian matrices.
//!
//! Singular values of a Hermitian matrix are the absolute values of its
//! eigenvalues, so no general SVD is needed.

use crate::error::{Error, Result};
use crate::linalg::eigen::eigenvalues;
use crate::linalg::matrix::HermitianMatrix;

/// Singular values in descending order.
pub fn singular_values(a: &HermitianMatrix) -> Result<Vec<f64>> {
    let mut s: Vec<f64> = eigenvalues(a)?.into_iter().map(f64::abs).collect();
    s.sort_by(|x, y| y.total_cmp(x));
    Ok(s)
}

/// Sum of the `k` largest singular values.
pub fn ky_fan_norm(a: &HermitianMatrix, k: usize) -> Result<f64> {
    if k == 0 || k > a.dim() {
        return Err(Error::invalid(format!("Ky Fan index k = {k} outside 1..={}", a.dim())));
    }
    Ok(singular_values(a)?.iter().take(k).sum())
}

/// All Ky Fan norms `k = 1..=dim` from a single decomposition.
pub fn ky_fan_norms(a: &HermitianMatrix) -> Result<Vec<f64>> {
    let s = singular_values(a)?;
    Ok(s.iter()
        .scan(0.0, |acc, x| {
            *acc += x;
            Some(*acc)
        })
        .collect())
}

/// Schatten `p`-norm, `p >= 1`; `p = f64::INFINITY` gives the operator norm.
pub fn schatten_norm(a: &HermitianMatrix, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::invalid(format!("Schatten exponent must be >= 1, got {p}")));
    }
    let s = singular_values(a)?;
    Ok(schatten_from_singular(&s, p))
}

pub(crate) fn schatten_from_singular(s: &[f64], p: f64) -> f64 {
    if p.is_infinite() {
        return s.first().copied().unwrap_or(0.0);
    }
    let max = s.first().copied().unwrap_or(0.0);
    if max == 0.0 {
        return 0.0;
    }
    // scaled to avoid overflow for large p
    max * s.iter().map(|x| (x / max).powf(p)).sum::<f64>().powf(1.0 / p)
}

pub fn operator_norm(a: &HermitianMatrix) -> Result<f64> {
    ky_fan_norm(a, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn ky_fan_examples() {
        let a = HermitianMatrix::diag(&[3.0, -1.0]);
        assert_eq!(ky_fan_norm(&a, 1).unwrap(), 3.0);
        assert_eq!(ky_fan_norm(&a, 2).unwrap(), 4.0);
        assert!(ky_fan_norm(&a, 0).is_err());
        assert!(ky_fan_norm(&a, 3).is_err());
        assert_eq!(ky_fan_norms(&a).unwrap(), vec![3.0, 4.0]);
    }

    #[test]
    fn schatten_examples() {
        let i = HermitianMatrix::identity(5);
        assert_abs_diff_eq!(schatten_norm(&i, 2.0).unwrap(), 5f64.sqrt(), epsilon = 1e-15);
        let a = HermitianMatrix::diag(&[3.0, -4.0]);
        assert_abs_diff_eq!(schatten_norm(&a, 2.0).unwrap(), a.frobenius_norm(), epsilon = 1e-14);
        assert_eq!(schatten_norm(&a, 1.0).unwrap(), 7.0);
        assert_eq!(schatten_norm(&a, f64::INFINITY).unwrap(), 4.0);
        assert_eq!(operator_norm(&a).unwrap(), 4.0);
        assert!(schatten_norm(&a, 0.5).is_err());
        assert!(schatten_norm(&a, f64::NAN).is_err());
    }
}
