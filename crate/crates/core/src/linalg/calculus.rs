//! Matrix functional calculus: `f(A) = U diag(f(λ)) U*`.

use crate::error::{Error, Result};
use crate::function::{Domain, ScalarFunction};
use crate::linalg::eigen::{eig_hermitian, SpectralDecomposition};
use crate::linalg::matrix::HermitianMatrix;

/// Applies `f` to the spectrum of `a`, checking the function's domain first.
pub fn apply_scalar_function(a: &HermitianMatrix, f: &ScalarFunction) -> Result<HermitianMatrix> {
    let spec = eig_hermitian(a)?;
    apply_to_spectrum(&spec, f)
}

pub fn apply_to_spectrum(spec: &SpectralDecomposition, f: &ScalarFunction) -> Result<HermitianMatrix> {
    let mut values = Vec::with_capacity(spec.dim());
    for &x in &spec.eigenvalues {
        if f.domain() == Domain::Positive && x <= 0.0 {
            return Err(Error::Domain {
                function: f.id().to_string(),
                eigenvalue: x,
            });
        }
        let y = f.eval(x);
        if !y.is_finite() {
            return Err(Error::Evaluation {
                function: f.id().to_string(),
                x,
            });
        }
        values.push(y);
    }
    Ok(spec.synthesize(&values))
}

/// Applies an arbitrary closure to the spectrum with no domain check.
pub fn map_spectrum(a: &HermitianMatrix, f: impl Fn(f64) -> f64) -> Result<HermitianMatrix> {
    Ok(eig_hermitian(a)?.map(f))
}

/// Decomposition of a strictly positive matrix, or a positivity error
/// carrying the minimum eigenvalue.
pub fn positive_spectrum(a: &HermitianMatrix) -> Result<SpectralDecomposition> {
    let spec = eig_hermitian(a)?;
    let min = spec.min_eigenvalue();
    if !(min > 0.0) {
        return Err(Error::NotPositive { min_eigenvalue: min });
    }
    Ok(spec)
}

pub fn matrix_sqrt(a: &HermitianMatrix) -> Result<HermitianMatrix> {
    Ok(positive_spectrum(a)?.map(f64::sqrt))
}

pub fn matrix_inv_sqrt(a: &HermitianMatrix) -> Result<HermitianMatrix> {
    Ok(positive_spectrum(a)?.map(|x| 1.0 / x.sqrt()))
}

pub fn matrix_inverse(a: &HermitianMatrix) -> Result<HermitianMatrix> {
    Ok(positive_spectrum(a)?.map(|x| 1.0 / x))
}

/// `A^p` for strictly positive `A` and any real `p`.
pub fn matrix_power(a: &HermitianMatrix, p: f64) -> Result<HermitianMatrix> {
    Ok(positive_spectrum(a)?.map(|x| x.powf(p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::catalog;
    use approx::assert_abs_diff_eq;

    #[test]
    fn sqrt_of_diagonal() {
        let f = catalog::lookup("sqrt").unwrap();
        let r = apply_scalar_function(&HermitianMatrix::diag(&[4.0, 9.0]), &f).unwrap();
        assert!(r.distance(&HermitianMatrix::diag(&[2.0, 3.0])).unwrap() < 1e-15);
        let r = matrix_sqrt(&HermitianMatrix::diag(&[4.0, 16.0])).unwrap();
        assert!(r.distance(&HermitianMatrix::diag(&[2.0, 4.0])).unwrap() < 1e-15);
        assert_eq!(matrix_sqrt(&HermitianMatrix::identity(3)).unwrap(), HermitianMatrix::identity(3));
    }

    #[test]
    fn inverse_by_adjugate() {
        let a = HermitianMatrix::from_real_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let inv = apply_scalar_function(&a, &catalog::lookup("inverse").unwrap()).unwrap();
        let expected =
            HermitianMatrix::from_real_rows(&[vec![2.0 / 3.0, -1.0 / 3.0], vec![-1.0 / 3.0, 2.0 / 3.0]]).unwrap();
        assert!(inv.distance(&expected).unwrap() < 1e-14);
    }

    #[test]
    fn identity_function_returns_input() {
        let a = HermitianMatrix::from_real_rows(&[vec![-1.0, 0.5], vec![0.5, 3.0]]).unwrap();
        let r = apply_scalar_function(&a, &catalog::lookup("identity").unwrap()).unwrap();
        assert!(r.distance(&a).unwrap() < 1e-10 * a.frobenius_norm());
    }

    #[test]
    fn domain_error_names_eigenvalue() {
        let err = apply_scalar_function(&HermitianMatrix::diag(&[-2.0, 1.0]), &catalog::lookup("sqrt").unwrap())
            .unwrap_err();
        match err {
            Error::Domain { eigenvalue, function } => {
                assert_eq!(eigenvalue, -2.0);
                assert_eq!(function, "sqrt");
            }
            other => panic!("unexpected {other:?}"),
        }
        match matrix_sqrt(&HermitianMatrix::diag(&[0.0, 1.0])).unwrap_err() {
            Error::NotPositive { min_eigenvalue } => assert_abs_diff_eq!(min_eigenvalue, 0.0),
            other => panic!("unexpected {other:?}"),
        }
    }
}
