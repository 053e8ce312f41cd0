//! Seeded random unitaries and Hermitian positive definite matrices with a
//! prescribed spectral range.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::matrix::{HermitianMatrix, Matrix, C64};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Haar-distributed unitary from a seed.
pub fn random_unitary(dim: usize, seed: u64) -> Result<Matrix> {
    random_unitary_with(&mut rng_from_seed(seed), dim)
}

/// Orthonormalizes a complex Gaussian matrix by modified Gram-Schmidt
/// (applied twice), which yields the QR factor with positive `R` diagonal.
pub fn random_unitary_with<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Result<Matrix> {
    if dim == 0 {
        return Err(Error::invalid("dimension must be at least 1"));
    }
    let mut cols: Vec<Vec<C64>> = (0..dim)
        .map(|_| {
            (0..dim)
                .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect()
        })
        .collect();
    for j in 0..dim {
        for _ in 0..2 {
            for i in 0..j {
                let (done, rest) = cols.split_at_mut(j);
                let qi = &done[i];
                let proj: C64 = qi.iter().zip(rest[0].iter()).map(|(a, b)| a.conj() * b).sum();
                for (x, q) in rest[0].iter_mut().zip(qi) {
                    *x -= proj * q;
                }
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 1e-300) {
            return Err(Error::invalid("degenerate Gaussian sample in unitary generation"));
        }
        for x in cols[j].iter_mut() {
            *x /= norm;
        }
    }
    Ok(Matrix::from_fn(dim, dim, |i, j| cols[j][i]))
}

/// Random HPD matrix `U diag(λ) U*` with spectrum in `[m, big_m]`.
///
/// For `dim >= 2` one eigenvalue equals `m` and one equals `big_m`, so the
/// bounds `mI <= A <= big_m I` are attained.
pub fn random_hpd(dim: usize, m: f64, big_m: f64, seed: u64) -> Result<HermitianMatrix> {
    random_hpd_with(&mut rng_from_seed(seed), dim, m, big_m)
}

pub fn random_hpd_with<R: Rng + ?Sized>(rng: &mut R, dim: usize, m: f64, big_m: f64) -> Result<HermitianMatrix> {
    let spectrum = random_spectrum(rng, dim, m, big_m)?;
    with_spectrum(rng, &spectrum)
}

/// Eigenvalues uniform in `[m, big_m]` with both ends pinned when `dim >= 2`.
pub fn random_spectrum<R: Rng + ?Sized>(rng: &mut R, dim: usize, m: f64, big_m: f64) -> Result<Vec<f64>> {
    if !(m > 0.0 && m <= big_m && big_m.is_finite()) {
        return Err(Error::invalid(format!("spectrum bounds require 0 < m <= M, got m = {m}, M = {big_m}")));
    }
    if dim == 0 {
        return Err(Error::invalid("dimension must be at least 1"));
    }
    let draw = |rng: &mut R| if m == big_m { m } else { rng.random_range(m..=big_m) };
    Ok(match dim {
        1 => vec![draw(rng)],
        _ => {
            let mut v = vec![m, big_m];
            for _ in 2..dim {
                v.push(draw(rng));
            }
            v
        }
    })
}

/// `U diag(spectrum) U*` for a fresh random unitary `U`.
pub fn with_spectrum<R: Rng + ?Sized>(rng: &mut R, spectrum: &[f64]) -> Result<HermitianMatrix> {
    let n = spectrum.len();
    let u = random_unitary_with(rng, n)?;
    let d = Matrix::diag(spectrum);
    Ok(HermitianMatrix::hermitian_part(&u.mul_unchecked(&d).mul_unchecked(&u.adjoint())))
}
