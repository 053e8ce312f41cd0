//! Cyclic Jacobi diagonalization of complex Hermitian matrices and the
//! functional calculus built on it.

use crate::error::{Error, Result};
use crate::linalg::matrix::{HermitianMatrix, Matrix, C64};

const MAX_SWEEPS: usize = 64;

/// `A = U diag(eigenvalues) U*` with eigenvalues ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub unitary: Matrix,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    /// `U diag(values) U*`. `values` is indexed like `eigenvalues`.
    pub fn synthesize(&self, values: &[f64]) -> HermitianMatrix {
        let n = self.dim();
        debug_assert_eq!(values.len(), n);
        let u = &self.unitary;
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let mut acc = C64::new(0.0, 0.0);
                for (k, &d) in values.iter().enumerate() {
                    if d != 0.0 {
                        acc += u.get(i, k) * u.get(j, k).conj() * d;
                    }
                }
                out.set(i, j, acc);
            }
        }
        HermitianMatrix::hermitian_part(&lower_to_full(out))
    }

    pub fn reconstruct(&self) -> HermitianMatrix {
        self.synthesize(&self.eigenvalues)
    }

    /// Applies `f` to every eigenvalue: `U diag(f(λ)) U*`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> HermitianMatrix {
        let values: Vec<f64> = self.eigenvalues.iter().map(|&x| f(x)).collect();
        self.synthesize(&values)
    }

    /// Frobenius deviation of `U*U` from the identity.
    pub fn orthonormality_error(&self) -> f64 {
        let n = self.dim();
        let g = self.unitary.adjoint().mul_unchecked(&self.unitary);
        g.distance(&Matrix::identity(n)).unwrap_or(f64::INFINITY)
    }
}

fn lower_to_full(mut m: Matrix) -> Matrix {
    let n = m.rows();
    for i in 0..n {
        for j in 0..i {
            let v = m.get(i, j).conj();
            m.set(j, i, v);
        }
    }
    m
}

/// Spectral decomposition of a Hermitian matrix.
pub fn eig_hermitian(a: &HermitianMatrix) -> Result<SpectralDecomposition> {
    let (eigenvalues, unitary) = jacobi(a, true)?;
    Ok(SpectralDecomposition {
        eigenvalues,
        unitary: unitary.expect("vectors requested"),
    })
}

/// Ascending eigenvalues only; same rotations as [`eig_hermitian`].
pub fn eigenvalues(a: &HermitianMatrix) -> Result<Vec<f64>> {
    Ok(jacobi(a, false)?.0)
}

pub fn min_eigenvalue(a: &HermitianMatrix) -> Result<f64> {
    Ok(eigenvalues(a)?[0])
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a.get(i, j).norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn jacobi(h: &HermitianMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<Matrix>)> {
    let n = h.dim();
    let mut a = h.as_matrix().clone();
    let mut v = want_vectors.then(|| Matrix::identity(n));
    let scale = a.frobenius_norm();
    if !scale.is_finite() {
        return Err(Error::invalid("matrix has non-finite entries"));
    }
    // Below this an off-diagonal entry cannot move any eigenvalue by more
    // than a few ulps of the largest one.
    let negligible = scale * 1e-18;
    let target = scale * 1e-17;

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= target || off == 0.0 {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NonConvergence { sweeps, residual: off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                let g = apq.norm();
                if g <= negligible {
                    a.set(p, q, C64::new(0.0, 0.0));
                    a.set(q, p, C64::new(0.0, 0.0));
                    continue;
                }
                rotate(&mut a, v.as_mut(), p, q, apq, g);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]).then(i.cmp(&j)));
    let values = order.iter().map(|&i| diag[i]).collect();
    let vectors = v.map(|v| Matrix::from_fn(n, n, |i, k| v.get(i, order[k])));
    Ok((values, vectors))
}

/// One complex Jacobi rotation annihilating `a[p][q]`.
///
/// With `e = a_pq / |a_pq|` the rotation is `J = [[c, s], [-s conj(e), c conj(e)]]`
/// on the `(p, q)` plane, which first makes the pivot real and then applies
/// the classical real rotation.
fn rotate(a: &mut Matrix, v: Option<&mut Matrix>, p: usize, q: usize, apq: C64, g: f64) {
    let n = a.rows();
    let e = apq / g;
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let theta = (aqq - app) / (2.0 * g);
    let t = if theta >= 0.0 {
        1.0 / (theta + (theta * theta + 1.0).sqrt())
    } else {
        -1.0 / (-theta + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let jpp = C64::new(c, 0.0);
    let jpq = C64::new(s, 0.0);
    let jqp = -e.conj() * s;
    let jqq = e.conj() * c;

    // A <- A J
    for k in 0..n {
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.set(k, p, akp * jpp + akq * jqp);
        a.set(k, q, akp * jpq + akq * jqq);
    }
    // A <- J* A
    for k in 0..n {
        let apk = a.get(p, k);
        let aqk = a.get(q, k);
        a.set(p, k, jpp.conj() * apk + jqp.conj() * aqk);
        a.set(q, k, jpq.conj() * apk + jqq.conj() * aqk);
    }
    a.set(p, p, C64::new(app - t * g, 0.0));
    a.set(q, q, C64::new(aqq + t * g, 0.0));
    a.set(p, q, C64::new(0.0, 0.0));
    a.set(q, p, C64::new(0.0, 0.0));

    if let Some(v) = v {
        for k in 0..n {
            let vkp = v.get(k, p);
            let vkq = v.get(k, q);
            v.set(k, p, vkp * jpp + vkq * jqp);
            v.set(k, q, vkp * jpq + vkq * jqq);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn diagonal_input_is_sorted() {
        let d = eig_hermitian(&HermitianMatrix::diag(&[3.0, 1.0])).unwrap();
        assert_eq!(d.eigenvalues, vec![1.0, 3.0]);
        // the unitary is the swap permutation
        assert_eq!(d.unitary.get(0, 1).re.abs(), 1.0);
        assert_eq!(d.unitary.get(1, 0).re.abs(), 1.0);
    }

    #[test]
    fn two_by_two_characteristic_polynomial() {
        let a = HermitianMatrix::from_real_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let d = eig_hermitian(&a).unwrap();
        assert_abs_diff_eq!(d.eigenvalues[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(d.eigenvalues[1], 3.0, epsilon = 1e-14);
        assert!(d.reconstruct().distance(&a).unwrap() < 1e-14);
    }

    #[test]
    fn identity_spectrum() {
        let d = eig_hermitian(&HermitianMatrix::identity(4)).unwrap();
        assert_eq!(d.eigenvalues, vec![1.0; 4]);
    }

    #[test]
    fn complex_pauli_y() {
        // [[0, -i], [i, 0]] has eigenvalues -1, 1
        let m = Matrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 1) => C64::new(0.0, -1.0),
            (1, 0) => C64::new(0.0, 1.0),
            _ => C64::new(0.0, 0.0),
        });
        let a = HermitianMatrix::from_matrix_exact(m).unwrap();
        let d = eig_hermitian(&a).unwrap();
        assert_abs_diff_eq!(d.eigenvalues[0], -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d.eigenvalues[1], 1.0, epsilon = 1e-15);
        assert!(d.reconstruct().distance(&a).unwrap() < 1e-14);
        assert!(d.orthonormality_error() < 1e-14);
    }

    #[test]
    fn zero_matrix() {
        let d = eig_hermitian(&HermitianMatrix::zeros(3)).unwrap();
        assert_eq!(d.eigenvalues, vec![0.0; 3]);
    }

    #[test]
    fn eigenvalue_only_path_matches() {
        let a = HermitianMatrix::from_real_rows(&[
            vec![4.0, 1.0, -2.0],
            vec![1.0, 0.5, 0.25],
            vec![-2.0, 0.25, 3.0],
        ])
        .unwrap();
        assert_eq!(eigenvalues(&a).unwrap(), eig_hermitian(&a).unwrap().eigenvalues);
    }
}
