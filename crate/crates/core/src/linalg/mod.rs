//! Finite-dimensional complex Hermitian linear algebra.

pub mod calculus;
pub mod eigen;
mod json;
pub mod matrix;
pub mod norms;
pub mod order;
pub mod random;

pub use calculus::{
    apply_scalar_function, map_spectrum, matrix_inv_sqrt, matrix_inverse, matrix_power, matrix_sqrt,
    positive_spectrum,
};
pub use eigen::{eig_hermitian, eigenvalues, min_eigenvalue, SpectralDecomposition};
pub use matrix::{HermitianMatrix, Matrix, C64};
pub use norms::{ky_fan_norm, ky_fan_norms, operator_norm, schatten_norm, singular_values};
pub use order::{is_positive_semidefinite, loewner_leq, LoewnerCheck, PsdCheck, ToleranceConfig};
pub use random::{random_hpd, random_unitary};

/// `X* A X`.
pub fn congruence(a: &HermitianMatrix, x: &Matrix) -> crate::Result<HermitianMatrix> {
    a.congruence(x)
}
