//! Eigendecomposition and functional calculus on a random HPD matrix.
//!
//! ```text
//! cargo run --example functional_calculus -- [dim] [seed]
//! ```

use opmeans::catalog;
use opmeans::linalg::{apply_scalar_function, eig_hermitian, matrix_power, matrix_sqrt, random_hpd};

fn main() -> opmeans::Result<()> {
    let mut args = std::env::args().skip(1);
    let dim = args.next().and_then(|s| s.parse().ok()).unwrap_or(4);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);

    let a = random_hpd(dim, 0.5, 8.0, seed)?;
    println!("A =\n{a:?}");
    let spec = eig_hermitian(&a)?;
    println!("eigenvalues: {:?}", spec.eigenvalues);
    println!(
        "reconstruction error {:.2e}, orthonormality error {:.2e}",
        spec.reconstruct().distance(&a)?,
        spec.orthonormality_error()
    );

    let r = matrix_sqrt(&a)?;
    let back = opmeans::HermitianMatrix::hermitian_part(&r.as_matrix().matmul(r.as_matrix())?);
    println!("|sqrt(A)^2 - A|_F = {:.2e}", back.distance(&a)?);

    let p = matrix_power(&a, 0.3)?.as_matrix().matmul(matrix_power(&a, 0.7)?.as_matrix())?;
    println!("|A^0.3 A^0.7 - A|_F = {:.2e}", p.distance(a.as_matrix())?);

    for id in ["log1p", "sinh_inv", "inverse"] {
        let f = catalog::lookup(id)?;
        let fa = apply_scalar_function(&a, &f)?;
        println!("trace {id}(A) = {:.6}", fa.trace());
    }
    Ok(())
}
