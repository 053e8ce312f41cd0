//! Weighted operator means, sharp reverse-mean constants and a randomized
//! verification harness for operator mean inequalities.
//!
//! The crate is organized bottom-up:
//!
//! - [`linalg`]: dense complex Hermitian matrices, a Jacobi eigensolver,
//!   functional calculus, the Loewner order, unitarily invariant norms and
//!   seeded random ensembles.
//! - [`means`]: weighted arithmetic, geometric, harmonic and general
//!   Kubo-Ando means, plus tight sandwich scalars `sA <= B <= tA`.
//! - [`bounds`]: Kantorovich and Specht constants and the sandwich constants
//!   λ, μ, γ.
//! - [`function`] and [`kwong`]: a catalog of scalar functions and sampled
//!   Kwong / Loewner / convexity classification.
//! - [`verify`]: the theorem registry and trial harness producing JSON/CSV
//!   reports.
//! - [`cli`]: the `opmeans` command-line front end.
//!
//! See the crate's `examples/` directory for one runnable program per
//! capability.

pub mod bounds;
pub mod cli;
mod error;
pub mod function;
pub mod kwong;
pub mod linalg;
pub mod means;
mod seeding;
pub mod verify;

pub use error::{Error, Result};
pub use function::{catalog, Claims, ScalarFunction};
pub use linalg::{HermitianMatrix, Matrix, SpectralDecomposition, ToleranceConfig};
pub use means::{SandwichInterval, Weight};
pub use seeding::derive_rng;
