//! Kantorovich and Specht constants and the sandwich constants λ, μ, γ over
//! a small grid of intervals and weights.
//!
//! ```text
//! cargo run --example bounds_constants
//! ```

use opmeans::bounds::{
    corollary26_lambda, corollary_lambda, critical_point, gamma_bound, kantorovich, lambda_bound, mu_bound, specht,
    BoundParams,
};

fn main() -> opmeans::Result<()> {
    println!("{:>6} {:>12} {:>12}", "h", "K(h)", "S(h)");
    for h in [1.0, 1.5, 2.0, 4.0, 10.0, 100.0] {
        println!("{h:>6} {:>12.8} {:>12.8}", kantorovich(h)?, specht(h)?);
    }

    println!("\n{:>5} {:>5} {:>6} {:>6} {:>10} {:>10} {:>10}", "alpha", "beta", "s", "t", "lambda", "mu", "gamma");
    for &(s, t) in &[(0.25, 4.0), (0.5, 3.0), (1.0, 9.0)] {
        for &(a, b) in &[(0.5, 0.5), (0.2, 0.8), (0.9, 0.3)] {
            let p = BoundParams::new(s, t, a, b)?;
            println!(
                "{a:>5} {b:>5} {s:>6} {t:>6} {:>10.6} {:>10.6} {:>10.6}",
                lambda_bound(&p),
                mu_bound(&p),
                gamma_bound(&p.interval)
            );
        }
    }

    let (m, big_m) = (1.0, 4.0);
    println!("\nspectrum in [{m}, {big_m}]");
    for a in [0.1, 0.5, 0.9] {
        println!(
            "alpha {a}: constant {:.6}, beta = 1/2 constant {:.6}, critical point {:?}",
            corollary_lambda(m, big_m, a, a)?,
            corollary26_lambda(m, big_m, a)?,
            critical_point(a, a)
        );
    }
    Ok(())
}
