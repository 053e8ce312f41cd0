//! Weighted arithmetic, geometric and harmonic means of two HPD matrices,
//! the Kubo-Ando mean of a catalog function, and the sandwich interval.
//!
//! ```text
//! cargo run --example operator_means -- [alpha]
//! ```

use opmeans::catalog;
use opmeans::linalg::random_hpd;
use opmeans::means::{arithmetic_mean, geometric_mean, harmonic_mean, kubo_ando_mean, sandwich_interval};
use opmeans::verify::loewner_slack;
use opmeans::Weight;

fn main() -> opmeans::Result<()> {
    let alpha = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0.5);
    let w = Weight::new(alpha)?;
    let a = random_hpd(3, 1.0, 4.0, 10)?;
    let b = random_hpd(3, 1.0, 4.0, 11)?;

    let ar = arithmetic_mean(&a, &b, w)?;
    let ge = geometric_mean(&a, &b, w)?;
    let ha = harmonic_mean(&a, &b, w)?;
    println!("A #_{alpha} B =\n{ge:?}");
    println!("geometric <= arithmetic, slack {:.3e}", loewner_slack(&ge, &ar)?);
    println!("harmonic <= geometric,   slack {:.3e}", loewner_slack(&ha, &ge)?);

    // log1p(x)/log(2) has value 1 at 1 and is operator monotone
    let f = opmeans::ScalarFunction::new("log-mean", |x: f64| x.ln_1p() / 2f64.ln());
    let m = kubo_ando_mean(&a, &b, &f)?;
    println!("Kubo-Ando mean for ln(1+x)/ln 2, trace {:.6}", m.trace());
    let arith = kubo_ando_mean(&a, &b, &catalog::representing_arith(alpha, "arith")?)?;
    println!("representing-function arithmetic mean matches: {:.2e}", arith.distance(&ar)?);

    let iv = sandwich_interval(&a, &b)?;
    println!("{:.6} A <= B <= {:.6} A", iv.s, iv.t);
    Ok(())
}
