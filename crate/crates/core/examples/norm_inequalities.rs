//! Ky Fan and Schatten norms, and the norm and Loewner forms of the
//! power-mean inequalities.
//!
//! ```text
//! cargo run --release --example norm_inequalities -- [trials]
//! ```

use opmeans::linalg::{ky_fan_norms, schatten_norm};
use opmeans::verify::{run_check, sample_trial, Check, TheoremId, TrialConfig};

fn main() -> opmeans::Result<()> {
    let trials = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(200);
    let cfg = TrialConfig { dim: 4, trials, seed: 7, ..TrialConfig::default() };

    let x = sample_trial(&Check::new(TheoremId::NormChain).with_p(0.5), &cfg, 0)?;
    println!("Ky Fan norms of A: {:?}", ky_fan_norms(&x.a)?);
    println!("Schatten 2-norm of A: {:.6}", schatten_norm(&x.a, 2.0)?);

    let checks = [
        Check::new(TheoremId::NormChain).with_p(0.5),
        Check::new(TheoremId::Seo).with_p(0.5),
        Check::new(TheoremId::AndoHiai).with_p(2.0),
        Check::new(TheoremId::PowerMeans).with_p(0.5),
    ];
    for c in &checks {
        let r = run_check(c, &cfg)?;
        println!(
            "{:<24} min slack {:>11.3e}  failures {:>3}  {}",
            r.variant,
            r.min_slack.unwrap_or(f64::NAN),
            r.failure_count,
            if r.pass { "ok" } else { "FAIL" }
        );
        for (step, s) in &r.steps {
            println!("    {step:<24} {s:.3e}");
        }
    }
    Ok(())
}
