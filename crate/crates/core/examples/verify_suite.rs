//! Runs the full verification suite and prints one line per check.
//!
//! ```text
//! cargo run --release --example verify_suite -- [trials] [seed]
//! ```

use opmeans::verify::{run_suite, Check, SuiteConfig};

fn main() -> opmeans::Result<()> {
    let mut args = std::env::args().skip(1);
    let trials = args.next().and_then(|s| s.parse().ok()).unwrap_or(200);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(42);
    let cfg = SuiteConfig { trials, seed, timing: true, ..SuiteConfig::default() };
    let report = run_suite(&cfg, &Check::suite())?;
    for r in &report.results {
        println!(
            "{:<40} dim {:>2}  min slack {:>12.3e}  failures {:>4}  {}",
            r.variant,
            r.dim,
            r.min_slack.unwrap_or(f64::NAN),
            r.failure_count,
            if r.pass { "ok" } else { "FAIL" }
        );
    }
    println!("{} ms, pass = {}", report.elapsed_ms, report.pass);
    Ok(())
}
