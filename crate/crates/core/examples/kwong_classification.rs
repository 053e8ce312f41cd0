//! Sampled Kwong, operator monotone and operator convex classification of
//! every catalog function.
//!
//! ```text
//! cargo run --release --example kwong_classification -- [trials] [seed]
//! ```

use opmeans::catalog;
use opmeans::kwong::{
    check_audenaert_equivalence, classify_kwong, classify_operator_convex, classify_operator_monotone,
    ClassifyConfig, ConvexityConfig, Monotonicity,
};

fn mark(refuted: bool) -> &'static str {
    if refuted {
        "no"
    } else {
        "ok"
    }
}

fn main() -> opmeans::Result<()> {
    let mut args = std::env::args().skip(1);
    let trials = args.next().and_then(|s| s.parse().ok()).unwrap_or(200);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);
    let cfg = ClassifyConfig { trials, seed, ..ClassifyConfig::default() };
    let ccfg = ConvexityConfig { trials, seed, ..ConvexityConfig::default() };

    println!("{:<24} {:>6} {:>9} {:>10} {:>7} {:>9}", "function", "kwong", "monotone", "decreasing", "convex", "coherent");
    for f in catalog::entries() {
        let kwong = classify_kwong(&f, &cfg)?;
        let inc = classify_operator_monotone(&f, Monotonicity::Increasing, &cfg)?;
        let dec = classify_operator_monotone(&f, Monotonicity::Decreasing, &cfg)?;
        let convex = classify_operator_convex(&f, &ccfg)?;
        let aud = check_audenaert_equivalence(&f, &cfg)?;
        println!(
            "{:<24} {:>6} {:>9} {:>10} {:>7} {:>9}",
            f.id(),
            mark(kwong.is_refuted()),
            mark(inc.is_refuted()),
            mark(dec.is_refuted()),
            mark(convex.is_refuted()),
            aud.coherent
        );
    }
    Ok(())
}
