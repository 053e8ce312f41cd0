use approx::assert_abs_diff_eq;
use opmeans::bounds::kantorovich;
use opmeans::linalg::HermitianMatrix;
use opmeans::verify::{
    check_cor26, check_young, evaluate, reevaluate, run_check, run_suite, sample_trial, Check, MeanKind,
    SpectrumBounds, SuiteConfig, TheoremId, TrialConfig, TrialInput, WeightSpec,
};

fn cfg(dim: usize, trials: usize) -> TrialConfig {
    TrialConfig { dim, trials, seed: 5, ..TrialConfig::default() }
}

fn scalar_input(a: f64, b: f64, alpha: f64, beta: f64) -> TrialInput {
    TrialInput {
        a: HermitianMatrix::scalar(a),
        b: HermitianMatrix::scalar(b),
        alpha,
        beta,
        s: b / a,
        t: b / a,
        lambda: None,
        mu: None,
        m: None,
        big_m: None,
        p: None,
    }
}

fn part(e: &opmeans::verify::Evaluation, name: &str) -> f64 {
    e.parts.iter().find(|p| p.0 == name).unwrap_or_else(|| panic!("no part {name}")).1
}

#[test]
fn young_scalar_chain() {
    // 2.5 >= 2 >= 1.6 for a = 1, b = 4, α = 1/2
    let e = evaluate(&Check::new(TheoremId::Young), &scalar_input(1.0, 4.0, 0.5, 0.5), 1e-9).unwrap();
    assert_abs_diff_eq!(part(&e, "geometric<=arithmetic"), 0.5 / 2.25, epsilon = 1e-15);
    assert_abs_diff_eq!(part(&e, "harmonic<=geometric"), 0.4 / 1.8, epsilon = 1e-15);
}

#[test]
fn equal_operands_give_zero_slack() {
    let a = HermitianMatrix::from_real_rows(&[vec![2.0, 0.5], vec![0.5, 1.0]]).unwrap();
    let mut input = scalar_input(1.0, 1.0, 0.3, 0.7);
    input.a = a.clone();
    input.b = a;
    input.s = 1.0;
    input.t = 1.0;
    input.lambda = Some(1.0);
    input.mu = Some(1.0);
    for check in [Check::new(TheoremId::SandwichChain), Check::new(TheoremId::MonotoneFunction).with_function("sqrt")] {
        let e = evaluate(&check, &input, 1e-9).unwrap();
        assert!(e.slack.unwrap().abs() < 1e-13, "{}: {:?}", check.label(), e.slack);
    }
    let e = evaluate(&Check::new(TheoremId::Young), &input, 1e-9).unwrap();
    assert!(e.slack.unwrap().abs() < 1e-13);
}

#[test]
fn fujii_corner_is_tight() {
    let (m, big_m) = (1.0, 9.0);
    let k = kantorovich(big_m / m).unwrap().sqrt();
    let mut input = scalar_input(m, big_m, 0.5, 0.5);
    input.lambda = Some(k);
    input.mu = Some(k);
    input.m = Some(m);
    input.big_m = Some(big_m);
    let e = evaluate(&Check::new(TheoremId::Fujii), &input, 1e-9).unwrap();
    assert!(part(&e, "lower").abs() < 1e-9);
}

#[test]
fn thm21_endpoint_equality_at_dim_one() {
    for &(b, alpha, beta) in &[(4.0, 0.5, 0.5), (0.3, 0.2, 0.9), (7.0, 1.0, 0.0)] {
        let check = Check::new(TheoremId::SandwichChain);
        let cfg1 = TrialConfig { dim: 1, ..cfg(1, 1) };
        let mut input = sample_trial(&check, &cfg1, 0).unwrap();
        input.a = HermitianMatrix::scalar(1.0);
        input.b = HermitianMatrix::scalar(b);
        input.alpha = alpha;
        input.beta = beta;
        input.s = b;
        input.t = b;
        let f = ((1.0 - alpha) + alpha * b) / b.powf(beta);
        input.lambda = Some(f);
        let e = evaluate(&check, &input, 1e-9).unwrap();
        assert!(part(&e, "lower").abs() < 1e-12, "b = {b}");
    }
}

#[test]
fn general_means_with_arith_harm_match_thm21() {
    let thm = Check::new(TheoremId::SandwichChain);
    let rem = Check::new(TheoremId::GeneralMeans).with_means(MeanKind::Arithmetic, MeanKind::Harmonic);
    for trial in 0..20 {
        let input = sample_trial(&thm, &cfg(3, 20), trial).unwrap();
        let a = evaluate(&thm, &input, 1e-9).unwrap();
        let b = evaluate(&rem, &input, 1e-9).unwrap();
        assert_eq!(a.slack, b.slack);
    }
}

#[test]
fn power_means_reduce_at_p_one_and_zero() {
    let p1 = Check::new(TheoremId::PowerMeans).with_p(1.0);
    let p0 = Check::new(TheoremId::PowerMeans).with_p(0.0);
    let ident = Check::new(TheoremId::MonotoneFunction).with_function("identity");
    for trial in 0..20 {
        let mut input = sample_trial(&p1, &cfg(3, 20), trial).unwrap();
        let pm = evaluate(&p1, &input, 1e-9).unwrap().slack.unwrap();
        let id = evaluate(&ident, &input, 1e-9).unwrap();
        assert!((part(&id, "bound") - pm).abs() < 1e-12);
        input.p = Some(0.0);
        assert!(evaluate(&p0, &input, 1e-9).unwrap().slack.unwrap().abs() < 1e-14);
    }
}

#[test]
fn cor26_half_weight_is_sqrt_kantorovich() {
    let c = TrialConfig {
        alpha: WeightSpec::Fixed(0.5),
        spectrum: Some(SpectrumBounds::new(1.0, 4.0).unwrap()),
        ..cfg(2, 50)
    };
    let input = sample_trial(&Check::new(TheoremId::GeometricChain), &c, 0).unwrap();
    assert_abs_diff_eq!(input.lambda.unwrap(), 1.25, epsilon = 1e-15);
    let r = check_cor26(&c).unwrap();
    assert!(r.pass);
    assert!(r.cross_check_error.unwrap() <= 1e-12);
}

#[test]
fn collapsed_spectrum_gives_unit_constants() {
    let c = TrialConfig { spectrum: Some(SpectrumBounds::new(2.0, 2.0).unwrap()), ..cfg(3, 20) };
    for t in [TheoremId::Fujii, TheoremId::Tominaga, TheoremId::SpectrumChain, TheoremId::GeometricChain] {
        let r = run_check(&Check::new(t), &c).unwrap();
        assert!(r.pass, "{t}");
        assert!(r.min_slack.unwrap().abs() < 1e-12, "{t}: {:?}", r.min_slack);
    }
}

#[test]
fn small_suite_passes_except_inverse_transforms() {
    let cfg = SuiteConfig { dims: vec![2, 4, 8], trials: 200, seed: 42, ..SuiteConfig::default() };
    let report = run_suite(&cfg, &Check::suite()).unwrap();
    assert_eq!(report.results.len(), 99);
    for r in &report.results {
        let inverse = r.function.as_deref() == Some("inverse");
        assert_eq!(r.pass, !inverse, "{} dim {}: min slack {:?}", r.variant, r.dim, r.min_slack);
        assert_eq!(r.failures.is_empty(), r.min_slack.unwrap() >= -cfg.tol);
    }
    assert!(!report.pass);
}

#[test]
fn empty_suite_passes() {
    let report = run_suite(&SuiteConfig::default(), &[]).unwrap();
    assert!(report.results.is_empty());
    assert!(report.pass);
}

#[test]
fn halved_lambda_is_caught_and_witnesses_reproduce() {
    let mutant = Check::new(TheoremId::SandwichChain).with_lambda_scale(0.5);
    let c = cfg(3, 200);
    let r = run_check(&mutant, &c).unwrap();
    assert!(r.failure_count > 0);
    assert!(!r.pass);
    for w in &r.failures {
        let again = reevaluate(&mutant, w, c.tol).unwrap().unwrap();
        assert!((again - w.slack).abs() <= 1e-12);
    }
    // witnesses survive a JSON round trip
    let json = serde_json::to_string(&r.failures[0]).unwrap();
    let back: opmeans::verify::Witness = serde_json::from_str(&json).unwrap();
    assert_eq!(back, r.failures[0]);
}

#[test]
fn inverse_transform_counterexample_is_scalar() {
    // A = 1, B = x < 1, α = 1, β = 0: x^{-p} against λ = 1
    let x: f64 = 0.25;
    let p = 0.5;
    let mut input = scalar_input(1.0, x, 1.0, 0.0);
    input.s = x;
    input.t = 1.0;
    input.lambda = Some(1.0);
    input.p = Some(p);
    let check = Check::new(TheoremId::ConvexTransform).with_function("inverse").with_p(p);
    let slack = evaluate(&check, &input, 1e-9).unwrap().slack.unwrap();
    assert!((slack - (1.0 - x.powf(-p)) / 1.5).abs() < 1e-15);
}

#[test]
fn jobs_do_not_change_results() {
    let check = Check::new(TheoremId::KwongTransform).with_function("sinh_inv").with_p(0.5);
    let one = run_check(&check, &TrialConfig { jobs: 1, ..cfg(4, 64) }).unwrap();
    let four = run_check(&check, &TrialConfig { jobs: 4, ..cfg(4, 64) }).unwrap();
    assert_eq!(one, four);
}

#[test]
fn young_passes_and_rejects_bad_config() {
    assert!(check_young(&cfg(4, 100)).unwrap().pass);
    assert!(check_young(&TrialConfig { dim: 0, ..cfg(1, 1) }).is_err());
    assert!(check_young(&TrialConfig { trials: 0, ..cfg(1, 1) }).is_err());
    assert!(check_young(&TrialConfig { dim: 33, ..cfg(1, 1) }).is_err());
}

#[test]
fn skipped_trials_for_nonconforming_means() {
    // ∇ >= !, so swapping the roles keeps the hypothesis
    let c = Check::new(TheoremId::GeneralMeans).with_means(MeanKind::Harmonic, MeanKind::Arithmetic);
    let r = run_check(&c, &cfg(2, 50)).unwrap();
    assert_eq!(r.skipped, 0);
    // a fixed representing function outside the weighted chain gets skipped on some trials
    let c = Check::new(TheoremId::GeneralMeans)
        .with_means(MeanKind::Function("representing:arith:0.9".into()), MeanKind::Harmonic);
    let r = run_check(&c, &cfg(2, 100)).unwrap();
    assert!(r.skipped > 0);
    assert!(r.pass);
}
