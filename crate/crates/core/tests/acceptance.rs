//! Acceptance criteria, one pass/fail line each.
//!
//! Runs without the libtest harness so the lines always reach stdout. The
//! process exits non-zero only for unexpected outcomes; see `KNOWN_RED`.

use std::collections::BTreeMap;
use std::process::Command;

use opmeans::bounds::{kantorovich, lambda_bound, specht, BoundParams};
use opmeans::kwong::{
    check_audenaert_equivalence, classify_kwong, kwong_matrix, ClassifyConfig, SamplePoints, Verdict,
};
use opmeans::linalg::calculus::matrix_sqrt;
use opmeans::linalg::eigen::{eig_hermitian, min_eigenvalue};
use opmeans::linalg::norms::ky_fan_norms;
use opmeans::linalg::random::{random_hpd_with, random_unitary_with, rng_from_seed};
use opmeans::linalg::{HermitianMatrix, Matrix, C64};
use opmeans::verify::{evaluate, run_check, Check, TheoremId, TrialConfig, TrialInput};
use opmeans::{catalog, Result};
use rand::Rng;
use rand_distr::StandardNormal;
use serde_json::Value;

const SEED: u64 = 42;

/// Sub-results that are reported red on purpose: the inequality is false
/// for `g(x) = 1/x` because `1/x` has no finite value at 0, which the
/// Kwong-transform step needs. The dim-1 case `A = 1, B = x < 1, α = 1,
/// β = 0` already gives `x^{-p} > 1 = λ`.
const KNOWN_RED: &[&str] = &[
    "cor-3.8[g=inverse,p=0.25]",
    "cor-3.8[g=inverse,p=0.5]",
    "remark-3.9[g=inverse,p=0.25]",
    "remark-3.9[g=inverse,p=0.5]",
];

struct Outcome {
    id: u32,
    name: &'static str,
    pass: bool,
    expected_red: bool,
    detail: String,
}

fn report(o: &Outcome) {
    let tag = if o.pass { "PASS" } else { "FAIL" };
    println!("[{tag}] criterion {}: {} | {}", o.id, o.name, o.detail);
}

fn run_cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_opmeans"))
        .args(args)
        .env_remove("OPMEANS_SEED")
        .output()
        .expect("opmeans binary runs")
}

fn schema_ok(report: &Value) -> bool {
    let top = ["config", "results", "pass", "elapsed_ms"].iter().all(|k| report.get(k).is_some());
    let results = report["results"].as_array().map_or(false, |rs| {
        rs.iter().all(|r| {
            ["theorem", "trials", "min_slack", "failures"].iter().all(|k| r.get(k).is_some())
                && r["failures"].as_array().map_or(false, |fs| {
                    fs.iter().all(|f| {
                        ["trial", "slack", "A", "B", "alpha", "beta", "s", "t", "lambda", "mu"]
                            .iter()
                            .all(|k| f.get(k).is_some())
                    })
                })
        })
    });
    top && results
}

/// Criterion 1 and 8 share the report files.
fn full_suite(dir: &std::path::Path) -> (Outcome, Outcome) {
    let a = dir.join("jobs1.json");
    let b = dir.join("jobs8.json");
    let seed = SEED.to_string();
    let mut args = vec!["verify", "--theorem", "all", "--dim", "1,2,4,8", "--trials", "1000", "--seed", &seed];
    args.extend(["--tol", "1e-9"]);
    let out_a = run_cli(&[&args[..], &["--jobs", "1", "--out", a.to_str().unwrap()]].concat());
    let out_b = run_cli(&[&args[..], &["--jobs", "8", "--out", b.to_str().unwrap()]].concat());
    let text_a = std::fs::read_to_string(&a).unwrap_or_default();
    let text_b = std::fs::read_to_string(&b).unwrap_or_default();

    let parsed: Value = serde_json::from_str(&text_a).unwrap_or(Value::Null);
    let mut failing: BTreeMap<String, usize> = BTreeMap::new();
    let mut results = 0;
    if let Some(rs) = parsed["results"].as_array() {
        for r in rs {
            results += 1;
            if r["pass"] != Value::Bool(true) {
                *failing.entry(r["variant"].as_str().unwrap_or("?").to_string()).or_default() +=
                    r["failure_count"].as_u64().unwrap_or(0) as usize;
            }
        }
    }
    let unexpected: Vec<&String> = failing.keys().filter(|k| !KNOWN_RED.contains(&k.as_str())).collect();
    let known_reproduced = KNOWN_RED.iter().all(|k| failing.contains_key(*k));
    let pass = failing.is_empty() && out_a.status.code() == Some(0) && results == 132;
    let detail = if failing.is_empty() {
        format!("{results} results over dims 1,2,4,8, 1000 trials each, zero failures")
    } else {
        let list: Vec<String> = failing.iter().map(|(k, n)| format!("{k}: {n} failures")).collect();
        format!("{results} results, {} failing: {}", failing.len(), list.join("; "))
    };
    let c1 = Outcome {
        id: 1,
        name: "full verification suite passes",
        pass,
        expected_red: unexpected.is_empty() && known_reproduced && schema_ok(&parsed),
        detail,
    };

    let identical = !text_a.is_empty() && text_a == text_b && out_a.stdout == out_b.stdout;
    let c8 = Outcome {
        id: 8,
        name: "byte-identical reports for equal seeds (jobs 1 vs jobs 8)",
        pass: identical,
        expected_red: false,
        detail: format!("{} report bytes, identical = {identical}", text_a.len()),
    };
    (c1, c8)
}

fn f_ab(x: f64, a: f64, b: f64) -> f64 {
    ((1.0 - a) + a * x) / x.powf(b)
}

fn criterion2() -> Result<Outcome> {
    let mut rng = rng_from_seed(SEED);
    let mut worst_grid: f64 = 0.0;
    let mut worst_end: f64 = 0.0;
    for _ in 0..10_000 {
        let s = 10f64.powf(rng.random_range(-2.0..2.0));
        let t = s * 10f64.powf(rng.random_range(0.0..2.0));
        let (a, b) = (rng.random::<f64>(), rng.random::<f64>());
        let lambda = lambda_bound(&BoundParams::new(s, t, a, b)?);
        let n = 10_000;
        let grid_max = (0..n)
            .map(|i| f_ab(s + (t - s) * i as f64 / (n - 1) as f64, a, b))
            .fold(f64::NEG_INFINITY, f64::max);
        worst_grid = worst_grid.max((lambda - grid_max).abs() / grid_max);
        let end = f_ab(s, a, b).max(f_ab(t, a, b));
        worst_end = worst_end.max((lambda - end).abs() / end);
    }
    Ok(Outcome {
        id: 2,
        name: "lambda equals the grid maximum of f_(a,b) on [s,t]",
        pass: worst_grid <= 1e-9 && worst_end <= 1e-9,
        expected_red: false,
        detail: format!("10^4 samples, worst grid rel err {worst_grid:e}, worst endpoint rel err {worst_end:e}"),
    })
}

fn criterion3() -> Result<Outcome> {
    let mut rng = rng_from_seed(SEED + 3);
    let (mut kant, mut spec, mut sym) = (0f64, f64::NEG_INFINITY, 0f64);
    for _ in 0..10_000 {
        let t = 10f64.powf(rng.random_range(0.0..3.0));
        let l = lambda_bound(&BoundParams::new(1.0 / t, t, 0.5, 0.5)?);
        kant = kant.max((l - kantorovich(t)?.sqrt()).abs());

        let s = 10f64.powf(rng.random_range(-2.0..2.0));
        let t2 = s * 10f64.powf(rng.random_range(0.0..2.0));
        let a = rng.random::<f64>();
        let l = lambda_bound(&BoundParams::new(s, t2, a, a)?);
        spec = spec.max(l - specht(s)?.max(specht(t2)?));

        let x = 10f64.powf(rng.random_range(-3.0..3.0));
        sym = sym
            .max((specht(x)? - specht(1.0 / x)?).abs() / specht(x)?)
            .max((kantorovich(x)? - kantorovich(1.0 / x)?).abs() / kantorovich(x)?);
    }
    Ok(Outcome {
        id: 3,
        name: "constant identities (sqrt K, Specht bound, reciprocal symmetry)",
        pass: kant <= 1e-12 && spec <= 1e-12 && sym <= 1e-12,
        expected_red: false,
        detail: format!("|lambda - sqrt K| <= {kant:e}, max(lambda - gamma) = {spec:e}, symmetry err {sym:e}"),
    })
}

fn criterion4() -> Result<Outcome> {
    let cfg = ClassifyConfig { seed: SEED, ..ClassifyConfig::default() };
    let mut consistent_ids: Vec<String> = ["identity", "sqrt", "inverse", "sinh_inv", "log1p"].map(String::from).to_vec();
    consistent_ids.extend((0..9).map(|k| format!("power:{}", -1.0 + 0.25 * k as f64)));
    let mut bad = Vec::new();
    for id in &consistent_ids {
        if classify_kwong(&catalog::lookup(id)?, &cfg)?.verdict != Verdict::Consistent {
            bad.push(format!("{id} refuted"));
        }
    }
    for id in ["square", "exp", "power:1.5"] {
        let f = catalog::lookup(id)?;
        let v = classify_kwong(&f, &cfg)?;
        let again = classify_kwong(&f, &cfg)?;
        let reproduced = match &v.witness {
            Some(w) => {
                let pts = SamplePoints::new(w.points.clone().unwrap_or_default())?;
                let e = min_eigenvalue(&kwong_matrix(&f, &pts)?)?;
                e < 0.0 && e == w.min_eigenvalue && again == v
            }
            None => false,
        };
        if v.verdict != Verdict::Refuted || !reproduced {
            bad.push(format!("{id} not refuted with a reproducible witness"));
        }
    }
    let sq = catalog::lookup("square")?;
    let k = kwong_matrix(&sq, &SamplePoints::new(vec![1.0, 2.0])?)?;
    let expected = HermitianMatrix::from_real_rows(&[vec![1.0, 5.0 / 3.0], vec![5.0 / 3.0, 2.0]])?;
    let e = min_eigenvalue(&k)?;
    if k.distance(&expected)? > 1e-15 || !(e < 0.0) {
        bad.push("x^2 at {1,2} does not reproduce [[1,5/3],[5/3,2]]".into());
    }
    Ok(Outcome {
        id: 4,
        name: "Kwong classification verdicts",
        pass: bad.is_empty(),
        expected_red: false,
        detail: if bad.is_empty() {
            format!("{} consistent, 3 refuted with witnesses, x^2 at {{1,2}} min eig {e:.6}", consistent_ids.len())
        } else {
            bad.join("; ")
        },
    })
}

fn criterion5() -> Result<Outcome> {
    let cfg = ClassifyConfig { seed: SEED, ..ClassifyConfig::default() };
    let mut incoherent = Vec::new();
    for f in catalog::entries() {
        let c = check_audenaert_equivalence(&f, &cfg)?;
        if !c.coherent {
            incoherent.push(f.id().to_string());
        }
    }
    Ok(Outcome {
        id: 5,
        name: "Kwong iff sqrt-transform operator monotone, on every catalog function",
        pass: incoherent.is_empty(),
        expected_red: false,
        detail: if incoherent.is_empty() {
            format!("{} functions coherent", catalog::IDS.len())
        } else {
            format!("incoherent: {}", incoherent.join(", "))
        },
    })
}

fn criterion6() -> Result<Outcome> {
    let check = Check::new(TheoremId::SandwichChain);
    let mut worst: f64 = 0.0;
    for &t in &[0.2, 0.5, 2.0, 3.0, 10.0, 40.0] {
        for &(a, b) in &[(0.5, 0.5), (0.3, 0.8), (0.9, 0.1), (0.0, 1.0), (1.0, 0.0)] {
            let lambda = lambda_bound(&BoundParams::new(t, t, a, b)?);
            let input = TrialInput {
                a: HermitianMatrix::scalar(1.0),
                b: HermitianMatrix::scalar(t),
                alpha: a,
                beta: b,
                s: t,
                t,
                lambda: Some(lambda),
                mu: Some(1.0),
                m: None,
                big_m: None,
                p: None,
            };
            let e = evaluate(&check, &input, 1e-9)?;
            let lower = e.parts.iter().find(|p| p.0 == "lower").map(|p| p.1).unwrap_or(f64::NAN);
            worst = worst.max(lower.abs());
        }
    }
    let mutant = check.clone().with_lambda_scale(1.0 - 1e-3);
    let mut detected = Vec::new();
    for dim in [2, 4, 8] {
        let cfg = TrialConfig { dim, trials: 1000, seed: SEED, ..TrialConfig::default() };
        detected.push((dim, run_check(&mutant, &cfg)?.failure_count));
    }
    let all_detected = detected.iter().all(|d| d.1 >= 1);
    Ok(Outcome {
        id: 6,
        name: "endpoint tightness and shrunken-lambda mutation",
        pass: worst <= 1e-9 && all_detected,
        expected_red: false,
        detail: format!("max |endpoint slack| {worst:e}; mutant failures by dim {detected:?}"),
    })
}

fn random_hermitian<R: Rng>(rng: &mut R, n: usize) -> HermitianMatrix {
    let g = Matrix::from_fn(n, n, |_, _| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)));
    HermitianMatrix::hermitian_part(&g)
}

fn criterion7() -> Result<Outcome> {
    let mut rng = rng_from_seed(SEED + 7);
    let (mut recon, mut sqrt_err, mut kf) = (0f64, 0f64, 0f64);
    for i in 0..1000 {
        let n = 1 + i % 16;
        let a = random_hermitian(&mut rng, n).scale(10f64.powf(rng.random_range(-2.0..2.0)));
        let scale = a.frobenius_norm().max(1.0);
        let spec = eig_hermitian(&a)?;
        recon = recon.max(spec.reconstruct().distance(&a)? / scale);

        let p = random_hpd_with(&mut rng, n, 0.1, 10.0)?;
        let r = matrix_sqrt(&p)?;
        let back = HermitianMatrix::hermitian_part(&r.as_matrix().matmul(r.as_matrix())?);
        sqrt_err = sqrt_err.max(back.distance(&p)? / p.frobenius_norm().max(1.0));

        let u = random_unitary_with(&mut rng, n)?;
        let conj = a.congruence(&u)?;
        let (k1, k2) = (ky_fan_norms(&a)?, ky_fan_norms(&conj)?);
        let err = k1.iter().zip(&k2).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        kf = kf.max(err / scale);
    }
    Ok(Outcome {
        id: 7,
        name: "eigendecomposition, square root and Ky Fan invariance",
        pass: recon <= 1e-10 && sqrt_err <= 1e-10 && kf <= 1e-10,
        expected_red: false,
        detail: format!("1000 matrices dim 1..16: reconstruction {recon:e}, sqrt {sqrt_err:e}, Ky Fan {kf:e}"),
    })
}

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let mut outcomes = Vec::new();
    let (c1, c8) = full_suite(dir.path());
    outcomes.push(c1);
    for f in [criterion2, criterion3, criterion4, criterion5, criterion6, criterion7] {
        outcomes.push(f().unwrap_or_else(|e| Outcome {
            id: 0,
            name: "criterion errored",
            pass: false,
            expected_red: false,
            detail: e.to_string(),
        }));
    }
    outcomes.push(c8);

    for o in &outcomes {
        report(o);
    }
    let passed = outcomes.iter().filter(|o| o.pass).count();
    println!("acceptance: {passed}/{} criteria pass", outcomes.len());
    let unexpected: Vec<&Outcome> = outcomes.iter().filter(|o| !o.pass && !o.expected_red).collect();
    for o in outcomes.iter().filter(|o| !o.pass && o.expected_red) {
        println!("criterion {} is red for a documented reason: {}", o.id, KNOWN_RED.join(", "));
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures in criteria {:?}", unexpected.iter().map(|o| o.id).collect::<Vec<_>>());
        std::process::exit(1);
    }
}
