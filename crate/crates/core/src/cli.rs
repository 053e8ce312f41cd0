//! The `opmeans` command line.
//!
//! Exit codes: 0 when everything holds, 1 when a check fails or an input is
//! not positive definite, 2 for usage and parse errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{
    corollary26_lambda, corollary_lambda, critical_point, gamma_bound, kantorovich, lambda_bound, mu_bound, specht,
    BoundParams,
};
use crate::error::{Error, Result};
use crate::function::catalog;
use crate::kwong::{
    check_audenaert_equivalence, classify_kwong, classify_operator_convex, classify_operator_monotone, ClassifyConfig,
    ConvexityConfig, Monotonicity,
};
use crate::linalg::calculus::positive_spectrum;
use crate::linalg::HermitianMatrix;
use crate::means::{arithmetic_mean, geometric_mean, harmonic_mean, sandwich_interval, Weight};
use crate::verify::{format_float, loewner_slack, run_suite, Check, SpectrumBounds, SuiteConfig, WeightSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "opmeans", version, about = "Operator means, reverse-mean constants and inequality checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sandwich constants λ, μ, γ, Specht and Kantorovich values.
    Bounds(BoundsArgs),
    /// Weighted means of two matrices read from JSON files.
    Means(MeansArgs),
    /// Sampled Kwong / Loewner / convexity classification of a catalog function.
    Kwong(KwongArgs),
    /// Randomized verification of the inequality registry.
    Verify(VerifyArgs),
    /// List catalog functions and their claimed classes.
    Catalog(CatalogArgs),
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long, requires = "t")]
    pub s: Option<f64>,
    #[arg(long, requires = "s")]
    pub t: Option<f64>,
    #[arg(long, requires = "big_m", conflicts_with_all = ["s", "t"])]
    pub m: Option<f64>,
    #[arg(long = "M", id = "big_m", requires = "m")]
    pub big_m: Option<f64>,
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.5)]
    pub beta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WhichMean {
    Arithmetic,
    Geometric,
    Harmonic,
    All,
}

#[derive(Debug, Args)]
pub struct MeansArgs {
    /// JSON file holding `A`: `{"dim", "re", "im"?}` or a nested real array.
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    /// Weight of the geometric mean; defaults to `alpha`.
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long, value_enum, default_value_t = WhichMean::All)]
    pub which: WhichMean,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KwongTest {
    Kwong,
    Monotone,
    Decreasing,
    Convex,
}

#[derive(Debug, Args)]
pub struct KwongArgs {
    #[arg(long = "fn")]
    pub function: String,
    /// Largest sample size.
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, env = "OPMEANS_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = KwongTest::Kwong)]
    pub test: KwongTest,
    /// Also compare against monotonicity of `√t f(√t)`.
    #[arg(long)]
    pub audenaert: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Theorem id, variant label such as `cor-3.5[p=0.7]`, or `all`.
    #[arg(long = "theorem", default_value = "all")]
    pub theorems: Vec<String>,
    #[arg(long = "dim", value_delimiter = ',', default_value = "1,2,4,8")]
    pub dims: Vec<usize>,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, env = "OPMEANS_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Fix α instead of drawing it per trial.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    /// Pin the spectral bounds of spectrum-mode checks.
    #[arg(long, requires = "big_m")]
    pub m: Option<f64>,
    #[arg(long = "M", id = "big_m", requires = "m")]
    pub big_m: Option<f64>,
    #[arg(long, default_value_t = 25.0)]
    pub max_ratio: f64,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write a CSV summary.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Worker threads; 0 uses every core. Output is identical for any value.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Record wall-clock time in the report.
    #[arg(long)]
    pub timing: bool,
    /// Keep every per-trial slack in the report.
    #[arg(long)]
    pub slacks: bool,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    #[arg(long)]
    pub json: bool,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotPositive { .. }
        | Error::Domain { .. }
        | Error::Evaluation { .. }
        | Error::NonConvergence { .. }
        | Error::RepresentingFunction { .. } => EXIT_FAILURE,
        _ => EXIT_USAGE,
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Parse(format!("{}: {e}", path.display()))
}

fn print_json<T: Serialize>(out: &mut dyn Write, v: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(v).expect("serializable output");
    writeln!(out, "{text}").map_err(|e| Error::Parse(format!("stdout: {e}")))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Bounds(a) => cmd_bounds(&a, out),
        Command::Means(a) => cmd_means(&a, out),
        Command::Kwong(a) => cmd_kwong(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Catalog(a) => cmd_catalog(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn cmd_bounds(a: &BoundsArgs, out: &mut dyn Write) -> Result<i32> {
    let (s, t, spectrum) = match (a.s, a.t, a.m, a.big_m) {
        (Some(s), Some(t), None, None) => (s, t, None),
        (None, None, Some(m), Some(big_m)) => {
            let iv = crate::means::SandwichInterval::from_spectrum_bounds(m, big_m)?;
            (iv.s, iv.t, Some((m, big_m)))
        }
        _ => return Err(Error::invalid("supply exactly one of --s/--t or --m/--M")),
    };
    let params = BoundParams::new(s, t, a.alpha, a.beta)?;
    let mut v = json!({
        "s": s,
        "t": t,
        "alpha": a.alpha,
        "beta": a.beta,
        "lambda": lambda_bound(&params),
        "mu": mu_bound(&params),
        "gamma": gamma_bound(&params.interval),
        "specht_s": specht(s)?,
        "specht_t": specht(t)?,
        "kantorovich": kantorovich(t / s)?,
        "critical_point": critical_point(a.alpha, a.beta),
    });
    if let Some((m, big_m)) = spectrum {
        v["m"] = json!(m);
        v["M"] = json!(big_m);
        v["h"] = json!(big_m / m);
        v["kantorovich"] = json!(kantorovich(big_m / m)?);
        v["specht_h"] = json!(specht(big_m / m)?);
        v["corollary_lambda"] = json!(corollary_lambda(m, big_m, a.alpha, a.beta)?);
        v["geometric_lambda"] = json!(corollary26_lambda(m, big_m, a.alpha)?);
    }
    print_json(out, &v)?;
    Ok(EXIT_OK)
}

/// Reads a matrix file: the library's `{"dim", "re", "im"?}` form or a
/// plain nested array of real rows.
pub fn read_matrix(path: &Path) -> Result<HermitianMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    if value.is_array() {
        let rows: Vec<Vec<f64>> =
            serde_json::from_value(value).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        HermitianMatrix::from_real_rows(&rows)
    } else {
        serde_json::from_value(value).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }
}

pub fn cmd_means(a: &MeansArgs, out: &mut dyn Write) -> Result<i32> {
    let ma = read_matrix(&a.a)?;
    let mb = read_matrix(&a.b)?;
    if ma.dim() != mb.dim() {
        return Err(Error::DimensionMismatch {
            expected: format!("dim {}", ma.dim()),
            found: format!("dim {}", mb.dim()),
        });
    }
    positive_spectrum(&ma)?;
    positive_spectrum(&mb)?;
    let alpha = Weight::new(a.alpha)?;
    let beta = Weight::new(a.beta.unwrap_or(a.alpha))?;
    let ar = arithmetic_mean(&ma, &mb, alpha)?;
    let ge = geometric_mean(&ma, &mb, beta)?;
    let ha = harmonic_mean(&ma, &mb, alpha)?;
    let young = geometric_mean(&ma, &mb, alpha)?;
    let iv = sandwich_interval(&ma, &mb)?;
    let mut v = json!({ "alpha": a.alpha, "beta": beta.get() });
    let all = a.which == WhichMean::All;
    if all || a.which == WhichMean::Arithmetic {
        v["arithmetic"] = json!(ar);
    }
    if all || a.which == WhichMean::Geometric {
        v["geometric"] = json!(ge);
    }
    if all || a.which == WhichMean::Harmonic {
        v["harmonic"] = json!(ha);
    }
    v["sandwich"] = json!(iv);
    v["chain"] = json!({
        "harmonic<=geometric": loewner_slack(&ha, &young)?,
        "geometric<=arithmetic": loewner_slack(&young, &ar)?,
    });
    print_json(out, &v)?;
    Ok(EXIT_OK)
}

pub fn cmd_kwong(a: &KwongArgs, out: &mut dyn Write) -> Result<i32> {
    let f = catalog::lookup(&a.function)?;
    let cfg = ClassifyConfig {
        n_max: a.n,
        trials: a.trials,
        seed: a.seed,
        ..ClassifyConfig::default()
    };
    let verdict = match a.test {
        KwongTest::Kwong => classify_kwong(&f, &cfg)?,
        KwongTest::Monotone => classify_operator_monotone(&f, Monotonicity::Increasing, &cfg)?,
        KwongTest::Decreasing => classify_operator_monotone(&f, Monotonicity::Decreasing, &cfg)?,
        KwongTest::Convex => classify_operator_convex(
            &f,
            &ConvexityConfig {
                trials: a.trials,
                seed: a.seed,
                ..ConvexityConfig::default()
            },
        )?,
    };
    if !a.audenaert {
        print_json(out, &verdict)?;
        return Ok(EXIT_OK);
    }
    let check = check_audenaert_equivalence(&f, &cfg)?;
    print_json(out, &json!({ "verdict": verdict, "audenaert": check }))?;
    Ok(if check.coherent { EXIT_OK } else { EXIT_FAILURE })
}

fn weight_spec(w: Option<f64>) -> WeightSpec {
    w.map_or(WeightSpec::Uniform, WeightSpec::Fixed)
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let mut checks = Vec::new();
    for spec in &a.theorems {
        for c in Check::parse(spec)? {
            if !checks.contains(&c) {
                checks.push(c);
            }
        }
    }
    let spectrum = match (a.m, a.big_m) {
        (Some(m), Some(big_m)) => Some(SpectrumBounds::new(m, big_m)?),
        _ => None,
    };
    let cfg = SuiteConfig {
        dims: a.dims.clone(),
        trials: a.trials,
        seed: a.seed,
        spectrum,
        max_ratio: a.max_ratio,
        alpha: weight_spec(a.alpha),
        beta: weight_spec(a.beta),
        tol: a.tol,
        jobs: a.jobs,
        keep_slacks: a.slacks,
        timing: a.timing,
    };
    let report = run_suite(&cfg, &checks)?;
    let json = report.to_json();
    match &a.out {
        Some(path) => {
            std::fs::write(path, format!("{json}\n")).map_err(|e| io_err(path, e))?;
            for r in &report.results {
                let slack = r.min_slack.map_or("-".to_string(), format_float);
                writeln!(
                    out,
                    "{} dim={} trials={} min_slack={} failures={} {}",
                    r.variant,
                    r.dim,
                    r.trials,
                    slack,
                    r.failure_count,
                    if r.pass { "pass" } else { "FAIL" }
                )
                .map_err(|e| Error::Parse(format!("stdout: {e}")))?;
            }
        }
        None => writeln!(out, "{json}").map_err(|e| Error::Parse(format!("stdout: {e}")))?,
    }
    if let Some(path) = &a.csv {
        std::fs::write(path, report.to_csv()).map_err(|e| io_err(path, e))?;
    }
    Ok(if report.pass { EXIT_OK } else { EXIT_FAILURE })
}

#[derive(Serialize)]
struct CatalogEntry {
    id: String,
    claims: crate::function::Claims,
    domain: crate::function::Domain,
    note: String,
}

pub fn cmd_catalog(a: &CatalogArgs, out: &mut dyn Write) -> Result<i32> {
    let entries: Vec<CatalogEntry> = catalog::entries()
        .into_iter()
        .map(|f| CatalogEntry {
            id: f.id().to_string(),
            claims: f.claims(),
            domain: f.domain(),
            note: f.note().to_string(),
        })
        .collect();
    if a.json {
        print_json(out, &entries)?;
        return Ok(EXIT_OK);
    }
    let w = |e: std::io::Error| Error::Parse(format!("stdout: {e}"));
    for e in &entries {
        let c = e.claims;
        let flags: Vec<&str> = [
            (c.nonneg_operator_monotone, "operator_monotone"),
            (c.operator_monotone_decreasing, "operator_monotone_decreasing"),
            (c.operator_convex, "operator_convex"),
            (c.kwong, "kwong"),
            (c.representing, "representing"),
        ]
        .into_iter()
        .filter_map(|(on, name)| on.then_some(name))
        .collect();
        writeln!(out, "{:<24} {}", e.id, flags.join(",")).map_err(w)?;
        writeln!(out, "{:<24} {}", "", e.note).map_err(w)?;
    }
    Ok(EXIT_OK)
}
