//! Randomized verification of the operator mean inequalities.
//!
//! Each [`Check`] names a theorem and, where needed, the function, exponent
//! or means it is instantiated with. [`run_check`] draws operands that meet
//! the theorem's hypotheses, evaluates both sides and records normalized
//! Loewner slacks `λ_min(RHS - LHS) / max(1, mean Frobenius norm)`. Every
//! trial has its own seed, so results do not depend on the thread count.

mod config;
mod evaluate;
mod harness;
mod report;
mod sample;
mod theorem;

pub use config::{SpectrumBounds, SuiteConfig, TrialConfig, WeightSpec, MAX_DIM};
pub use evaluate::{evaluate, loewner_slack, norm_slack, Evaluation};
pub use harness::{
    check_ando_hiai, check_cor23, check_cor26, check_cor35, check_cor36, check_cor38, check_fujii, check_norm_chain,
    check_remark22, check_remark39, check_seo, check_thm21, check_thm34, check_tominaga, check_young, reevaluate,
    run_check, run_suite,
};
pub use report::{format_float, InequalityResult, VerificationReport, Witness, CROSS_CHECK_TOL, MAX_ERRORS, MAX_WITNESSES};
pub use sample::{sample_trial, TrialInput};
pub use theorem::{Check, MeanKind, SamplingMode, TheoremId};
