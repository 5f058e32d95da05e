//! Fits the constants of the inequalities over a family of test functions
//! and checks that they stay put when the grid is refined.
//!
//! A fitted constant `C_fit` is the largest ratio of left- to right-hand side
//! seen over the family (and over grid points, for pointwise inequalities).
//! A case passes when `C_fit` is finite and, with refinement on,
//! `C_fit(2N) / C_fit(N)` lies in `[1/2, 2]`.

mod cases;
mod family;
mod fit;
mod report;
pub mod verifiers;

pub use cases::{CaseSpec, ExponentInput};
pub use family::{FunctionFamily, STANDARD_FAMILY_SIZE};
pub use fit::{ratio_stable, refinement_ratio, Fit, SKIP_THRESHOLD};
pub use report::{
    to_csv, to_json, CheckReport, InequalityReport, LinkReport, ParameterRecord, TheoremKind, CSV_HEADER,
};
pub use verifiers::*;
