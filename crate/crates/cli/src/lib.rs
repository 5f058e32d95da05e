//! Front end for the `hedberg` harness: JSON run configurations, report
//! writing, and the exponent calculator behind `hedberg explain`.

pub mod config;
pub mod explain;
pub mod run;

pub use config::{FamilySpec, OutputFormat, RunConfig};
pub use explain::{parse_exact, Exact, Relation};
pub use run::{execute, render, write_report, RunOutcome};
