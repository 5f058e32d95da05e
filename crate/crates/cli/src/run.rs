//! Executing a configuration and writing its report.

use anyhow::{Context, Result};
use hedberg::harness::{to_csv, to_json, InequalityReport};
use rayon::prelude::*;
use std::path::{Path, PathBuf};

use crate::config::{OutputFormat, RunConfig};

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub reports: Vec<InequalityReport>,
    pub rendered: String,
    pub all_pass: bool,
}

/// A case counts as passing if it passed, or if it was inconclusive and
/// that is allowed.
pub fn counts_as_pass(report: &InequalityReport, allow_inconclusive: bool) -> bool {
    report.pass || (allow_inconclusive && report.inconclusive && report.error.is_none())
}

pub fn render(reports: &[InequalityReport], format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => to_csv(reports),
        OutputFormat::Json => {
            let mut json = to_json(reports);
            json.push('\n');
            json
        }
    }
}

/// Run every case on a pool of at most `jobs` threads. Cases that fail
/// numerically become failed reports; the rest still run.
pub fn execute(config: &RunConfig, jobs: Option<usize>) -> Result<RunOutcome> {
    let family = config.family()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j);
    }
    let pool = builder.build().context("building the worker pool")?;
    let reports: Vec<InequalityReport> = pool.install(|| {
        config
            .cases
            .par_iter()
            .map(|case| case.run_or_fail(&family, config.refinement))
            .collect()
    });
    let all_pass = reports.iter().all(|r| counts_as_pass(r, config.allow_inconclusive));
    let rendered = render(&reports, config.format);
    Ok(RunOutcome {
        reports,
        rendered,
        all_pass,
    })
}

/// Write `report.<ext>` into `dir`, creating it if needed.
pub fn write_report(dir: &Path, format: OutputFormat, rendered: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(format!("report.{}", format.extension()));
    std::fs::write(&path, rendered).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

/// One line per report: id, tag, fitted constant, refinement ratio, verdict.
pub fn summary_line(report: &InequalityReport, allow_inconclusive: bool) -> String {
    let fmt = |v: Option<f64>| v.map(|x| format!("{x:.6e}")).unwrap_or_else(|| "-".into());
    let verdict = if counts_as_pass(report, allow_inconclusive) {
        "PASS"
    } else {
        "FAIL"
    };
    let mut line = format!(
        "{verdict} {} [{}] c_fit = {} ratio = {}",
        report.case_id,
        report.theorem.tag(),
        fmt(report.c_fit()),
        fmt(report.refinement_ratio)
    );
    if let Some(e) = &report.error {
        line.push_str(&format!(" error: {e}"));
    } else if report.inconclusive {
        line.push_str(" inconclusive");
    }
    line
}
