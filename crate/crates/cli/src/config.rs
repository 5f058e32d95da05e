//! Run configuration: a JSON file, validated in full before any numerical work.

use anyhow::{bail, Context, Result};
use hedberg::generators::GeneratorSpec;
use hedberg::grid::DomainSpec;
use hedberg::harness::{CaseSpec, FunctionFamily, STANDARD_FAMILY_SIZE};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::path::{Path, PathBuf};

pub const ENV_OUTPUT_DIR: &str = "HEDBERG_OUTPUT_DIR";
pub const ENV_JOBS: &str = "HEDBERG_JOBS";
pub const DEFAULT_OUTPUT_DIR: &str = "hedberg-out";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(&self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilySpec {
    /// Gaussians, bumps, single modes and random band-limited fields.
    Standard {
        seed: u64,
        #[serde(default = "standard_size")]
        size: usize,
    },
    Explicit {
        members: Vec<GeneratorSpec>,
        #[serde(default)]
        seed: u64,
    },
}

fn standard_size() -> usize {
    STANDARD_FAMILY_SIZE
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub domain: DomainSpec,
    pub family: FamilySpec,
    #[serde(default)]
    pub cases: Vec<CaseSpec>,
    #[serde(default)]
    pub format: OutputFormat,
    /// Re-run every case on the grid with twice the points per axis.
    #[serde(default = "yes")]
    pub refinement: bool,
    /// Upper bound on worker threads; all cores when absent.
    #[serde(default)]
    pub jobs: Option<usize>,
    /// Count cases whose every member was skipped as passing.
    #[serde(default)]
    pub allow_inconclusive: bool,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: RunConfig = serde_json::from_str(text).context("malformed configuration")?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::from_json(&text).with_context(|| format!("loading {}", path.display()))
    }

    /// Domain, family and every case gate; the first violation is returned.
    pub fn validate(&self) -> Result<()> {
        self.domain.validate()?;
        self.family()?;
        if self.jobs == Some(0) {
            bail!("jobs must be at least 1");
        }
        let mut seen = HashSet::new();
        for case in &self.cases {
            if !seen.insert(case.id.as_str()) {
                bail!("duplicate case id `{}`", case.id);
            }
            case.validate(self.domain.dimension)
                .with_context(|| format!("case `{}`", case.id))?;
        }
        Ok(())
    }

    pub fn family(&self) -> Result<FunctionFamily> {
        Ok(match &self.family {
            FamilySpec::Standard { seed, size } => FunctionFamily::standard(self.domain, *seed, *size)?,
            FamilySpec::Explicit { members, seed } => FunctionFamily::explicit(self.domain, members.clone(), *seed)?,
        })
    }

    /// `flag`, then the environment, then the file, then the default.
    pub fn resolved_output_dir(&self, flag: Option<&Path>) -> PathBuf {
        flag.map(Path::to_path_buf)
            .or_else(|| std::env::var_os(ENV_OUTPUT_DIR).map(PathBuf::from))
            .or_else(|| self.output_dir.clone())
            .unwrap_or_else(|| PathBuf::from(DEFAULT_OUTPUT_DIR))
    }

    /// `flag`, then the environment, then the file.
    pub fn resolved_jobs(&self, flag: Option<usize>) -> Result<Option<usize>> {
        let jobs = match (flag, std::env::var(ENV_JOBS)) {
            (Some(j), _) => Some(j),
            (None, Ok(v)) => Some(v.trim().parse().with_context(|| format!("{ENV_JOBS} = {v:?}"))?),
            (None, Err(_)) => self.jobs,
        };
        if jobs == Some(0) {
            bail!("jobs must be at least 1");
        }
        Ok(jobs)
    }
}
