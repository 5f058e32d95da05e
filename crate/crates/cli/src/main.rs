use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use hedberg::generators::GENERATOR_CATALOG;
use hedberg::selftest::{run_all, DEFAULT_SEED};
use hedberg_cli::config::{ENV_OUTPUT_DIR, DEFAULT_OUTPUT_DIR};
use hedberg_cli::explain::{parse_exact, Exact, Relation};
use hedberg_cli::run::{execute, summary_line, write_report};
use hedberg_cli::RunConfig;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "hedberg", version, about = "Fit constants in Hedberg and Sobolev-type inequalities on periodic grids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every case of a JSON configuration and write the report.
    Run {
        config: PathBuf,
        /// Report directory (overrides HEDBERG_OUTPUT_DIR and the file).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker thread cap (overrides HEDBERG_JOBS and the file).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Print derived exponents and the relations defining them.
    #[command(subcommand)]
    Explain(ExplainCommand),
    /// List the test-function generators a family can use.
    ListGenerators,
    /// Run the acceptance suite and write its CSV report.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Dimension {
    #[arg(long)]
    n: usize,
}

#[derive(Subcommand)]
enum ExplainCommand {
    /// q from 1/q = 1/p - s/n.
    Sobolev {
        #[command(flatten)]
        dim: Dimension,
        #[arg(long, value_parser = exact)]
        s: Exact,
        #[arg(long, value_parser = exact)]
        p: Exact,
    },
    /// theta = (s - s1) / (beta + s).
    Hedberg {
        #[arg(long, value_parser = exact)]
        s: Exact,
        #[arg(long, value_parser = exact, default_value = "0")]
        s1: Exact,
        #[arg(long, value_parser = exact)]
        beta: Exact,
    },
    /// r = n / (n - s) for the Riesz kernel.
    Riesz {
        #[command(flatten)]
        dim: Dimension,
        #[arg(long, value_parser = exact)]
        s: Exact,
    },
    /// q from 1 + 1/q = 1/r + 1/p.
    YoungOneil {
        #[arg(long, value_parser = exact)]
        r: Exact,
        #[arg(long, value_parser = exact)]
        p: Exact,
    },
    /// sigma(.) = n p(.) / (n - s frak_p) at p- and p+, and theta = s frak_p / n.
    Mixed {
        #[command(flatten)]
        dim: Dimension,
        #[arg(long, value_parser = exact)]
        s: Exact,
        #[arg(long, value_parser = exact)]
        frak_p: Exact,
        #[arg(long, value_parser = exact)]
        p_minus: Exact,
        #[arg(long, value_parser = exact)]
        p_plus: Exact,
    },
    /// q(.) from 1/q(.) = 1/p(.) - s/n at p- and p+.
    Variable {
        #[command(flatten)]
        dim: Dimension,
        #[arg(long, value_parser = exact)]
        s: Exact,
        #[arg(long, value_parser = exact)]
        p_minus: Exact,
        #[arg(long, value_parser = exact)]
        p_plus: Exact,
    },
}

fn exact(text: &str) -> Result<Exact, String> {
    parse_exact(text).map_err(|e| e.to_string())
}

impl ExplainCommand {
    fn relation(self) -> Relation {
        match self {
            ExplainCommand::Sobolev { dim, s, p } => Relation::Sobolev { n: dim.n, s, p },
            ExplainCommand::Hedberg { s, s1, beta } => Relation::Hedberg { s, s1, beta },
            ExplainCommand::Riesz { dim, s } => Relation::Riesz { n: dim.n, s },
            ExplainCommand::YoungOneil { r, p } => Relation::YoungOneil { r, p },
            ExplainCommand::Mixed {
                dim,
                s,
                frak_p,
                p_minus,
                p_plus,
            } => Relation::Mixed {
                n: dim.n,
                s,
                frak_p,
                p_minus,
                p_plus,
            },
            ExplainCommand::Variable { dim, s, p_minus, p_plus } => Relation::Variable {
                n: dim.n,
                s,
                p_minus,
                p_plus,
            },
        }
    }
}

fn run(config: &Path, out: Option<&Path>, jobs: Option<usize>) -> Result<bool> {
    let config = RunConfig::load(config)?;
    let jobs = config.resolved_jobs(jobs)?;
    let outcome = execute(&config, jobs)?;
    for report in &outcome.reports {
        println!("{}", summary_line(report, config.allow_inconclusive));
    }
    let path = write_report(&config.resolved_output_dir(out), config.format, &outcome.rendered)?;
    println!("report: {}", path.display());
    Ok(outcome.all_pass)
}

fn selftest(seed: u64, out: Option<&Path>) -> Result<bool> {
    let suite = run_all(seed);
    for outcome in &suite.outcomes {
        println!("{outcome}");
    }
    let dir = out
        .map(Path::to_path_buf)
        .or_else(|| std::env::var_os(ENV_OUTPUT_DIR).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUTPUT_DIR));
    std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join("selftest.csv");
    std::fs::write(&path, &suite.csv).with_context(|| format!("writing {}", path.display()))?;
    println!("report: {}", path.display());
    Ok(suite.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { config, out, jobs } => run(&config, out.as_deref(), jobs),
        Command::Explain(cmd) => cmd.relation().table().map(|t| {
            print!("{t}");
            true
        }),
        Command::ListGenerators => {
            for (name, detail) in GENERATOR_CATALOG {
                println!("{name:<20} {detail}");
            }
            Ok(true)
        }
        Command::Selftest { seed, out } => selftest(seed, out.as_deref()),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
