use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use antimagic_core::export::{export_dot, export_json, import_json};
use antimagic_core::oracle::{
    brute_force_antimagic, OracleError, OracleOutcome, SearchBudget, SpecBounds,
};
use antimagic_core::spine::DEFAULT_NODE_BUDGET;
use antimagic_core::sweep::{run_sweep, RowResult, SweepOptions};
use antimagic_core::{
    construct_with, verify_antimagic, CaterpillarSpec, ConstructError, ConstructOptions,
};

// exit codes
const OK: u8 = 0;
const MALFORMED: u8 = 1;
const UNSUPPORTED: u8 = 2;
const SEARCH_FAILED: u8 = 3;
const VIOLATION: u8 = 4;
const NOT_FOUND: u8 = 5;

#[derive(Parser)]
#[command(
    name = "antimagic",
    version,
    about = "Antimagic orientations of subdivided caterpillars"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Build a labeled orientation for an instance file ({"p","k","legs"}).
    Construct {
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Output file; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the construction trace as JSON here.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Node limit for the spine search.
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Check a result file: labels biject onto 1..=m and all sums differ.
    Verify { result: PathBuf },
    /// Construct and verify every instance within the bounds.
    Sweep {
        #[arg(long, default_value_t = 8)]
        p_max: usize,
        #[arg(long, default_value_t = 5)]
        k_max: usize,
        #[arg(long, default_value_t = 4)]
        s_max: usize,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Report path stem; writes <stem>.csv and <stem>.json.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        /// Record per-row wall time (makes reports non-reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Exhaustive search for any antimagic labeled orientation of a tiny instance.
    Oracle {
        instance: PathBuf,
        #[arg(long, default_value_t = 9)]
        max_edges: usize,
        /// Write the labeling found as result JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-emit a result file as DOT or normalized JSON.
    Export {
        result: PathBuf,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_instance(path: &Path) -> Result<CaterpillarSpec> {
    serde_json::from_str(&read(path)?)
        .with_context(|| format!("invalid instance {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(
    format: Format,
    spec: &CaterpillarSpec,
    lo: &antimagic_core::LabeledOrientation,
) -> String {
    match format {
        Format::Json => export_json(spec, lo),
        Format::Dot => export_dot(spec, lo),
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Construct {
            instance,
            format,
            out,
            trace,
            budget,
        } => {
            let spec = read_instance(&instance)?;
            let opts = ConstructOptions {
                node_budget: budget,
                ..Default::default()
            };
            match construct_with(&spec, &opts) {
                Ok((lo, tr)) => {
                    emit(out.as_deref(), &render(format, &spec, &lo))?;
                    if let Some(path) = trace {
                        let text = serde_json::to_string_pretty(&tr)? + "\n";
                        fs::write(&path, text)
                            .with_context(|| format!("writing {}", path.display()))?;
                    }
                    Ok(OK)
                }
                Err(e @ ConstructError::UnsupportedShape(_)) => {
                    eprintln!("error: {e}");
                    Ok(UNSUPPORTED)
                }
                Err(e @ ConstructError::Spine(_)) => {
                    eprintln!("error: {e}");
                    Ok(SEARCH_FAILED)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    Ok(VIOLATION)
                }
            }
        }
        Command::Verify { result } => {
            let (spec, lo) = import_json(&read(&result)?)
                .with_context(|| format!("invalid result {}", result.display()))?;
            match verify_antimagic(&spec, &lo) {
                Ok(()) => {
                    println!(
                        "ok: antimagic ({} edges, {} vertices)",
                        spec.edge_count(),
                        spec.vertex_count()
                    );
                    Ok(OK)
                }
                Err(v) => {
                    println!("violation: {v}");
                    println!("{}", serde_json::to_string(&v)?);
                    Ok(VIOLATION)
                }
            }
        }
        Command::Sweep {
            p_max,
            k_max,
            s_max,
            jobs,
            report,
            budget,
            timing,
        } => {
            anyhow::ensure!(
                p_max >= 2 && k_max >= 2 && s_max >= 1,
                "bounds need p_max >= 2, k_max >= 2, s_max >= 1"
            );
            let opts = SweepOptions {
                jobs,
                construct: ConstructOptions {
                    node_budget: budget,
                    ..Default::default()
                },
                timing,
            };
            let r = run_sweep(
                SpecBounds {
                    p_max,
                    k_max,
                    s_max,
                },
                &opts,
            );
            for row in r.rows.iter().filter(|row| row.result != RowResult::Pass) {
                eprintln!(
                    "{} {:?}: {}",
                    row.result.as_str(),
                    row.spec,
                    row.detail.as_deref().unwrap_or("")
                );
            }
            if let Some(stem) = report {
                let csv = stem.with_extension("csv");
                let json = stem.with_extension("json");
                fs::write(&csv, r.to_csv())
                    .with_context(|| format!("writing {}", csv.display()))?;
                fs::write(&json, r.to_json())
                    .with_context(|| format!("writing {}", json.display()))?;
            }
            println!(
                "{} instances: {} passed, {} failed",
                r.summary.total, r.summary.passed, r.summary.failed
            );
            Ok(if r.summary.failed == 0 { OK } else { VIOLATION })
        }
        Command::Oracle {
            instance,
            max_edges,
            out,
        } => {
            let spec = read_instance(&instance)?;
            let budget = SearchBudget {
                max_edges,
                ..Default::default()
            };
            match brute_force_antimagic(&spec, &budget) {
                Ok(OracleOutcome::Found(lo)) => {
                    println!("found");
                    if let Some(path) = out {
                        fs::write(&path, export_json(&spec, &lo))
                            .with_context(|| format!("writing {}", path.display()))?;
                    }
                    Ok(OK)
                }
                Ok(OracleOutcome::NotFound) => {
                    println!("not found");
                    Ok(NOT_FOUND)
                }
                Ok(OracleOutcome::BudgetExceeded) => {
                    println!("budget exceeded");
                    Ok(SEARCH_FAILED)
                }
                Err(e @ (OracleError::TooLarge { .. } | OracleError::CapExceeded(_))) => {
                    eprintln!("error: {e}");
                    Ok(UNSUPPORTED)
                }
            }
        }
        Command::Export {
            result,
            format,
            out,
        } => {
            let (spec, lo) = import_json(&read(&result)?)
                .with_context(|| format!("invalid result {}", result.display()))?;
            emit(out.as_deref(), &render(format, &spec, &lo))?;
            Ok(OK)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(MALFORMED)
        }
    }
}
