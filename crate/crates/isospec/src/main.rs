//! Thin CLI over the library: run registered scenarios, list the catalog,
//! or verify a user-supplied (h1, x1) pair from operator JSON files.
//!
//! Exit codes: 0 all bounds pass, 1 residual failure, 2 configuration
//! error, 3 hypothesis refusal.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use isospec::error::Error;
use isospec::operator::Operator;
use isospec::report::{emit_report, ConfigValue, ReportFormat, RunReport};
use isospec::scenario::{list_scenarios, run_scenario, verify_pair};

#[derive(Parser)]
#[command(
    name = "isospec",
    about = "isospectral partner Hamiltonians from intertwining operators, with coherent-state verification"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a registered scenario and evaluate its residual bounds.
    Run {
        scenario: String,
        /// Truncation dimension override.
        #[arg(long)]
        dim: Option<usize>,
        /// Deformation parameter override (quon scenarios).
        #[arg(long)]
        q: Option<f64>,
        #[arg(long = "J1")]
        j1: Option<f64>,
        #[arg(long = "J2")]
        j2: Option<f64>,
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long)]
        delta: Option<f64>,
        /// Additional overrides as KEY=VALUE (repeatable).
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        /// Write the report to this path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Report format: json or csv.
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Print the scenario catalog.
    List,
    /// Verify a user-supplied pair in the operator JSON format.
    Verify {
        #[arg(long)]
        h1: PathBuf,
        #[arg(long)]
        x1: PathBuf,
        /// Interior margin; defaults to the band arithmetic of the inputs.
        #[arg(long)]
        margin: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json")]
        format: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}

fn dispatch(cli: Cli) -> Result<i32, Error> {
    match cli.cmd {
        Cmd::List => {
            print!("{}", list_scenarios());
            Ok(0)
        }
        Cmd::Run {
            scenario,
            dim,
            q,
            j1,
            j2,
            gamma,
            delta,
            set,
            out,
            format,
        } => {
            let mut overrides: Vec<(String, ConfigValue)> = Vec::new();
            if let Some(d) = dim {
                overrides.push(("dim".into(), ConfigValue::Int(d)));
            }
            if let Some(v) = q {
                overrides.push(("q".into(), ConfigValue::Float(v)));
            }
            if let Some(v) = j1 {
                overrides.push(("j1".into(), ConfigValue::Float(v)));
            }
            if let Some(v) = j2 {
                overrides.push(("j2".into(), ConfigValue::Float(v)));
            }
            if let Some(v) = gamma {
                overrides.push(("gamma".into(), ConfigValue::Float(v)));
            }
            if let Some(v) = delta {
                overrides.push(("delta".into(), ConfigValue::Float(v)));
            }
            for raw in &set {
                let (key, value) = raw.split_once('=').ok_or_else(|| {
                    Error::Config(format!("--set expects KEY=VALUE, got '{raw}'"))
                })?;
                overrides.push((key.to_string(), ConfigValue::parse(value)));
            }
            let report = run_scenario(&scenario, &overrides)?;
            finish(report, out, &format)
        }
        Cmd::Verify {
            h1,
            x1,
            margin,
            out,
            format,
        } => {
            let h1_op = load_operator(&h1)?;
            let x1_op = load_operator(&x1)?;
            let report = verify_pair(&h1_op, &x1_op, margin)?;
            finish(report, out, &format)
        }
    }
}

fn load_operator(path: &PathBuf) -> Result<Operator, Error> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    Operator::from_json_str(&text, &path.display().to_string())
}

fn finish(report: RunReport, out: Option<PathBuf>, format: &str) -> Result<i32, Error> {
    let format: ReportFormat = format.parse()?;
    for b in &report.bounds {
        let tag = if b.pass { "pass" } else { "FAIL" };
        let rel = match b.kind {
            isospec::report::BoundKind::Upper => "<=",
            isospec::report::BoundKind::Lower => ">=",
        };
        println!(
            "[{tag}] {:<24} {:>13.6e} {rel} {:.3e}",
            b.key, b.value, b.effective_limit
        );
    }
    for (key, status) in &report.statuses {
        println!("[info] {key}: {status}");
    }
    println!(
        "scenario {}: {} ({} bounds, {:.1} ms)",
        report.scenario,
        if report.pass { "PASS" } else { "FAIL" },
        report.bounds.len(),
        report.wall.as_secs_f64() * 1e3
    );
    if let Some(path) = out {
        emit_report(&report, format, &path)?;
        println!("report written to {}", path.display());
    }
    Ok(report.exit_code())
}
