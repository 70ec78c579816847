//! Command-line harness: seeded invariant suites (`check`), scenario
//! execution (`run`), and the polar-factor utility (`decompose`).
//!
//! Exit codes: 0 every assertion passed, 1 an assertion failed,
//! 2 usage or parse error.

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use krein::{cartan_decompose, GroupElement, DEFAULT_TOL};
use krein_cli::report::{mat4_from, mat4_json};
use krein_cli::scenario::Scenario;
use krein_cli::suites;

#[derive(Parser)]
#[command(name = "krein", version, about = "Indefinite-metric measurement calculus harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run every randomized invariant suite with a fixed seed.
    Check {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Number of random instances per suite (must be at least 1).
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Execute a scenario file (systems, pipeline, optional frame).
    Run {
        #[arg(long)]
        scenario: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Polar (Cartan) decomposition of a pseudo-unitary matrix.
    Decompose {
        #[arg(long)]
        input: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Check {
            seed,
            trials,
            tol,
            format,
        } => cmd_check(seed, trials, tol, format),
        Command::Run { scenario, format } => cmd_run(&scenario, format),
        Command::Decompose { input, format } => cmd_decompose(&input, format),
    }
}

fn cmd_check(seed: u64, trials: u64, tol: f64, format: Format) -> ExitCode {
    if !(tol.is_finite() && tol > 0.0) {
        eprintln!("error: --tol must be positive and finite");
        return ExitCode::from(2);
    }
    let reports = suites::run_all(seed, trials, tol);
    let pass = reports.iter().all(|r| r.pass());
    match format {
        Format::Json => {
            let suites_json: serde_json::Map<String, serde_json::Value> = reports
                .iter()
                .map(|r| (r.name.to_string(), r.to_json()))
                .collect();
            let out = json!({
                "command": "check",
                "seed": seed,
                "trials": trials,
                "tol": tol,
                "suites": suites_json,
                "pass": pass,
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
        }
        Format::Text => {
            println!("check seed={seed} trials={trials} tol={tol:e}");
            for r in &reports {
                println!(
                    "{}: {} (max residual {:.3e})",
                    r.name,
                    if r.pass() { "PASS" } else { "FAIL" },
                    r.max_residual()
                );
                if !r.pass() {
                    for (check, residual) in &r.checks {
                        let threshold = r.thresholds[check];
                        if !(residual.is_finite() && *residual <= threshold) {
                            println!(
                                "  {check}: FAIL residual {residual:.3e} > threshold {threshold:.3e}"
                            );
                        }
                    }
                }
            }
            println!("overall: {}", if pass { "PASS" } else { "FAIL" });
        }
    }
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_run(path: &str, format: Format) -> ExitCode {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {path}: {e}");
            return ExitCode::from(2);
        }
    };
    let scenario = match Scenario::parse(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {path}: {e}");
            return ExitCode::from(2);
        }
    };
    let (report, pass) = match scenario.run() {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {path}: {e}");
            return ExitCode::from(2);
        }
    };
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
        }
        Format::Text => {
            println!("run {path}");
            if let Some(born) = report["born"].as_object() {
                for (label, table) in born {
                    println!("  born[{label}] = {table}");
                }
            }
            if report["pipeline"].is_object() {
                println!("  pipeline trace = {}", report["pipeline"]["trace"]);
                println!("  weights = {}", report["pipeline"]["weights"]);
            }
            if report["invariance"].is_object() {
                println!(
                    "  invariance: {}",
                    if report["invariance"]["pass"].as_bool() == Some(true) {
                        "PASS"
                    } else {
                        "FAIL"
                    }
                );
            }
            println!("  overall: {}", if pass { "PASS" } else { "FAIL" });
        }
    }
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DecomposeInput {
    matrix: [[[f64; 2]; 4]; 4],
    #[serde(default)]
    tol: Option<f64>,
}

fn cmd_decompose(path: &str, format: Format) -> ExitCode {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {path}: {e}");
            return ExitCode::from(2);
        }
    };
    let input: DecomposeInput = match serde_json::from_str(&text) {
        Ok(i) => i,
        Err(e) => {
            eprintln!("error: {path}: invalid input: {e}");
            return ExitCode::from(2);
        }
    };
    let tol = input.tol.unwrap_or(DEFAULT_TOL);
    let matrix = mat4_from(&input.matrix);
    let element = match GroupElement::new(matrix, tol.max(1e-9)) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let factors = match cartan_decompose(&element, 1e-12) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let rebuilt = factors.unitary_part.matrix() * factors.positive_part.matrix();
    let residual = (rebuilt - matrix).max_norm();
    let pass = residual < tol.max(1e-9);
    match format {
        Format::Json => {
            let out = json!({
                "command": "decompose",
                "unitary": mat4_json(&factors.unitary_part.matrix()),
                "positive": mat4_json(&factors.positive_part.matrix()),
                "residual": residual,
                "pass": pass,
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
        }
        Format::Text => {
            println!("decompose {path}");
            println!("  reconstruction residual = {residual:.3e}");
            println!("  {}", if pass { "PASS" } else { "FAIL" });
        }
    }
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
