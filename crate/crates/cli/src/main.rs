//! Command-line front end: run catalog scenarios or solve user-supplied CTC
//! problems from matrix documents.
//!
//! Exit codes: 0 success, 1 usage or validation error, 2 paradoxical history
//! (no consistent trajectory), 3 solver non-convergence.

mod document;
mod render;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ctcsim_core::ctc::{
    solve_deutsch_iterative, solve_pctc, CtcError, CtcMethod, CtcWiring, DeutschOptions,
    DEFAULT_PARADOX_EPS,
};
use ctcsim_core::scenarios::{run_scenario, ParamValue, ScenarioConfig, ScenarioError};

use document::{load_document, DocumentPayload};
use render::{render_scenario, render_solution, Format};

#[derive(Parser)]
#[command(
    name = "ctcsim",
    version,
    about = "Simulate qubits on closed timelike curves under the density-operator and post-selected boundary conditions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named scenario from the catalog.
    Run {
        /// Scenario name (see the error message of an unknown name for the list).
        scenario: String,
        /// Parameter override, repeatable: --param alpha=0.6
        #[arg(long = "param", value_name = "KEY=VALUE")]
        params: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Seed for randomized scenarios.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Fixed-point solver tolerance override.
        #[arg(long)]
        tol: Option<f64>,
        /// Fixed-point solver iteration budget override.
        #[arg(long = "max-iter")]
        max_iter: Option<usize>,
    },
    /// Solve a CTC interaction given a unitary and an input state document.
    Solve {
        /// Path to a matrix document of kind "unitary" with two equal rail dims.
        #[arg(long)]
        unitary: PathBuf,
        /// Path to a matrix document of kind "state_vector" or "density".
        #[arg(long)]
        input: PathBuf,
        /// Boundary condition: deutsch or pctc.
        #[arg(long)]
        method: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long = "max-iter")]
        max_iter: Option<usize>,
    },
}

fn parse_params(raw: &[String]) -> Result<BTreeMap<String, ParamValue>, String> {
    let mut params = BTreeMap::new();
    for entry in raw {
        let Some((key, value)) = entry.split_once('=') else {
            return Err(format!("--param '{entry}' is not of the form key=value"));
        };
        if key.is_empty() {
            return Err(format!("--param '{entry}' has an empty key"));
        }
        let parsed = match value.parse::<f64>() {
            Ok(x) => ParamValue::Real(x),
            Err(_) => ParamValue::Text(value.to_string()),
        };
        params.insert(key.to_string(), parsed);
    }
    Ok(params)
}

fn ctc_exit_code(error: &CtcError) -> u8 {
    match error {
        CtcError::Paradox { .. } => 2,
        CtcError::NonConvergence { .. } => 3,
        _ => 1,
    }
}

fn scenario_exit_code(error: &ScenarioError) -> u8 {
    match error {
        ScenarioError::Ctc(inner) => ctc_exit_code(inner),
        _ => 1,
    }
}

fn cmd_run(
    scenario: &str,
    raw_params: &[String],
    format: Format,
    seed: u64,
    tol: Option<f64>,
    max_iter: Option<usize>,
) -> Result<String, (u8, String)> {
    let params = parse_params(raw_params).map_err(|e| (1, e))?;
    let config = ScenarioConfig {
        seed,
        tol,
        max_iter,
    };
    match run_scenario(scenario, &params, &config) {
        Ok(result) => Ok(render_scenario(&result, format)),
        Err(error) => Err((scenario_exit_code(&error), error.to_string())),
    }
}

fn cmd_solve(
    unitary: &PathBuf,
    input: &PathBuf,
    method: &str,
    format: Format,
    tol: Option<f64>,
    max_iter: Option<usize>,
) -> Result<String, (u8, String)> {
    let method: CtcMethod = method.parse().map_err(|e: String| (1, e))?;

    let gate = match load_document(unitary).map_err(|e| (1, e))? {
        DocumentPayload::Unitary(gate) => gate,
        _ => {
            return Err((
                1,
                format!("{}: expected a document of kind 'unitary'", unitary.display()),
            ))
        }
    };
    let wiring = CtcWiring::new(gate).map_err(|e| (1, e.to_string()))?;

    let rho_in = match load_document(input).map_err(|e| (1, e))? {
        DocumentPayload::StateVector(psi) => psi.projector(),
        DocumentPayload::Density(rho) => rho,
        DocumentPayload::Unitary(_) => {
            return Err((
                1,
                format!(
                    "{}: expected a state_vector or density document",
                    input.display()
                ),
            ))
        }
    };
    if rho_in.dim() != wiring.rail_dim() {
        return Err((
            1,
            format!(
                "input dimension {} does not match rail dimension {}",
                rho_in.dim(),
                wiring.rail_dim()
            ),
        ));
    }

    let solution = match method {
        CtcMethod::Deutsch => {
            let mut opts = DeutschOptions::default();
            if let Some(tol) = tol {
                opts.tol = tol;
            }
            if let Some(max_iter) = max_iter {
                opts.max_iter = max_iter;
            }
            solve_deutsch_iterative(&rho_in, &wiring, &opts)
        }
        CtcMethod::Pctc => solve_pctc(&rho_in, &wiring, DEFAULT_PARADOX_EPS),
    };
    match solution {
        Ok(solution) => Ok(render_solution(&solution, format)),
        Err(error) => Err((ctc_exit_code(&error), error.to_string())),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(error) => {
            // Help and version requests are successes, everything else is a
            // usage error (exit 1; clap's default of 2 is reserved for
            // paradoxes here).
            use clap::error::ErrorKind;
            if matches!(
                error.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                print!("{error}");
                return ExitCode::SUCCESS;
            }
            eprint!("{error}");
            return ExitCode::from(1);
        }
    };

    let outcome = match &cli.command {
        Command::Run {
            scenario,
            params,
            format,
            seed,
            tol,
            max_iter,
        } => cmd_run(scenario, params, *format, *seed, *tol, *max_iter),
        Command::Solve {
            unitary,
            input,
            method,
            format,
            tol,
            max_iter,
        } => cmd_solve(unitary, input, method, *format, *tol, *max_iter),
    };

    match outcome {
        Ok(report) => {
            print!("{report}");
            ExitCode::SUCCESS
        }
        Err((code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
