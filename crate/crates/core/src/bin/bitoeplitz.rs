use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use bitoeplitz::io::{self, read_json};
use bitoeplitz::linalg::CMatrix;
use bitoeplitz::models::{builtin_model, matrix_to_wire, Model, ModelSpec};
use bitoeplitz::report::{self, SuiteSize};
use bitoeplitz::window::TOEPLITZ_TOL;
use bitoeplitz::{Error, Result};

#[derive(Parser)]
#[command(name = "bitoeplitz", version, about = "Toeplitz matrices over imprimitivity bimodules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the bimodule axiom suite on the base module.
    Validate {
        /// Model file or builtin name (scalar, flip, perm3, m2-inner).
        #[arg(long)]
        model: String,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Dimension and structure tensors of the tensor power of degree n.
    Power {
        #[arg(long)]
        model: String,
        #[arg(long, allow_hyphen_values = true)]
        n: i32,
    },
    /// Check the Toeplitz condition on an operator file.
    ToeplitzCheck {
        #[arg(long)]
        model: String,
        #[arg(long)]
        operator: PathBuf,
        #[arg(long, default_value_t = TOEPLITZ_TOL)]
        tol: f64,
    },
    /// Write the left regular representation of a section as an operator file.
    Lambda {
        #[arg(long)]
        model: String,
        #[arg(long)]
        section: PathBuf,
        /// Window radius; defaults to the model's.
        #[arg(long)]
        radius: Option<i32>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Recover a section from a Toeplitz operator file.
    Synthesize {
        #[arg(long)]
        model: String,
        #[arg(long)]
        operator: PathBuf,
        /// Synthesis radius; defaults to twice the operator window.
        #[arg(long)]
        radius: Option<i32>,
        #[arg(long, default_value_t = TOEPLITZ_TOL)]
        tol: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Seminorms p_v(M − Λ_f) for every basis probe v δ_j.
    Seminorms {
        #[arg(long)]
        model: String,
        #[arg(long)]
        operator: PathBuf,
        #[arg(long)]
        section: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Run the seeded property suite and write a report.
    Report {
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Pass,
    Fail,
}

fn print<T: Serialize>(value: &T) -> Result<()> {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{}", serde_json::to_string_pretty(value)?)?;
    Ok(())
}

fn verdict(ok: bool) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn load_spec(source: &str) -> Result<ModelSpec> {
    let path = Path::new(source);
    if path.exists() {
        read_json(path)
    } else {
        builtin_model(source)
    }
}

fn load(source: &str) -> Result<Model> {
    io::load_model(source)
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Validate { model, tol } => {
            let spec = load_spec(&model)?;
            let (_, x) = spec.build_bimodule()?;
            let tol = tol.unwrap_or_else(|| spec.tolerances.get("validate").copied().unwrap_or(1e-9));
            let report = x.validate(tol);
            let checks: Vec<_> = report
                .checks
                .iter()
                .map(|c| json!({ "name": c.name, "residual": c.value, "passed": c.passed }))
                .collect();
            print(&json!({ "model": model, "tol": tol, "passed": report.passed(), "checks": checks }))?;
            Ok(verdict(report.passed()))
        }
        Command::Power { model, n } => {
            let m = load(&model)?;
            let level = m.ladder.level(n)?;
            let wire = |ts: &[CMatrix]| ts.iter().map(matrix_to_wire).collect::<Vec<_>>();
            print(&json!({
                "model": m.name,
                "n": n,
                "dim": level.dim(),
                "left_action": wire(level.left_action_tensor()),
                "right_action": wire(level.right_action_tensor()),
                "inner_left": wire(level.inner_left_tensor()),
                "inner_right": wire(level.inner_right_tensor()),
            }))?;
            Ok(Outcome::Pass)
        }
        Command::ToeplitzCheck { model, operator, tol } => {
            let m = load(&model)?;
            let op = io::load_operator(&operator, &m.ladder)?;
            let check = op.toeplitz_check(&m.ladder, tol)?;
            let residuals: Vec<_> = check
                .residuals
                .iter()
                .map(|((i, j), r)| json!({ "i": i, "j": j, "residual": r }))
                .collect();
            print(&json!({
                "is_toeplitz": check.is_toeplitz,
                "tol": tol,
                "max_residual": check.max_residual,
                "worst": check.worst.map(|(i, j)| [i, j]),
                "residuals": residuals,
            }))?;
            Ok(verdict(check.is_toeplitz))
        }
        Command::Lambda {
            model,
            section,
            radius,
            out,
        } => {
            let m = load(&model)?;
            let f = io::load_section(&section, &m.ladder)?;
            let r = radius.unwrap_or(m.window() as i32);
            io::save_operator(&out, &m.ladder.lambda_rep(&f, r)?)?;
            print(&json!({ "radius": r, "out": out }))?;
            Ok(Outcome::Pass)
        }
        Command::Synthesize {
            model,
            operator,
            radius,
            tol,
            out,
        } => {
            let m = load(&model)?;
            let op = io::load_operator(&operator, &m.ladder)?;
            let n_syn = radius.unwrap_or(2 * op.radius());
            let syn = m.ladder.synthesize_section(&op, n_syn, tol)?;
            io::save_section(&out, &syn.section)?;
            let diagonals: Vec<_> = syn
                .consistency
                .diagonals
                .iter()
                .map(|d| json!({ "k": d.k, "columns": d.columns, "spread": d.spread }))
                .collect();
            print(&json!({
                "radius": n_syn,
                "max_spread": syn.consistency.max_spread,
                "diagonals": diagonals,
                "out": out,
            }))?;
            Ok(verdict(syn.consistency.max_spread < tol))
        }
        Command::Seminorms {
            model,
            operator,
            section,
            tol,
        } => {
            let m = load(&model)?;
            let op = io::load_operator(&operator, &m.ladder)?;
            let f = io::load_section(&section, &m.ladder)?;
            let r = op.radius();
            let mut probes = Vec::new();
            for j in -r..=r {
                let level = m.ladder.level(j)?;
                probes.extend((0..level.dim()).map(|b| (level.basis_element(b), j)));
            }
            let rows = m.ladder.convergence_report(&op, &f, &probes)?;
            let worst = rows.iter().map(|p| p.seminorm).fold(0.0, f64::max);
            let table: Vec<_> = rows
                .iter()
                .zip(&probes)
                .map(|(p, (v, _))| {
                    let basis = v.iter().position(|z| z.re == 1.0).unwrap_or(0);
                    json!({ "j": p.j, "basis": basis, "seminorm": p.seminorm })
                })
                .collect();
            print(&json!({ "tol": tol, "max": worst, "probes": table }))?;
            Ok(verdict(worst < tol))
        }
        Command::Report { model, seed, out } => {
            let m = load(&model)?;
            let start = Instant::now();
            let rep = report::run(&m, seed, SuiteSize::default())?;
            io::write_json(&out, &rep)?;
            let failed: Vec<_> = rep.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
            eprintln!(
                "{}: {} checks, {} failed, {:.2}s",
                rep.model,
                rep.checks.len(),
                failed.len(),
                start.elapsed().as_secs_f64()
            );
            for name in failed {
                eprintln!("  failed: {name}");
            }
            Ok(verdict(rep.passed))
        }
    }
}

/// Exit status for an error: 1 when a mathematical check failed on valid
/// input, 2 for anything wrong with the input itself.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotToeplitz { .. } | Error::NotCreationOperator(_) | Error::NotAdjointable(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let record = json!({ "error": "usage", "message": e.to_string() });
            eprintln!("{record}");
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            let mut record = json!({ "error": e.kind(), "message": e.to_string() });
            if let Error::AxiomViolation { axiom, residual } = &e {
                record["axiom"] = json!(axiom);
                record["residual"] = json!(residual);
            }
            eprintln!("{record}");
            ExitCode::from(exit_code(&e))
        }
    }
}
