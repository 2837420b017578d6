//! `ree-syl`: exact computations in the Sylow 3-subgroups of the Ree groups.
//!
//! Exit status: 0 when every requested check passes, 1 when a check fails
//! (a JSON failure record goes to stderr), 2 on bad arguments.

mod commands;
mod emit;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ree_syl::Error;

use emit::Format;

#[derive(Parser, Debug)]
#[command(name = "ree-syl", version, about = "Sylow 3-subgroups of the Ree groups 2G2(3^(2m+1))")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Field parameter: q = 3^(2m+1).
    #[arg(long, global = true, default_value_t = 0)]
    pub m: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Sampling budget for checks that are not exhaustive.
    #[arg(long, global = true, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (default: REE_SYL_JOBS, else all cores).
    #[arg(long, global = true, env = "REE_SYL_JOBS")]
    pub jobs: Option<usize>,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Field size, Frobenius parameter and modulus.
    FieldInfo,
    /// Group operations on elements written `Y(t1;t3;t4)`, field elements
    /// as comma-separated coefficients `c0,c1,...`.
    Group {
        #[command(subcommand)]
        op: GroupOp,
    },
    /// Checks of the 8×8 realization.
    Chevalley {
        #[command(subcommand)]
        op: ChevalleyOp,
    },
    /// Orbits of U on the pattern space.
    Orbits {
        /// A single pattern `a12;a13;a14`.
        #[arg(long)]
        pattern: Option<String>,
    },
    /// Conjugacy classes.
    Classes {
        /// Close each element under conjugation instead of using the closed form.
        #[arg(long)]
        brute_force: bool,
    },
    /// The superclass partition.
    Superclasses,
    /// The supercharacter table.
    Supertable,
    /// The character table at q = 3.
    Chartable {
        /// Run orthogonality, decomposition and published-table checks.
        #[arg(long)]
        verify: bool,
    },
    /// Verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
}

#[derive(Subcommand, Debug)]
pub enum GroupOp {
    Mul { x: String, y: String },
    Inv { x: String },
    /// `by · x · by⁻¹`.
    Conj { x: String, by: String },
    /// `x⁻¹ y⁻¹ x y`.
    Comm { x: String, y: String },
}

#[derive(Subcommand, Debug)]
pub enum ChevalleyOp {
    /// Group laws, commutator relations, fixed points, display diagnostic.
    Check,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    All,
    Cocycle,
    Matrix,
    Classes,
    Axioms,
    Chartable,
}

fn is_argument_error(e: &Error) -> bool {
    matches!(
        e,
        Error::UnsupportedTower { .. }
            | Error::Parse(_)
            | Error::CapExceeded { .. }
            | Error::NotVerge(_)
            | Error::NotInG2(_)
            | Error::Domain { .. }
            | Error::RequiresPrimeField { .. }
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.global.jobs {
        ree_syl::par::set_jobs(jobs);
    }
    let rendered = match commands::run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("ree-syl: {e}");
            if is_argument_error(&e) {
                return ExitCode::from(2);
            }
            let record = serde_json::json!({ "status": "error", "error": e.to_string() });
            eprintln!("{record}");
            return ExitCode::from(1);
        }
    };
    let bytes = emit::render(&rendered, cli.global.format);
    let written = match &cli.global.output {
        Some(path) => std::fs::write(path, &bytes)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(&bytes)
            .map_err(|e| format!("cannot write to standard output: {e}")),
    };
    if let Err(msg) = written {
        eprintln!("ree-syl: {msg}");
        return ExitCode::from(1);
    }
    if !rendered.ok {
        let record = serde_json::json!({ "status": "failed", "report": rendered.json });
        eprintln!("{record}");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
