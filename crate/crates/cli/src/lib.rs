//! Command-line front end for `chanrep`: channel spec files in, JSON
//! matrices and verdicts out.
//!
//! Exit codes: 0 success, 1 `check` found a failed property, 2 parse or
//! schema error, 3 non-orthonormal basis, 4 I/O error, 5 matrix side not a
//! perfect square, 6 dimension mismatch.

pub mod commands;
pub mod error;
pub mod matrix_io;
pub mod spec;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use commands::{cmd_apply, cmd_check, cmd_convert, cmd_repr, BasisChoice, Form, ReprKind};
pub use error::{exit, CliError};
pub use matrix_io::{emit_matrix, parse_basis, parse_matrix, BasisFile, MatrixFile};
pub use spec::{build_channel, parse_channel_spec, ChannelSpec};

#[derive(Debug, Parser)]
#[command(name = "chanrep", version, about = "Quantum channel representations and checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Matrix representation of a channel.
    Repr {
        /// Channel spec file.
        spec: PathBuf,
        #[arg(long, value_enum)]
        form: Form,
        /// canonical, pauli, or file:PATH (only with --form general).
        #[arg(long, default_value = "canonical")]
        basis: BasisChoice,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reshuffle between natural and Choi matrices.
    Convert {
        #[arg(long, value_enum)]
        from: ReprKind,
        #[arg(long, value_enum)]
        to: ReprKind,
        /// Matrix file.
        matrix: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Complete positivity, trace and Hermiticity preservation.
    Check {
        spec: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Apply a channel to a state.
    Apply {
        spec: PathBuf,
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Runs one command and returns the process exit code. Diagnostics go to
/// stderr; payloads go to stdout or `--out`.
pub fn run(cli: Cli) -> i32 {
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("chanrep: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Repr {
            spec,
            form,
            basis,
            out,
        } => {
            let payload = cmd_repr(&spec, form, &basis)?;
            commands::write_output(out.as_deref(), payload.as_bytes())?;
            Ok(exit::OK)
        }
        Command::Convert {
            from,
            to,
            matrix,
            out,
        } => {
            let payload = cmd_convert(from, to, &matrix)?;
            commands::write_output(out.as_deref(), &payload)?;
            Ok(exit::OK)
        }
        Command::Check { spec, json } => {
            let (report, verdict) = cmd_check(&spec, json)?;
            commands::write_output(None, report.as_bytes())?;
            Ok(if verdict.is_cptp() {
                exit::OK
            } else {
                exit::CHECK_FAILED
            })
        }
        Command::Apply { spec, state, out } => {
            let payload = cmd_apply(&spec, &state)?;
            commands::write_output(out.as_deref(), payload.as_bytes())?;
            Ok(exit::OK)
        }
    }
}
