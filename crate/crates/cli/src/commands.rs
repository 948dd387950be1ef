//! Command implementations. Each returns the payload it would write; the
//! binary decides between stdout and `--out`.

use std::fs;
use std::path::{Path, PathBuf};

use chanrep::linalg::exact_sqrt;
use chanrep::{
    base_matrices, choi_representation, general_natural_representation, is_cptp,
    natural_representation, pauli_basis, reshuffle, ChannelVerdict, MatrixBasis,
};
use clap::ValueEnum;
use serde::Serialize;

use crate::error::CliError;
use crate::matrix_io::{emit_matrix, parse_basis, parse_matrix};
use crate::spec::{build_channel, parse_channel_spec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Form {
    Natural,
    General,
    Choi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReprKind {
    Natural,
    Choi,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisChoice {
    Canonical,
    Pauli,
    File(PathBuf),
}

impl std::str::FromStr for BasisChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "canonical" => Ok(BasisChoice::Canonical),
            "pauli" => Ok(BasisChoice::Pauli),
            _ => match s.strip_prefix("file:") {
                Some(path) if !path.is_empty() => Ok(BasisChoice::File(PathBuf::from(path))),
                _ => Err(format!("expected canonical, pauli or file:PATH, got `{s}`")),
            },
        }
    }
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

/// Writes `payload` to `out`, or to stdout when `out` is `None`.
pub fn write_output(out: Option<&Path>, payload: &[u8]) -> Result<(), CliError> {
    use std::io::Write;
    match out {
        Some(path) => fs::write(path, payload).map_err(|source| CliError::Io {
            path: path.to_owned(),
            source,
        }),
        None => std::io::stdout()
            .write_all(payload)
            .map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

fn load_channel(spec_path: &Path) -> Result<chanrep::Channel, CliError> {
    let name = spec_path.display().to_string();
    let spec = parse_channel_spec(&read_text(spec_path)?, &name)?;
    build_channel(&spec, &name)
}

fn load_basis(choice: &BasisChoice, n: usize) -> Result<MatrixBasis, CliError> {
    let basis = match choice {
        BasisChoice::Canonical => base_matrices(n),
        BasisChoice::Pauli => pauli_basis(),
        BasisChoice::File(path) => parse_basis(&read_text(path)?, &path.display().to_string())?,
    };
    if basis.dim() != n {
        return Err(CliError::DimensionMismatch(format!(
            "dimension mismatch: basis acts on {0}x{0} matrices, channel on {n}x{n}",
            basis.dim()
        )));
    }
    Ok(basis)
}

/// `repr`: natural, general-basis or Choi matrix of the channel in `spec_path`.
pub fn cmd_repr(spec_path: &Path, form: Form, basis: &BasisChoice) -> Result<String, CliError> {
    let ch = load_channel(spec_path)?;
    if form != Form::General && *basis != BasisChoice::Canonical {
        return Err(CliError::Usage("--basis only applies to --form general".into()));
    }
    let matrix = match form {
        Form::Natural => natural_representation(&ch).into_matrix(),
        Form::Choi => choi_representation(&ch).into_matrix(),
        Form::General => {
            let b = load_basis(basis, ch.dim())?;
            match general_natural_representation(&ch, &b) {
                Ok(m) => m.into_matrix(),
                Err(chanrep::Error::NotOrthonormal(dev)) => return Err(CliError::NotOrthonormal(dev)),
                Err(e) => return Err(CliError::DimensionMismatch(e.to_string())),
            }
        }
    };
    Ok(emit_matrix(&matrix))
}

/// `convert`: reshuffle between natural and Choi forms. With `from == to`
/// the input bytes are returned unchanged after validation.
pub fn cmd_convert(from: ReprKind, to: ReprKind, matrix_path: &Path) -> Result<Vec<u8>, CliError> {
    let name = matrix_path.display().to_string();
    let text = read_text(matrix_path)?;
    let m = parse_matrix(&text, &name)?;
    if exact_sqrt(m.rows()).is_none() {
        return Err(CliError::NonSquareSide {
            source_name: name,
            side: m.rows(),
        });
    }
    if from == to {
        return Ok(text.into_bytes());
    }
    let out = reshuffle(&m).expect("side checked above");
    Ok(emit_matrix(&out).into_bytes())
}

#[derive(Serialize)]
struct VerdictJson {
    completely_positive: bool,
    trace_preserving: bool,
    hermiticity_preserving: bool,
    min_choi_eigenvalue: f64,
    tp_residual: f64,
    hp_residual: f64,
    cptp: bool,
}

/// `check`: the verdict report and whether the channel is CPTP.
pub fn cmd_check(spec_path: &Path, json: bool) -> Result<(String, ChannelVerdict), CliError> {
    let ch = load_channel(spec_path)?;
    let v = is_cptp(&ch);
    Ok((render_verdict(&v, json), v))
}

pub fn render_verdict(v: &ChannelVerdict, json: bool) -> String {
    if json {
        let j = VerdictJson {
            completely_positive: v.completely_positive,
            trace_preserving: v.trace_preserving,
            hermiticity_preserving: v.hermiticity_preserving,
            min_choi_eigenvalue: v.min_choi_eigenvalue,
            tp_residual: v.tp_residual,
            hp_residual: v.hp_residual,
            cptp: v.is_cptp(),
        };
        return serde_json::to_string_pretty(&j).expect("finite verdict") + "\n";
    }
    let yes = |b: bool| if b { "yes" } else { "no" };
    format!(
        "completely positive:    {} (min Choi eigenvalue {})\n\
         trace preserving:       {} (residual {})\n\
         hermiticity preserving: {} (residual {})\n\
         CPTP:                   {}\n",
        yes(v.completely_positive),
        v.min_choi_eigenvalue,
        yes(v.trace_preserving),
        v.tp_residual,
        yes(v.hermiticity_preserving),
        v.hp_residual,
        yes(v.is_cptp()),
    )
}

/// `apply`: the channel evaluated on the state in `state_path`.
pub fn cmd_apply(spec_path: &Path, state_path: &Path) -> Result<String, CliError> {
    let ch = load_channel(spec_path)?;
    let rho = parse_matrix(&read_text(state_path)?, &state_path.display().to_string())?;
    let out = ch
        .apply(&rho)
        .map_err(|e| CliError::DimensionMismatch(e.to_string()))?;
    Ok(emit_matrix(&out))
}
