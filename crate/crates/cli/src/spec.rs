//! Channel specification files.
//!
//! A spec is one JSON object with a `kind` discriminator:
//!
//! ```text
//! {"kind": "depolarizing", "dim": 2, "p": 0.5}
//! {"kind": "transpose", "dim": 2}
//! {"kind": "identity", "dim": 3}
//! {"kind": "unitary", "dim": 2, "matrix": <matrix>}
//! {"kind": "kraus", "dim": 2, "operators": [<matrix>, ...]}
//! {"kind": "supermatrix", "dim": 2, "matrix": <dim² x dim² matrix>}
//! {"kind": "choi", "dim": 2, "matrix": <dim² x dim² matrix>}
//! ```

use chanrep::{
    channel_from_supermatrix, depolarizing, identity_channel, kraus_channel, transpose_channel,
    unitary_channel, Channel, ChoiMatrix, ComplexMatrix, SuperMatrix,
};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::matrix_io::MatrixFile;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ChannelSpec {
    Depolarizing { dim: usize, p: f64 },
    Transpose { dim: usize },
    Identity { dim: usize },
    Unitary { dim: usize, matrix: MatrixFile },
    Kraus { dim: usize, operators: Vec<MatrixFile> },
    Supermatrix { dim: usize, matrix: MatrixFile },
    Choi { dim: usize, matrix: MatrixFile },
}

impl ChannelSpec {
    pub fn dim(&self) -> usize {
        match self {
            ChannelSpec::Depolarizing { dim, .. }
            | ChannelSpec::Transpose { dim }
            | ChannelSpec::Identity { dim }
            | ChannelSpec::Unitary { dim, .. }
            | ChannelSpec::Kraus { dim, .. }
            | ChannelSpec::Supermatrix { dim, .. }
            | ChannelSpec::Choi { dim, .. } => *dim,
        }
    }
}

pub fn parse_channel_spec(text: &str, source_name: &str) -> Result<ChannelSpec, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::parse(source_name, e))
}

fn payload(
    file: &MatrixFile,
    side: usize,
    source_name: &str,
    field: &str,
) -> Result<ComplexMatrix, CliError> {
    if file.dim != side {
        return Err(CliError::schema(
            source_name,
            format!("{field}.dim"),
            format!("expected {side}x{side} payload, found {0}x{0}", file.dim),
        ));
    }
    file.to_matrix(source_name, field)
}

/// Builds the library channel described by `spec`, validating every payload
/// shape against `dim`.
pub fn build_channel(spec: &ChannelSpec, source_name: &str) -> Result<Channel, CliError> {
    let n = spec.dim();
    if n == 0 {
        return Err(CliError::schema(source_name, "dim", "must be positive"));
    }
    let schema = |field: &str, e: chanrep::Error| CliError::schema(source_name, field, e);
    Ok(match spec {
        ChannelSpec::Depolarizing { p, .. } => depolarizing(n, *p).map_err(|e| schema("p", e))?,
        ChannelSpec::Transpose { .. } => transpose_channel(n),
        ChannelSpec::Identity { .. } => identity_channel(n),
        ChannelSpec::Unitary { matrix, .. } => {
            let u = payload(matrix, n, source_name, "matrix")?;
            unitary_channel(u).map_err(|e| schema("matrix", e))?
        }
        ChannelSpec::Kraus { operators, .. } => {
            if operators.is_empty() {
                return Err(schema("operators", chanrep::Error::EmptyKrausSet));
            }
            let ops = operators
                .iter()
                .enumerate()
                .map(|(i, op)| payload(op, n, source_name, &format!("operators[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            kraus_channel(ops).map_err(|e| schema("operators", e))?
        }
        ChannelSpec::Supermatrix { matrix, .. } => {
            let m = payload(matrix, n * n, source_name, "matrix")?;
            let sm = SuperMatrix::from_canonical(m).map_err(|e| schema("matrix", e))?;
            channel_from_supermatrix(&sm)
        }
        ChannelSpec::Choi { matrix, .. } => {
            let m = payload(matrix, n * n, source_name, "matrix")?;
            let j = ChoiMatrix::new(m).map_err(|e| schema("matrix", e))?;
            channel_from_supermatrix(&j.to_supermatrix())
        }
    })
}
