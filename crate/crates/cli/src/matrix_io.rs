//! JSON matrix and basis files.
//!
//! Matrix: `{"dim": n, "rows": [[[re, im], ...], ...]}`, row-major, `n`
//! equal to the number of rows. Basis: `{"dim": n, "elements": [matrix, ...]}`
//! with `n²` elements of size `n x n`.

use std::fmt::Write as _;

use chanrep::{ComplexMatrix, MatrixBasis, C64};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub dim: usize,
    pub rows: Vec<Vec<[f64; 2]>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisFile {
    pub dim: usize,
    pub elements: Vec<MatrixFile>,
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self {
            dim: m.rows(),
            rows: (0..m.rows())
                .map(|i| m.row(i).iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
    }

    /// Validates the shape against `dim` and builds the matrix. `field`
    /// names the location for diagnostics.
    pub fn to_matrix(&self, source_name: &str, field: &str) -> Result<ComplexMatrix, CliError> {
        if self.dim == 0 {
            return Err(CliError::schema(source_name, format!("{field}.dim"), "must be positive"));
        }
        if self.rows.len() != self.dim {
            return Err(CliError::schema(
                source_name,
                format!("{field}.rows"),
                format!("expected {} rows, found {}", self.dim, self.rows.len()),
            ));
        }
        if let Some((i, r)) = self.rows.iter().enumerate().find(|(_, r)| r.len() != self.dim) {
            return Err(CliError::schema(
                source_name,
                format!("{field}.rows[{i}]"),
                format!("expected {} entries, found {}", self.dim, r.len()),
            ));
        }
        let data = self
            .rows
            .iter()
            .flatten()
            .map(|&[re, im]| C64::new(re, im))
            .collect();
        ComplexMatrix::new(self.dim, self.dim, data).map_err(|e| CliError::schema(source_name, field, e))
    }
}

pub fn parse_matrix(text: &str, source_name: &str) -> Result<ComplexMatrix, CliError> {
    let file: MatrixFile = serde_json::from_str(text).map_err(|e| CliError::parse(source_name, e))?;
    file.to_matrix(source_name, "matrix")
}

pub fn parse_basis(text: &str, source_name: &str) -> Result<MatrixBasis, CliError> {
    let file: BasisFile = serde_json::from_str(text).map_err(|e| CliError::parse(source_name, e))?;
    let n = file.dim;
    if n == 0 {
        return Err(CliError::schema(source_name, "dim", "must be positive"));
    }
    if file.elements.len() != n * n {
        return Err(CliError::schema(
            source_name,
            "elements",
            format!("expected {} elements, found {}", n * n, file.elements.len()),
        ));
    }
    let mut elements = Vec::with_capacity(n * n);
    for (i, el) in file.elements.iter().enumerate() {
        let field = format!("elements[{i}]");
        if el.dim != n {
            return Err(CliError::schema(
                source_name,
                format!("{field}.dim"),
                format!("expected {n}, found {}", el.dim),
            ));
        }
        elements.push(el.to_matrix(source_name, &field)?);
    }
    MatrixBasis::new(elements).map_err(|e| CliError::schema(source_name, "elements", e))
}

/// Serializes a matrix with one row per line and shortest round-trip
/// decimals for every component.
pub fn emit_matrix(m: &ComplexMatrix) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{{");
    let _ = writeln!(out, "  \"dim\": {},", m.rows());
    let _ = writeln!(out, "  \"rows\": [");
    for i in 0..m.rows() {
        let entries: Vec<String> = m
            .row(i)
            .iter()
            .map(|z| format!("[{}, {}]", fmt_f64(z.re), fmt_f64(z.im)))
            .collect();
        let sep = if i + 1 < m.rows() { "," } else { "" };
        let _ = writeln!(out, "    [{}]{sep}", entries.join(", "));
    }
    let _ = writeln!(out, "  ]");
    let _ = writeln!(out, "}}");
    out
}

fn fmt_f64(x: f64) -> String {
    serde_json::to_string(&x).expect("finite float")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn emits_fixed_layout() {
        let m = ComplexMatrix::new(
            2,
            2,
            vec![C64::new(1.0, 0.0), C64::new(0.0, -0.5), C64::new(0.1, 1e-20), C64::new(-3.0, 0.0)],
        )
        .unwrap();
        let text = emit_matrix(&m);
        assert_eq!(
            text,
            "{\n  \"dim\": 2,\n  \"rows\": [\n    [[1.0, 0.0], [0.0, -0.5]],\n    [[0.1, 1e-20], [-3.0, 0.0]]\n  ]\n}\n"
        );
        assert_eq!(parse_matrix(&text, "t").unwrap(), m);
    }

    #[test]
    fn shape_errors_name_the_field() {
        let err = parse_matrix(r#"{"dim": 2, "rows": [[[1,0],[0,0]], [[0,0]]]}"#, "m.json").unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("matrix.rows[1]"), "{err}");

        let err = parse_matrix(r#"{"dim": 3, "rows": [[[1,0]]]}"#, "m.json").unwrap_err();
        assert!(err.to_string().contains("expected 3 rows"), "{err}");
    }

    #[test]
    fn syntax_errors_report_position() {
        let err = parse_matrix("{\n  \"dim\": 1,\n  \"rows\": [[[1, 0]]\n", "m.json").unwrap_err();
        assert!(matches!(err, CliError::Parse { .. }));
        assert!(err.to_string().contains("line"), "{err}");

        let err = parse_matrix(r#"{"dim": 1, "rows": [[["1", 0]]]}"#, "m.json").unwrap_err();
        assert!(matches!(err, CliError::Parse { .. }));

        let err = parse_matrix(r#"{"dim": 1, "rows": [[[1, 0]]], "extra": 1}"#, "m.json").unwrap_err();
        assert!(err.to_string().contains("extra"), "{err}");
    }

    #[test]
    fn basis_file_parses() {
        let b = chanrep::pauli_basis();
        let file = BasisFile {
            dim: 2,
            elements: b.elements().iter().map(MatrixFile::from_matrix).collect(),
        };
        let parsed = parse_basis(&serde_json::to_string(&file).unwrap(), "b").unwrap();
        assert!(parsed.is_orthonormal());
        assert_eq!(parsed.elements(), b.elements());

        let short = BasisFile {
            dim: 2,
            elements: file.elements[..3].to_vec(),
        };
        let err = parse_basis(&serde_json::to_string(&short).unwrap(), "b").unwrap_err();
        assert!(err.to_string().contains("expected 4 elements"));
    }
}
