//! JSON matrix files: `{"rows": n, "cols": n, "entries": [[re, im], ...]}`,
//! entries row-major.

use std::fs;
use std::path::Path;

use num_complex::Complex;
use opineq::Matrix;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[f64; 2]>,
}

impl From<&Matrix> for MatrixFile {
    fn from(m: &Matrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.entries().iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl TryFrom<MatrixFile> for Matrix {
    type Error = opineq::Error;

    fn try_from(f: MatrixFile) -> Result<Self, Self::Error> {
        let data = f
            .entries
            .into_iter()
            .map(|[re, im]| Complex::new(re, im))
            .collect();
        Matrix::new(f.rows, f.cols, data)
    }
}

pub fn matrix_to_value(m: &Matrix) -> Value {
    serde_json::to_value(MatrixFile::from(m)).expect("matrix file serializes")
}

pub fn parse_matrix(text: &str, path: &Path) -> Result<Matrix, CliError> {
    let file: MatrixFile = serde_json::from_str(text).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })?;
    Matrix::try_from(file).map_err(|source| CliError::Matrix {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_matrix(path: &Path) -> Result<Matrix, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_matrix(&text, path)
}

pub fn write_matrix(m: &Matrix, path: &Path) -> Result<(), CliError> {
    write_json(&matrix_to_value(m), path)
}

/// Pretty-printed with a trailing newline. `serde_json::Map` keeps keys
/// sorted, so output is stable.
pub fn write_json(value: &Value, path: &Path) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("json value serializes");
    text.push('\n');
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}
