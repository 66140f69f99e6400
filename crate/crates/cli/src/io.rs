//! Input file parsing. Integer entries may be JSON numbers or decimal
//! strings, so arbitrary-precision inputs survive the trip through JSON.

use num_bigint::BigInt;
use serde::Deserialize;
use std::path::Path;
use std::str::FromStr;

use denseclass::cartan::{QuiverAlgebra, QuiverFile};
use denseclass::excat::{ExactCatPresentation, PresentationFile};
use denseclass::intlinalg::IntMatrix;

use crate::commands::CmdError;

/// Integer field accepting either a JSON integer or a decimal string.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum JsonInt {
    Int(i64),
    Big(String),
}

impl JsonInt {
    pub fn to_bigint(&self) -> Result<BigInt, CmdError> {
        match self {
            JsonInt::Int(x) => Ok(BigInt::from(*x)),
            JsonInt::Big(s) => BigInt::from_str(s.trim())
                .map_err(|_| CmdError::Input(format!("not an integer: {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct GroupFile {
    pub ambient_rank: usize,
    #[serde(default)]
    pub relations: Vec<Vec<JsonInt>>,
    #[serde(default)]
    pub generators: Vec<Vec<JsonInt>>,
}

fn read_file(path: &Path) -> Result<String, CmdError> {
    std::fs::read_to_string(path)
        .map_err(|e| CmdError::Input(format!("cannot read {}: {e}", path.display())))
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> Result<T, CmdError> {
    serde_json::from_str(text)
        .map_err(|e| CmdError::Input(format!("cannot parse {}: {e}", path.display())))
}

pub fn rows_to_matrix(rows: &[Vec<JsonInt>]) -> Result<IntMatrix, CmdError> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut converted = Vec::with_capacity(rows.len());
    for row in rows {
        if row.len() != cols {
            return Err(CmdError::Input(format!(
                "matrix rows have differing lengths ({} vs {cols})",
                row.len()
            )));
        }
        converted.push(
            row.iter()
                .map(JsonInt::to_bigint)
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    IntMatrix::from_rows_with_cols(cols, converted)
        .map_err(|e| CmdError::Input(e.to_string()))
}

pub fn rows_to_matrix_with_cols(
    cols: usize,
    rows: &[Vec<JsonInt>],
) -> Result<IntMatrix, CmdError> {
    let m = rows_to_matrix(rows)?;
    if rows.is_empty() {
        return Ok(IntMatrix::empty(cols));
    }
    if m.cols() != cols {
        return Err(CmdError::Input(format!(
            "rows have length {}, expected {cols}",
            m.cols()
        )));
    }
    Ok(m)
}

/// Reads a bare integer matrix: `[[2, 4], [6, 8]]`.
pub fn read_matrix(path: &Path) -> Result<IntMatrix, CmdError> {
    let text = read_file(path)?;
    let rows: Vec<Vec<JsonInt>> = parse_json(path, &text)?;
    if rows.is_empty() {
        return Err(CmdError::Input("matrix has no rows".to_string()));
    }
    rows_to_matrix(&rows)
}

pub fn read_group(path: &Path) -> Result<GroupFile, CmdError> {
    let text = read_file(path)?;
    parse_json(path, &text)
}

pub fn read_presentation(path: &Path) -> Result<ExactCatPresentation, CmdError> {
    let text = read_file(path)?;
    let file: PresentationFile = parse_json(path, &text)?;
    file.into_presentation()
        .map_err(|e| CmdError::Input(e.to_string()))
}

pub fn read_quiver(path: &Path) -> Result<QuiverAlgebra, CmdError> {
    let text = read_file(path)?;
    let file: QuiverFile = parse_json(path, &text)?;
    file.into_quiver().map_err(|e| CmdError::Input(e.to_string()))
}

/// Parses an element given as comma-separated coordinates, e.g. `1,0,0`.
pub fn parse_coordinates(spec: &str) -> Result<Vec<BigInt>, CmdError> {
    spec.split(',')
        .map(|part| {
            BigInt::from_str(part.trim())
                .map_err(|_| CmdError::Input(format!("bad coordinate {part:?} in {spec:?}")))
        })
        .collect()
}
