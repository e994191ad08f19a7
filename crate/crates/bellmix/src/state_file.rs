//! `.dm.json` state files: `{"matrix": [[[re, im], ...], ...]}`, row-major
//! in the basis |00⟩, |01⟩, |10⟩, |11⟩.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use bellmix_core::matrix::ComplexMatrix4;
use bellmix_core::DensityMatrix;
use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::table::fmt_float;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StateFile {
    matrix: [[[f64; 2]; 4]; 4],
}

/// Renders a matrix in the state file format. Hand-written so every number
/// carries 17 significant digits.
pub fn to_json(m: &ComplexMatrix4) -> String {
    let mut out = String::from("{\n  \"matrix\": [\n");
    for i in 0..4 {
        out.push_str("    [");
        for j in 0..4 {
            let z = m[(i, j)];
            let sep = if j < 3 { ", " } else { "" };
            let _ = write!(out, "[{}, {}]{sep}", fmt_float(z.re), fmt_float(z.im));
        }
        out.push_str(if i < 3 { "],\n" } else { "]\n" });
    }
    out.push_str("  ]\n}\n");
    out
}

/// Parses and validates a state. `origin` only labels errors.
pub fn from_json(text: &str, origin: &Path) -> Result<DensityMatrix> {
    let file: StateFile = serde_json::from_str(text).map_err(|e| Error::parse(origin, e))?;
    let mut m = ComplexMatrix4::zeros();
    for (i, row) in file.matrix.iter().enumerate() {
        for (j, [re, im]) in row.iter().enumerate() {
            m[(i, j)] = Complex64::new(*re, *im);
        }
    }
    Ok(DensityMatrix::validate(m)?)
}

pub fn load(path: &Path) -> Result<DensityMatrix> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    from_json(&text, path)
}

pub fn store(path: &Path, rho: &DensityMatrix) -> Result<()> {
    fs::write(path, to_json(rho.matrix())).map_err(|e| Error::io(path, e))
}
