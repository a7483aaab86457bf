//! JSON serialization for bipartite states.
//!
//! Format: `{"d_h": .., "d_k": .., "matrix": [[[re, im], ..], ..]}` with the
//! matrix row-major over the flat product index `(i, α) ↦ i·d_k + α`. Values
//! are written with 17 significant digits, so write → read reproduces every
//! float bit-for-bit. Reading re-validates the state (Hermitian, positive,
//! unit trace).

use crate::error::{Error, Result};
use crate::matrix::{C64, ComplexMatrix};
use crate::states::DensityMatrix;
use crate::tol::Tolerances;
use serde::Deserialize;
use std::io::{Read, Write};
use std::path::Path;

#[derive(Deserialize)]
struct StateFile {
    d_h: usize,
    d_k: usize,
    matrix: Vec<Vec<[f64; 2]>>,
}

/// Write a state as JSON. Entries use scientific notation with enough digits
/// to round-trip exactly.
pub fn write_state<W: Write>(w: &mut W, state: &DensityMatrix) -> Result<()> {
    let (d_h, d_k) = state.dims();
    let n = d_h * d_k;
    let m = state.matrix();
    writeln!(w, "{{")?;
    writeln!(w, "  \"d_h\": {d_h},")?;
    writeln!(w, "  \"d_k\": {d_k},")?;
    writeln!(w, "  \"matrix\": [")?;
    for r in 0..n {
        let mut line = String::from("    [");
        for c in 0..n {
            let v = m.get(r, c);
            if c > 0 {
                line.push_str(", ");
            }
            line.push_str(&format!("[{:.16e}, {:.16e}]", v.re, v.im));
        }
        line.push(']');
        if r + 1 < n {
            line.push(',');
        }
        writeln!(w, "{line}")?;
    }
    writeln!(w, "  ]")?;
    writeln!(w, "}}")?;
    Ok(())
}

/// Read and validate a state, with explicit validation tolerances.
pub fn read_state_with<R: Read>(r: &mut R, tolerances: &Tolerances) -> Result<DensityMatrix> {
    let mut text = String::new();
    r.read_to_string(&mut text)?;
    let file: StateFile =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("state JSON: {e}")))?;
    if file.d_h == 0 || file.d_k == 0 {
        return Err(Error::BadDimension {
            d: 0,
            reason: "factors must be nonempty".into(),
        });
    }
    let n = file.d_h * file.d_k;
    if file.matrix.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows, expected {n}",
            file.matrix.len()
        )));
    }
    let mut mat = ComplexMatrix::zeros(n, n);
    for (r_idx, row) in file.matrix.iter().enumerate() {
        if row.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "row {r_idx} has {} entries, expected {n}",
                row.len()
            )));
        }
        for (c_idx, &[re, im]) in row.iter().enumerate() {
            mat.set(r_idx, c_idx, C64::new(re, im));
        }
    }
    DensityMatrix::from_matrix(file.d_h, file.d_k, mat, tolerances)
}

/// Read and validate a state with default tolerances.
pub fn read_state<R: Read>(r: &mut R) -> Result<DensityMatrix> {
    read_state_with(r, &Tolerances::default())
}

/// [`write_state`] to a file path.
pub fn save_state<P: AsRef<Path>>(path: P, state: &DensityMatrix) -> Result<()> {
    let mut file = std::fs::File::create(path)?;
    write_state(&mut file, state)
}

/// [`read_state`] from a file path.
pub fn load_state<P: AsRef<Path>>(path: P) -> Result<DensityMatrix> {
    let mut file = std::fs::File::open(path)?;
    read_state(&mut file)
}

/// [`read_state_with`] from a file path.
pub fn load_state_with<P: AsRef<Path>>(path: P, tolerances: &Tolerances) -> Result<DensityMatrix> {
    let mut file = std::fs::File::open(path)?;
    read_state_with(&mut file, tolerances)
}
