//! On-disk state format.
//!
//! A state file is a JSON document
//!
//! ```text
//! {"kind": "pure" | "density", "n_qubits": n, "data": [[re, im], …]}
//! ```
//!
//! where pure data is the length-2^n amplitude vector and density data is
//! the row-major 2^n × 2^n matrix. Loading applies the core constructors'
//! norm/trace checks (1e-8 tolerance, then renormalized), so a file that
//! loads is always a valid state. Values are written in shortest
//! round-trip decimal form, so a write → read → write cycle is
//! byte-stable.
//!
//! Files ending in `.gz`, or written with the gzip flag, are
//! gzip-compressed; readers detect compression from the magic bytes, not
//! the name.

use flate2::read::GzDecoder;
use flate2::write::GzEncoder;
use flate2::Compression;
use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fs;
use std::io::{Read, Write};
use std::path::Path;
use vsep_core::qcore::{DensityMatrix, PureState};
use vsep_core::statelib::RealizedState;

use crate::Failure;

const GZIP_MAGIC: [u8; 2] = [0x1f, 0x8b];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateKind {
    Pure,
    Density,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub kind: StateKind,
    pub n_qubits: usize,
    pub data: Vec<[f64; 2]>,
}

/// A state file after validation.
pub enum LoadedState {
    Pure(PureState),
    Density(DensityMatrix),
}

impl LoadedState {
    pub fn kind(&self) -> StateKind {
        match self {
            LoadedState::Pure(_) => StateKind::Pure,
            LoadedState::Density(_) => StateKind::Density,
        }
    }
}

impl StateFile {
    pub fn from_realized(state: &RealizedState) -> StateFile {
        match state {
            RealizedState::Pure(psi) => StateFile {
                kind: StateKind::Pure,
                n_qubits: psi.n_qubits(),
                data: psi.amplitudes().iter().map(|a| [a.re, a.im]).collect(),
            },
            RealizedState::Density(rho) => StateFile {
                kind: StateKind::Density,
                n_qubits: rho.n_qubits(),
                data: rho.matrix().iter().map(|a| [a.re, a.im]).collect(),
            },
        }
    }

    pub fn into_state(self) -> Result<LoadedState, Failure> {
        if self.n_qubits == 0 || self.n_qubits > vsep_core::qcore::QUBIT_CAP {
            return Err(Failure::Usage(format!(
                "qubit count {} outside 1..={}",
                self.n_qubits,
                vsep_core::qcore::QUBIT_CAP
            )));
        }
        let dim = 1usize << self.n_qubits;
        let values: Vec<Complex64> = self
            .data
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        match self.kind {
            StateKind::Pure => {
                let psi = PureState::new(self.n_qubits, values)
                    .map_err(|e| Failure::Usage(format!("invalid pure state: {e}")))?;
                Ok(LoadedState::Pure(psi))
            }
            StateKind::Density => {
                if values.len() != dim * dim {
                    return Err(Failure::Usage(format!(
                        "density data must hold {} entries for {} qubits, got {}",
                        dim * dim,
                        self.n_qubits,
                        values.len()
                    )));
                }
                let mat = Array2::from_shape_vec((dim, dim), values)
                    .expect("length checked above");
                let rho = DensityMatrix::new(self.n_qubits, mat)
                    .map_err(|e| Failure::Usage(format!("invalid density matrix: {e}")))?;
                Ok(LoadedState::Density(rho))
            }
        }
    }
}

pub fn load(path: &Path) -> Result<LoadedState, Failure> {
    let bytes = fs::read(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let text = if bytes.starts_with(&GZIP_MAGIC) {
        let mut out = String::new();
        GzDecoder::new(bytes.as_slice())
            .read_to_string(&mut out)
            .map_err(|e| Failure::Usage(format!("cannot decompress {}: {e}", path.display())))?;
        out
    } else {
        String::from_utf8(bytes)
            .map_err(|e| Failure::Usage(format!("{} is not UTF-8: {e}", path.display())))?
    };
    let file: StateFile = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("cannot parse {}: {e}", path.display())))?;
    file.into_state()
}

pub fn save(path: &Path, file: &StateFile, gzip: bool) -> Result<(), Failure> {
    let json = serde_json::to_string(file).expect("state file serializes");
    let compress = gzip || path.extension().and_then(|e| e.to_str()) == Some("gz");
    let write_err =
        |e: std::io::Error| Failure::Usage(format!("cannot write {}: {e}", path.display()));
    if compress {
        let mut encoder = GzEncoder::new(Vec::new(), Compression::default());
        encoder.write_all(json.as_bytes()).map_err(write_err)?;
        encoder.write_all(b"\n").map_err(write_err)?;
        let compressed = encoder.finish().map_err(write_err)?;
        fs::write(path, compressed).map_err(write_err)
    } else {
        fs::write(path, json + "\n").map_err(write_err)
    }
}
