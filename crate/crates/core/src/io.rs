//! JSON state files: `{"n_qubits": N, "amplitudes": [[re, im], ...]}` with
//! exactly 2^N entries in basis-index order (qubit 1 = most significant bit).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::error::{Error, Result};
use crate::state::{PureState, MAX_QUBITS};

#[derive(Serialize, Deserialize)]
struct StateFile {
    n_qubits: usize,
    amplitudes: Vec<[f64; 2]>,
}

/// Serialize a state to the JSON schema.
pub fn to_json(psi: &PureState) -> String {
    let file = StateFile {
        n_qubits: psi.n_qubits(),
        amplitudes: psi.amps().iter().map(|a| [a.re, a.im]).collect(),
    };
    serde_json::to_string_pretty(&file).expect("state file serializes")
}

/// Parse a state from the JSON schema, validating the qubit count, the
/// amplitude count, and that the vector is nonzero. Amplitudes are scaled to
/// unit norm on load.
pub fn from_json(text: &str) -> Result<PureState> {
    let file: StateFile = serde_json::from_str(text)?;
    if file.n_qubits < 1 || file.n_qubits > MAX_QUBITS {
        return Err(Error::Schema {
            field: "n_qubits".into(),
            message: format!(
                "{} outside supported range 1..={}",
                file.n_qubits, MAX_QUBITS
            ),
        });
    }
    let expected = 1usize << file.n_qubits;
    if file.amplitudes.len() != expected {
        return Err(Error::Schema {
            field: "amplitudes".into(),
            message: format!(
                "expected {} entries for {} qubits, got {}",
                expected,
                file.n_qubits,
                file.amplitudes.len()
            ),
        });
    }
    let amps: Vec<Complex64> = file
        .amplitudes
        .iter()
        .map(|[re, im]| Complex64::new(*re, *im))
        .collect();
    PureState::from_amplitudes(file.n_qubits, amps).map_err(|e| match e {
        Error::ZeroVector => Error::Schema {
            field: "amplitudes".into(),
            message: "zero vector".into(),
        },
        Error::NonFiniteAmplitude => Error::Schema {
            field: "amplitudes".into(),
            message: "non-finite amplitude".into(),
        },
        other => other,
    })
}

pub fn write_state_file(path: impl AsRef<Path>, psi: &PureState) -> Result<()> {
    std::fs::write(path, to_json(psi) + "\n")?;
    Ok(())
}

pub fn read_state_file(path: impl AsRef<Path>) -> Result<PureState> {
    let text = std::fs::read_to_string(path)?;
    from_json(&text)
}
