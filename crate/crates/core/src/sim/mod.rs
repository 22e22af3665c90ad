//! Simulators: a dense state vector, a sparse amplitude map for wide but
//! low-support states, and a classical basis-state evaluator for circuits
//! without Hadamards.

mod algorithms;
mod basis;
mod dense;
mod oracle;
mod sparse;

pub use algorithms::{amplitude_amplify, parallel_simon, simon_circuit, simon_round};
pub use basis::{run_basis, run_basis_u128};
pub use dense::StateVector;
pub use oracle::{build_fx_oracle, build_simon_oracle, FxOracle, OracleSpec, SimonOracle};
pub use sparse::SparseState;

use crate::circuit::{Circuit, Gate};

pub const DEFAULT_QUBIT_CAP: usize = 24;

/// Largest register the dense simulator will allocate. Read from
/// `QGMS_QUBIT_CAP` when set, otherwise 24.
pub fn qubit_cap() -> usize {
    std::env::var("QGMS_QUBIT_CAP").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_QUBIT_CAP)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimError {
    #[error("{required} qubits requested but the dense simulator is capped at {cap}")]
    QubitCapExceeded { required: usize, cap: usize },
    #[error("circuit acts on {circuit} qubits but the state has {state}")]
    QubitCountMismatch { circuit: usize, state: usize },
    #[error("oracle {0} is not registered on the circuit")]
    UnresolvedOracle(String),
    #[error("gate {0} does not map basis states to basis states")]
    NonClassicalGate(String),
    #[error("the hidden period must be nonzero")]
    ZeroPeriod,
    #[error("the whitening key must be nonzero")]
    ZeroWhiteningKey,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

fn check_width(c: &Circuit, state: usize) -> Result<(), SimError> {
    if c.qubit_count() != state {
        return Err(SimError::QubitCountMismatch { circuit: c.qubit_count(), state });
    }
    Ok(())
}

fn resolve<'a>(c: &'a Circuit, name: &str) -> Result<&'a OracleSpec, SimError> {
    c.oracle(name).map(|a| a.as_ref()).ok_or_else(|| SimError::UnresolvedOracle(name.to_string()))
}

/// Image of a basis index under a classical gate, plus the phase picked up,
/// in units of π/4.
fn classical_step(g: &Gate, idx: u128, c: &Circuit) -> Result<(u128, u8), SimError> {
    let bit = |q: usize| (idx >> q) & 1 == 1;
    Ok(match g {
        Gate::X(q) => (idx ^ (1 << q), 0),
        Gate::Z(q) => (idx, if bit(*q) { 4 } else { 0 }),
        Gate::S(q) => (idx, if bit(*q) { 2 } else { 0 }),
        Gate::Sdg(q) => (idx, if bit(*q) { 6 } else { 0 }),
        Gate::T(q) => (idx, if bit(*q) { 1 } else { 0 }),
        Gate::Tdg(q) => (idx, if bit(*q) { 7 } else { 0 }),
        Gate::Cnot { .. } | Gate::Toffoli { .. } | Gate::Mcx { .. } => {
            let fire = g.controls().iter().all(|&q| bit(q));
            (if fire { idx ^ (1 << g.targets()[0]) } else { idx }, 0)
        }
        Gate::Oracle { name, inputs, outputs } => {
            let spec = resolve(c, name)?;
            let x = inputs.iter().enumerate().fold(0u64, |acc, (j, &q)| acc | (u64::from(bit(q)) << j));
            let y = spec.eval(x);
            let flip = outputs.iter().enumerate().fold(0u128, |acc, (j, &q)| acc | (u128::from((y >> j) & 1) << q));
            (idx ^ flip, 0)
        }
        Gate::H(_) => return Err(SimError::NonClassicalGate("H".into())),
    })
}
