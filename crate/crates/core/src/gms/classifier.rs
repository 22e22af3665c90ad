use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{GmsConfig, GmsError, GmsLayout};
use crate::circuit::{Circuit, CircuitBuilder, Gate};
use crate::gf2::{nullspace_basis, rank, BitMatrix};
use crate::sim::FxOracle;
use crate::synth::build_uqge_solution;

/// The classifier: accept iff `rank(Y) = n - 1` and the unique nonzero
/// kernel vector `s` satisfies `f(k', p) = f(k', p ⊕ s)` for every
/// plaintext `p`.
pub fn ug_classifier(key_guess: u64, y: &BitMatrix, oracle: &FxOracle, plaintexts: &[u64]) -> Result<bool, GmsError> {
    if plaintexts.is_empty() {
        return Err(GmsError::Config("the classifier needs at least one plaintext".into()));
    }
    if y.cols() != oracle.n {
        return Err(GmsError::Config(format!("Y has {} columns, expected {}", y.cols(), oracle.n)));
    }
    if rank(y) != oracle.n - 1 {
        return Ok(false);
    }
    let s = nullspace_basis(y)[0].to_u64();
    Ok(plaintexts.iter().all(|&p| oracle.f(key_guess, p) == oracle.f(key_guess, p ^ s)))
}

/// Which `(k', Y)` pairs count as marked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MarkedSet {
    /// Whatever [`ug_classifier`] accepts, false positives included.
    Classifier,
    /// `k' = k`, `rank(Y) = n - 1` and the kernel is exactly `{0, k1}`.
    Ideal,
}

/// Marked flag for each `(k', Y)` value, indexed by the low `m + nl` bits
/// of a basis index.
pub fn marked_table(cfg: &GmsConfig, set: MarkedSet) -> Result<Vec<bool>, GmsError> {
    let lay = cfg.layout();
    (0..1usize << lay.key_y_bits())
        .map(|idx| {
            let k = lay.key_of(idx);
            let y = lay.y_matrix(idx);
            match set {
                MarkedSet::Classifier => ug_classifier(k, &y, &cfg.oracle, &cfg.plaintexts),
                MarkedSet::Ideal => Ok(k == cfg.oracle.key
                    && rank(&y) == cfg.n - 1
                    && nullspace_basis(&y)[0].to_u64() == cfg.oracle.k1),
            }
        })
        .collect()
}

/// Reversible phase oracle for the classifier on the dense layout plus
/// work qubits: registers `key`, `y`, `f` (untouched), `s`, `flag`, then
/// ancillas. The period is extracted with the U_QGE solution circuit, each
/// plaintext check evaluates the FX oracle on `p ⊕ s` and `p` into fresh
/// registers and XORs them, the accept bit is an MCX on "flag clear and all
/// differences zero", a Z marks it, and everything is uncomputed.
pub fn build_ug_circuit(cfg: &GmsConfig) -> Result<Circuit, GmsError> {
    let GmsLayout { m, n, l } = cfg.layout();
    let spec = Arc::new(cfg.oracle.spec.clone());
    let mut b = CircuitBuilder::new();
    let key = b.register("key", m);
    let y = b.register("y", n * l);
    b.register("f", n * l);
    let s = b.register("s", n);
    let flag = b.register("flag", 1).qubit(0);

    let sub = build_uqge_solution(n, l)?;
    let (sy, ss, sf) = (
        sub.register("y").expect("uqge has y").clone(),
        sub.register("s").expect("uqge has s").clone(),
        sub.register("flag").expect("uqge has flag").qubit(0),
    );
    let start = b.gate_count();
    b.embed(&sub, "solve ", |q| {
        if sy.range().contains(&q) {
            y.qubit(q - sy.start)
        } else if ss.range().contains(&q) {
            s.qubit(q - ss.start)
        } else {
            assert_eq!(q, sf, "unexpected uqge qubit");
            flag
        }
    });

    let key_qubits: Vec<usize> = key.range().collect();
    let mut diffs = Vec::new();
    for &p in &cfg.plaintexts {
        let shifted: Vec<usize> = (0..n).map(|_| b.ancilla()).collect();
        let plain: Vec<usize> = (0..n).map(|_| b.ancilla()).collect();
        let out_a: Vec<usize> = (0..n).map(|_| b.ancilla()).collect();
        let out_b: Vec<usize> = (0..n).map(|_| b.ancilla()).collect();
        for j in 0..n {
            b.cnot(s.qubit(j), shifted[j]);
            if (p >> j) & 1 == 1 {
                b.x(shifted[j]);
                b.x(plain[j]);
            }
        }
        let ins_a: Vec<usize> = shifted.iter().chain(&key_qubits).copied().collect();
        let ins_b: Vec<usize> = plain.iter().chain(&key_qubits).copied().collect();
        b.oracle(&spec, &ins_a, &out_a);
        b.oracle(&spec, &ins_b, &out_b);
        for j in 0..n {
            b.cnot(out_b[j], out_a[j]);
        }
        diffs.extend(out_a);
    }
    let compute: Vec<Gate> = b.gates_since(start).to_vec();

    let accept = b.ancilla();
    let negative: Vec<usize> = std::iter::once(flag).chain(diffs).collect();
    b.mcx_mixed(&[], &negative, accept);
    b.z(accept);
    b.mcx_mixed(&[], &negative, accept);
    let undo: Vec<Gate> = compute.iter().rev().map(Gate::inverse).collect();
    b.append_gates(&undo);
    Ok(b.finish())
}
