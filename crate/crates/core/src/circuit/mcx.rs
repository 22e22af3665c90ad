use super::{Circuit, CircuitBuilder};

/// Ladder decomposition of a `k`-controlled X into Toffolis with `k - 1`
/// clean work qubits: compute the running AND into the work register, flip
/// the target, then uncompute. For `k >= 2` this uses `2(k-1)` Toffolis
/// and one CNOT. Registers: `ctrl` (k), `target` (1), `anc` (k-1).
pub fn decompose_mcx(k: usize) -> Circuit {
    assert!(k >= 1, "an MCX needs at least one control");
    let mut b = CircuitBuilder::new();
    let ctrl = b.register("ctrl", k);
    let target = b.register("target", 1).qubit(0);
    if k == 1 {
        b.cnot(ctrl.qubit(0), target);
        return b.finish();
    }
    let work: Vec<usize> = (0..k - 1).map(|_| b.ancilla()).collect();
    let start = b.gate_count();
    b.toffoli(ctrl.qubit(0), ctrl.qubit(1), work[0]);
    for i in 2..k {
        b.toffoli(ctrl.qubit(i), work[i - 2], work[i - 1]);
    }
    let ladder = b.gates_since(start).to_vec();
    b.cnot(work[k - 2], target);
    let undo: Vec<_> = ladder.iter().rev().cloned().collect();
    b.append_gates(&undo);
    b.finish()
}
