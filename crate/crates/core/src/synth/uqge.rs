use crate::circuit::{Circuit, CircuitBuilder, Gate};

use super::rref::rref_network;
use super::{Grid, SynthError};

/// Period extraction for an `l × n` system `Y·s = 0`.
///
/// Registers: `y` (the rows of `Y`, row-major), `s` (n), `flag` (1). For a
/// basis input with `rank(Y) = n - 1` the circuit writes the unique nonzero
/// kernel vector into `s` and leaves `flag` at 0; for any other rank `s`
/// stays 0 and `flag` is set. `Y` is copied into a work register, reduced
/// there, read out, and the reduction and copy are undone, so every
/// ancilla returns to 0 and `y` is unchanged.
pub fn build_uqge_solution(n: usize, l: usize) -> Result<Circuit, SynthError> {
    if n < 2 || l == 0 {
        return Err(SynthError::Dimension(format!("need n >= 2 and l >= 1, got n = {n}, l = {l}")));
    }
    let mut b = CircuitBuilder::new();
    let y = b.register("y", l * n);
    let s = b.register("s", n);
    let flag = b.register("flag", 1).qubit(0);

    let work: Vec<usize> = (0..l * n).map(|_| b.ancilla()).collect();
    let w = Grid { start: work[0], cols: n };
    let compute_start = b.gate_count();
    for q in 0..l * n {
        b.cnot(y.qubit(q), work[q]);
    }
    rref_network(&mut b, w, l);
    let compute: Vec<Gate> = b.gates_since(compute_start).to_vec();

    // With rank n-1 and free column f, the RREF has leading ones at
    // (i, i) for i < f and (i, i+1) for f <= i < n-1, and zero rows below.
    b.x(flag);
    if l + 1 >= n {
        let select_start = b.gate_count();
        let mut selectors = Vec::with_capacity(n);
        for f in 0..n {
            let mut pos = Vec::new();
            let mut neg = Vec::new();
            for i in 0..n - 1 {
                if i < f {
                    pos.push(w.q(i, i));
                } else {
                    neg.push(w.q(i, i));
                    pos.push(w.q(i, i + 1));
                }
            }
            for i in n - 1..l {
                neg.extend((0..n).map(|j| w.q(i, j)));
            }
            let sel = b.ancilla();
            b.mcx_mixed(&pos, &neg, sel);
            selectors.push(sel);
        }
        let select: Vec<Gate> = b.gates_since(select_start).to_vec();

        for (f, &sel) in selectors.iter().enumerate() {
            b.cnot(sel, s.qubit(f));
            for i in 0..f {
                b.toffoli(sel, w.q(i, f), s.qubit(i));
            }
            b.cnot(sel, flag);
        }
        uncompute(&mut b, &select);
    }
    uncompute(&mut b, &compute);
    Ok(b.finish())
}

fn uncompute(b: &mut CircuitBuilder, gates: &[Gate]) {
    let inverse: Vec<Gate> = gates.iter().rev().map(Gate::inverse).collect();
    b.append_gates(&inverse);
}
