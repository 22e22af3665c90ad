use crate::circuit::{Circuit, CircuitBuilder};

use super::{Grid, SynthError};

/// Pivot repair for column `i`: for each row `k` below, a fresh ancilla
/// takes the current value of `a[i][i]`, is negated, and controls XORing
/// row `k` into row `i` from column `i` on. The guard is re-read for every
/// `k` because earlier XORs may already have set the pivot.
pub(crate) fn pivot_stage(b: &mut CircuitBuilder, g: Grid, rows: usize, i: usize) {
    for k in i + 1..rows {
        let anc = b.ancilla();
        b.cnot(g.q(i, i), anc);
        b.x(anc);
        for j in i..g.cols {
            b.toffoli(anc, g.q(k, j), g.q(i, j));
        }
    }
}

/// Clears column `i` in each row of `targets` using row `i`. The entry
/// `a[k][i]` is moved into a fresh ancilla (CNOT in, CNOT back zeroes the
/// data qubit), which then controls XORing the rest of row `i` into row `k`.
pub(crate) fn eliminate_stage(b: &mut CircuitBuilder, g: Grid, i: usize, targets: impl IntoIterator<Item = usize>) {
    for k in targets {
        let anc = b.ancilla();
        b.cnot(g.q(k, i), anc);
        b.cnot(anc, g.q(k, i));
        for j in i + 1..g.cols {
            b.toffoli(anc, g.q(i, j), g.q(k, j));
        }
    }
}

/// Forward elimination on an `m × n` matrix held row-major in `data`,
/// column by column with the XOR pivot rule. On basis inputs the result is
/// [`crate::gf2::pivot_xor_echelon`] of the input.
pub fn build_row_echelon(m: usize, n: usize) -> Result<Circuit, SynthError> {
    if n == 0 || n > m {
        return Err(SynthError::Dimension(format!("row echelon needs 1 <= n <= m, got m = {m}, n = {n}")));
    }
    let mut b = CircuitBuilder::new();
    let data = b.register("data", m * n);
    let g = Grid { start: data.start, cols: n };
    for i in 0..n.min(m - 1) {
        b.begin_stage(format!("pivot {i}"));
        pivot_stage(&mut b, g, m, i);
        b.end_stage();
        b.begin_stage(format!("eliminate {i}"));
        eliminate_stage(&mut b, g, i, i + 1..m);
        b.end_stage();
    }
    Ok(b.finish())
}
