use crate::circuit::{Circuit, CircuitBuilder};

use super::{Grid, SynthError};

/// Appends the in-place RREF network for an `m × n` matrix at `g`.
///
/// Row `i` looks for its leading 1 in columns `i..n`. A running flag `z`
/// says that row `i` is still zero in every column before the current one;
/// only while it is set may rows below be XORed in (when the current entry
/// is 0) and may the current column be cleared in every other row (when it
/// is 1). Every condition is copied into a fresh ancilla, so the work
/// register ends holding the full control history.
pub(crate) fn rref_network(b: &mut CircuitBuilder, g: Grid, m: usize) {
    let n = g.cols;
    for i in 0..m.min(n) {
        // `None` while the condition is the constant 1.
        let mut z: Option<usize> = None;
        for c in i..n {
            if c > i {
                let next = b.ancilla();
                let prev = g.q(i, c - 1);
                match z {
                    None => {
                        b.cnot(prev, next);
                        b.x(next);
                    }
                    Some(zq) => {
                        b.x(prev);
                        b.toffoli(zq, prev, next);
                        b.x(prev);
                    }
                }
                z = Some(next);
            }
            let lead = g.q(i, c);
            for q in i + 1..m {
                let t = b.ancilla();
                match z {
                    None => {
                        b.cnot(lead, t);
                        b.x(t);
                    }
                    Some(zq) => {
                        b.x(lead);
                        b.toffoli(zq, lead, t);
                        b.x(lead);
                    }
                }
                for j in c..n {
                    b.toffoli(t, g.q(q, j), g.q(i, j));
                }
            }
            let p = b.ancilla();
            match z {
                None => b.cnot(lead, p),
                Some(zq) => b.toffoli(zq, lead, p),
            }
            for r in (0..m).filter(|&r| r != i) {
                let e = b.ancilla();
                b.toffoli(p, g.q(r, c), e);
                b.cnot(e, g.q(r, c));
                for j in c + 1..n {
                    b.toffoli(e, g.q(i, j), g.q(r, j));
                }
            }
        }
    }
}

/// In-place reduced row echelon form of an `m × n` matrix held row-major
/// in `data`. Any shape is accepted; the ancillas are not returned to zero.
pub fn build_rref(m: usize, n: usize) -> Result<Circuit, SynthError> {
    if m == 0 || n == 0 {
        return Err(SynthError::Dimension(format!("matrix shape {m} x {n} is empty")));
    }
    let mut b = CircuitBuilder::new();
    let data = b.register("data", m * n);
    rref_network(&mut b, Grid { start: data.start, cols: n }, m);
    Ok(b.finish())
}
