use crate::circuit::{Circuit, CircuitBuilder};

use super::echelon::{eliminate_stage, pivot_stage};
use super::{Grid, SynthError};

fn check(n: usize) -> Result<(), SynthError> {
    if n < 2 {
        return Err(SynthError::Dimension(format!("elimination circuits need n >= 2, got {n}")));
    }
    Ok(())
}

/// Gaussian elimination on `[A | b]` (`n × (n+1)`, row-major in `data`).
/// Forward elimination, then back substitution on the `b` column, which
/// ends holding `x` with `A·x = b` when `A` is invertible.
pub fn build_qge(n: usize) -> Result<Circuit, SynthError> {
    check(n)?;
    let mut b = CircuitBuilder::new();
    let data = b.register("data", n * (n + 1));
    let g = Grid { start: data.start, cols: n + 1 };
    for i in 0..n - 1 {
        b.begin_stage(format!("pivot {i}"));
        pivot_stage(&mut b, g, n, i);
        b.end_stage();
        b.begin_stage(format!("eliminate {i}"));
        eliminate_stage(&mut b, g, i, i + 1..n);
        b.end_stage();
    }
    b.begin_stage("back substitution");
    for j in (1..n).rev() {
        for i in (0..j).rev() {
            b.toffoli(g.q(i, j), g.q(j, n), g.q(i, n));
        }
    }
    b.end_stage();
    Ok(b.finish())
}

/// Gauss-Jordan elimination on `[A | b]`: each pivot column is cleared
/// above and below, so no back substitution is needed. For invertible `A`
/// the coefficient block ends as the identity. On singular input the rows
/// above a missing pivot are still cleared in that column.
pub fn build_qgje(n: usize) -> Result<Circuit, SynthError> {
    check(n)?;
    let mut b = CircuitBuilder::new();
    let data = b.register("data", n * (n + 1));
    let g = Grid { start: data.start, cols: n + 1 };
    for i in 0..n {
        b.begin_stage(format!("pivot {i}"));
        pivot_stage(&mut b, g, n, i);
        b.end_stage();
        b.begin_stage(format!("eliminate {i}"));
        eliminate_stage(&mut b, g, i, (0..n).filter(|&k| k != i));
        b.end_stage();
    }
    Ok(b.finish())
}
