use serde::{Deserialize, Serialize};

use super::{SynthError, SynthKind};

/// Counts quoted as closed forms. Signed because the QGE CNOT polynomial is
/// negative at n = 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedForm {
    pub cnot: i64,
    pub t_depth: i64,
    pub ancilla: i64,
}

/// Totals obtained by summing the per-stage formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct StageSum {
    pub cnot_raw: u64,
    pub toffoli: u64,
    pub cnot: u64,
    pub t_depth: u64,
    pub ancilla: u64,
}

impl StageSum {
    fn add(&mut self, cnot_raw: u64, toffoli: u64, ancilla: u64) {
        self.cnot_raw += cnot_raw;
        self.toffoli += toffoli;
        self.ancilla += ancilla;
        self.cnot = self.cnot_raw + 6 * self.toffoli;
        self.t_depth = 7 * self.toffoli;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub closed_form: Option<ClosedForm>,
    pub stage_sum: StageSum,
}

/// Pivot stage for column `i` (1-based) of an `n`-row system.
pub fn pivot_stage_counts(n: u64, i: u64) -> (u64, u64, u64) {
    let r = n - i;
    (r, r * (r + 2), r)
}

/// Elimination stage below the pivot in column `i` (1-based).
pub fn elimination_stage_counts(n: u64, i: u64) -> (u64, u64, u64) {
    let r = n - i;
    (2 * r, r * (r + 1), r)
}

pub fn back_substitution_toffoli(n: u64) -> u64 {
    n * (n - 1) / 2
}

pub fn predicted_resources(kind: SynthKind) -> Result<Prediction, SynthError> {
    kind.validate()?;
    let mut sum = StageSum::default();
    let closed_form = match kind {
        SynthKind::Qge(n) => {
            let n = n as u64;
            for i in 1..n {
                let (c, t, a) = pivot_stage_counts(n, i);
                sum.add(c, t, a);
                let (c, t, a) = elimination_stage_counts(n, i);
                sum.add(c, t, a);
            }
            sum.add(0, back_substitution_toffoli(n), 0);
            let n = n as i64;
            Some(ClosedForm {
                cnot: (8 * n * n * n - 15 * n * n - 23 * n) / 2,
                t_depth: 7 * n * (n - 1) * (2 * n + 5) / 3,
                ancilla: n * (n - 1),
            })
        }
        SynthKind::Qgje(n) => {
            let n = n as u64;
            for i in 1..=n {
                let (c, t, a) = pivot_stage_counts(n, i);
                sum.add(c, t, a);
                sum.add(2 * (n - 1), (n - 1) * (n - i + 1), n - 1);
            }
            let n = n as i64;
            Some(ClosedForm {
                cnot: (10 * n * n * n + 11 * n * n - 21 * n) / 2,
                t_depth: 7 * n * (n - 1) * (5 * n + 8) / 6,
                ancilla: 3 * n * (n - 1) / 2,
            })
        }
        SynthKind::RowEchelon(m, n) => {
            let (m, n) = (m as u64, n as u64);
            for i in 0..n.min(m - 1) {
                let below = m - 1 - i;
                sum.add(below, below * (n - i), below);
                sum.add(2 * below, below * (n - i - 1), below);
            }
            None
        }
        SynthKind::RrefSquare(n) => {
            rref_counts(&mut sum, n as u64, n as u64);
            None
        }
        SynthKind::RrefRect(m, n) => {
            rref_counts(&mut sum, m as u64, n as u64);
            None
        }
    };
    Ok(Prediction { closed_form, stage_sum: sum })
}

fn rref_counts(sum: &mut StageSum, m: u64, n: u64) {
    for i in 0..m.min(n) {
        for c in i..n {
            let first = c == i;
            if c == i + 1 {
                sum.add(1, 0, 1);
            } else if c > i + 1 {
                sum.add(0, 1, 1);
            }
            let below = m - 1 - i;
            let (guard_c, guard_t) = if first { (1, 0) } else { (0, 1) };
            sum.add(below * guard_c, below * (guard_t + (n - c)), below);
            sum.add(guard_c, guard_t, 1);
            let others = m - 1;
            sum.add(others, others * (1 + (n - c - 1)), others);
        }
    }
}
