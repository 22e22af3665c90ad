//! Reversible elimination circuits over GF(2): row echelon, Gaussian and
//! Gauss-Jordan elimination on augmented systems, in-place RREF, and the
//! period-extraction map used by the Grover-meets-Simon classifier.
//!
//! Matrix entries live row-major in the `data` register: qubit `i·cols + j`
//! holds `a[i][j]`. For augmented systems `b[i]` is qubit `i·(n+1) + n`.
//! Ancillas follow all named registers.

mod echelon;
mod predict;
mod qge;
mod rref;
mod uqge;

use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;

pub use echelon::build_row_echelon;
pub use predict::{
    back_substitution_toffoli, elimination_stage_counts, pivot_stage_counts, predicted_resources, ClosedForm,
    Prediction, StageSum,
};
pub use qge::{build_qge, build_qgje};
pub use rref::build_rref;
pub use uqge::build_uqge_solution;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SynthError {
    #[error("invalid dimensions: {0}")]
    Dimension(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SynthKind {
    RowEchelon(usize, usize),
    Qge(usize),
    Qgje(usize),
    RrefSquare(usize),
    RrefRect(usize, usize),
}

impl SynthKind {
    fn validate(self) -> Result<(), SynthError> {
        let ok = match self {
            SynthKind::RowEchelon(m, n) => n >= 1 && n <= m,
            SynthKind::Qge(n) | SynthKind::Qgje(n) => n >= 2,
            SynthKind::RrefSquare(n) => n >= 1,
            SynthKind::RrefRect(m, n) => m >= 1 && n >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(SynthError::Dimension(format!("{self:?} is out of range")))
        }
    }

    pub fn build(self) -> Result<Circuit, SynthError> {
        self.validate()?;
        match self {
            SynthKind::RowEchelon(m, n) => build_row_echelon(m, n),
            SynthKind::Qge(n) => build_qge(n),
            SynthKind::Qgje(n) => build_qgje(n),
            SynthKind::RrefSquare(n) => build_rref(n, n),
            SynthKind::RrefRect(m, n) => build_rref(m, n),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Grid {
    pub start: usize,
    pub cols: usize,
}

impl Grid {
    pub fn q(&self, i: usize, j: usize) -> usize {
        self.start + i * self.cols + j
    }
}
