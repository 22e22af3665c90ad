//! Desk-scale reanalysis of Grover-meets-Simon on the FX construction with
//! every Simon measurement deferred to the end.
//!
//! Dense register layout on `m + 2nl` qubits: key guess `k'` at `0..m`,
//! the Simon input rows `y_i` at `m + i·n`, the oracle outputs `f_i` at
//! `m + nl + i·n`.

mod classifier;
mod deferred;
mod hybrid;
mod run;
mod stats;
mod theory;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::CircuitError;
use crate::gf2::BitMatrix;
use crate::sim::{build_fx_oracle, qubit_cap, FxOracle, SimError};
use crate::synth::SynthError;

pub use classifier::{build_ug_circuit, marked_table, ug_classifier, MarkedSet};
pub use deferred::{deferred_vs_immediate, DeferredReport};
pub use hybrid::{hybrid_baseline, HybridRun};
pub use run::{gms_prep_circuit, grover_curve, prepare_initial_state, run_gms, CurvePoint, GmsRun, GroverOperator};
pub use stats::{amplitude_stats, optimal_iterations, p_max_estimate, AmplitudeStats};
pub use theory::{
    character_sum, character_sum_coset, count_rank_n_minus_1, lemma3_formula, query_ratio, CountMode, CountReport,
    QueryRatio,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GmsError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Synth(#[from] SynthError),
    #[error("the mean unmarked amplitude is zero")]
    DegenerateUnmarkedMean,
    #[error("brute-force enumeration for n = {0} is too large")]
    EnumerationTooLarge(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GmsLayout {
    pub m: usize,
    pub n: usize,
    pub l: usize,
}

impl GmsLayout {
    pub fn qubits(&self) -> usize {
        self.m + 2 * self.n * self.l
    }

    /// Qubits holding `(k', Y)`; the classifier depends on these only.
    pub fn key_y_bits(&self) -> usize {
        self.m + self.n * self.l
    }

    pub fn key_qubit(&self, i: usize) -> usize {
        i
    }

    pub fn y_qubit(&self, row: usize, bit: usize) -> usize {
        self.m + row * self.n + bit
    }

    pub fn f_qubit(&self, row: usize, bit: usize) -> usize {
        self.m + self.n * self.l + row * self.n + bit
    }

    pub fn key_of(&self, idx: usize) -> u64 {
        (idx & ((1 << self.m) - 1)) as u64
    }

    pub fn y_rows(&self, idx: usize) -> Vec<u64> {
        let mask = (1usize << self.n) - 1;
        (0..self.l).map(|i| ((idx >> self.y_qubit(i, 0)) & mask) as u64).collect()
    }

    pub fn y_matrix(&self, idx: usize) -> BitMatrix {
        let rows = self.y_rows(idx);
        let mut y = BitMatrix::zeros(self.l, self.n);
        for (i, r) in rows.iter().enumerate() {
            for j in 0..self.n {
                y.set(i, j, (r >> j) & 1 == 1);
            }
        }
        y
    }
}

/// One experiment: dimensions, the FX instance, and the classifier's
/// plaintext checks.
#[derive(Debug, Clone)]
pub struct GmsConfig {
    pub m: usize,
    pub n: usize,
    pub l: usize,
    pub t_max: usize,
    pub seed: u64,
    pub plaintexts: Vec<u64>,
    pub oracle: FxOracle,
}

pub const DEFAULT_PLAINTEXTS: [u64; 2] = [0, 1];

impl GmsConfig {
    /// Derives the key, whitening keys and cipher permutations from `seed`.
    /// Fails with `QubitCapExceeded` before building anything when
    /// `m + 2nl` is over the simulator cap.
    pub fn from_seed(m: usize, n: usize, l: usize, t_max: usize, seed: u64) -> Result<Self, GmsError> {
        if m == 0 || n < 2 || l == 0 {
            return Err(GmsError::Config(format!("need m >= 1, n >= 2, l >= 1; got m = {m}, n = {n}, l = {l}")));
        }
        let required = m + 2 * n * l;
        let cap = qubit_cap();
        if required > cap {
            return Err(SimError::QubitCapExceeded { required, cap }.into());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let key = rng.gen_range(0..1u64 << m);
        let k1 = rng.gen_range(1..1u64 << n);
        let k2 = rng.gen_range(0..1u64 << n);
        let cipher_seed = rng.gen();
        let oracle = build_fx_oracle(m, n, key, k1, k2, cipher_seed)?;
        Ok(Self { m, n, l, t_max, seed, plaintexts: DEFAULT_PLAINTEXTS.to_vec(), oracle })
    }

    pub fn with_plaintexts(mut self, plaintexts: Vec<u64>) -> Result<Self, GmsError> {
        if plaintexts.is_empty() || plaintexts.iter().any(|&p| p >> self.n != 0) {
            return Err(GmsError::Config("plaintexts must be a nonempty list of n-bit values".into()));
        }
        self.plaintexts = plaintexts;
        Ok(self)
    }

    pub fn layout(&self) -> GmsLayout {
        GmsLayout { m: self.m, n: self.n, l: self.l }
    }

    /// Nominal count of basis states with nonzero amplitude:
    /// `(2^m - 1)·2^{2nl} + 2^{2(n-1)l}`.
    pub fn nominal_n(&self) -> f64 {
        let (m, n, l) = (self.m as i32, self.n as i32, self.l as i32);
        (2f64.powi(m) - 1.0) * 2f64.powi(2 * n * l) + 2f64.powi(2 * (n - 1) * l)
    }
}
