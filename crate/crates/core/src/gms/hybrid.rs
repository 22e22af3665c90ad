use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{ug_classifier, GmsConfig, GmsError};
use crate::circuit::CircuitBuilder;
use crate::gf2::BitMatrix;
use crate::sim::{amplitude_amplify, simon_circuit, StateVector};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeySample {
    pub key: u64,
    pub y_rows: Vec<u64>,
    pub accepted: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HybridRun {
    pub rounds: usize,
    pub samples: Vec<KeySample>,
    pub marked_keys: Vec<u64>,
    /// `(t, P(measured key = k))` for Grover over the key register.
    pub curve: Vec<(usize, f64)>,
    pub best_t: usize,
    pub best_p: f64,
}

/// Contrast experiment: for every key guess, run `rounds` Simon rounds on
/// `f(k', ·)` and measure each immediately (sampling with `seed`), solve
/// the resulting system classically and classify. Then run Grover over the
/// key register alone with the accepted keys marked.
pub fn hybrid_baseline(cfg: &GmsConfig, rounds: usize, seed: u64) -> Result<HybridRun, GmsError> {
    if rounds == 0 {
        return Err(GmsError::Config("need at least one Simon round".into()));
    }
    let n = cfg.n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let y_qubits: Vec<usize> = (0..n).collect();
    let mut samples = Vec::new();
    for key in 0..1u64 << cfg.m {
        let c = simon_circuit(&Arc::new(cfg.oracle.restricted(key)), 1);
        let mut state = StateVector::zero(c.qubit_count())?;
        state.run(&c)?;
        let y_rows: Vec<u64> = (0..rounds).map(|_| state.measure(&y_qubits, &mut rng).0 as u64).collect();
        let mut y = BitMatrix::zeros(rounds, n);
        for (i, r) in y_rows.iter().enumerate() {
            for j in 0..n {
                y.set(i, j, (r >> j) & 1 == 1);
            }
        }
        let accepted = ug_classifier(key, &y, &cfg.oracle, &cfg.plaintexts)?;
        samples.push(KeySample { key, y_rows, accepted });
    }
    let marked_keys: Vec<u64> = samples.iter().filter(|s| s.accepted).map(|s| s.key).collect();

    let mut b = CircuitBuilder::new();
    let reg = b.register("key", cfg.m);
    for q in reg.range() {
        b.h(q);
    }
    let prep = b.finish();
    let t_max = cfg.t_max.max(1);
    let mut curve = Vec::with_capacity(t_max + 1);
    for t in 0..=t_max {
        let s = amplitude_amplify(&prep, |i| marked_keys.contains(&(i as u64)), t)?;
        curve.push((t, s.probability(cfg.oracle.key as usize)));
    }
    let (best_t, best_p) = curve.iter().copied().fold((0, f64::MIN), |acc, x| if x.1 > acc.1 + 1e-12 { x } else { acc });
    Ok(HybridRun { rounds, samples, marked_keys, curve, best_t, best_p })
}
