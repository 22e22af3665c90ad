use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{amplitude_stats, marked_table, AmplitudeStats, GmsConfig, GmsError, MarkedSet};
use crate::circuit::{Circuit, CircuitBuilder};
use crate::sim::StateVector;

/// The state-preparation circuit: H on the key and Y registers, one FX
/// oracle call per Simon row with the key register as extra input, H on Y.
pub fn gms_prep_circuit(cfg: &GmsConfig) -> Circuit {
    let lay = cfg.layout();
    let spec = Arc::new(cfg.oracle.spec.clone());
    let mut b = CircuitBuilder::new();
    let key = b.register("key", lay.m);
    let y = b.register("y", lay.n * lay.l);
    b.register("f", lay.n * lay.l);
    for q in key.range().chain(y.range()) {
        b.h(q);
    }
    for i in 0..lay.l {
        let ins: Vec<usize> = (0..lay.n).map(|j| lay.y_qubit(i, j)).chain(key.range()).collect();
        let outs: Vec<usize> = (0..lay.n).map(|j| lay.f_qubit(i, j)).collect();
        b.oracle(&spec, &ins, &outs);
    }
    for q in y.range() {
        b.h(q);
    }
    b.finish()
}

/// The state before any Grover iteration: `l` Simon rounds run coherently
/// with the key register in uniform superposition.
pub fn prepare_initial_state(cfg: &GmsConfig) -> Result<StateVector, GmsError> {
    let c = gms_prep_circuit(cfg);
    let mut s = StateVector::zero(c.qubit_count())?;
    s.run(&c)?;
    Ok(s)
}

/// How the diffusion step reflects.
#[derive(Debug, Clone, Copy)]
pub enum GroverOperator<'a> {
    /// `a_i → 2ā - a_i` over the full space, the operator whose reachable
    /// success probability is bounded by `P_max = 1 - (N-r)σ²`.
    InversionAboutMean,
    /// `A (2|0⟩⟨0| - I) A⁻¹` for the given preparation `A`.
    ReflectAboutPrepared(&'a Circuit),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub t: usize,
    /// Probability of the marked subspace.
    pub p_marked: f64,
    /// Probability that the key register reads the correct key.
    pub p_key: f64,
}

pub fn grover_curve(
    initial: &StateVector,
    marked: impl Fn(usize) -> bool,
    correct_key: impl Fn(usize) -> bool,
    op: GroverOperator<'_>,
    t_max: usize,
) -> Result<Vec<CurvePoint>, GmsError> {
    let inverse = match op {
        GroverOperator::ReflectAboutPrepared(prep) => Some(prep.invert()),
        GroverOperator::InversionAboutMean => None,
    };
    let mut s = initial.clone();
    let mut out = Vec::with_capacity(t_max + 1);
    for t in 0..=t_max {
        if t > 0 {
            s.phase_flip(&marked);
            match (op, &inverse) {
                (GroverOperator::ReflectAboutPrepared(prep), Some(inv)) => {
                    s.run(inv)?;
                    s.phase_flip(|i| i != 0);
                    s.run(prep)?;
                }
                _ => s.invert_about_mean(),
            }
        }
        out.push(CurvePoint { t, p_marked: s.probability_where(&marked), p_key: s.probability_where(&correct_key) });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GmsRun {
    /// Statistics with the classifier's marked set (the one the phase
    /// oracle flips).
    pub stats: AmplitudeStats,
    /// Statistics with the ideal marked set (correct key, correct period).
    pub stats_ideal: AmplitudeStats,
    /// Marked basis states with nonzero initial amplitude.
    pub r_support: u64,
    pub r_support_ideal: u64,
    /// Basis states with nonzero initial amplitude.
    pub n_support: u64,
    /// Inversion about the mean, marked by the classifier.
    pub curve: Vec<CurvePoint>,
    /// Reflection about the prepared state, marked by the classifier.
    pub qaa_curve: Vec<CurvePoint>,
}

impl GmsRun {
    pub fn max_p_marked(&self) -> f64 {
        self.curve.iter().map(|p| p.p_marked).fold(0.0, f64::max)
    }
}

pub fn run_gms(cfg: &GmsConfig) -> Result<GmsRun, GmsError> {
    let lay = cfg.layout();
    let initial = prepare_initial_state(cfg)?;
    let low = (1usize << lay.key_y_bits()) - 1;
    let table = marked_table(cfg, MarkedSet::Classifier)?;
    let ideal = marked_table(cfg, MarkedSet::Ideal)?;
    let marked = |i: usize| table[i & low];
    let is_ideal = |i: usize| ideal[i & low];
    let key = cfg.oracle.key;
    let correct_key = |i: usize| lay.key_of(i) == key;

    let support = |pred: &dyn Fn(usize) -> bool| {
        initial.amplitudes().iter().enumerate().filter(|(i, a)| a.norm_sqr() > 1e-24 && pred(*i)).count() as u64
    };
    let prep = gms_prep_circuit(cfg);
    Ok(GmsRun {
        stats: amplitude_stats(&initial, marked),
        stats_ideal: amplitude_stats(&initial, is_ideal),
        r_support: support(&marked),
        r_support_ideal: support(&is_ideal),
        n_support: support(&|_| true),
        curve: grover_curve(&initial, marked, correct_key, GroverOperator::InversionAboutMean, cfg.t_max)?,
        qaa_curve: grover_curve(&initial, marked, correct_key, GroverOperator::ReflectAboutPrepared(&prep), cfg.t_max)?,
    })
}
