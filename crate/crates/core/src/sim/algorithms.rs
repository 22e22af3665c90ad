use std::sync::Arc;

use super::{OracleSpec, SimError, SimonOracle, StateVector};
use crate::circuit::{Circuit, CircuitBuilder};

/// `l` independent Simon rounds side by side. Registers: `y` holds the
/// `l` input copies (copy `i` at `i·n_in`), `f` the matching outputs.
/// The circuit is H on `y`, one oracle call per copy, H on `y`; nothing is
/// measured.
pub fn simon_circuit(spec: &Arc<OracleSpec>, l: usize) -> Circuit {
    assert!(l >= 1, "need at least one round");
    let (n_in, n_out) = (spec.input_width(), spec.output_width());
    let mut b = CircuitBuilder::new();
    let y = b.register("y", n_in * l);
    let f = b.register("f", n_out * l);
    for q in y.range() {
        b.h(q);
    }
    for i in 0..l {
        let ins: Vec<usize> = (0..n_in).map(|j| y.qubit(i * n_in + j)).collect();
        let outs: Vec<usize> = (0..n_out).map(|j| f.qubit(i * n_out + j)).collect();
        b.oracle(spec, &ins, &outs);
    }
    for q in y.range() {
        b.h(q);
    }
    b.finish()
}

/// State after one Simon round: `x` register at qubits `0..n`, `f(x)` at
/// `n..2n`.
pub fn simon_round(oracle: &SimonOracle) -> Result<StateVector, SimError> {
    parallel_simon(oracle, 1)
}

/// State after `l` parallel Simon rounds, laid out as in [`simon_circuit`].
pub fn parallel_simon(oracle: &SimonOracle, l: usize) -> Result<StateVector, SimError> {
    let c = simon_circuit(&Arc::new(oracle.spec.clone()), l);
    let mut s = StateVector::zero(c.qubit_count())?;
    s.run(&c)?;
    Ok(s)
}

/// `Q^t · A|0⟩` with `Q = A (2|0⟩⟨0| - I) A⁻¹ S_good`, where `S_good` flips
/// the sign of every basis state accepted by `good`. This differs from the
/// textbook `-A S_0 A⁻¹ S_good` only by a global phase.
pub fn amplitude_amplify(prep: &Circuit, good: impl Fn(usize) -> bool, t: usize) -> Result<StateVector, SimError> {
    let inverse = prep.invert();
    let mut s = StateVector::zero(prep.qubit_count())?;
    s.run(prep)?;
    for _ in 0..t {
        s.phase_flip(&good);
        s.run(&inverse)?;
        s.phase_flip(|i| i != 0);
        s.run(prep)?;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::sim::build_simon_oracle;

    fn hadamards(n: usize) -> Circuit {
        let mut b = CircuitBuilder::new();
        let r = b.register("q", n);
        for q in r.range() {
            b.h(q);
        }
        b.finish()
    }

    #[test]
    fn grover_four_items_one_step() {
        let s = amplitude_amplify(&hadamards(2), |i| i == 2, 1).unwrap();
        assert!((s.probability(2) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn grover_eight_items_two_steps() {
        let s = amplitude_amplify(&hadamards(3), |i| i == 5, 2).unwrap();
        let theta = (1.0f64 / 8.0).sqrt().asin();
        assert!((s.probability(5) - (5.0 * theta).sin().powi(2)).abs() < 1e-12);
        assert!((s.probability(5) - 0.9453125).abs() < 1e-12);
    }

    #[test]
    fn simon_round_support_is_orthogonal_to_period() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let o = build_simon_oracle(2, 0b11, &mut rng).unwrap();
        let s = simon_round(&o).unwrap();
        let dist = s.full_distribution(&[0, 1]);
        assert!((dist[0] - 0.5).abs() < 1e-12 && (dist[3] - 0.5).abs() < 1e-12);
        assert!(dist[1].abs() < 1e-12 && dist[2].abs() < 1e-12);
    }
}
