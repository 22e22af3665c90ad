use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::Rng;
use serde_json::json;

use super::{check_width, classical_step, qubit_cap, resolve, SimError};
use crate::circuit::{Circuit, Gate};

/// Full state vector. Amplitude index bit `q` is the value of qubit `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    qubits: usize,
    amps: Vec<Complex64>,
}

fn eighth_root(k: u8) -> Complex64 {
    Complex64::from_polar(1.0, f64::from(k) * std::f64::consts::FRAC_PI_4)
}

impl StateVector {
    /// `|0…0⟩` on `qubits` qubits, subject to [`qubit_cap`].
    pub fn zero(qubits: usize) -> Result<Self, SimError> {
        Self::basis(qubits, 0)
    }

    pub fn basis(qubits: usize, index: usize) -> Result<Self, SimError> {
        let cap = qubit_cap();
        if qubits > cap || qubits >= usize::BITS as usize {
            return Err(SimError::QubitCapExceeded { required: qubits, cap });
        }
        if index >> qubits != 0 {
            return Err(SimError::InvalidArgument(format!("basis index {index} needs more than {qubits} qubits")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << qubits];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { qubits, amps })
    }

    /// Wraps raw amplitudes. The vector must have length `2^qubits` and unit
    /// norm.
    pub fn from_amplitudes(qubits: usize, amps: Vec<Complex64>) -> Result<Self, SimError> {
        let cap = qubit_cap();
        if qubits > cap {
            return Err(SimError::QubitCapExceeded { required: qubits, cap });
        }
        if amps.len() != 1 << qubits {
            return Err(SimError::InvalidArgument(format!("{} amplitudes for {qubits} qubits", amps.len())));
        }
        let s = Self { qubits, amps };
        if (s.norm_sqr() - 1.0).abs() > 1e-9 {
            return Err(SimError::InvalidArgument(format!("state has squared norm {}", s.norm_sqr())));
        }
        Ok(s)
    }

    /// Equal superposition over all basis states.
    pub fn uniform(qubits: usize) -> Result<Self, SimError> {
        let mut s = Self::zero(qubits)?;
        let a = Complex64::new((s.amps.len() as f64).sqrt().recip(), 0.0);
        s.amps.iter_mut().for_each(|x| *x = a);
        Ok(s)
    }

    pub fn qubit_count(&self) -> usize {
        self.qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.amps[index].norm_sqr()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(Complex64::norm_sqr).sum()
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        assert_eq!(self.qubits, other.qubits, "qubit count mismatch");
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// `1 - |⟨self|other⟩|`, zero exactly when the states agree up to a
    /// global phase.
    pub fn distance_up_to_phase(&self, other: &StateVector) -> f64 {
        1.0 - self.inner(other).norm()
    }

    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Probability of each value of `qubits`; outcome bit `j` is
    /// `qubits[j]`.
    pub fn full_distribution(&self, qubits: &[usize]) -> Vec<f64> {
        let mut out = vec![0.0; 1 << qubits.len()];
        for (i, a) in self.amps.iter().enumerate() {
            let p = a.norm_sqr();
            if p != 0.0 {
                out[gather(i, qubits)] += p;
            }
        }
        out
    }

    /// Total probability of basis states accepted by `pred`.
    pub fn probability_where(&self, pred: impl Fn(usize) -> bool) -> f64 {
        self.amps.iter().enumerate().filter(|(i, _)| pred(*i)).map(|(_, a)| a.norm_sqr()).sum()
    }

    /// Projective measurement of `qubits`; returns the outcome and the
    /// renormalised post-measurement state.
    pub fn measure<R: Rng + ?Sized>(&self, qubits: &[usize], rng: &mut R) -> (usize, StateVector) {
        let dist = self.full_distribution(qubits);
        let mut u: f64 = rng.gen::<f64>() * dist.iter().sum::<f64>();
        let mut outcome = dist.len() - 1;
        for (k, p) in dist.iter().enumerate() {
            if u < *p {
                outcome = k;
                break;
            }
            u -= p;
        }
        let scale = dist[outcome].sqrt().recip();
        let amps = self
            .amps
            .iter()
            .enumerate()
            .map(|(i, a)| if gather(i, qubits) == outcome { a * scale } else { Complex64::new(0.0, 0.0) })
            .collect();
        (outcome, StateVector { qubits: self.qubits, amps })
    }

    /// Multiplies the amplitude of every basis state accepted by `pred` by -1.
    pub fn phase_flip(&mut self, pred: impl Fn(usize) -> bool) {
        for (i, a) in self.amps.iter_mut().enumerate() {
            if pred(i) {
                *a = -*a;
            }
        }
    }

    /// Inversion about the mean, `a_i → 2ā - a_i`.
    pub fn invert_about_mean(&mut self) {
        let mean: Complex64 = self.amps.iter().sum::<Complex64>() / self.amps.len() as f64;
        for a in self.amps.iter_mut() {
            *a = 2.0 * mean - *a;
        }
    }

    pub fn apply(&mut self, g: &Gate, c: &Circuit) -> Result<(), SimError> {
        match g {
            Gate::H(q) => {
                let bit = 1usize << q;
                let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
                for i in 0..self.amps.len() {
                    if i & bit == 0 {
                        let (a, b) = (self.amps[i], self.amps[i | bit]);
                        self.amps[i] = h * (a + b);
                        self.amps[i | bit] = h * (a - b);
                    }
                }
            }
            Gate::Z(q) | Gate::S(q) | Gate::Sdg(q) | Gate::T(q) | Gate::Tdg(q) => {
                let (_, k) = classical_step(g, 1u128 << q, c)?;
                let phase = eighth_root(k);
                let bit = 1usize << q;
                for (i, a) in self.amps.iter_mut().enumerate() {
                    if i & bit != 0 {
                        *a *= phase;
                    }
                }
            }
            Gate::X(_) | Gate::Cnot { .. } | Gate::Toffoli { .. } | Gate::Mcx { .. } => {
                let ctrl = g.controls().iter().fold(0usize, |m, &q| m | 1 << q);
                let t = 1usize << g.targets()[0];
                for i in 0..self.amps.len() {
                    if i & ctrl == ctrl && i & t == 0 {
                        self.amps.swap(i, i | t);
                    }
                }
            }
            Gate::Oracle { name, inputs, outputs } => {
                let spec = resolve(c, name)?;
                for i in 0..self.amps.len() {
                    let y = spec.eval(gather(i, inputs) as u64);
                    let j = i ^ scatter(y, outputs);
                    if j > i {
                        self.amps.swap(i, j);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn run(&mut self, c: &Circuit) -> Result<(), SimError> {
        check_width(c, self.qubits)?;
        for g in c.gates() {
            self.apply(g, c)?;
        }
        Ok(())
    }

    /// Nonzero amplitudes as JSON, grouped per register of `c`.
    pub fn dump(&self, c: &Circuit, threshold: f64) -> serde_json::Value {
        let entries: Vec<_> = self
            .amps
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm_sqr() > threshold)
            .map(|(i, a)| {
                let regs: serde_json::Map<_, _> = c
                    .registers()
                    .iter()
                    .map(|r| (r.name.clone(), json!((i >> r.start) & ((1usize << r.len) - 1))))
                    .collect();
                json!({ "index": i, "re": a.re, "im": a.im, "registers": regs })
            })
            .collect();
        json!({ "qubits": self.qubits, "amplitudes": entries })
    }
}

pub(crate) fn gather(i: usize, qubits: &[usize]) -> usize {
    qubits.iter().enumerate().fold(0, |acc, (j, &q)| acc | (((i >> q) & 1) << j))
}

fn scatter(y: u64, qubits: &[usize]) -> usize {
    qubits.iter().enumerate().fold(0, |acc, (j, &q)| acc | ((((y >> j) & 1) as usize) << q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::CircuitBuilder;

    #[test]
    fn bell_state() {
        let mut b = CircuitBuilder::new();
        let r = b.register("q", 2);
        b.h(r.qubit(0));
        b.cnot(r.qubit(0), r.qubit(1));
        let c = b.finish();
        let mut s = StateVector::zero(2).unwrap();
        s.run(&c).unwrap();
        assert!((s.probability(0) - 0.5).abs() < 1e-12);
        assert!((s.probability(3) - 0.5).abs() < 1e-12);
        let d = s.full_distribution(&[1]);
        assert!((d[0] - 0.5).abs() < 1e-12 && (d[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn t_squared_is_s() {
        let mut b = CircuitBuilder::new();
        b.register("q", 1);
        b.h(0);
        b.push(Gate::T(0));
        b.push(Gate::T(0));
        b.push(Gate::Sdg(0));
        b.h(0);
        let mut s = StateVector::zero(1).unwrap();
        s.run(&b.finish()).unwrap();
        assert!((s.probability(0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn width_mismatch_is_an_error() {
        let c = Circuit::new(3, vec![]).unwrap();
        let mut s = StateVector::zero(2).unwrap();
        assert_eq!(s.run(&c), Err(SimError::QubitCountMismatch { circuit: 3, state: 2 }));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(StateVector::zero(qubit_cap() + 1), Err(SimError::QubitCapExceeded { .. })));
    }

    #[test]
    fn invert_about_mean_fixes_uniform() {
        let mut s = StateVector::uniform(3).unwrap();
        let before = s.clone();
        s.invert_about_mean();
        assert!(s.max_abs_diff(&before) < 1e-12);
    }
}
