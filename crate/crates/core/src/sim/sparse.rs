use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::{check_width, classical_step, SimError, StateVector};
use crate::circuit::{Circuit, Gate};

const PRUNE: f64 = 1e-24;

/// Amplitudes keyed by basis index, for states on up to 128 qubits with
/// small support. Ordered so that iteration and output are deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseState {
    qubits: usize,
    amps: BTreeMap<u128, Complex64>,
}

impl SparseState {
    pub fn basis(qubits: usize, index: u128) -> Result<Self, SimError> {
        if qubits == 0 || qubits > 128 {
            return Err(SimError::InvalidArgument(format!("sparse states support 1..=128 qubits, got {qubits}")));
        }
        if qubits < 128 && index >> qubits != 0 {
            return Err(SimError::InvalidArgument(format!("basis index needs more than {qubits} qubits")));
        }
        Ok(Self { qubits, amps: BTreeMap::from([(index, Complex64::new(1.0, 0.0))]) })
    }

    /// Normalised superposition `Σ c_i |i⟩` from raw terms.
    pub fn from_terms(qubits: usize, terms: &[(u128, Complex64)]) -> Result<Self, SimError> {
        let mut s = Self::basis(qubits, 0)?;
        s.amps.clear();
        for &(i, a) in terms {
            if qubits < 128 && i >> qubits != 0 {
                return Err(SimError::InvalidArgument("term index out of range".into()));
            }
            *s.amps.entry(i).or_default() += a;
        }
        let norm = s.norm_sqr().sqrt();
        if norm < 1e-12 {
            return Err(SimError::InvalidArgument("superposition has zero norm".into()));
        }
        s.amps.values_mut().for_each(|a| *a /= norm);
        Ok(s)
    }

    pub fn from_dense(s: &StateVector) -> Self {
        let amps = s
            .amplitudes()
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm_sqr() > PRUNE)
            .map(|(i, a)| (i as u128, *a))
            .collect();
        Self { qubits: s.qubit_count(), amps }
    }

    /// The same state with `qubits - self.qubit_count()` extra qubits in
    /// `|0⟩` appended above the existing ones.
    pub fn widen(&self, qubits: usize) -> Result<Self, SimError> {
        if qubits < self.qubits || qubits > 128 {
            return Err(SimError::InvalidArgument(format!("cannot widen {} qubits to {qubits}", self.qubits)));
        }
        Ok(Self { qubits, amps: self.amps.clone() })
    }

    pub fn to_dense(&self) -> Result<StateVector, SimError> {
        let mut v = vec![Complex64::new(0.0, 0.0); 1usize.checked_shl(self.qubits as u32).unwrap_or(0)];
        if v.is_empty() {
            return Err(SimError::QubitCapExceeded { required: self.qubits, cap: super::qubit_cap() });
        }
        for (&i, &a) in &self.amps {
            v[i as usize] = a;
        }
        StateVector::from_amplitudes(self.qubits, v)
    }

    pub fn qubit_count(&self) -> usize {
        self.qubits
    }

    pub fn support(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitude(&self, index: u128) -> Complex64 {
        self.amps.get(&index).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u128, Complex64)> + '_ {
        self.amps.iter().map(|(&i, &a)| (i, a))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.values().map(Complex64::norm_sqr).sum()
    }

    pub fn apply(&mut self, g: &Gate, c: &Circuit) -> Result<(), SimError> {
        if let Gate::H(q) = g {
            let bit = 1u128 << q;
            let h = FRAC_1_SQRT_2;
            let mut next: BTreeMap<u128, Complex64> = BTreeMap::new();
            for (&i, &a) in &self.amps {
                let low = i & !bit;
                *next.entry(low).or_default() += a * h;
                let sign = if i & bit == 0 { h } else { -h };
                *next.entry(low | bit).or_default() += a * sign;
            }
            next.retain(|_, a| a.norm_sqr() > PRUNE);
            self.amps = next;
            return Ok(());
        }
        let mut next = BTreeMap::new();
        for (&i, &a) in &self.amps {
            let (j, k) = classical_step(g, i, c)?;
            let a = if k == 0 { a } else { a * Complex64::from_polar(1.0, f64::from(k) * std::f64::consts::FRAC_PI_4) };
            next.insert(j, a);
        }
        self.amps = next;
        Ok(())
    }

    pub fn run(&mut self, c: &Circuit) -> Result<(), SimError> {
        check_width(c, self.qubits)?;
        for g in c.gates() {
            self.apply(g, c)?;
        }
        Ok(())
    }

    /// `Tr ρ²` of the reduced state on `keep`, tracing out every other qubit.
    pub fn reduced_purity(&self, keep: &[usize]) -> f64 {
        let keep_mask = keep.iter().fold(0u128, |m, &q| m | 1 << q);
        let mut by_env: BTreeMap<u128, Vec<(u128, Complex64)>> = BTreeMap::new();
        for (&i, &a) in &self.amps {
            by_env.entry(i & !keep_mask).or_default().push((i & keep_mask, a));
        }
        let mut rho: BTreeMap<(u128, u128), Complex64> = BTreeMap::new();
        for terms in by_env.values() {
            for &(x, a) in terms {
                for &(y, b) in terms {
                    *rho.entry((x, y)).or_default() += a * b.conj();
                }
            }
        }
        rho.values().map(Complex64::norm_sqr).sum()
    }

    /// Probability that the qubits in `mask` are all zero.
    pub fn probability_clear(&self, mask: u128) -> f64 {
        self.amps.iter().filter(|(&i, _)| i & mask == 0).map(|(_, a)| a.norm_sqr()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::CircuitBuilder;

    #[test]
    fn matches_dense_on_small_circuit() {
        let mut b = CircuitBuilder::new();
        let r = b.register("q", 3);
        b.h(r.qubit(0));
        b.push(Gate::T(0));
        b.toffoli(0, 1, 2);
        b.h(1);
        b.cnot(1, 2);
        b.push(Gate::S(2));
        b.h(0);
        let c = b.finish();
        let mut d = StateVector::zero(3).unwrap();
        d.run(&c).unwrap();
        let mut s = SparseState::basis(3, 0).unwrap();
        s.run(&c).unwrap();
        assert!(s.to_dense().unwrap().max_abs_diff(&d) < 1e-12);
    }

    #[test]
    fn wide_basis_state() {
        let mut b = CircuitBuilder::new();
        b.register("q", 100);
        b.cnot(0, 99);
        let c = b.finish();
        let mut s = SparseState::basis(100, 1).unwrap();
        s.run(&c).unwrap();
        assert_eq!(s.amplitude(1 | 1 << 99), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn purity_of_bell_half_is_half() {
        let a = Complex64::new(1.0, 0.0);
        let s = SparseState::from_terms(2, &[(0, a), (3, a)]).unwrap();
        assert!((s.reduced_purity(&[0]) - 0.5).abs() < 1e-12);
        let p = SparseState::from_terms(2, &[(0, a), (1, a)]).unwrap();
        assert!((p.reduced_purity(&[1]) - 1.0).abs() < 1e-12);
    }
}
