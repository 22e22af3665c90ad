use serde::{Deserialize, Serialize};

use super::{Circuit, Gate};

/// Gate and qubit counts of a circuit.
///
/// `cnot` counts CNOTs after expanding every Toffoli into the standard
/// 6-CNOT, 7-T network; `cnot_raw` counts only the explicit CNOT gates.
/// `t_depth` is 7 per Toffoli, without any parallelisation. An `Mcx` with
/// `k >= 3` controls is charged as its ladder decomposition: `2(k-1)`
/// Toffolis, one CNOT and `k-1` clean work qubits. Those work qubits are
/// reused between gates, so only the peak is reported as `mcx_ancilla`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ResourceProfile {
    pub cnot: u64,
    pub cnot_raw: u64,
    pub toffoli: u64,
    pub t_depth: u64,
    pub ancilla: u64,
    pub mcx_ancilla: u64,
    pub single_qubit: u64,
    pub oracle_calls: u64,
    pub qubits: u64,
}

impl ResourceProfile {
    /// Profile of running `self` then `next` on the same register map:
    /// gate counts add, ancilla registers and MCX work space are each
    /// shared.
    pub fn then(&self, next: &ResourceProfile) -> ResourceProfile {
        let anc_reg = (self.ancilla - self.mcx_ancilla).max(next.ancilla - next.mcx_ancilla);
        let mcx = self.mcx_ancilla.max(next.mcx_ancilla);
        ResourceProfile {
            cnot: self.cnot + next.cnot,
            cnot_raw: self.cnot_raw + next.cnot_raw,
            toffoli: self.toffoli + next.toffoli,
            t_depth: self.t_depth + next.t_depth,
            ancilla: anc_reg + mcx,
            mcx_ancilla: mcx,
            single_qubit: self.single_qubit + next.single_qubit,
            oracle_calls: self.oracle_calls + next.oracle_calls,
            qubits: (self.qubits - self.mcx_ancilla).max(next.qubits - next.mcx_ancilla) + mcx,
        }
    }
}

#[derive(Debug, Clone, Default)]
struct Tally {
    cnot_raw: u64,
    toffoli: u64,
    single: u64,
    oracle: u64,
    mcx_peak: u64,
}

impl Tally {
    fn add(&mut self, g: &Gate) {
        match g {
            Gate::Cnot { .. } => self.cnot_raw += 1,
            Gate::Toffoli { .. } => self.toffoli += 1,
            Gate::Mcx { controls, .. } => match controls.len() {
                1 => self.cnot_raw += 1,
                2 => self.toffoli += 1,
                k => {
                    let k = k as u64;
                    self.toffoli += 2 * (k - 1);
                    self.cnot_raw += 1;
                    self.mcx_peak = self.mcx_peak.max(k - 1);
                }
            },
            Gate::Oracle { .. } => self.oracle += 1,
            _ => self.single += 1,
        }
    }
}

pub fn resources(c: &Circuit) -> ResourceProfile {
    let mut t = Tally::default();
    c.gates().iter().for_each(|g| t.add(g));
    let anc = c.ancilla_count() as u64;
    ResourceProfile {
        cnot: t.cnot_raw + 6 * t.toffoli,
        cnot_raw: t.cnot_raw,
        toffoli: t.toffoli,
        t_depth: 7 * t.toffoli,
        ancilla: anc + t.mcx_peak,
        mcx_ancilla: t.mcx_peak,
        single_qubit: t.single,
        oracle_calls: t.oracle,
        qubits: c.qubit_count() as u64 + t.mcx_peak,
    }
}

/// Per-stage counts, in stage order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageProfile {
    pub label: String,
    pub cnot: u64,
    pub toffoli: u64,
    pub ancilla: u64,
}

pub fn stage_resources(c: &Circuit) -> Vec<StageProfile> {
    c.stages()
        .iter()
        .map(|s| {
            let mut t = Tally::default();
            c.gates()[s.gates.clone()].iter().for_each(|g| t.add(g));
            StageProfile {
                label: s.label.clone(),
                cnot: t.cnot_raw + 6 * t.toffoli,
                toffoli: t.toffoli,
                ancilla: s.ancillas as u64,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::CircuitBuilder;

    #[test]
    fn toffoli_expands_to_six_cnots() {
        let mut b = CircuitBuilder::new();
        let r = b.register("q", 3);
        b.toffoli(r.qubit(0), r.qubit(1), r.qubit(2));
        b.cnot(r.qubit(0), r.qubit(1));
        let p = resources(&b.finish());
        assert_eq!((p.cnot, p.cnot_raw, p.toffoli, p.t_depth), (7, 1, 1, 7));
    }

    #[test]
    fn mcx_is_charged_as_its_ladder() {
        let mut b = CircuitBuilder::new();
        let r = b.register("q", 5);
        b.mcx(&[0, 1, 2, 3], r.qubit(4));
        let p = resources(&b.finish());
        assert_eq!((p.toffoli, p.cnot_raw, p.mcx_ancilla, p.ancilla), (6, 1, 3, 3));
    }

    #[test]
    fn sequential_composition_shares_ancillas() {
        let a = ResourceProfile { cnot: 7, cnot_raw: 1, toffoli: 1, t_depth: 7, ancilla: 3, mcx_ancilla: 1, qubits: 8, ..Default::default() };
        let b = ResourceProfile { cnot: 6, toffoli: 1, t_depth: 7, ancilla: 4, mcx_ancilla: 2, qubits: 9, ..Default::default() };
        let c = a.then(&b);
        assert_eq!((c.cnot, c.toffoli, c.ancilla, c.mcx_ancilla, c.qubits), (13, 2, 4, 2, 9));
    }
}
