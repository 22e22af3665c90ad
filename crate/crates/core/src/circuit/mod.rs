//! Reversible circuit representation, builders, text export and resource
//! accounting.

mod mcx;
mod resources;
mod text;

use std::collections::BTreeMap;
use std::ops::Range;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::sim::OracleSpec;

pub use mcx::decompose_mcx;
pub use resources::{resources, stage_resources, ResourceProfile, StageProfile};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CircuitError {
    #[error("register maps are incompatible: {0}")]
    RegisterMismatch(String),
    #[error("qubit {qubit} out of range for a {qubit_count}-qubit circuit")]
    QubitOutOfRange { qubit: usize, qubit_count: usize },
    #[error("invalid gate: {0}")]
    InvalidGate(String),
    #[error("oracle {0} is not in the oracle table")]
    UnresolvedOracle(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// One gate of a reversible netlist. Qubit indices refer to the owning
/// circuit. `Oracle` applies `|x⟩|y⟩ → |x⟩|y ⊕ f(x)⟩` where the table for
/// `f` is registered on the circuit under `name`; the first listed input
/// qubit is bit 0 of the table index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Gate {
    X(usize),
    Z(usize),
    H(usize),
    S(usize),
    Sdg(usize),
    T(usize),
    Tdg(usize),
    Cnot { control: usize, target: usize },
    Toffoli { controls: [usize; 2], target: usize },
    Mcx { controls: Vec<usize>, target: usize },
    Oracle { name: String, inputs: Vec<usize>, outputs: Vec<usize> },
}

impl Gate {
    /// Multi-controlled X, normalised to CNOT or Toffoli for one or two
    /// controls.
    pub fn mcx(controls: &[usize], target: usize) -> Gate {
        match controls {
            [] => Gate::X(target),
            [c] => Gate::Cnot { control: *c, target },
            [a, b] => Gate::Toffoli { controls: [*a, *b], target },
            _ => Gate::Mcx { controls: controls.to_vec(), target },
        }
    }

    pub fn inverse(&self) -> Gate {
        match self {
            Gate::S(q) => Gate::Sdg(*q),
            Gate::Sdg(q) => Gate::S(*q),
            Gate::T(q) => Gate::Tdg(*q),
            Gate::Tdg(q) => Gate::T(*q),
            other => other.clone(),
        }
    }

    pub fn controls(&self) -> &[usize] {
        match self {
            Gate::Cnot { control, .. } => std::slice::from_ref(control),
            Gate::Toffoli { controls, .. } => controls,
            Gate::Mcx { controls, .. } => controls,
            Gate::Oracle { inputs, .. } => inputs,
            _ => &[],
        }
    }

    pub fn targets(&self) -> &[usize] {
        match self {
            Gate::X(q) | Gate::Z(q) | Gate::H(q) | Gate::S(q) | Gate::Sdg(q) | Gate::T(q) | Gate::Tdg(q) => {
                std::slice::from_ref(q)
            }
            Gate::Cnot { target, .. } | Gate::Toffoli { target, .. } | Gate::Mcx { target, .. } => {
                std::slice::from_ref(target)
            }
            Gate::Oracle { outputs, .. } => outputs,
        }
    }

    /// True for gates that map computational basis states to basis states
    /// up to a phase.
    pub fn is_classical(&self) -> bool {
        !matches!(self, Gate::H(_))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Gate::X(_) => "X",
            Gate::Z(_) => "Z",
            Gate::H(_) => "H",
            Gate::S(_) => "S",
            Gate::Sdg(_) => "SDG",
            Gate::T(_) => "T",
            Gate::Tdg(_) => "TDG",
            Gate::Cnot { .. } => "CNOT",
            Gate::Toffoli { .. } => "TOFFOLI",
            Gate::Mcx { .. } => "MCX",
            Gate::Oracle { .. } => "ORACLE",
        }
    }

    fn remap(&self, f: &impl Fn(usize) -> usize) -> Gate {
        match self {
            Gate::X(q) => Gate::X(f(*q)),
            Gate::Z(q) => Gate::Z(f(*q)),
            Gate::H(q) => Gate::H(f(*q)),
            Gate::S(q) => Gate::S(f(*q)),
            Gate::Sdg(q) => Gate::Sdg(f(*q)),
            Gate::T(q) => Gate::T(f(*q)),
            Gate::Tdg(q) => Gate::Tdg(f(*q)),
            Gate::Cnot { control, target } => Gate::Cnot { control: f(*control), target: f(*target) },
            Gate::Toffoli { controls, target } => {
                Gate::Toffoli { controls: [f(controls[0]), f(controls[1])], target: f(*target) }
            }
            Gate::Mcx { controls, target } => {
                Gate::Mcx { controls: controls.iter().map(|&c| f(c)).collect(), target: f(*target) }
            }
            Gate::Oracle { name, inputs, outputs } => Gate::Oracle {
                name: name.clone(),
                inputs: inputs.iter().map(|&q| f(q)).collect(),
                outputs: outputs.iter().map(|&q| f(q)).collect(),
            },
        }
    }

    fn validate(&self, qubit_count: usize) -> Result<(), CircuitError> {
        let mut all: Vec<usize> = self.controls().iter().chain(self.targets()).copied().collect();
        if let Some(&qubit) = all.iter().find(|&&q| q >= qubit_count) {
            return Err(CircuitError::QubitOutOfRange { qubit, qubit_count });
        }
        if let Gate::Mcx { controls, .. } = self {
            if controls.is_empty() {
                return Err(CircuitError::InvalidGate("MCX needs at least one control".into()));
            }
        }
        if let Gate::Oracle { outputs, .. } = self {
            if outputs.is_empty() {
                return Err(CircuitError::InvalidGate("oracle block needs an output register".into()));
            }
        }
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(CircuitError::InvalidGate(format!("{} acts on a repeated qubit", self.name())));
        }
        Ok(())
    }
}

/// A named, contiguous range of qubits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Register {
    pub name: String,
    pub start: usize,
    pub len: usize,
}

impl Register {
    pub fn range(&self) -> Range<usize> {
        self.start..self.start + self.len
    }

    pub fn qubit(&self, i: usize) -> usize {
        assert!(i < self.len, "index {i} out of range for register {}", self.name);
        self.start + i
    }

    fn overlaps(&self, other: &Register) -> bool {
        self.start < other.start + other.len && other.start < self.start + self.len
    }
}

/// A labelled span of gates, with the number of ancillas first allocated
/// inside it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage {
    pub label: String,
    pub gates: Range<usize>,
    pub ancillas: usize,
}

/// Name of the register that holds work qubits allocated by builders.
pub const ANCILLA_REGISTER: &str = "anc";

#[derive(Debug, Clone, Default)]
pub struct Circuit {
    qubit_count: usize,
    registers: Vec<Register>,
    gates: Vec<Gate>,
    oracles: BTreeMap<String, Arc<OracleSpec>>,
    stages: Vec<Stage>,
}

impl Circuit {
    pub fn new(qubit_count: usize, registers: Vec<Register>) -> Result<Self, CircuitError> {
        for (i, r) in registers.iter().enumerate() {
            if r.len == 0 || r.start + r.len > qubit_count {
                return Err(CircuitError::RegisterMismatch(format!("register {} does not fit", r.name)));
            }
            for other in &registers[..i] {
                if other.name == r.name || other.overlaps(r) {
                    return Err(CircuitError::RegisterMismatch(format!(
                        "registers {} and {} collide",
                        other.name, r.name
                    )));
                }
            }
        }
        Ok(Self { qubit_count, registers, ..Default::default() })
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn registers(&self) -> &[Register] {
        &self.registers
    }

    pub fn register(&self, name: &str) -> Option<&Register> {
        self.registers.iter().find(|r| r.name == name)
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    pub fn oracle(&self, name: &str) -> Option<&Arc<OracleSpec>> {
        self.oracles.get(name)
    }

    pub fn oracles(&self) -> impl Iterator<Item = &Arc<OracleSpec>> {
        self.oracles.values()
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn ancilla_count(&self) -> usize {
        self.register(ANCILLA_REGISTER).map_or(0, |r| r.len)
    }

    pub fn push(&mut self, gate: Gate) -> Result<(), CircuitError> {
        gate.validate(self.qubit_count)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn register_oracle(&mut self, spec: Arc<OracleSpec>) -> Result<(), CircuitError> {
        match self.oracles.get(spec.name()) {
            Some(existing) if **existing != *spec => {
                Err(CircuitError::RegisterMismatch(format!("two different oracles named {}", spec.name())))
            }
            _ => {
                self.oracles.insert(spec.name().to_string(), spec);
                Ok(())
            }
        }
    }

    /// Gate order reversed and every gate inverted. Stage marks are dropped.
    pub fn invert(&self) -> Circuit {
        Circuit {
            qubit_count: self.qubit_count,
            registers: self.registers.clone(),
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
            oracles: self.oracles.clone(),
            stages: Vec::new(),
        }
    }

    /// `a` followed by `b`. Registers with the same name must coincide and
    /// differently named registers must not overlap.
    pub fn concat(a: &Circuit, b: &Circuit) -> Result<Circuit, CircuitError> {
        let mut out = a.clone();
        out.qubit_count = a.qubit_count.max(b.qubit_count);
        for r in &b.registers {
            match a.register(&r.name) {
                Some(existing) if existing == r => {}
                Some(existing) => {
                    return Err(CircuitError::RegisterMismatch(format!(
                        "register {} is {:?} on one side and {:?} on the other",
                        r.name,
                        existing.range(),
                        r.range()
                    )))
                }
                None => {
                    if let Some(clash) = a.registers.iter().find(|x| x.overlaps(r)) {
                        return Err(CircuitError::RegisterMismatch(format!(
                            "register {} overlaps {}",
                            r.name, clash.name
                        )));
                    }
                    out.registers.push(r.clone());
                }
            }
        }
        for spec in b.oracles.values() {
            out.register_oracle(spec.clone())?;
        }
        let offset = a.gates.len();
        out.gates.extend(b.gates.iter().cloned());
        out.stages.extend(b.stages.iter().map(|s| Stage {
            label: s.label.clone(),
            gates: s.gates.start + offset..s.gates.end + offset,
            ancillas: s.ancillas,
        }));
        Ok(out)
    }
}

/// Incremental circuit construction. Named registers are laid out first;
/// ancillas are allocated on demand after them and collected into the
/// `anc` register by [`CircuitBuilder::finish`].
#[derive(Debug, Default)]
pub struct CircuitBuilder {
    registers: Vec<Register>,
    next: usize,
    ancillas: usize,
    gates: Vec<Gate>,
    oracles: BTreeMap<String, Arc<OracleSpec>>,
    stages: Vec<Stage>,
    open_stage: Option<(String, usize, usize)>,
}

impl CircuitBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares a register. All registers must be declared before the
    /// first ancilla is allocated.
    pub fn register(&mut self, name: &str, len: usize) -> Register {
        assert_eq!(self.ancillas, 0, "declare registers before allocating ancillas");
        assert!(len > 0, "register {name} is empty");
        assert!(self.registers.iter().all(|r| r.name != name), "register {name} declared twice");
        let r = Register { name: name.to_string(), start: self.next, len };
        self.next += len;
        self.registers.push(r.clone());
        r
    }

    pub fn ancilla(&mut self) -> usize {
        let q = self.next + self.ancillas;
        self.ancillas += 1;
        q
    }

    pub fn ancilla_count(&self) -> usize {
        self.ancillas
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    pub fn push(&mut self, gate: Gate) {
        let limit = self.next + self.ancillas;
        if let Err(e) = gate.validate(limit) {
            panic!("builder produced an invalid gate: {e}");
        }
        self.gates.push(gate);
    }

    pub fn x(&mut self, q: usize) {
        self.push(Gate::X(q));
    }

    pub fn z(&mut self, q: usize) {
        self.push(Gate::Z(q));
    }

    pub fn h(&mut self, q: usize) {
        self.push(Gate::H(q));
    }

    pub fn cnot(&mut self, control: usize, target: usize) {
        self.push(Gate::Cnot { control, target });
    }

    pub fn toffoli(&mut self, a: usize, b: usize, target: usize) {
        self.push(Gate::Toffoli { controls: [a, b], target });
    }

    pub fn mcx(&mut self, controls: &[usize], target: usize) {
        self.push(Gate::mcx(controls, target));
    }

    /// Multi-controlled X firing when every `positive` control is 1 and
    /// every `negative` control is 0, via X conjugation of the negatives.
    pub fn mcx_mixed(&mut self, positive: &[usize], negative: &[usize], target: usize) {
        for &q in negative {
            self.x(q);
        }
        let controls: Vec<usize> = positive.iter().chain(negative).copied().collect();
        self.mcx(&controls, target);
        for &q in negative {
            self.x(q);
        }
    }

    pub fn oracle(&mut self, spec: &Arc<OracleSpec>, inputs: &[usize], outputs: &[usize]) {
        assert_eq!(inputs.len(), spec.input_width(), "oracle input width mismatch");
        assert_eq!(outputs.len(), spec.output_width(), "oracle output width mismatch");
        self.oracles.entry(spec.name().to_string()).or_insert_with(|| spec.clone());
        self.push(Gate::Oracle { name: spec.name().to_string(), inputs: inputs.to_vec(), outputs: outputs.to_vec() });
    }

    pub fn begin_stage(&mut self, label: impl Into<String>) {
        assert!(self.open_stage.is_none(), "stages do not nest");
        self.open_stage = Some((label.into(), self.gates.len(), self.ancillas));
    }

    pub fn end_stage(&mut self) {
        let (label, start, anc) = self.open_stage.take().expect("no open stage");
        self.stages.push(Stage { label, gates: start..self.gates.len(), ancillas: self.ancillas - anc });
    }

    /// Appends `sub` with its qubits relabelled: qubits of the sub-circuit's
    /// ancilla register get fresh ancillas here, every other qubit goes
    /// through `map`. Stage marks are carried over with `prefix`.
    pub fn embed(&mut self, sub: &Circuit, prefix: &str, map: impl Fn(usize) -> usize) {
        let anc_range = sub.register(ANCILLA_REGISTER).map(Register::range).unwrap_or(0..0);
        let fresh: Vec<usize> = anc_range.clone().map(|_| self.ancilla()).collect();
        let relabel = |q: usize| if anc_range.contains(&q) { fresh[q - anc_range.start] } else { map(q) };
        for spec in sub.oracles.values() {
            self.oracles.entry(spec.name().to_string()).or_insert_with(|| spec.clone());
        }
        let offset = self.gates.len();
        for g in &sub.gates {
            self.push(g.remap(&relabel));
        }
        for s in &sub.stages {
            self.stages.push(Stage {
                label: format!("{prefix}{}", s.label),
                gates: s.gates.start + offset..s.gates.end + offset,
                ancillas: s.ancillas,
            });
        }
    }

    /// Appends the gates of `sub` (relabelled through `map`) without
    /// allocating anything. Used to replay the inverse of a block that was
    /// built here.
    pub fn append_gates(&mut self, gates: &[Gate]) {
        for g in gates {
            self.push(g.clone());
        }
    }

    pub fn gates_since(&self, start: usize) -> &[Gate] {
        &self.gates[start..]
    }

    pub fn finish(mut self) -> Circuit {
        assert!(self.open_stage.is_none(), "unterminated stage");
        if self.ancillas > 0 {
            self.registers.push(Register { name: ANCILLA_REGISTER.into(), start: self.next, len: self.ancillas });
        }
        Circuit {
            qubit_count: self.next + self.ancillas,
            registers: self.registers,
            gates: self.gates,
            oracles: self.oracles,
            stages: self.stages,
        }
    }
}
