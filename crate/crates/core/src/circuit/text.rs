//! Line-oriented netlist format.
//!
//! ```text
//! QUBITS 5
//! REG data 0..3
//! REG anc 4..4
//! # stage 0..2 anc=1 pivot 0
//! CNOT 4 ; 0
//! TOFFOLI 1 ; 4 3
//! ORACLE f 3 ; 0 1
//! ```
//!
//! Register ranges are inclusive. Every gate line lists targets, a `;`, then
//! controls (or oracle inputs). Stage lines are comments that the parser
//! also reads back.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use super::{Circuit, CircuitError, Gate, Register, Stage};
use crate::sim::OracleSpec;

impl Circuit {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "QUBITS {}", self.qubit_count).unwrap();
        for r in &self.registers {
            writeln!(out, "REG {} {}..{}", r.name, r.start, r.start + r.len - 1).unwrap();
        }
        let mut stages = self.stages.iter().peekable();
        for (i, g) in self.gates.iter().enumerate() {
            while let Some(s) = stages.next_if(|s| s.gates.start == i) {
                write_stage(&mut out, s);
            }
            write_gate(&mut out, g);
        }
        for s in stages {
            write_stage(&mut out, s);
        }
        out
    }

    /// Parses the text form, resolving oracle names against `oracles`.
    pub fn parse_text(text: &str, oracles: &BTreeMap<String, Arc<OracleSpec>>) -> Result<Circuit, CircuitError> {
        let mut circuit: Option<Circuit> = None;
        let mut registers = Vec::new();
        let mut stages = Vec::new();
        let mut gates = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let err = |message: String| CircuitError::Parse { line: line_no, message };
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if let Some(rest) = comment.trim().strip_prefix("stage ") {
                    stages.push(parse_stage(rest).map_err(err)?);
                }
                continue;
            }
            let mut words = line.split_whitespace();
            let head = words.next().unwrap_or_default();
            match head {
                "QUBITS" => {
                    if circuit.is_some() || !registers.is_empty() {
                        return Err(err("QUBITS must appear once, first".into()));
                    }
                    let q = words.next().and_then(|w| w.parse().ok()).ok_or_else(|| err("bad qubit count".into()))?;
                    circuit = Some(Circuit { qubit_count: q, ..Default::default() });
                }
                "REG" => {
                    let name = words.next().ok_or_else(|| err("missing register name".into()))?;
                    let range = words.next().ok_or_else(|| err("missing register range".into()))?;
                    let (a, b) = range.split_once("..").ok_or_else(|| err(format!("bad range {range:?}")))?;
                    let (a, b): (usize, usize) = match (a.parse(), b.parse()) {
                        (Ok(a), Ok(b)) if a <= b => (a, b),
                        _ => return Err(err(format!("bad range {range:?}"))),
                    };
                    registers.push(Register { name: name.to_string(), start: a, len: b - a + 1 });
                }
                _ => {
                    let c = circuit.as_ref().ok_or_else(|| err("gate before QUBITS".into()))?;
                    let gate = parse_gate(head, line[head.len()..].trim(), oracles).map_err(|e| match e {
                        GateErr::Syntax(m) => err(m),
                        GateErr::Oracle(name) => CircuitError::UnresolvedOracle(name),
                    })?;
                    gate.validate(c.qubit_count).map_err(|e| err(e.to_string()))?;
                    gates.push(gate);
                }
            }
        }
        let shell = circuit.ok_or(CircuitError::Parse { line: 0, message: "missing QUBITS line".into() })?;
        let mut c = Circuit::new(shell.qubit_count, registers)?;
        for g in gates {
            if let Gate::Oracle { name, .. } = &g {
                c.register_oracle(oracles[name].clone())?;
            }
            c.gates.push(g);
        }
        if let Some(s) = stages.iter().find(|s| s.gates.end > c.gates.len()) {
            return Err(CircuitError::Parse { line: 0, message: format!("stage {} runs past the last gate", s.label) });
        }
        c.stages = stages;
        Ok(c)
    }
}

fn write_stage(out: &mut String, s: &Stage) {
    writeln!(out, "# stage {}..{} anc={} {}", s.gates.start, s.gates.end, s.ancillas, s.label).unwrap();
}

fn write_list(out: &mut String, qs: &[usize]) {
    for q in qs {
        write!(out, " {q}").unwrap();
    }
}

fn write_gate(out: &mut String, g: &Gate) {
    out.push_str(g.name());
    if let Gate::Oracle { name, .. } = g {
        write!(out, " {name}").unwrap();
    }
    write_list(out, g.targets());
    out.push_str(" ;");
    write_list(out, g.controls());
    out.push('\n');
}

fn parse_stage(rest: &str) -> Result<Stage, String> {
    let mut parts = rest.splitn(3, ' ');
    let range = parts.next().unwrap_or_default();
    let anc = parts.next().unwrap_or_default();
    let label = parts.next().unwrap_or_default().to_string();
    let (a, b) = range.split_once("..").ok_or_else(|| format!("bad stage range {range:?}"))?;
    let (a, b): (usize, usize) = a.parse().ok().zip(b.parse().ok()).ok_or_else(|| format!("bad stage range {range:?}"))?;
    let ancillas = anc
        .strip_prefix("anc=")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| format!("bad stage ancilla field {anc:?}"))?;
    if a > b {
        return Err(format!("bad stage range {range:?}"));
    }
    Ok(Stage { label, gates: a..b, ancillas })
}

enum GateErr {
    Syntax(String),
    Oracle(String),
}

fn qubits(s: &str) -> Result<Vec<usize>, GateErr> {
    s.split_whitespace()
        .map(|w| w.parse().map_err(|_| GateErr::Syntax(format!("bad qubit index {w:?}"))))
        .collect()
}

fn parse_gate(head: &str, rest: &str, oracles: &BTreeMap<String, Arc<OracleSpec>>) -> Result<Gate, GateErr> {
    let (name, rest) = if head == "ORACLE" {
        let (n, r) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
        (Some(n), r)
    } else {
        (None, rest)
    };
    let (t, c) = rest.split_once(';').ok_or_else(|| GateErr::Syntax("missing ';' separator".into()))?;
    let targets = qubits(t)?;
    let controls = qubits(c)?;
    let one = |expect_controls: usize| -> Result<(), GateErr> {
        if targets.len() != 1 || controls.len() != expect_controls {
            return Err(GateErr::Syntax(format!("{head} takes one target and {expect_controls} controls")));
        }
        Ok(())
    };
    let gate = match head {
        "X" | "Z" | "H" | "S" | "SDG" | "T" | "TDG" => {
            one(0)?;
            let q = targets[0];
            match head {
                "X" => Gate::X(q),
                "Z" => Gate::Z(q),
                "H" => Gate::H(q),
                "S" => Gate::S(q),
                "SDG" => Gate::Sdg(q),
                "T" => Gate::T(q),
                _ => Gate::Tdg(q),
            }
        }
        "CNOT" => {
            one(1)?;
            Gate::Cnot { control: controls[0], target: targets[0] }
        }
        "TOFFOLI" => {
            one(2)?;
            Gate::Toffoli { controls: [controls[0], controls[1]], target: targets[0] }
        }
        "MCX" => {
            if targets.len() != 1 || controls.is_empty() {
                return Err(GateErr::Syntax("MCX takes one target and at least one control".into()));
            }
            Gate::Mcx { controls, target: targets[0] }
        }
        "ORACLE" => {
            let name = name.unwrap_or_default();
            let spec = oracles.get(name).ok_or_else(|| GateErr::Oracle(name.to_string()))?;
            if controls.len() != spec.input_width() || targets.len() != spec.output_width() {
                return Err(GateErr::Syntax(format!("oracle {name} width mismatch")));
            }
            Gate::Oracle { name: name.to_string(), inputs: controls, outputs: targets }
        }
        other => return Err(GateErr::Syntax(format!("unknown gate {other:?}"))),
    };
    Ok(gate)
}
