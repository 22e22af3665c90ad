//! Browser bindings for three interactive views: Grover success curves,
//! the deferred-measurement attack against the hybrid baseline, and the
//! reversible RREF circuit applied to a user-entered matrix.
//!
//! Each export returns a JSON string. The `*_json` functions hold the logic
//! and run natively as well.

use qgms::circuit::{resources, CircuitBuilder};
use qgms::gf2::{rref, BitMatrix};
use qgms::gms::{hybrid_baseline, optimal_iterations, p_max_estimate, run_gms, GmsConfig};
use qgms::sim::{amplitude_amplify, run_basis_u128};
use qgms::synth::build_rref;
use num_complex::Complex64;
use serde_json::json;
use wasm_bindgen::prelude::*;

const MAX_GROVER_QUBITS: u32 = 12;
const MAX_RREF_SIDE: usize = 6;

pub fn grover_curve_json(qubits: u32, t_max: u32) -> Result<String, String> {
    if !(1..=MAX_GROVER_QUBITS).contains(&qubits) {
        return Err(format!("qubits must be between 1 and {MAX_GROVER_QUBITS}"));
    }
    let size = 1usize << qubits;
    let mut b = CircuitBuilder::new();
    let r = b.register("q", qubits as usize);
    r.range().for_each(|q| b.h(q));
    let prep = b.finish();
    let target = size - 1;
    let theta = (1.0 / size as f64).sqrt().asin();
    let mut points = Vec::new();
    for t in 0..=t_max as usize {
        let p = amplitude_amplify(&prep, |i| i == target, t).map_err(|e| e.to_string())?.probability(target);
        points.push(json!({ "t": t, "simulated": p, "closed_form": ((2 * t + 1) as f64 * theta).sin().powi(2) }));
    }
    let one = Complex64::new(1.0, 0.0);
    let series = if size > 1 { optimal_iterations(one, one, size as f64, 1.0).ok() } else { None };
    Ok(json!({ "n": size, "series": series, "points": points }).to_string())
}

pub fn gms_curves_json(m: u32, n: u32, l: u32, t_max: u32, seed: u32) -> Result<String, String> {
    if m + 2 * n * l > 16 {
        return Err("keep m + 2nl at 16 or below in the browser".into());
    }
    let cfg = GmsConfig::from_seed(m as usize, n as usize, l as usize, t_max as usize, seed.into()).map_err(|e| e.to_string())?;
    let run = run_gms(&cfg).map_err(|e| e.to_string())?;
    let hybrid = hybrid_baseline(&cfg, 4 * cfg.n, seed.into()).map_err(|e| e.to_string())?;
    let estimate = p_max_estimate(cfg.m, cfg.n, cfg.l, run.r_support as f64, cfg.nominal_n());
    Ok(json!({
        "p_max": run.stats.p_max,
        "p_max_estimate": estimate,
        "n_support": run.n_support,
        "r_support": run.r_support,
        "key": cfg.oracle.key,
        "curve": run.curve,
        "qaa_curve": run.qaa_curve,
        "hybrid": hybrid.curve.iter().map(|&(t, p)| json!({ "t": t, "p_key": p })).collect::<Vec<_>>(),
    })
    .to_string())
}

pub fn rref_apply_json(matrix: &str) -> Result<String, String> {
    let rows: Vec<&str> = matrix.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
    let a = BitMatrix::from_row_strs(&rows).map_err(|e| e.to_string())?;
    let (m, n) = (a.rows(), a.cols());
    if m > MAX_RREF_SIDE || n > MAX_RREF_SIDE {
        return Err(format!("at most {MAX_RREF_SIDE} rows and columns"));
    }
    let c = build_rref(m, n).map_err(|e| e.to_string())?;
    if c.qubit_count() > 128 {
        return Err("circuit too wide for the basis simulator".into());
    }
    let (out, _) = run_basis_u128(&c, a.to_index()).map_err(|e| e.to_string())?;
    let got = BitMatrix::from_index(m, n, out & ((1u128 << (m * n)) - 1));
    let classical = rref(&a);
    let text = |x: &BitMatrix| (0..x.rows()).map(|i| x.row(i).to_string()).collect::<Vec<_>>();
    let work_dirty = (out >> (m * n)) != 0;
    Ok(json!({
        "input": text(&a),
        "circuit_output": text(&got),
        "classical": text(&classical.matrix),
        "rank": classical.rank,
        "matches": got == classical.matrix,
        "ancillas_left_set": work_dirty,
        "qubits": c.qubit_count(),
        "gates": c.len(),
        "resources": resources(&c),
        "netlist": c.to_text(),
    })
    .to_string())
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn grover_curve(qubits: u32, t_max: u32) -> Result<String, JsError> {
    js(grover_curve_json(qubits, t_max))
}

#[wasm_bindgen]
pub fn gms_curves(m: u32, n: u32, l: u32, t_max: u32, seed: u32) -> Result<String, JsError> {
    js(gms_curves_json(m, n, l, t_max, seed))
}

#[wasm_bindgen]
pub fn rref_apply(matrix: &str) -> Result<String, JsError> {
    js(rref_apply_json(matrix))
}
