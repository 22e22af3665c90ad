//! JSON and CSV report assembly. Every report carries `schema: 1` and a
//! [`RunManifest`].

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use crate::circuit::{resources, stage_resources, Circuit};
use crate::gms::{
    hybrid_baseline, optimal_iterations, p_max_estimate, run_gms, GmsConfig, GmsError, GmsRun, HybridRun,
};
use crate::synth::{predicted_resources, SynthError, SynthKind};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub config: Value,
    pub seeds: Vec<u64>,
    pub tool_version: String,
    /// Seconds since the Unix epoch; `SOURCE_DATE_EPOCH` wins when set.
    pub timestamp: u64,
}

impl RunManifest {
    pub fn new(subcommand: &str, config: Value, seeds: Vec<u64>) -> Self {
        let timestamp = std::env::var("SOURCE_DATE_EPOCH")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or_else(|| {
                std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map_or(0, |d| d.as_secs())
            });
        Self { subcommand: subcommand.into(), config, seeds, tool_version: env!("CARGO_PKG_VERSION").into(), timestamp }
    }
}

/// File stem used for synthesized circuits, e.g. `qge_n3` or `rref_m2_n4`.
pub fn synth_stem(kind: SynthKind) -> String {
    match kind {
        SynthKind::Qge(n) => format!("qge_n{n}"),
        SynthKind::Qgje(n) => format!("qgje_n{n}"),
        SynthKind::RowEchelon(m, n) => format!("echelon_m{m}_n{n}"),
        SynthKind::RrefSquare(n) => format!("rref_m{n}_n{n}"),
        SynthKind::RrefRect(m, n) => format!("rref_m{m}_n{n}"),
    }
}

/// The circuit plus constructed, closed-form and stage-sum profiles.
pub fn synth_report(kind: SynthKind, manifest: RunManifest) -> Result<(Circuit, Value), SynthError> {
    let c = kind.build()?;
    let pred = predicted_resources(kind)?;
    let constructed = resources(&c);
    let delta = pred.closed_form.map(|cf| {
        json!({
            "cnot": constructed.cnot as i64 - cf.cnot,
            "t_depth": constructed.t_depth as i64 - cf.t_depth,
            "ancilla": pred.stage_sum.ancilla as i64 - cf.ancilla,
        })
    });
    let report = json!({
        "schema": SCHEMA,
        "manifest": manifest,
        "kind": kind,
        "qubits": c.qubit_count(),
        "gates": c.len(),
        "constructed": constructed,
        "closed_form": pred.closed_form,
        "stage_sum": pred.stage_sum,
        "closed_form_delta": delta,
        "stages": stage_resources(&c),
    });
    Ok((c, report))
}

/// Everything `qgms gms` reports.
pub struct GmsReport {
    pub run: GmsRun,
    pub hybrid: HybridRun,
    pub json: Value,
    pub csv: String,
}

pub fn gms_report(cfg: &GmsConfig, manifest: RunManifest) -> Result<GmsReport, GmsError> {
    let run = run_gms(cfg)?;
    let hybrid = hybrid_baseline(cfg, 4 * cfg.n, cfg.seed)?;
    let estimate = p_max_estimate(cfg.m, cfg.n, cfg.l, run.r_support as f64, cfg.nominal_n());
    let (argmax_t, best) = run.curve.iter().fold((0, f64::MIN), |a, p| if p.p_marked > a.1 { (p.t, p.p_marked) } else { a });
    let qaa_best = run.qaa_curve.iter().map(|p| p.p_marked).fold(0.0, f64::max);
    let series = optimal_iterations(run.stats.k0_mean, run.stats.l0_mean, run.n_support as f64, run.r_support as f64).ok();
    let json = json!({
        "schema": SCHEMA,
        "manifest": manifest,
        "instance": {
            "m": cfg.m, "n": cfg.n, "l": cfg.l,
            "key": cfg.oracle.key, "k1": cfg.oracle.k1, "k2": cfg.oracle.k2,
            "plaintexts": cfg.plaintexts,
            "qubits": cfg.layout().qubits(),
        },
        "n_support": run.n_support,
        "n_nominal": cfg.nominal_n(),
        "r_support": run.r_support,
        "r_support_ideal": run.r_support_ideal,
        "stats": run.stats,
        "stats_ideal": run.stats_ideal,
        "p_max": run.stats.p_max,
        "p_max_estimate": estimate,
        "p_max_relative_gap": (run.stats.p_max - estimate).abs() / estimate,
        "max_success": best,
        "argmax_t": argmax_t,
        "below_p_max": best <= run.stats.p_max + 1e-8,
        "iteration_series": series,
        "qaa_max_success": qaa_best,
        "hybrid": {
            "rounds": hybrid.rounds,
            "marked_keys": hybrid.marked_keys,
            "best_t": hybrid.best_t,
            "best_p": hybrid.best_p,
        },
        "curve": run.curve,
        "qaa_curve": run.qaa_curve,
    });
    let mut csv = String::from("t,p_marked,p_key,qaa_p_marked,qaa_p_key,hybrid_p_key\n");
    for (i, p) in run.curve.iter().enumerate() {
        let q = &run.qaa_curve[i];
        let h = hybrid.curve.get(i).map_or(String::new(), |h| format!("{:.12}", h.1));
        csv.push_str(&format!("{},{:.12},{:.12},{:.12},{:.12},{h}\n", p.t, p.p_marked, p.p_key, q.p_marked, q.p_key));
    }
    Ok(GmsReport { run, hybrid, json, csv })
}

/// Writes `contents` next to `path` and renames it into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(".{}.tmp", path.file_name().and_then(|n| n.to_str()).unwrap_or("out")));
    let mut f = std::fs::File::create(&tmp)?;
    f.write_all(contents)?;
    f.sync_all()?;
    std::fs::rename(&tmp, path)
}

pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}
