//! Self-checking suites behind `qgms verify`. Each check compares a
//! constructed object against a classical or enumerated reference.

use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::circuit::{resources, stage_resources, Circuit};
use crate::gf2::{gaussian_eliminate, is_rref, rank, rref, BitMatrix, BitVector};
use crate::gms::{
    character_sum, character_sum_coset, count_rank_n_minus_1, deferred_vs_immediate, hybrid_baseline,
    optimal_iterations, query_ratio, run_gms, CountMode, GmsConfig,
};
use crate::sim::{amplitude_amplify, build_simon_oracle, run_basis_u128, simon_circuit, SparseState, StateVector};
use crate::synth::{
    back_substitution_toffoli, build_qge, build_qgje, build_row_echelon, build_rref, build_uqge_solution,
    elimination_stage_counts, pivot_stage_counts, predicted_resources, SynthKind,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Gf2,
    Circuits,
    Counting,
    Deferred,
    Gms,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Gf2 => "gf2",
            Suite::Circuits => "circuits",
            Suite::Counting => "counting",
            Suite::Deferred => "deferred",
            Suite::Gms => "gms",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite, checks: Vec<Check>) -> Self {
        let failures: Vec<String> = checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
        Self { suite, passed: failures.is_empty(), checks, failures }
    }
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), passed, detail: detail.into() }
}

/// Options for the deferred suite; `None` runs the default grid.
#[derive(Debug, Clone, Copy, Default)]
pub struct DeferredOptions {
    pub n: Option<usize>,
    pub l: Option<usize>,
}

pub fn run_suite(suite: Suite, deferred: DeferredOptions) -> SuiteReport {
    let checks = match suite {
        Suite::Gf2 => gf2_checks(),
        Suite::Circuits => circuit_checks(),
        Suite::Counting => counting_checks(),
        Suite::Deferred => deferred_checks(deferred),
        Suite::Gms => gms_checks(),
    };
    SuiteReport::new(suite, checks)
}

fn invertible(n: usize) -> Vec<BitMatrix> {
    (0u128..1 << (n * n)).map(|i| BitMatrix::from_index(n, n, i)).filter(|a| rank(a) == n).collect()
}

/// Runs a QGE/QGJE circuit on every invertible `n × n` system and every
/// right-hand side; returns (systems tried, mismatches).
pub fn solver_mismatches(c: &Circuit, n: usize) -> (usize, usize) {
    let (mut tried, mut bad) = (0, 0);
    for a in invertible(n) {
        for b in 0..1u64 << n {
            let bv = BitVector::from_u64(n, b);
            let aug = a.augment(&bv);
            let expect = gaussian_eliminate(&aug).expect("invertible");
            let (out, _) = run_basis_u128(c, aug.to_index()).expect("classical circuit");
            let x = (0..n).fold(0u64, |acc, i| acc | (((out >> (i * (n + 1) + n)) & 1) as u64) << i);
            let ok = x == expect.to_u64() && a.mul_vec(&BitVector::from_u64(n, x)) == bv;
            tried += 1;
            bad += usize::from(!ok);
        }
    }
    (tried, bad)
}

fn gf2_checks() -> Vec<Check> {
    let mut out = Vec::new();
    out.push(check("invertible 3x3 count", invertible(3).len() == 168, format!("{}", invertible(3).len())));
    for (label, c) in [("qge", build_qge(3)), ("qgje", build_qgje(3))] {
        let c = c.expect("valid dims");
        let (tried, bad) = solver_mismatches(&c, 3);
        out.push(check(format!("{label} 3x3 solves A·x = b"), bad == 0 && tried == 1344, format!("{bad} of {tried} mismatched")));
    }
    let mut bad = 0;
    for idx in 0u128..512 {
        let a = BitMatrix::from_index(3, 3, idx);
        let r = rref(&a);
        let span = |m: &BitMatrix| {
            let rows: Vec<u64> = (0..m.rows()).map(|i| m.row(i).to_u64()).collect();
            let mut s: Vec<u64> = (0u64..1 << rows.len())
                .map(|mask| rows.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).fold(0, |acc, (_, r)| acc ^ r))
                .collect();
            s.sort_unstable();
            s.dedup();
            s
        };
        if !is_rref(&r.matrix) || span(&a) != span(&r.matrix) || 1usize << r.rank != span(&a).len() {
            bad += 1;
        }
    }
    out.push(check("classical rref 3x3 against row-space enumeration", bad == 0, format!("{bad} of 512 mismatched")));
    out
}

fn random_norm_check(name: &str, c: &Circuit, rng: &mut ChaCha8Rng) -> Check {
    let q = c.qubit_count();
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let amp = |rng: &mut ChaCha8Rng| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let norm = if q <= 12 {
            let amps: Vec<Complex64> = (0..1usize << q).map(|_| amp(rng)).collect();
            let scale = amps.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
            let mut s = StateVector::from_amplitudes(q, amps.into_iter().map(|a| a / scale).collect()).expect("normalised");
            s.run(c).expect("runs");
            s.norm_sqr()
        } else {
            let mask = if q >= 128 { u128::MAX } else { (1u128 << q) - 1 };
            let terms: Vec<(u128, Complex64)> = (0..64).map(|_| (rng.gen::<u128>() & mask, amp(rng))).collect();
            let mut s = SparseState::from_terms(q, &terms).expect("nonzero");
            s.run(c).expect("runs");
            s.norm_sqr()
        };
        worst = worst.max((norm - 1.0).abs());
    }
    check(format!("{name} preserves norm"), worst < 1e-12, format!("worst deviation {worst:.3e}"))
}

fn circuit_checks() -> Vec<Check> {
    let mut out = Vec::new();
    let c = build_rref(3, 3).expect("valid dims");
    let mut bad = 0;
    for idx in 0u128..512 {
        let (o, _) = run_basis_u128(&c, idx).expect("classical circuit");
        let got = BitMatrix::from_index(3, 3, o & 511);
        if !is_rref(&got) || got != rref(&BitMatrix::from_index(3, 3, idx)).matrix {
            bad += 1;
        }
    }
    out.push(check("rref 3x3 on all 512 inputs", bad == 0, format!("{bad} mismatched")));

    for n in 2..=8usize {
        let nn = n as u64;
        let mut expected = Vec::new();
        for i in 1..nn {
            let (c, t, a) = pivot_stage_counts(nn, i);
            expected.push((c + 6 * t, t, a));
            let (c, t, a) = elimination_stage_counts(nn, i);
            expected.push((c + 6 * t, t, a));
        }
        let bt = back_substitution_toffoli(nn);
        expected.push((6 * bt, bt, 0));
        let qge = build_qge(n).expect("valid dims");
        let got: Vec<(u64, u64, u64)> = stage_resources(&qge).iter().map(|s| (s.cnot, s.toffoli, s.ancilla)).collect();
        let pred = predicted_resources(SynthKind::Qge(n)).expect("valid dims");
        let total = resources(&qge);
        let cf = pred.closed_form.expect("qge has a closed form");
        out.push(check(
            format!("qge n={n} per-stage counts"),
            got == expected && total.cnot == pred.stage_sum.cnot && total.t_depth == pred.stage_sum.t_depth,
            format!(
                "stage sum cnot {} t-depth {} ancilla {}; closed form cnot {} (delta {}) t-depth {} ancilla {}",
                pred.stage_sum.cnot,
                pred.stage_sum.t_depth,
                pred.stage_sum.ancilla,
                cf.cnot,
                pred.stage_sum.cnot as i64 - cf.cnot,
                cf.t_depth,
                cf.ancilla
            ),
        ));
        let qgje = build_qgje(n).expect("valid dims");
        let p = predicted_resources(SynthKind::Qgje(n)).expect("valid dims");
        let t = resources(&qgje);
        let cf = p.closed_form.expect("qgje has a closed form");
        let matches = (t.cnot as i64, t.t_depth as i64, p.stage_sum.ancilla as i64) == (cf.cnot, cf.t_depth, cf.ancilla);
        out.push(check(
            format!("qgje n={n} totals"),
            matches && t.cnot == p.stage_sum.cnot,
            format!("cnot {} t-depth {} ancilla {}", t.cnot, t.t_depth, p.stage_sum.ancilla),
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let simon = build_simon_oracle(3, 0b101, &mut rng).expect("nonzero period");
    let circuits: Vec<(&str, Circuit)> = vec![
        ("echelon 3x3", build_row_echelon(3, 3).expect("valid dims")),
        ("qge 3", build_qge(3).expect("valid dims")),
        ("qgje 3", build_qgje(3).expect("valid dims")),
        ("rref 3x3", build_rref(3, 3).expect("valid dims")),
        ("uqge 3,2", build_uqge_solution(3, 2).expect("valid dims")),
        ("simon 3x2", simon_circuit(&Arc::new(simon.spec), 2)),
    ];
    for (name, c) in &circuits {
        out.push(random_norm_check(name, c, &mut rng));
    }
    out
}

fn counting_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for n in 2..=5 {
        match count_rank_n_minus_1(n, CountMode::Brute) {
            Ok(r) => out.push(check(
                format!("rank n-1 count n={n}"),
                r.agreement == Some(true) && r.below_bound,
                format!("brute {:?} formula {}", r.brute_count, r.formula_count),
            )),
            Err(e) => out.push(check(format!("rank n-1 count n={n}"), false, e.to_string())),
        }
    }
    let mut bad = 0;
    for n in 1..=3usize {
        for l in 1..=2usize {
            for idx in 0u64..1 << (n * l) {
                let ys: Vec<BitVector> = (0..l).map(|i| BitVector::from_u64(n, (idx >> (i * n)) & ((1 << n) - 1))).collect();
                let expect = if idx == 0 { 1i128 << (n * l) } else { 0 };
                if character_sum(&ys, n).ok() != Some(expect) {
                    bad += 1;
                }
            }
        }
    }
    out.push(check("character sums n<=3, l<=2", bad == 0, format!("{bad} wrong")));
    let coset = character_sum_coset(&[BitVector::zeros(3)], &BitVector::from_u64(3, 0b101), 3);
    out.push(check("coset character sum at y=0", coset == Ok(4), format!("{coset:?}")));
    for (m, n) in [(2, 2), (3, 2), (4, 3)] {
        match query_ratio(m, n) {
            Ok(q) => out.push(check(
                format!("query ratio m={m} n={n}"),
                q.exceeds_bound && q.exceeds_exhaustive,
                format!("N/r = {} > {}; T >= {:.3} vs {:.3}", q.n_over_r, q.bound, q.t_lower, q.t_exhaustive),
            )),
            Err(e) => out.push(check(format!("query ratio m={m} n={n}"), false, e.to_string())),
        }
    }
    out
}

fn deferred_checks(opts: DeferredOptions) -> Vec<Check> {
    let grid: Vec<(usize, usize)> = match (opts.n, opts.l) {
        (Some(n), Some(l)) => vec![(n, l)],
        (Some(n), None) => vec![(n, 2)],
        (None, Some(l)) => vec![(2, l)],
        (None, None) => vec![(2, 2), (2, 3), (3, 2)],
    };
    let mut out = Vec::new();
    for (n, l) in grid {
        for s in 1..1u64 << n {
            let name = format!("deferred n={n} l={l} s={s:0n$b}");
            match deferred_vs_immediate(n, l, s, 11) {
                Ok(r) => {
                    let ok = r.max_abs_diff < 1e-10
                        && (r.p_correct_immediate - r.p_correct_deferred).abs() < 1e-10
                        && (r.ancilla_clean - 1.0).abs() < 1e-10;
                    out.push(check(
                        name,
                        ok,
                        format!("max diff {:.3e}, P(correct) {:.6}", r.max_abs_diff, r.p_correct_deferred),
                    ))
                }
                Err(e) => out.push(check(name, false, e.to_string())),
            }
        }
    }
    out
}

fn gms_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for n in [2usize, 3, 4, 6, 8] {
        let size = 1usize << n;
        let theta = (1.0 / size as f64).sqrt().asin();
        let mut b = crate::circuit::CircuitBuilder::new();
        let r = b.register("q", n);
        r.range().for_each(|q| b.h(q));
        let prep = b.finish();
        let mut worst = 0.0f64;
        for t in 0..=10 {
            let p = amplitude_amplify(&prep, |i| i == 1, t).map(|s| s.probability(1)).unwrap_or(f64::NAN);
            worst = worst.max((p - ((2 * t + 1) as f64 * theta).sin().powi(2)).abs());
        }
        if size != 256 {
            out.push(check(format!("grover N={size}"), worst < 1e-10, format!("worst deviation {worst:.3e}")));
        }
        if size == 64 || size == 256 {
            // First peak of the oscillation; later revivals can be marginally higher.
            let p = |t| amplitude_amplify(&prep, |i| i == 1, t).map(|s| s.probability(1)).unwrap_or(0.0);
            let argmax = (0..).find(|&t| p(t + 1) < p(t)).expect("the curve turns over");
            let one = Complex64::new(1.0, 0.0);
            let series = optimal_iterations(one, one, size as f64, 1.0).unwrap_or(f64::NAN);
            out.push(check(
                format!("iteration series N={size}"),
                series.round() as usize == argmax,
                format!("series {series:.4}, simulated argmax {argmax}"),
            ));
        }
    }
    match GmsConfig::from_seed(2, 2, 2, 20, 7).and_then(|cfg| Ok((run_gms(&cfg)?, hybrid_baseline(&cfg, 8, 3)?))) {
        Ok((run, hybrid)) => {
            let best = run.max_p_marked();
            out.push(check(
                "deferred gms below P_max",
                best < 0.5 && best <= run.stats.p_max + 1e-8,
                format!("max success {best:.6}, P_max {:.6}", run.stats.p_max),
            ));
            out.push(check(
                "hybrid baseline",
                hybrid.best_p >= 0.9,
                format!("{:.6} at t = {}", hybrid.best_p, hybrid.best_t),
            ));
        }
        Err(e) => out.push(check("gms reference run", false, e.to_string())),
    }
    out
}
