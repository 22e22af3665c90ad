use std::collections::BTreeMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::GmsError;
use crate::circuit::{CircuitBuilder, ANCILLA_REGISTER};
use crate::gf2::{nullspace_basis, BitMatrix};
use crate::sim::{build_simon_oracle, parallel_simon, SparseState};
use crate::synth::build_uqge_solution;

/// Distribution of `(Y, s, flag)` from two routes: measuring the Simon
/// rows and solving classically, versus running the solution circuit on
/// the unmeasured state and measuring at the end. Outcome keys pack `Y` in
/// the low `nl` bits, then `s`, then `flag`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeferredReport {
    pub n: usize,
    pub l: usize,
    pub period: u64,
    pub immediate: BTreeMap<u64, f64>,
    pub deferred: BTreeMap<u64, f64>,
    pub max_abs_diff: f64,
    pub p_correct_immediate: f64,
    pub p_correct_deferred: f64,
    /// Probability that every work qubit of the solution circuit is back at 0.
    pub ancilla_clean: f64,
}

fn classical_solve(y: &BitMatrix) -> (u64, bool) {
    let basis = nullspace_basis(y);
    if basis.len() == 1 {
        (basis[0].to_u64(), false)
    } else {
        (0, true)
    }
}

pub fn deferred_vs_immediate(n: usize, l: usize, period: u64, seed: u64) -> Result<DeferredReport, GmsError> {
    if n < 2 || l == 0 || 2 * n * l > 24 {
        return Err(GmsError::Config(format!("need n >= 2, l >= 1 and 2nl <= 24; got n = {n}, l = {l}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let oracle = build_simon_oracle(n, period, &mut rng)?;
    let nl = n * l;
    let pack = |y: u64, s: u64, flag: bool| y | s << nl | u64::from(flag) << (nl + n);

    let mut immediate = BTreeMap::new();
    let simon = parallel_simon(&oracle, l)?;
    let ys: Vec<usize> = (0..nl).collect();
    for (y, p) in simon.full_distribution(&ys).into_iter().enumerate() {
        if p > 1e-15 {
            let (s, flag) = classical_solve(&BitMatrix::from_index(l, n, y as u128));
            *immediate.entry(pack(y as u64, s, flag)).or_insert(0.0) += p;
        }
    }

    let spec = Arc::new(oracle.spec.clone());
    let solver = build_uqge_solution(n, l)?;
    let mut b = CircuitBuilder::new();
    let y = b.register("y", nl);
    let f = b.register("f", nl);
    let s = b.register("s", n);
    let flag = b.register("flag", 1);
    for q in y.range() {
        b.h(q);
    }
    for i in 0..l {
        let ins: Vec<usize> = (0..n).map(|j| y.qubit(i * n + j)).collect();
        let outs: Vec<usize> = (0..n).map(|j| f.qubit(i * n + j)).collect();
        b.oracle(&spec, &ins, &outs);
    }
    for q in y.range() {
        b.h(q);
    }
    let (sy, ss, sf) = (
        solver.register("y").expect("y register").range(),
        solver.register("s").expect("s register").start,
        solver.register("flag").expect("flag register").start,
    );
    b.embed(&solver, "solve ", |q| {
        if sy.contains(&q) {
            y.qubit(q)
        } else if q >= ss && q < ss + n {
            s.qubit(q - ss)
        } else {
            debug_assert_eq!(q, sf);
            flag.qubit(0)
        }
    });
    let c = b.finish();
    let mut state = SparseState::basis(c.qubit_count(), 0)?;
    state.run(&c)?;

    let anc_mask = c.register(ANCILLA_REGISTER).map_or(0u128, |r| r.range().fold(0, |m, q| m | 1u128 << q));
    let field = |i: u128, start: usize, len: usize| ((i >> start) & ((1u128 << len) - 1)) as u64;
    let mut deferred = BTreeMap::new();
    for (i, a) in state.iter() {
        let key = pack(field(i, y.start, nl), field(i, s.start, n), field(i, flag.start, 1) == 1);
        *deferred.entry(key).or_insert(0.0) += a.norm_sqr();
    }
    deferred.retain(|_, p| *p > 1e-15);

    let max_abs_diff = immediate
        .keys()
        .chain(deferred.keys())
        .map(|k| (immediate.get(k).unwrap_or(&0.0) - deferred.get(k).unwrap_or(&0.0)).abs())
        .fold(0.0, f64::max);
    let correct = |d: &BTreeMap<u64, f64>| -> f64 {
        d.iter().filter(|(&k, _)| k >> nl == period).map(|(_, p)| p).sum()
    };
    Ok(DeferredReport {
        n,
        l,
        period,
        p_correct_immediate: correct(&immediate),
        p_correct_deferred: correct(&deferred),
        immediate,
        deferred,
        max_abs_diff,
        ancilla_clean: state.probability_clear(anc_mask),
    })
}
