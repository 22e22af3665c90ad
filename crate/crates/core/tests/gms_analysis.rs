mod common;

use qgms::gf2::{BitMatrix, BitVector};
use qgms::gms::*;
use qgms::sim::{run_basis_u128, SimError, SparseState};

use common::{kernel, rank};

fn reference() -> GmsConfig {
    GmsConfig::from_seed(2, 2, 2, 20, 7).unwrap()
}

/// Independent restatement of the classifier on raw rows.
fn brute_accepts(cfg: &GmsConfig, key: u64, rows: &[u64]) -> bool {
    let ker = kernel(rows, cfg.n);
    rank(rows) == cfg.n - 1
        && ker.len() == 1
        && cfg.plaintexts.iter().all(|&p| cfg.oracle.f(key, p) == cfg.oracle.f(key, p ^ ker[0]))
}

#[test]
fn initial_state_conditionals() {
    for seed in [1, 7, 21] {
        let cfg = GmsConfig::from_seed(2, 2, 2, 0, seed).unwrap();
        let lay = cfg.layout();
        let psi = prepare_initial_state(&cfg).unwrap();
        let keys: Vec<usize> = (0..lay.m).collect();
        for p in psi.full_distribution(&keys) {
            assert!((p - 0.25).abs() < 1e-12);
        }
        let qubits: Vec<usize> = (0..lay.key_y_bits()).collect();
        let joint = psi.full_distribution(&qubits);
        let k1 = cfg.oracle.k1;
        for (idx, p) in joint.iter().enumerate() {
            let key = lay.key_of(idx);
            let rows = lay.y_rows(idx);
            let given_key = p * 4.0;
            let expect = if key == cfg.oracle.key {
                let orthogonal = rows.iter().all(|r| (r & k1).count_ones() % 2 == 0);
                if orthogonal { 1.0 / 4.0 } else { 0.0 }
            } else {
                1.0 / 16.0
            };
            assert!((given_key - expect).abs() < 1e-12, "seed {seed} idx {idx}: {given_key} vs {expect}");
        }
    }
}

#[test]
fn classifier_examples() {
    let cfg = reference();
    let (key, k1) = (cfg.oracle.key, cfg.oracle.k1);
    assert!(!ug_classifier(key, &BitMatrix::zeros(2, 2), &cfg.oracle, &cfg.plaintexts).unwrap());
    // For n = 2 the single nonzero vector orthogonal to k1 has kernel {0, k1}.
    let y = (1..4u64).find(|v| (v & k1).count_ones() % 2 == 0).unwrap();
    let mut m = BitMatrix::zeros(2, 2);
    m.set_row(0, &BitVector::from_u64(2, y));
    assert!(ug_classifier(key, &m, &cfg.oracle, &cfg.plaintexts).unwrap());
    assert!(ug_classifier(key, &m, &cfg.oracle, &[]).is_err());

    let mut false_positives = 0;
    for seed in 0..20 {
        let cfg = GmsConfig::from_seed(2, 3, 2, 0, seed).unwrap();
        for key in 0..4u64 {
            for idx in 0u64..64 {
                let rows = [idx & 7, idx >> 3];
                let mut y = BitMatrix::zeros(2, 3);
                y.set_row(0, &BitVector::from_u64(3, rows[0]));
                y.set_row(1, &BitVector::from_u64(3, rows[1]));
                let got = ug_classifier(key, &y, &cfg.oracle, &cfg.plaintexts).unwrap();
                assert_eq!(got, brute_accepts(&cfg, key, &rows));
                if got && key != cfg.oracle.key {
                    false_positives += 1;
                }
            }
        }
    }
    // Wrong keys give injective f, so no kernel vector can pass a plaintext check.
    assert_eq!(false_positives, 0);
}

#[test]
fn ug_circuit_matches_classifier_on_basis_states() {
    for (m, n, l) in [(2, 2, 2), (1, 2, 1), (1, 3, 2)] {
        let cfg = GmsConfig::from_seed(m, n, l, 0, 5).unwrap();
        let lay = cfg.layout();
        let c = build_ug_circuit(&cfg).unwrap();
        let table = marked_table(&cfg, MarkedSet::Classifier).unwrap();
        for idx in 0..1u128 << lay.key_y_bits() {
            // Put something nonzero in f to show it is ignored.
            let input = idx | 1u128 << lay.f_qubit(0, 0);
            let (out, phase) = run_basis_u128(&c, input).unwrap();
            assert_eq!(out, input, "work qubits not restored for {idx}");
            let rows = lay.y_rows(idx as usize);
            let accept = brute_accepts(&cfg, lay.key_of(idx as usize), &rows);
            assert_eq!(table[idx as usize], accept);
            assert_eq!(phase, if accept { 4 } else { 0 }, "({m},{n},{l}) idx {idx}");
        }
    }
}

#[test]
fn ug_circuit_on_initial_superposition() {
    let cfg = reference();
    let lay = cfg.layout();
    let psi = prepare_initial_state(&cfg).unwrap();
    let c = build_ug_circuit(&cfg).unwrap();
    let mut wide = SparseState::from_dense(&psi).widen(c.qubit_count()).unwrap();
    wide.run(&c).unwrap();
    let mut flipped = psi.clone();
    let table = marked_table(&cfg, MarkedSet::Classifier).unwrap();
    let low = (1usize << lay.key_y_bits()) - 1;
    flipped.phase_flip(|i| table[i & low]);
    let mut seen = 0.0;
    for (i, a) in wide.iter() {
        assert!(i < 1 << lay.qubits(), "work qubit left set at {i:#x}");
        assert!((a - flipped.amplitude(i as usize)).norm() < 1e-12);
        seen += a.norm_sqr();
    }
    assert!((seen - 1.0).abs() < 1e-12);
}

#[test]
fn reference_counts_and_p_max() {
    let cfg = reference();
    let run = run_gms(&cfg).unwrap();
    assert_eq!(run.n_support as f64, cfg.nominal_n());
    assert_eq!(run.n_support, 784);
    assert_eq!(run.r_support, 12);
    assert_eq!(run.r_support_ideal, 12);
    let est = p_max_estimate(2, 2, 2, run.r_support as f64, cfg.nominal_n());
    let rel = (run.stats.p_max - est).abs() / est;
    assert!(rel < 0.10, "P_max {} vs estimate {est}", run.stats.p_max);
    assert!(run.stats.p_max > 0.0 && run.stats.p_max <= 1.0);
}

#[test]
fn p_max_decreases_with_key_bits() {
    let p: Vec<f64> = (1..=3)
        .map(|m| run_gms(&GmsConfig::from_seed(m, 2, 1, 0, 7).unwrap()).unwrap().stats.p_max)
        .collect();
    assert!(p[0] > p[1] && p[1] > p[2], "{p:?}");
}

#[test]
fn deferred_run_stays_below_p_max() {
    let cfg = reference();
    let run = run_gms(&cfg).unwrap();
    assert_eq!(run.curve.len(), 21);
    assert!((run.curve[0].p_marked - run.stats.marked_mass).abs() < 1e-12);
    let best = run.max_p_marked();
    assert!(best < 0.5, "{best}");
    assert!(best <= run.stats.p_max + 1e-8, "{best} > {}", run.stats.p_max);
}

#[test]
fn prepared_state_reflection_is_reported_separately() {
    let run = run_gms(&reference()).unwrap();
    let best = run.qaa_curve.iter().map(|p| p.p_marked).fold(0.0, f64::max);
    assert!(best > run.stats.p_max);
}

#[test]
fn hybrid_baseline_finds_the_key() {
    let cfg = reference();
    let h = hybrid_baseline(&cfg, 4 * cfg.n, 3).unwrap();
    assert_eq!(h.marked_keys, vec![cfg.oracle.key]);
    assert!(h.best_p >= 0.9, "{}", h.best_p);
    assert!(h.best_t <= 2);
}

#[test]
fn deferred_measurement_matches_immediate() {
    for (n, l) in [(2, 2), (2, 3), (3, 2)] {
        for s in 1..1u64 << n {
            let r = deferred_vs_immediate(n, l, s, 11).unwrap();
            assert!(r.max_abs_diff < 1e-10, "({n},{l}) s={s}: {}", r.max_abs_diff);
            assert!((r.ancilla_clean - 1.0).abs() < 1e-10);
            let orth: Vec<u64> = (0..1u64 << n).filter(|v| (v & s).count_ones() % 2 == 0).collect();
            let mut good = 0u64;
            let total = (orth.len() as u64).pow(l as u32);
            for mut idx in 0..total {
                let mut rows = Vec::new();
                for _ in 0..l {
                    rows.push(orth[(idx % orth.len() as u64) as usize]);
                    idx /= orth.len() as u64;
                }
                if rank(&rows) == n - 1 {
                    good += 1;
                }
            }
            let expect = good as f64 / total as f64;
            assert!((r.p_correct_immediate - expect).abs() < 1e-10);
            assert!((r.p_correct_deferred - expect).abs() < 1e-10);
        }
    }
}

#[test]
fn rank_deficient_counts() {
    let expect = [(2, 3u64), (3, 42), (4, 2520)];
    for (n, v) in expect {
        let r = count_rank_n_minus_1(n, CountMode::Brute).unwrap();
        assert_eq!(r.brute_count, Some(v));
        assert_eq!(r.agreement, Some(true));
        assert!(r.below_bound);
    }
    let r5 = count_rank_n_minus_1(5, CountMode::Brute).unwrap();
    assert_eq!(r5.agreement, Some(true));
    assert_eq!(r5.formula_count.to_string(), r5.brute_count.unwrap().to_string());
    assert_eq!(count_rank_n_minus_1(6, CountMode::Brute), Err(GmsError::EnumerationTooLarge(6)));
    assert_eq!(count_rank_n_minus_1(6, CountMode::Formula).unwrap().brute_count, None);
}

fn brute_character_sum(ys: &[u64], n: usize, restrict: Option<usize>) -> i128 {
    let l = ys.len();
    let mut total = 0i128;
    for idx in 0u64..1 << (n * l) {
        let xs: Vec<u64> = (0..l).map(|i| (idx >> (i * n)) & ((1 << n) - 1)).collect();
        if let Some(w) = restrict {
            if xs.iter().any(|x| (x >> w) & 1 == 1) {
                continue;
            }
        }
        let parity: u32 = xs.iter().zip(ys).map(|(x, y)| (x & y).count_ones()).sum();
        total += if parity % 2 == 0 { 1 } else { -1 };
    }
    total
}

#[test]
fn character_sums_exhaustive() {
    for n in 1..=3usize {
        for l in 1..=2usize {
            for idx in 0u64..1 << (n * l) {
                let ys: Vec<u64> = (0..l).map(|i| (idx >> (i * n)) & ((1 << n) - 1)).collect();
                let vs: Vec<BitVector> = ys.iter().map(|&y| BitVector::from_u64(n, y)).collect();
                let got = character_sum(&vs, n).unwrap();
                assert_eq!(got, brute_character_sum(&ys, n, None));
                assert_eq!(got, if idx == 0 { 1 << (n * l) } else { 0 });
                if n >= 2 {
                    for s in 1..1u64 << n {
                        let w = s.trailing_zeros() as usize;
                        let sv = BitVector::from_u64(n, s);
                        assert_eq!(character_sum_coset(&vs, &sv, n).unwrap(), brute_character_sum(&ys, n, Some(w)));
                    }
                }
            }
        }
    }
    let z = BitVector::zeros(3);
    assert_eq!(character_sum_coset(&[z], &BitVector::from_u64(3, 0b101), 3).unwrap(), 4);
}

#[test]
fn query_ratio_grid() {
    for (m, n, bound) in [(2, 2, 48i64), (3, 2, 112), (4, 3, 960)] {
        let q = query_ratio(m, n).unwrap();
        assert_eq!(q.bound.to_string(), bound.to_string());
        assert!(q.exceeds_bound && q.exceeds_exhaustive);
    }
    for m in 1..=8 {
        for n in 2..=6 {
            assert!(query_ratio(m, n).unwrap().exceeds_exhaustive, "m={m} n={n}");
        }
    }
}

#[test]
fn cap_is_checked_before_building() {
    match GmsConfig::from_seed(8, 8, 8, 20, 1) {
        Err(GmsError::Sim(SimError::QubitCapExceeded { required, .. })) => assert_eq!(required, 136),
        other => panic!("unexpected {other:?}"),
    }
}
