use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use super::GmsError;
use crate::gf2::{rank_of_rows, BitVector};

fn as_string<T: std::fmt::Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// `Σ_{x_1..x_l} Π (-1)^{x_i·y_i}`, evaluated as the product of the
/// single-row sums: `2^n` when `y_i = 0`, else 0.
pub fn character_sum(ys: &[BitVector], n: usize) -> Result<i128, GmsError> {
    check_rows(ys, n)?;
    Ok(if ys.iter().all(BitVector::is_zero) { 1i128 << (n * ys.len()) } else { 0 })
}

/// The same sum with every `x_i` restricted to the coset representatives
/// `X_1 = {x : x_w = 0}`, where `w` is the lowest set bit of `s`. Since
/// `X_1` is a hyperplane the single-row sum is `2^(n-1)` for
/// `y ∈ {0, e_w}` and 0 otherwise; for `y ⊥ s` only `y = 0` survives.
pub fn character_sum_coset(ys: &[BitVector], s: &BitVector, n: usize) -> Result<i128, GmsError> {
    check_rows(ys, n)?;
    if s.len() != n || s.is_zero() {
        return Err(GmsError::Config("s must be a nonzero vector of length n".into()));
    }
    let w = (0..n).find(|&i| s.get(i)).expect("s is nonzero");
    let survives = |y: &BitVector| y.iter().enumerate().all(|(i, b)| !b || i == w);
    Ok(if ys.iter().all(survives) { 1i128 << ((n - 1) * ys.len()) } else { 0 })
}

fn check_rows(ys: &[BitVector], n: usize) -> Result<(), GmsError> {
    if ys.is_empty() || ys.iter().any(|y| y.len() != n) {
        return Err(GmsError::Config(format!("need a nonempty list of length-{n} vectors")));
    }
    if n * ys.len() > 120 {
        return Err(GmsError::Config("sum does not fit in 128 bits".into()));
    }
    Ok(())
}

/// `2^{(n-2)(n-1)/2}·(2^n - 1)·Π_{i=1}^{n-1}(2^i - 1)`: the number of
/// `n × n` matrices with rows in an `(n-1)`-dimensional subspace and rank
/// exactly `n - 1`.
pub fn lemma3_formula(n: usize) -> BigUint {
    assert!(n >= 2, "formula needs n >= 2");
    let two = BigUint::from(2u32);
    let mut v = two.pow(((n - 2) * (n - 1) / 2) as u32) * (two.pow(n as u32) - 1u32);
    for i in 1..n {
        v *= two.pow(i as u32) - 1u32;
    }
    v
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMode {
    Brute,
    Formula,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub n: usize,
    pub brute_count: Option<u64>,
    #[serde(serialize_with = "as_string")]
    pub formula_count: BigUint,
    pub agreement: Option<bool>,
    /// `2^{n(n-1)}`, the relaxation used in the query-ratio argument.
    #[serde(serialize_with = "as_string")]
    pub relaxation_bound: BigUint,
    pub below_bound: bool,
}

pub const MAX_BRUTE_N: usize = 5;

/// Counts rank-`(n-1)` matrices whose rows lie in `s^⊥` for `s = e_0`.
pub fn count_rank_n_minus_1(n: usize, mode: CountMode) -> Result<CountReport, GmsError> {
    if n < 2 {
        return Err(GmsError::Config(format!("need n >= 2, got {n}")));
    }
    let formula_count = lemma3_formula(n);
    let relaxation_bound = BigUint::from(2u32).pow((n * (n - 1)) as u32);
    let brute_count = match mode {
        CountMode::Formula => None,
        CountMode::Brute => {
            if n > MAX_BRUTE_N {
                return Err(GmsError::EnumerationTooLarge(n));
            }
            // Vectors orthogonal to e_0 are exactly those with bit 0 clear.
            let v: Vec<u64> = (0..1u64 << (n - 1)).map(|x| x << 1).collect();
            let total = v.len().pow(n as u32);
            let mut count = 0u64;
            let mut rows = vec![0u64; n];
            for mut idx in 0..total {
                for r in rows.iter_mut() {
                    *r = v[idx % v.len()];
                    idx /= v.len();
                }
                if rank_of_rows(&mut rows.clone()) == n - 1 {
                    count += 1;
                }
            }
            Some(count)
        }
    };
    Ok(CountReport {
        n,
        brute_count,
        agreement: brute_count.map(|b| BigUint::from(b) == formula_count),
        below_bound: formula_count < relaxation_bound,
        formula_count,
        relaxation_bound,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QueryRatio {
    pub m: usize,
    pub n: usize,
    /// `((2^m - 1)·2^{2n²} + 2^{2(n-1)n}) / ((2^{n-1})^n·|{A}|)`.
    #[serde(serialize_with = "as_string")]
    pub n_over_r: BigRational,
    pub n_over_r_f64: f64,
    /// `2^{m+2n} - 2^{2n}`.
    #[serde(serialize_with = "as_string")]
    pub bound: BigInt,
    pub exceeds_bound: bool,
    /// `(π/4)·√bound`.
    pub t_lower: f64,
    /// `(π/4)·√(2^{m+n})`, exhaustive search over both keys.
    pub t_exhaustive: f64,
    pub exceeds_exhaustive: bool,
}

/// Exact search-space to marked-count ratio with `l = n` Simon rows.
pub fn query_ratio(m: usize, n: usize) -> Result<QueryRatio, GmsError> {
    if m == 0 || n < 2 {
        return Err(GmsError::Config(format!("need m >= 1 and n >= 2, got m = {m}, n = {n}")));
    }
    let two = BigInt::from(2);
    let pow = |e: usize| two.pow(e as u32);
    let big_n = (pow(m) - 1) * pow(2 * n * n) + pow(2 * (n - 1) * n);
    let r = pow((n - 1) * n) * BigInt::from(lemma3_formula(n));
    let ratio = BigRational::new(big_n, r);
    let bound = pow(m + 2 * n) - pow(2 * n);
    let quarter_pi = std::f64::consts::FRAC_PI_4;
    let t_lower = quarter_pi * bound.to_f64().unwrap_or(f64::INFINITY).sqrt();
    let t_exhaustive = quarter_pi * 2f64.powi((m + n) as i32).sqrt();
    Ok(QueryRatio {
        m,
        n,
        n_over_r_f64: ratio.to_f64().unwrap_or(f64::INFINITY),
        exceeds_bound: ratio > BigRational::from_integer(bound.clone()),
        n_over_r: ratio,
        bound,
        t_lower,
        t_exhaustive,
        exceeds_exhaustive: t_lower > t_exhaustive,
    })
}
