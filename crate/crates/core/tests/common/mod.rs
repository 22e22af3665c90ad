//! Brute-force reference implementations shared by the integration tests.
//! Nothing here calls into the library's linear algebra.
#![allow(dead_code)]

use std::collections::BTreeSet;

/// Every XOR combination of `rows`.
pub fn span(rows: &[u64]) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for mask in 0u64..1 << rows.len() {
        let v = rows.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).fold(0, |acc, (_, r)| acc ^ r);
        out.insert(v);
    }
    out
}

pub fn rank(rows: &[u64]) -> usize {
    span(rows).len().trailing_zeros() as usize
}

/// Rank by inserting rows into a basis keyed on highest set bit.
pub fn rank_fast(rows: &[u64]) -> usize {
    let mut basis = [0u64; 64];
    let mut r = 0;
    for &row in rows {
        let mut v = row;
        while v != 0 {
            let top = 63 - v.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = v;
                r += 1;
                break;
            }
            v ^= basis[top];
        }
    }
    r
}

fn dot(a: u64, b: u64) -> bool {
    (a & b).count_ones() % 2 == 1
}

/// All `x` in `{0,1}^n` with `row_i · x = b_i` for every row.
pub fn solutions(rows: &[u64], n: usize, b: u64) -> Vec<u64> {
    (0..1u64 << n).filter(|&x| rows.iter().enumerate().all(|(i, &r)| dot(r, x) == (b >> i & 1 == 1))).collect()
}

/// Nonzero kernel vectors.
pub fn kernel(rows: &[u64], n: usize) -> Vec<u64> {
    solutions(rows, n, 0).into_iter().filter(|&x| x != 0).collect()
}

fn leading(r: u64) -> Option<u32> {
    (r != 0).then(|| r.trailing_zeros())
}

pub fn is_rref(rows: &[u64]) -> bool {
    let mut last: Option<u32> = None;
    let mut zero_seen = false;
    for &r in rows {
        match leading(r) {
            None => zero_seen = true,
            Some(c) => {
                if zero_seen || last.is_some_and(|l| c <= l) {
                    return false;
                }
                if rows.iter().filter(|&&o| o >> c & 1 == 1).count() != 1 {
                    return false;
                }
                last = Some(c);
            }
        }
    }
    true
}

/// Rows of an `m × cols` matrix packed at bit offset `offset` of a basis
/// index, row-major.
pub fn unpack(index: u128, offset: usize, m: usize, cols: usize) -> Vec<u64> {
    (0..m).map(|i| ((index >> (offset + i * cols)) & ((1u128 << cols) - 1)) as u64).collect()
}

pub fn pack(rows: &[u64], cols: usize) -> u128 {
    rows.iter().enumerate().fold(0, |acc, (i, &r)| acc | (u128::from(r) << (i * cols)))
}

/// Invertible `n × n` matrices as row lists.
pub fn invertible(n: usize) -> Vec<Vec<u64>> {
    (0u128..1 << (n * n)).map(|idx| unpack(idx, 0, n, n)).filter(|rows| rank(rows) == n).collect()
}
