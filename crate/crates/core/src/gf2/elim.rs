use serde::{Deserialize, Serialize};

use super::{BitMatrix, BitVector, Gf2Error};

/// Reduced row echelon ("row simplest") form together with its rank and
/// pivot columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rref {
    pub matrix: BitMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

/// Particular solution plus a kernel basis: every solution is
/// `particular ⊕ Σ kᵢ·basis[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralSolution {
    pub particular: BitVector,
    pub basis: Vec<BitVector>,
}

/// Solves `A·x = b` for square invertible `A`, given `[A | b]`.
///
/// Row operations are plain XORs. A zero on the diagonal is repaired by
/// XOR-adding each lower row into the pivot row while the pivot is still 0,
/// which is exactly what the reversible forward elimination does, followed
/// by column-wise back substitution on `b`.
pub fn gaussian_eliminate(aug: &BitMatrix) -> Result<BitVector, Gf2Error> {
    let n = aug.rows();
    if aug.cols() != n + 1 {
        return Err(Gf2Error::Dimension(format!(
            "augmented matrix must be n x (n+1), got {} x {}",
            n,
            aug.cols()
        )));
    }
    let mut a = aug.clone();
    for j in 0..n {
        for i in j + 1..n {
            if !a.get(j, j) {
                a.xor_row_into(i, j);
            }
        }
        for k in j + 1..n {
            if a.get(k, j) {
                a.xor_row_into(j, k);
            }
        }
    }
    if (0..n).any(|j| !a.get(j, j)) {
        return Err(Gf2Error::SingularMatrix);
    }
    for j in (1..n).rev() {
        for i in (0..j).rev() {
            if a.get(i, j) {
                let bj = a.get(j, n);
                let bi = a.get(i, n);
                a.set(i, n, bi ^ bj);
            }
        }
    }
    Ok(a.column(n))
}

/// Forward elimination with the XOR-add pivot rule, column by column with
/// row `j` as the pivot row of column `j`. This is the classical trace of
/// the reversible row-echelon circuit: the output always has the input's
/// row space, and for square invertible input it is upper triangular with
/// a unit diagonal. For rank-deficient input the result need not satisfy
/// the echelon predicate; use [`row_echelon`] for that.
pub fn pivot_xor_echelon(a: &BitMatrix) -> BitMatrix {
    let (m, n) = (a.rows(), a.cols());
    let mut b = a.clone();
    for j in 0..n.min(m) {
        for i in j + 1..m {
            if !b.get(j, j) {
                b.xor_row_into(i, j);
            }
        }
        for k in j + 1..m {
            if b.get(k, j) {
                b.xor_row_into(j, k);
            }
        }
    }
    b
}

/// Row echelon form: zero rows at the bottom, leading columns strictly
/// increasing. Row exchanges are used to place pivots.
pub fn row_echelon(a: &BitMatrix) -> BitMatrix {
    let mut b = a.clone();
    echelon_in_place(&mut b);
    b
}

fn echelon_in_place(b: &mut BitMatrix) -> Vec<usize> {
    let (m, n) = (b.rows(), b.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| b.get(i, c)) else {
            continue;
        };
        b.swap_rows(r, p);
        for k in r + 1..m {
            if b.get(k, c) {
                b.xor_row_into(r, k);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rref(a: &BitMatrix) -> Rref {
    let mut b = a.clone();
    let pivot_cols = echelon_in_place(&mut b);
    for (r, &c) in pivot_cols.iter().enumerate() {
        for k in 0..r {
            if b.get(k, c) {
                b.xor_row_into(r, k);
            }
        }
    }
    Rref { rank: pivot_cols.len(), matrix: b, pivot_cols }
}

pub fn rank(a: &BitMatrix) -> usize {
    rref(a).rank
}

/// Rank of a small matrix whose rows are packed into `u64`s. Used by the
/// enumeration routines, which visit millions of matrices.
pub fn rank_of_rows(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let pivot = rows[i];
        if pivot == 0 {
            continue;
        }
        rank += 1;
        let low = pivot & pivot.wrapping_neg();
        for r in rows.iter_mut().skip(i + 1) {
            if *r & low != 0 {
                *r ^= pivot;
            }
        }
    }
    rank
}

/// Kernel basis built from the free columns of the RREF: free variable `f`
/// set to 1, other free variables 0, pivot variables read from column `f`.
pub fn nullspace_basis(a: &BitMatrix) -> Vec<BitVector> {
    let r = rref(a);
    kernel_from_rref(&r, a.cols())
}

fn kernel_from_rref(r: &Rref, cols: usize) -> Vec<BitVector> {
    let mut is_pivot = vec![false; cols];
    for &c in &r.pivot_cols {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut eta = BitVector::unit(cols, f);
            for (row, &pc) in r.pivot_cols.iter().enumerate() {
                if r.matrix.get(row, f) {
                    eta.set(pc, true);
                }
            }
            eta
        })
        .collect()
}

/// All solutions of `A·x = b`, or `Ok(None)` when the system is inconsistent.
pub fn general_solution(a: &BitMatrix, b: &BitVector) -> Result<Option<GeneralSolution>, Gf2Error> {
    if a.rows() != b.len() {
        return Err(Gf2Error::Dimension(format!(
            "matrix has {} rows but right-hand side has length {}",
            a.rows(),
            b.len()
        )));
    }
    let n = a.cols();
    let aug = rref(&a.augment(b));
    if aug.pivot_cols.last() == Some(&n) {
        return Ok(None);
    }
    let mut particular = BitVector::zeros(n);
    for (row, &pc) in aug.pivot_cols.iter().enumerate() {
        particular.set(pc, aug.matrix.get(row, n));
    }
    let coeff = Rref { matrix: aug.matrix.columns(0, n), rank: aug.rank, pivot_cols: aug.pivot_cols };
    Ok(Some(GeneralSolution { particular, basis: kernel_from_rref(&coeff, n) }))
}

fn leading_col(a: &BitMatrix, i: usize) -> Option<usize> {
    (0..a.cols()).find(|&j| a.get(i, j))
}

/// Zero rows below nonzero rows, and leading columns strictly increasing.
pub fn is_row_echelon(a: &BitMatrix) -> bool {
    let mut last: Option<usize> = None;
    let mut seen_zero = false;
    for i in 0..a.rows() {
        match leading_col(a, i) {
            None => seen_zero = true,
            Some(c) => {
                if seen_zero || last.is_some_and(|l| c <= l) {
                    return false;
                }
                last = Some(c);
            }
        }
    }
    true
}

/// Row echelon with every leading entry the only 1 in its column.
pub fn is_rref(a: &BitMatrix) -> bool {
    if !is_row_echelon(a) {
        return false;
    }
    (0..a.rows()).all(|i| match leading_col(a, i) {
        None => true,
        Some(c) => (0..a.rows()).all(|k| k == i || !a.get(k, c)),
    })
}
