use std::fmt;

use serde::{Deserialize, Serialize};

use super::bits::{words_for, BitVector};
use super::Gf2Error;

/// Dense matrix over GF(2), stored row-major with each row packed into
/// `stride` 64-bit words. Entry `(i, j)` is bit `j % 64` of word
/// `i * stride + j / 64`, so column 0 is bit 0 of a row.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    /// All-zero `rows × cols` matrix. Panics on an empty shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix shape must be at least 1x1");
        let stride = words_for(cols);
        Self { rows, cols, stride, words: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[BitVector]) -> Result<Self, Gf2Error> {
        let first = rows.first().ok_or_else(|| Gf2Error::Dimension("no rows given".into()))?;
        let cols = first.len();
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Gf2Error::Dimension(format!("row {i} has length {}, expected {cols}", r.len())));
            }
            m.set_row(i, r);
        }
        Ok(m)
    }

    /// Parses rows given as `0`/`1` strings, e.g. `["110", "001"]`.
    pub fn from_row_strs(rows: &[&str]) -> Result<Self, Gf2Error> {
        let parsed = rows.iter().map(|r| r.parse::<BitVector>()).collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(&parsed)
    }

    /// Matrix whose entry `(i, j)` is bit `i * cols + j` of `index`.
    /// This is the same ordering the circuit builders use for data registers.
    pub fn from_index(rows: usize, cols: usize, index: u128) -> Self {
        assert!(rows * cols <= 128, "from_index supports at most 128 entries");
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if (index >> (i * cols + j)) & 1 == 1 {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Inverse of [`BitMatrix::from_index`].
    pub fn to_index(&self) -> u128 {
        assert!(self.rows * self.cols <= 128, "to_index supports at most 128 entries");
        let mut out = 0u128;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    out |= 1u128 << (i * self.cols + j);
                }
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "entry ({i},{j}) out of range");
        (self.words[i * self.stride + j / 64] >> (j % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols, "entry ({i},{j}) out of range");
        let w = &mut self.words[i * self.stride + j / 64];
        let mask = 1u64 << (j % 64);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn row(&self, i: usize) -> BitVector {
        let start = i * self.stride;
        BitVector::from_words(self.cols, self.words[start..start + self.stride].to_vec())
    }

    pub fn set_row(&mut self, i: usize, row: &BitVector) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        let start = i * self.stride;
        self.words[start..start + self.stride].copy_from_slice(row.words());
    }

    pub fn column(&self, j: usize) -> BitVector {
        let mut v = BitVector::zeros(self.rows);
        for i in 0..self.rows {
            v.set(i, self.get(i, j));
        }
        v
    }

    /// `row[dst] ^= row[src]`.
    pub fn xor_row_into(&mut self, src: usize, dst: usize) {
        assert_ne!(src, dst, "a row cannot be added to itself");
        for w in 0..self.stride {
            let v = self.words[src * self.stride + w];
            self.words[dst * self.stride + w] ^= v;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.words.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.words[i * self.stride..(i + 1) * self.stride].iter().all(|&w| w == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Matrix-vector product `A·x` over GF(2).
    pub fn mul_vec(&self, x: &BitVector) -> BitVector {
        assert_eq!(x.len(), self.cols, "vector length must equal column count");
        let mut out = BitVector::zeros(self.rows);
        for i in 0..self.rows {
            let start = i * self.stride;
            let ones: u32 = self.words[start..start + self.stride]
                .iter()
                .zip(x.words())
                .map(|(a, b)| (a & b).count_ones())
                .sum();
            out.set(i, ones % 2 == 1);
        }
        out
    }

    /// `[A | b]`.
    pub fn augment(&self, b: &BitVector) -> Self {
        assert_eq!(b.len(), self.rows, "right-hand side length must equal row count");
        let mut out = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            out.set(i, self.cols, b.get(i));
        }
        out
    }

    /// Columns `start..end` as a new matrix.
    pub fn columns(&self, start: usize, end: usize) -> Self {
        assert!(start < end && end <= self.cols, "invalid column range");
        let mut out = Self::zeros(self.rows, end - start);
        for i in 0..self.rows {
            for j in start..end {
                out.set(i, j - start, self.get(i, j));
            }
        }
        out
    }

    /// Text form: a `rows cols` header line, then one line of `0`/`1` per row.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            s.push_str(&self.row(i).to_string());
            s.push('\n');
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Self, Gf2Error> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Gf2Error::Parse("missing header line".into()))?;
        let mut dims = header.split_whitespace().map(|t| t.parse::<usize>());
        let (rows, cols) = match (dims.next(), dims.next(), dims.next()) {
            (Some(Ok(r)), Some(Ok(c)), None) if r >= 1 && c >= 1 => (r, c),
            _ => return Err(Gf2Error::Parse(format!("bad header {header:?}, expected \"rows cols\""))),
        };
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            let line = lines.next().ok_or_else(|| Gf2Error::Parse(format!("missing row {i}")))?;
            let row: BitVector = line.parse()?;
            if row.len() != cols {
                return Err(Gf2Error::Parse(format!("row {i} has {} entries, expected {cols}", row.len())));
            }
            m.set_row(i, &row);
        }
        if lines.next().is_some() {
            return Err(Gf2Error::Parse("trailing rows after matrix".into()));
        }
        Ok(m)
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{}", self.row(i))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", self.row(i))?;
        }
        f.write_str("]")
    }
}
