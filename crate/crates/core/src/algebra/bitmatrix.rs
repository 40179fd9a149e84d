//! Dense bit-packed matrices over GF(2) and the elimination kernels.
//!
//! Column `c` lives in word `c / 64`, bit `c % 64`, so scanning a row from its
//! lowest set bit upward walks the columns left to right.

use std::fmt;

/// Index of the first set bit at or after bit position `from`.
#[inline]
pub(crate) fn next_one(row: &[u64], from: usize) -> Option<usize> {
    let w = from / 64;
    if w >= row.len() {
        return None;
    }
    let head = row[w] & (u64::MAX << (from % 64));
    if head != 0 {
        return Some(w * 64 + head.trailing_zeros() as usize);
    }
    if w + 1 < row.len() {
        first_one(row, w + 1)
    } else {
        None
    }
}

/// Dense GF(2) matrix, one packed row after another.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

pub(crate) fn words_for(cols: usize) -> usize {
    cols.div_ceil(64)
}

/// XOR `src` into `dst` word by word.
#[inline]
pub(crate) fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

/// Index of the first set bit at or after word `from`.
#[inline]
pub(crate) fn first_one(row: &[u64], from: usize) -> Option<usize> {
    row[from..]
        .iter()
        .position(|&w| w != 0)
        .map(|k| (from + k) * 64 + row[from + k].trailing_zeros() as usize)
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> BitMatrix {
        let stride = words_for(cols);
        BitMatrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> BitMatrix {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows given as bool slices of equal length.
    pub fn from_bool_rows(rows: &[Vec<bool>], cols: usize) -> BitMatrix {
        let mut m = BitMatrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "jagged row {r}");
            for (c, &b) in row.iter().enumerate() {
                if b {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    /// Builds a matrix from already packed rows.
    pub fn from_packed_rows(rows: Vec<Vec<u64>>, cols: usize) -> BitMatrix {
        let stride = words_for(cols);
        let mut data = Vec::with_capacity(rows.len() * stride);
        let n = rows.len();
        for row in rows {
            assert_eq!(row.len(), stride, "packed row has the wrong width");
            data.extend_from_slice(&row);
        }
        BitMatrix {
            rows: n,
            cols,
            stride,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        (self.data[r * self.stride + c / 64] >> (c % 64)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.stride + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Set columns of row `r`, in increasing order.
    pub fn row_ones(&self, r: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (k, &w) in self.row(r).iter().enumerate() {
            let mut rest = w;
            while rest != 0 {
                out.push(k * 64 + rest.trailing_zeros() as usize);
                rest &= rest - 1;
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for k in 0..self.stride {
                self.data.swap(a * self.stride + k, b * self.stride + k);
            }
        }
    }

    /// `row[dst] ^= row[src]`, starting from word `from`.
    fn xor_rows(&mut self, dst: usize, src: usize, from: usize) {
        let s = self.stride;
        let (lo, hi) = if dst < src { (dst, src) } else { (src, dst) };
        let (head, tail) = self.data.split_at_mut(hi * s);
        let (a, b) = (&mut head[lo * s..(lo + 1) * s], &mut tail[..s]);
        if dst < src {
            xor_into(&mut a[from..], &b[from..]);
        } else {
            xor_into(&mut b[from..], &a[from..]);
        }
    }

    /// Reduced row-echelon form in place; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let (w, bit) = (c / 64, 1u64 << (c % 64));
            let Some(p) = (r..self.rows).find(|&i| self.data[i * self.stride + w] & bit != 0)
            else {
                continue;
            };
            self.swap_rows(r, p);
            for i in 0..self.rows {
                if i != r && self.data[i * self.stride + w] & bit != 0 {
                    self.xor_rows(i, r, w);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.cols);
        (0..self.rows)
            .filter(|&r| ech.insert(self.row(r).to_vec()).is_some())
            .count()
    }
}

/// Reduced row-echelon form of `m`: rank, the reduced matrix (zero rows kept at
/// the bottom), and the strictly increasing pivot columns.
pub fn rref(m: &BitMatrix) -> (usize, BitMatrix, Vec<usize>) {
    let mut reduced = m.clone();
    let pivots = reduced.rref_in_place();
    (pivots.len(), reduced, pivots)
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let line: String = (0..self.cols)
                .map(|c| if self.get(r, c) { '1' } else { '.' })
                .collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Incrementally built semi-echelon basis.
///
/// Each stored row has a distinct pivot (its first set bit) and zeros to the
/// left of it. Rows are never modified after insertion, which lets callers
/// keep indices into the basis while it grows.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    stride: usize,
    pivot_row: Vec<u32>,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

const NO_ROW: u32 = u32::MAX;

impl Echelon {
    pub fn new(cols: usize) -> Echelon {
        Echelon {
            cols,
            stride: words_for(cols),
            pivot_row: vec![NO_ROW; cols],
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn words(&self) -> usize {
        self.stride
    }

    /// Reduces `row` against the basis. A nonzero remainder is stored and its
    /// index returned; `None` means the row was already in the span.
    pub fn insert(&mut self, mut row: Vec<u64>) -> Option<usize> {
        debug_assert_eq!(row.len(), self.stride);
        let mut from = 0;
        while let Some(c) = first_one(&row, from) {
            let w = c / 64;
            match self.pivot_row[c] {
                NO_ROW => {
                    self.pivot_row[c] = self.rows.len() as u32;
                    self.rows.push(row);
                    self.pivots.push(c);
                    return Some(self.rows.len() - 1);
                }
                i => xor_into(&mut row[w..], &self.rows[i as usize][w..]),
            }
            from = w;
        }
        None
    }

    /// Reduces `row` as far as the basis allows without storing it.
    pub fn reduce(&self, row: &mut [u64]) {
        let mut from = 0;
        while let Some(c) = next_one(row, from) {
            let i = self.pivot_row[c];
            if i != NO_ROW {
                let w = c / 64;
                xor_into(&mut row[w..], &self.rows[i as usize][w..]);
            }
            from = c + 1;
        }
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.rows[i]
    }

    pub fn pivot(&self, i: usize) -> usize {
        self.pivots[i]
    }

    pub fn has_pivot(&self, c: usize) -> bool {
        self.pivot_row[c] != NO_ROW
    }

    /// Brings the stored rows into fully reduced form and returns them as a
    /// matrix sorted by pivot.
    pub fn into_rref(self) -> (BitMatrix, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let mut m = BitMatrix::from_packed_rows(
            order.iter().map(|&i| self.rows[i].clone()).collect(),
            self.cols,
        );
        let pivots = m.rref_in_place();
        (m, pivots)
    }
}
