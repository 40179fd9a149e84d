//! Quadratic polynomials restricted to the shape that matters on regular
//! vectors: a constant, linear terms, and products of coordinates taken from
//! two different windows.
//!
//! Products inside one window vanish on every regular vector, so they are not
//! representable. Cross bits are laid out by window pair `(i1 < i2)` in
//! lexicographic order, and inside a pair row-major in `(j1, j2)`.

use rand::Rng;

use crate::algebra::{words_for, AnfPoly, Monomial};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticPoly {
    l: usize,
    w: usize,
    constant: bool,
    linear: Vec<u64>,
    cross: Vec<u64>,
}

fn get_bit(words: &[u64], k: usize) -> bool {
    (words[k / 64] >> (k % 64)) & 1 == 1
}

fn flip_bit(words: &mut [u64], k: usize) {
    words[k / 64] ^= 1 << (k % 64);
}

fn set_bit(words: &mut [u64], k: usize, v: bool) {
    if get_bit(words, k) != v {
        flip_bit(words, k);
    }
}

/// Zeroes the unused high bits of the last word.
fn mask_tail(words: &mut [u64], nbits: usize) {
    if nbits % 64 != 0 {
        if let Some(last) = words.last_mut() {
            *last &= (1u64 << (nbits % 64)) - 1;
        }
    }
}

impl QuadraticPoly {
    pub fn zero(l: usize, w: usize) -> QuadraticPoly {
        let n = l * w;
        QuadraticPoly {
            l,
            w,
            constant: false,
            linear: vec![0; words_for(n)],
            cross: vec![0; words_for(Self::cross_len_for(l, w))],
        }
    }

    /// Uniform non-constant part; the constant is left at 0.
    pub fn random<R: Rng>(l: usize, w: usize, rng: &mut R) -> QuadraticPoly {
        let mut p = QuadraticPoly::zero(l, w);
        for word in p.linear.iter_mut().chain(p.cross.iter_mut()) {
            *word = rng.gen();
        }
        let (n, c) = (p.n(), p.cross_len());
        mask_tail(&mut p.linear, n);
        mask_tail(&mut p.cross, c);
        p
    }

    fn cross_len_for(l: usize, w: usize) -> usize {
        w * w.saturating_sub(1) / 2 * l * l
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn w(&self) -> usize {
        self.w
    }

    pub fn n(&self) -> usize {
        self.l * self.w
    }

    pub fn cross_len(&self) -> usize {
        Self::cross_len_for(self.l, self.w)
    }

    /// Total number of coefficient bits, `n(n-l+2)/2 + 1`.
    pub fn storage_bits(&self) -> usize {
        1 + self.n() + self.cross_len()
    }

    fn pair_index(&self, i1: usize, i2: usize) -> usize {
        debug_assert!(i1 < i2 && i2 < self.w);
        i1 * (2 * self.w - i1 - 1) / 2 + (i2 - i1 - 1)
    }

    /// Bit index of the product of `(i1, j1)` and `(i2, j2)`, 0-based positions.
    fn cross_index(&self, i1: usize, j1: usize, i2: usize, j2: usize) -> usize {
        let (i1, j1, i2, j2) = if i1 < i2 {
            (i1, j1, i2, j2)
        } else {
            (i2, j2, i1, j1)
        };
        self.pair_index(i1, i2) * self.l * self.l + j1 * self.l + j2
    }

    pub fn constant(&self) -> bool {
        self.constant
    }

    pub fn set_constant(&mut self, c: bool) {
        self.constant = c;
    }

    /// Linear coefficient of coordinate `(i, j)` (0-based window and position).
    pub fn linear(&self, i: usize, j: usize) -> bool {
        get_bit(&self.linear, i * self.l + j)
    }

    pub fn set_linear(&mut self, i: usize, j: usize, v: bool) {
        set_bit(&mut self.linear, i * self.l + j, v);
    }

    /// Coefficient of `x_{i1,j1} x_{i2,j2}`; windows must differ.
    pub fn cross(&self, i1: usize, j1: usize, i2: usize, j2: usize) -> bool {
        assert_ne!(i1, i2, "no intra-window products exist");
        get_bit(&self.cross, self.cross_index(i1, j1, i2, j2))
    }

    pub fn set_cross(&mut self, i1: usize, j1: usize, i2: usize, j2: usize, v: bool) {
        assert_ne!(i1, i2, "no intra-window products exist");
        let k = self.cross_index(i1, j1, i2, j2);
        set_bit(&mut self.cross, k, v);
    }

    pub fn linear_words(&self) -> &[u64] {
        &self.linear
    }

    pub fn cross_words(&self) -> &[u64] {
        &self.cross
    }

    pub(crate) fn from_parts(
        l: usize,
        w: usize,
        constant: bool,
        linear: Vec<u64>,
        cross: Vec<u64>,
    ) -> Result<QuadraticPoly> {
        let mut p = QuadraticPoly::zero(l, w);
        if linear.len() != p.linear.len() || cross.len() != p.cross.len() {
            return Err(Error::Dimension(
                "coefficient vectors have the wrong length".into(),
            ));
        }
        p.constant = constant;
        p.linear = linear;
        p.cross = cross;
        let (n, c) = (p.n(), p.cross_len());
        let (lin_ok, cross_ok) = (p.linear.clone(), p.cross.clone());
        mask_tail(&mut p.linear, n);
        mask_tail(&mut p.cross, c);
        if p.linear != lin_ok || p.cross != cross_ok {
            return Err(Error::Dimension(
                "coefficient bits beyond the declared length".into(),
            ));
        }
        Ok(p)
    }

    /// Value at an arbitrary bit vector of length `n`.
    pub fn eval(&self, v: &[bool]) -> Result<bool> {
        if v.len() != self.n() {
            return Err(Error::Dimension(format!(
                "point of length {} for n={}",
                v.len(),
                self.n()
            )));
        }
        let ones: Vec<(usize, usize)> = (0..self.n())
            .filter(|&k| v[k])
            .map(|k| (k / self.l, k % self.l))
            .collect();
        let mut acc = self.constant;
        for (a, &(i1, j1)) in ones.iter().enumerate() {
            acc ^= self.linear(i1, j1);
            for &(i2, j2) in &ones[a + 1..] {
                if i1 != i2 {
                    acc ^= self.cross(i1, j1, i2, j2);
                }
            }
        }
        Ok(acc)
    }

    /// Value at the regular vector with the given 1-based positions.
    pub fn eval_positions(&self, positions: &[usize]) -> bool {
        debug_assert_eq!(positions.len(), self.w);
        let mut acc = self.constant;
        for i1 in 0..self.w {
            let j1 = positions[i1] - 1;
            acc ^= self.linear(i1, j1);
            for (i2, &p2) in positions.iter().enumerate().skip(i1 + 1) {
                acc ^= self.cross(i1, j1, i2, p2 - 1);
            }
        }
        acc
    }

    /// Evaluates at an at-most-regular point given by 1-based positions,
    /// where 0 marks an empty window.
    pub fn eval_at_most_regular(&self, positions: &[usize]) -> bool {
        debug_assert_eq!(positions.len(), self.w);
        let mut acc = self.constant;
        for (i1, &p1) in positions.iter().enumerate() {
            if p1 == 0 {
                continue;
            }
            acc ^= self.linear(i1, p1 - 1);
            for (i2, &p2) in positions.iter().enumerate().skip(i1 + 1) {
                if p2 != 0 {
                    acc ^= self.cross(i1, p1 - 1, i2, p2 - 1);
                }
            }
        }
        acc
    }

    pub fn add_assign(&mut self, other: &QuadraticPoly) {
        assert_eq!((self.l, self.w), (other.l, other.w), "geometry mismatch");
        self.constant ^= other.constant;
        for (a, b) in self.linear.iter_mut().zip(&other.linear) {
            *a ^= *b;
        }
        for (a, b) in self.cross.iter_mut().zip(&other.cross) {
            *a ^= *b;
        }
    }

    pub fn is_zero(&self) -> bool {
        !self.constant && self.linear.iter().all(|&w| w == 0) && self.cross.iter().all(|&w| w == 0)
    }

    /// The same polynomial in ANF over `n` variables, coordinate `(i, j)` at index `i*l + j`.
    pub fn to_anf(&self) -> AnfPoly {
        let n = self.n();
        let mut p = AnfPoly::zero(n);
        if self.constant {
            p.toggle(Monomial::ONE);
        }
        for k in 0..n {
            if get_bit(&self.linear, k) {
                p.toggle(Monomial::var(k));
            }
        }
        for i1 in 0..self.w {
            for i2 in i1 + 1..self.w {
                for j1 in 0..self.l {
                    for j2 in 0..self.l {
                        if self.cross(i1, j1, i2, j2) {
                            p.toggle(
                                Monomial::var(i1 * self.l + j1) * Monomial::var(i2 * self.l + j2),
                            );
                        }
                    }
                }
            }
        }
        p
    }

    /// Substitutes window `block` by the unit vector at 0-based position `j`,
    /// leaving a polynomial over the remaining `w - 1` windows.
    pub fn fix_block(&self, block: usize, j: usize) -> QuadraticPoly {
        assert!(block < self.w && j < self.l);
        let keep: Vec<usize> = (0..self.w).filter(|&i| i != block).collect();
        let mut out = QuadraticPoly::zero(self.l, self.w - 1);
        out.constant = self.constant ^ self.linear(block, j);
        for (a, &i) in keep.iter().enumerate() {
            for jj in 0..self.l {
                out.set_linear(a, jj, self.linear(i, jj) ^ self.cross(block, j, i, jj));
            }
            for (b, &i2) in keep.iter().enumerate().skip(a + 1) {
                for j1 in 0..self.l {
                    for j2 in 0..self.l {
                        if self.cross(i, j1, i2, j2) {
                            out.set_cross(a, j1, b, j2, true);
                        }
                    }
                }
            }
        }
        out
    }

    /// Keeps, in window `i`, only the 0-based positions `kept[i]` (all other
    /// coordinates are set to zero). Every window must keep the same number
    /// of positions, which becomes the new block length.
    pub fn restrict(&self, kept: &[Vec<usize>]) -> Result<QuadraticPoly> {
        if kept.len() != self.w {
            return Err(Error::Dimension(format!(
                "{} windows listed for w={}",
                kept.len(),
                self.w
            )));
        }
        let lp = kept[0].len();
        if lp == 0 || kept.iter().any(|k| k.len() != lp) {
            return Err(Error::Parameter(
                "every window must keep the same positive count".into(),
            ));
        }
        let mut out = QuadraticPoly::zero(lp, self.w);
        out.constant = self.constant;
        for (i1, k1) in kept.iter().enumerate() {
            for (a, &j1) in k1.iter().enumerate() {
                out.set_linear(i1, a, self.linear(i1, j1));
                for (i2, k2) in kept.iter().enumerate().skip(i1 + 1) {
                    for (b, &j2) in k2.iter().enumerate() {
                        out.set_cross(i1, a, i2, b, self.cross(i1, j1, i2, j2));
                    }
                }
            }
        }
        Ok(out)
    }
}

impl std::fmt::Debug for QuadraticPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "QuadraticPoly(l={}, w={}): {}",
            self.l,
            self.w,
            self.to_anf()
        )
    }
}
