//! Polynomials in algebraic normal form over GF(2).

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use super::monomial::{Monomial, MAX_VARS};
use crate::error::{Error, Result};

/// A Boolean polynomial stored as its set of monomials.
///
/// Addition is symmetric difference, so `p + p = 0`. Monomials are kept in the
/// graded order of [`Monomial`], which makes printing and iteration
/// deterministic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AnfPoly {
    nvars: usize,
    terms: BTreeSet<Monomial>,
}

impl AnfPoly {
    pub fn zero(nvars: usize) -> AnfPoly {
        assert!(
            nvars <= MAX_VARS,
            "at most {MAX_VARS} variables are supported"
        );
        AnfPoly {
            nvars,
            terms: BTreeSet::new(),
        }
    }

    pub fn one(nvars: usize) -> AnfPoly {
        AnfPoly::from_monomial(nvars, Monomial::ONE)
    }

    pub fn var(nvars: usize, i: usize) -> AnfPoly {
        assert!(i < nvars, "variable {i} out of range for {nvars} variables");
        AnfPoly::from_monomial(nvars, Monomial::var(i))
    }

    pub fn from_monomial(nvars: usize, m: Monomial) -> AnfPoly {
        let mut p = AnfPoly::zero(nvars);
        p.toggle(m);
        p
    }

    /// Sums the given monomials; repeated monomials cancel in pairs.
    pub fn from_monomials<I: IntoIterator<Item = Monomial>>(nvars: usize, ms: I) -> AnfPoly {
        let mut p = AnfPoly::zero(nvars);
        for m in ms {
            p.toggle(m);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree, with -1 standing for the zero polynomial.
    pub fn degree(&self) -> i32 {
        self.terms
            .iter()
            .next_back()
            .map_or(-1, |m| m.degree() as i32)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = Monomial> + '_ {
        self.terms.iter().copied()
    }

    pub fn contains(&self, m: Monomial) -> bool {
        self.terms.contains(&m)
    }

    /// Adds a single monomial (removing it if already present).
    pub fn toggle(&mut self, m: Monomial) {
        debug_assert!(
            m.span() <= self.nvars,
            "monomial {m} outside {} variables",
            self.nvars
        );
        if !self.terms.insert(m) {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &AnfPoly) -> AnfPoly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &AnfPoly) {
        self.check_same_ring(other);
        for m in other.terms() {
            self.toggle(m);
        }
    }

    /// Product with squarefree reduction; no degree cap.
    pub fn mul(&self, other: &AnfPoly) -> AnfPoly {
        self.check_same_ring(other);
        let mut acc: HashSet<Monomial> = HashSet::new();
        for a in self.terms() {
            for b in other.terms() {
                let p = a * b;
                if !acc.insert(p) {
                    acc.remove(&p);
                }
            }
        }
        AnfPoly {
            nvars: self.nvars,
            terms: acc.into_iter().collect(),
        }
    }

    pub fn mul_monomial(&self, m: Monomial) -> AnfPoly {
        AnfPoly::from_monomials(self.nvars, self.terms().map(|t| t * m))
    }

    pub fn eval(&self, point: &[bool]) -> Result<bool> {
        if point.len() != self.nvars {
            return Err(Error::Dimension(format!(
                "point has length {} but the polynomial has {} variables",
                point.len(),
                self.nvars
            )));
        }
        Ok(self.terms().fold(false, |acc, m| acc ^ m.eval(point)))
    }

    /// The degree-`d` homogeneous component.
    pub fn component(&self, d: usize) -> AnfPoly {
        AnfPoly {
            nvars: self.nvars,
            terms: self.terms().filter(|m| m.degree() == d).collect(),
        }
    }

    /// The highest-degree homogeneous component (zero for the zero polynomial).
    pub fn top_part(&self) -> AnfPoly {
        match self.degree() {
            d if d < 0 => self.clone(),
            d => self.component(d as usize),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d0) => degs.all(|d| d == d0),
        }
    }

    /// Truth table indexed by the integer whose bit `i` is variable `i`.
    pub fn truth_table(&self) -> Result<Vec<bool>> {
        if self.nvars > 24 {
            return Err(Error::Size(format!(
                "truth table of {} variables",
                self.nvars
            )));
        }
        let mut coeffs = vec![false; 1usize << self.nvars];
        for m in self.terms() {
            coeffs[m.bits() as usize] = true;
        }
        mobius_transform(&coeffs)
    }

    /// Inverse of [`AnfPoly::truth_table`].
    pub fn from_truth_table(table: &[bool]) -> Result<AnfPoly> {
        let coeffs = mobius_transform(table)?;
        let nvars = table.len().trailing_zeros() as usize;
        Ok(AnfPoly::from_monomials(
            nvars,
            coeffs
                .iter()
                .enumerate()
                .filter(|(_, &c)| c)
                .map(|(i, _)| Monomial::from_bits(i as u128)),
        ))
    }

    /// Re-embeds the polynomial into a ring with `nvars` variables.
    pub fn with_nvars(&self, nvars: usize) -> Result<AnfPoly> {
        if self.terms().any(|m| m.span() > nvars) {
            return Err(Error::Dimension(format!(
                "polynomial uses variables beyond {nvars}"
            )));
        }
        Ok(AnfPoly {
            nvars,
            terms: self.terms.clone(),
        })
    }

    fn check_same_ring(&self, other: &AnfPoly) {
        assert_eq!(
            self.nvars, other.nvars,
            "polynomials live in different rings"
        );
    }
}

impl fmt::Debug for AnfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for AnfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().rev().map(|m| m.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Binary Möbius transform: truth table to ANF coefficients and back.
///
/// Entry `S` of the output is the XOR of the input over all subsets of `S`,
/// which makes the map its own inverse.
pub fn mobius_transform(table: &[bool]) -> Result<Vec<bool>> {
    if !table.len().is_power_of_two() {
        return Err(Error::Dimension(format!(
            "table length {} is not a power of two",
            table.len()
        )));
    }
    let mut out = table.to_vec();
    let mut half = 1;
    while half < out.len() {
        for start in (0..out.len()).step_by(2 * half) {
            for i in start..start + half {
                out[i + half] ^= out[i];
            }
        }
        half *= 2;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, vars: &[usize]) -> AnfPoly {
        AnfPoly::from_monomial(n, Monomial::from_vars(vars).unwrap())
    }

    #[test]
    fn spec_eval_example() {
        // x1*x3 + x2 with 1-based names, i.e. x0*x2 + x1 here.
        let p = x(4, &[0, 2]).add(&x(4, &[1]));
        assert!(p.eval(&[true, false, true, false]).unwrap());
        assert!(!AnfPoly::zero(4).eval(&[true; 4]).unwrap());
    }

    #[test]
    fn eval_length_mismatch() {
        assert!(matches!(
            AnfPoly::one(3).eval(&[true]),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn addition_is_involutive() {
        let p = x(3, &[0, 1]).add(&x(3, &[2])).add(&AnfPoly::one(3));
        assert!(p.add(&p).is_zero());
    }

    #[test]
    fn degrees() {
        assert_eq!(AnfPoly::zero(3).degree(), -1);
        assert_eq!(AnfPoly::one(3).degree(), 0);
        assert_eq!(x(3, &[0, 1]).add(&x(3, &[2])).degree(), 2);
    }

    #[test]
    fn squarefree_product() {
        // (x0 + 1)(x0 + x1) = x0 + x0 x1 + x0 + x1 = x0 x1 + x1
        let a = x(2, &[0]).add(&AnfPoly::one(2));
        let b = x(2, &[0]).add(&x(2, &[1]));
        assert_eq!(a.mul(&b), x(2, &[0, 1]).add(&x(2, &[1])));
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius_transform(&[false; 8]).unwrap(), vec![false; 8]);
        assert_eq!(mobius_transform(&[false, true]).unwrap(), vec![false, true]);
        assert!(mobius_transform(&[true; 3]).is_err());
    }

    #[test]
    fn truth_table_roundtrip() {
        let p = x(3, &[0, 2]).add(&x(3, &[1])).add(&AnfPoly::one(3));
        let t = p.truth_table().unwrap();
        for (i, &bit) in t.iter().enumerate() {
            let point: Vec<bool> = (0..3).map(|k| (i >> k) & 1 == 1).collect();
            assert_eq!(bit, p.eval(&point).unwrap());
        }
        assert_eq!(AnfPoly::from_truth_table(&t).unwrap(), p);
    }
}
