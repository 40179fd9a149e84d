//! Squarefree monomials over GF(2) packed into a 128-bit mask.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest number of variables a [`Monomial`] can address.
pub const MAX_VARS: usize = 128;

/// A squarefree monomial, stored as the set of its variable indices.
///
/// Because `x_i^2 = x_i` over GF(2), multiplying two monomials is a set union.
/// The ordering is graded: lower degree first, then lexicographic on the
/// sorted index lists (so `x0*x1 < x0*x2 < x1*x2`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(u128);

impl Monomial {
    /// The constant monomial 1.
    pub const ONE: Monomial = Monomial(0);

    pub fn var(i: usize) -> Monomial {
        assert!(i < MAX_VARS, "variable index {i} exceeds {MAX_VARS}");
        Monomial(1u128 << i)
    }

    /// Builds a monomial from indices. Repeated indices collapse (field equations).
    pub fn from_vars(vars: &[usize]) -> Result<Monomial> {
        let mut bits = 0u128;
        for &v in vars {
            if v >= MAX_VARS {
                return Err(Error::Dimension(format!(
                    "variable index {v} exceeds the {MAX_VARS}-variable limit"
                )));
            }
            bits |= 1u128 << v;
        }
        Ok(Monomial(bits))
    }

    pub const fn from_bits(bits: u128) -> Monomial {
        Monomial(bits)
    }

    pub const fn bits(self) -> u128 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_VARS && (self.0 >> i) & 1 == 1
    }

    /// True when `self` divides `other`.
    pub fn divides(self, other: Monomial) -> bool {
        self.0 & other.0 == self.0
    }

    /// Highest variable index plus one (0 for the constant monomial).
    pub fn span(self) -> usize {
        MAX_VARS - self.0.leading_zeros() as usize
    }

    /// Sorted variable indices.
    pub fn vars(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    pub fn eval(self, point: &[bool]) -> bool {
        self.vars().all(|i| point[i])
    }
}

impl std::ops::Mul for Monomial {
    type Output = Monomial;
    fn mul(self, rhs: Monomial) -> Monomial {
        Monomial(self.0 | rhs.0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {
                let diff = self.0 ^ other.0;
                if diff == 0 {
                    Ordering::Equal
                } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
                    // The lowest differing index belongs to self, so its sorted
                    // index list is lexicographically smaller.
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            o => o,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.vars().map(|i| format!("x{i}")).collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree_collapse() {
        let m = Monomial::from_vars(&[3, 1, 3]).unwrap();
        assert_eq!(m.vars().collect::<Vec<_>>(), vec![1, 3]);
        assert_eq!(m.degree(), 2);
        assert_eq!(m * m, m);
    }

    #[test]
    fn graded_lex_order() {
        let x = |v: &[usize]| Monomial::from_vars(v).unwrap();
        let mut ms = vec![x(&[1, 2]), x(&[]), x(&[0, 2]), x(&[3]), x(&[0, 1]), x(&[0])];
        ms.sort();
        assert_eq!(
            ms,
            vec![x(&[]), x(&[0]), x(&[3]), x(&[0, 1]), x(&[0, 2]), x(&[1, 2])]
        );
    }

    #[test]
    fn out_of_range_index_is_rejected() {
        assert!(Monomial::from_vars(&[MAX_VARS]).is_err());
    }
}
