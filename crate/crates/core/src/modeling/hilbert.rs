//! Hilbert function probes and the integer series they are compared with.

use super::macaulay::monomials_upto;
use super::xl::Quotient;
use crate::algebra::{words_for, AnfPoly, Echelon, Monomial};
use crate::error::{Error, Result};
use crate::instance::{Origin, PolySystem};

/// One value of a Hilbert function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HilbertProbe {
    pub degree: usize,
    pub value: u64,
}

/// `HF(d)` of the ideal generated by homogeneous `sys` in `F2[x]/(x_i^2)`.
///
/// Products that repeat a variable vanish in this ring, so a row is
/// `M * f` keeping only the terms of `f` disjoint from `M`.
pub fn hilbert_function_probe(
    sys: &PolySystem,
    d: usize,
    column_guard: usize,
) -> Result<HilbertProbe> {
    if let Some(f) = sys.polys().iter().find(|f| !f.is_homogeneous()) {
        return Err(Error::Degree(format!("generator {f} is not homogeneous")));
    }
    let n = sys.nvars();
    let free = Quotient::free(n);
    let cols: Vec<Monomial> = free
        .standard_upto(d, column_guard)?
        .into_iter()
        .filter(|m| m.degree() == d)
        .collect();
    let index: std::collections::HashMap<Monomial, usize> =
        cols.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut ech = Echelon::new(cols.len());
    for f in sys.polys().iter().filter(|f| !f.is_zero()) {
        let e = f.degree() as usize;
        if e > d {
            continue;
        }
        for m in free
            .standard_upto(d - e, column_guard)?
            .into_iter()
            .filter(|m| m.degree() == d - e)
        {
            let mut row = vec![0u64; words_for(cols.len())];
            for t in f.terms().filter(|t| t.bits() & m.bits() == 0) {
                let c = index[&(t * m)];
                row[c / 64] ^= 1 << (c % 64);
            }
            ech.insert(row);
        }
    }
    Ok(HilbertProbe {
        degree: d,
        value: (cols.len() - ech.rank()) as u64,
    })
}

/// `HF(d)` of the homogenized ideal in `F2[x, y]/(x_i^2 - x_i y)`.
///
/// Its degree-`d` part is spanned by the affine products of degree at most
/// `d`, so the value is the number of monomials of degree `<= d` minus the
/// rank of those products.
pub fn hilbert_function_probe_homogenized(
    sys: &PolySystem,
    d: usize,
    column_guard: usize,
) -> Result<HilbertProbe> {
    let degrees: Vec<usize> = sys
        .polys()
        .iter()
        .map(|f| f.degree().max(0) as usize)
        .collect();
    hilbert_function_probe_homogenized_as(sys, &degrees, d, column_guard)
}

/// Same as [`hilbert_function_probe_homogenized`], with generator `i`
/// homogenized to degree `degrees[i]` (padding with powers of `y`), so that
/// it only enters at degrees `>= degrees[i]`.
pub fn hilbert_function_probe_homogenized_as(
    sys: &PolySystem,
    degrees: &[usize],
    d: usize,
    column_guard: usize,
) -> Result<HilbertProbe> {
    if degrees.len() != sys.len() {
        return Err(Error::Dimension(format!(
            "{} degrees for {} generators",
            degrees.len(),
            sys.len()
        )));
    }
    if let Some((f, &e)) = sys
        .polys()
        .iter()
        .zip(degrees)
        .find(|(f, &e)| f.degree() > e as i32)
    {
        return Err(Error::Degree(format!(
            "generator {f} exceeds its declared degree {e}"
        )));
    }
    let n = sys.nvars();
    if monomials_upto(n, d) > column_guard as u128 {
        return Err(Error::Size(format!(
            "degree {d} in {n} variables exceeds the column guard"
        )));
    }
    let free = Quotient::free(n);
    let cols = free.standard_upto(d, column_guard)?;
    let index: std::collections::HashMap<Monomial, usize> =
        cols.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut ech = Echelon::new(cols.len());
    for (f, &e) in sys.polys().iter().zip(degrees) {
        if f.is_zero() || e > d {
            continue;
        }
        for m in free.standard_upto(d - e, column_guard)? {
            let mut row = vec![0u64; words_for(cols.len())];
            for t in f.terms() {
                let c = index[&(t * m)];
                row[c / 64] ^= 1 << (c % 64);
            }
            ech.insert(row);
        }
    }
    Ok(HilbertProbe {
        degree: d,
        value: (cols.len() - ech.rank()) as u64,
    })
}

/// The window constraints in homogeneous form: every product of two
/// coordinates of a window, and every window sum.
pub fn structured_homogeneous_system(l: usize, w: usize) -> Result<PolySystem> {
    let n = l * w;
    let mut sys = PolySystem::new(n);
    for i in 0..w {
        for j1 in 0..l {
            for j2 in j1 + 1..l {
                sys.push(
                    AnfPoly::from_monomial(n, Monomial::from_vars(&[i * l + j1, i * l + j2])?),
                    Origin::QuadConstraint,
                )?;
            }
        }
        sys.push(
            AnfPoly::from_monomials(n, (0..l).map(|j| Monomial::var(i * l + j))),
            Origin::LinearConstraint,
        )?;
    }
    Ok(sys)
}

/// A polynomial with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly(pub Vec<i128>);

impl IntPoly {
    pub fn one() -> IntPoly {
        IntPoly(vec![1])
    }

    /// `c0 + c1 z^k`.
    pub fn binomial(c0: i128, c1: i128, k: usize) -> IntPoly {
        let mut v = vec![0; k + 1];
        v[0] += c0;
        v[k] += c1;
        IntPoly(v)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        let mut v = vec![0i128; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPoly(v)
    }

    pub fn pow(&self, e: usize) -> IntPoly {
        (0..e).fold(IntPoly::one(), |acc, _| acc.mul(self))
    }
}

/// First `len` coefficients of the power series `num / den`.
pub fn series_coefficients(num: &IntPoly, den: &IntPoly, len: usize) -> Result<Vec<i128>> {
    let d0 = den.0.first().copied().unwrap_or(0);
    if d0 != 1 && d0 != -1 {
        return Err(Error::Parameter(
            "series denominator must have constant term +-1".into(),
        ));
    }
    let mut out = Vec::with_capacity(len);
    for k in 0..len {
        let mut c = num.0.get(k).copied().unwrap_or(0);
        for j in 1..=k.min(den.0.len() - 1) {
            c -= den.0[j] * out[k - j];
        }
        out.push(c * d0);
    }
    Ok(out)
}

/// Zeroes every coefficient from the first non-positive one on.
pub fn truncate_positive(coeffs: &[i128]) -> Vec<i128> {
    let cut = coeffs.iter().position(|&c| c <= 0).unwrap_or(coeffs.len());
    coeffs
        .iter()
        .enumerate()
        .map(|(i, &c)| if i < cut { c } else { 0 })
        .collect()
}
