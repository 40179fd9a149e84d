//! Resultants of polynomials that depend linearly on a parameter.
//!
//! The saddle-point condition of every Hilbert series handled by the estimator
//! has the shape `g(z) = A(z) - δ B(z) = 0`. The relative degree of regularity
//! is where two saddle points coalesce, i.e. where `g` and `g'` share a root,
//! which is the vanishing of `Res_z(g, g')` as a polynomial in `δ`.
//!
//! The resultant is computed exactly. Once `A` and `B` share one integer
//! denominator-free scaling, `g_δ` has integer coefficients at every integer
//! `δ`, so `Res` is sampled at integer points with fraction-free (Bareiss)
//! Sylvester determinants and rebuilt by Newton interpolation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{positive_roots, ratio_to_f64, real_roots, RealPoly};

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Sylvester matrix of `f` and `g` (coefficients low to high) using their
/// formal degrees `len - 1`.
pub fn sylvester_matrix(f: &[BigInt], g: &[BigInt]) -> Vec<Vec<BigInt>> {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (i, c) in f.iter().rev().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (i, c) in g.iter().rev().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Resultant of two integer polynomials at their formal degrees.
pub fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    bareiss_determinant(sylvester_matrix(f, g))
}

/// Polynomial through `(x_i, y_i)` by Newton divided differences.
pub fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> RealPoly {
    let n = xs.len();
    let mut dd: Vec<BigRational> = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut p = RealPoly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        p = p
            .mul(&RealPoly::new(vec![-xs[i].clone(), BigRational::one()]))
            .add(&RealPoly::constant(dd[i].clone()));
    }
    p
}

/// The family `g_δ(z) = A(z) - δ B(z)`.
#[derive(Clone, Debug)]
pub struct LinearFamily {
    pub a: RealPoly,
    pub b: RealPoly,
}

impl LinearFamily {
    pub fn new(a: RealPoly, b: RealPoly) -> LinearFamily {
        LinearFamily { a, b }
    }

    fn formal_degree(&self) -> usize {
        self.a
            .degree()
            .unwrap_or(0)
            .max(self.b.degree().unwrap_or(0))
    }

    pub fn at(&self, delta: &BigRational) -> RealPoly {
        self.a.sub(&self.b.scale(delta))
    }

    /// `Res_z(g_δ, g_δ')` as an exact polynomial in `δ`, up to a positive
    /// constant factor.
    pub fn discriminant_resultant(&self) -> RealPoly {
        let d = self.formal_degree();
        if d == 0 {
            return RealPoly::zero();
        }
        // Clearing one common denominator keeps g_δ integral at integer δ.
        let lcm = self
            .a
            .coeffs()
            .iter()
            .chain(self.b.coeffs())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let lcm = BigRational::from_integer(lcm);
        let to_int = |p: &RealPoly| -> Vec<BigInt> {
            (0..=d).map(|i| (p.coeff(i) * &lcm).to_integer()).collect()
        };
        let (a_int, b_int) = (to_int(&self.a), to_int(&self.b));
        // Res has degree at most 2d - 1 in δ.
        let mut xs = Vec::with_capacity(2 * d);
        let mut ys = Vec::with_capacity(2 * d);
        for j in 0..2 * d {
            let t = BigInt::from(j as i64);
            let h: Vec<BigInt> = a_int.iter().zip(&b_int).map(|(a, b)| a - &t * b).collect();
            let dh: Vec<BigInt> = h
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i as i64))
                .collect();
            xs.push(BigRational::from_integer(t));
            ys.push(BigRational::from_integer(resultant(&h, &dh)));
        }
        interpolate(&xs, &ys)
    }

    /// Critical values `A(z)/B(z)` over real critical points `z` of `A/B`,
    /// plus the value at infinity.
    ///
    /// These are the real roots of [`LinearFamily::discriminant_resultant`]
    /// outside degenerate cases, found in floating point without building the
    /// resultant. Optimizers scan with this and confirm their final answer
    /// with the exact resultant.
    pub fn critical_values(&self, tol: f64) -> Vec<f64> {
        let wronskian = self
            .a
            .derivative()
            .mul(&self.b)
            .sub(&self.a.mul(&self.b.derivative()));
        let mut out = Vec::new();
        for z in real_roots(&wronskian, tol) {
            let den = eval_unscaled(&self.b, z);
            if den.abs() > 1e-300 {
                out.push(eval_unscaled(&self.a, z) / den);
            }
        }
        let d = self.formal_degree();
        let lb = self.b.coeff(d);
        if !lb.is_zero() {
            out.push(ratio_to_f64(&(self.a.coeff(d) / lb)));
        }
        out.sort_by(f64::total_cmp);
        out
    }

    /// Smallest positive critical value, fast floating-point path.
    pub fn smallest_positive_critical_value(&self, tol: f64) -> Option<f64> {
        self.critical_values(tol).into_iter().find(|&v| v > 0.0)
    }

    /// Smallest positive root of the exact resultant, together with the
    /// resultant itself.
    pub fn smallest_positive_resultant_root(&self, tol: f64) -> (RealPoly, Option<f64>) {
        let res = self.discriminant_resultant();
        let root = positive_roots(&res, tol).into_iter().next();
        (res, root)
    }
}

fn eval_unscaled(p: &RealPoly, z: f64) -> f64 {
    p.coeffs()
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * z + ratio_to_f64(c))
}

/// The exact multiple of `q` that `p` equals, if any.
pub fn ratio_of(p: &RealPoly, q: &RealPoly) -> Option<BigRational> {
    let i = q.coeffs().iter().position(|c| !c.is_zero())?;
    let k = p.coeff(i) / q.coeff(i);
    (p == &q.scale(&k)).then_some(k)
}
