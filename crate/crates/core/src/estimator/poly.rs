//! Exact-coefficient real polynomials and floating root isolation.
//!
//! Coefficients are kept as [`BigRational`] so that quartics, Sylvester
//! determinants and products of window factors never lose precision. Only the
//! final root search drops to `f64`, after the polynomial has been scaled so its
//! largest coefficient is one.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Tolerance used when callers do not pick one.
pub const DEFAULT_ROOT_TOL: f64 = 1e-9;

/// A univariate polynomial with rational coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq)]
pub struct RealPoly {
    coeffs: Vec<BigRational>,
}

impl RealPoly {
    /// Builds a polynomial from coefficients ordered low to high, dropping
    /// zero leading terms.
    pub fn new(mut coeffs: Vec<BigRational>) -> RealPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RealPoly { coeffs }
    }

    pub fn zero() -> RealPoly {
        RealPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> RealPoly {
        RealPoly::new(vec![c])
    }

    /// `x`, the identity polynomial.
    pub fn x() -> RealPoly {
        RealPoly::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn from_integers(coeffs: &[i64]) -> RealPoly {
        RealPoly::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        horner(&self.to_f64_scaled(), x)
    }

    pub fn derivative(&self) -> RealPoly {
        RealPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigRational) -> RealPoly {
        RealPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn add(&self, other: &RealPoly) -> RealPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RealPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &RealPoly) -> RealPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RealPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &RealPoly) -> RealPoly {
        if self.is_zero() || other.is_zero() {
            return RealPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RealPoly::new(out)
    }

    /// Number of exactly-zero low coefficients, i.e. the multiplicity of the
    /// root at the origin.
    pub fn zero_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Coefficients divided by the largest absolute coefficient, as `f64`.
    ///
    /// Scaling happens in exact arithmetic first, so huge resultant
    /// coefficients do not overflow.
    pub fn to_f64_scaled(&self) -> Vec<f64> {
        let Some(max) = self.coeffs.iter().map(|c| c.abs()).max() else {
            return Vec::new();
        };
        self.coeffs
            .iter()
            .map(|c| ratio_to_f64(&(c / &max)))
            .collect()
    }

    /// `|p(x)|` relative to the largest coefficient. A root found by
    /// [`smallest_positive_root`] has a residual near machine precision.
    pub fn residual(&self, x: f64) -> f64 {
        horner(&self.to_f64_scaled(), x).abs()
    }
}

impl fmt::Debug for RealPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RealPoly[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

pub(crate) fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub(crate) fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Best rational approximation of `x` by continued fractions, stopping at the
/// first convergent within `max_err`.
///
/// The rational crate's own approximation insists on a 1e-19 target, which
/// drives denominators to the limit of `f64` and bloats every resultant built
/// from the result; here the caller picks the precision it needs.
pub fn rational_approx(x: f64, max_err: f64) -> BigRational {
    assert!(x.is_finite(), "cannot approximate {x}");
    let negative = x < 0.0;
    let target = x.abs();
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut rest = target;
    for _ in 0..64 {
        let a = rest.floor();
        let ai = BigInt::from(a as u64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        let approx = BigRational::new(h1.clone(), k1.clone());
        if (ratio_to_f64(&approx) - target).abs() <= max_err || rest == a {
            break;
        }
        rest = 1.0 / (rest - a);
    }
    let r = BigRational::new(h1, k1);
    if negative {
        -r
    } else {
        r
    }
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

fn derivative_f64(c: &[f64]) -> Vec<f64> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(i, &a)| a * i as f64)
        .collect()
}

fn abs_bound(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * x.abs() + a.abs())
}

fn bisect(c: &[f64], mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut flo = horner(c, lo);
    for _ in 0..300 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol * mid.abs().max(1e-300) || mid <= lo || mid >= hi {
            return mid;
        }
        let fm = horner(c, mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Real roots of `c` in the half-open interval `(lo, hi]`, ascending.
///
/// Roots of the derivative split the interval into pieces on which `c` is
/// monotone; each piece holds at most one root, found by bisection. Critical
/// points where `c` vanishes to rounding precision count as (even-multiplicity)
/// roots.
fn roots_in(c: &[f64], lo: f64, hi: f64, tol: f64) -> Vec<f64> {
    let mut c = c.to_vec();
    while c.last() == Some(&0.0) {
        c.pop();
    }
    match c.len() {
        0 | 1 => return Vec::new(),
        2 => {
            let r = -c[0] / c[1];
            return if r > lo && r <= hi {
                vec![r]
            } else {
                Vec::new()
            };
        }
        _ => {}
    }
    let crit = roots_in(&derivative_f64(&c), lo, hi, tol);
    let mut pts = Vec::with_capacity(crit.len() + 2);
    pts.push(lo);
    pts.extend(crit.iter().copied().filter(|&x| x > lo && x < hi));
    pts.push(hi);
    let mut roots: Vec<f64> = Vec::new();
    for pair in pts.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let (fa, fb) = (horner(&c, a), horner(&c, b));
        if fb == 0.0 {
            roots.push(b);
        } else if fa != 0.0 && (fa < 0.0) != (fb < 0.0) {
            roots.push(bisect(&c, a, b, tol));
        }
    }
    for &x in &crit {
        if x > lo && x <= hi && horner(&c, x).abs() <= 1e-13 * abs_bound(&c, x) {
            roots.push(x);
        }
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() <= 10.0 * tol * b.abs().max(1e-300));
    roots
}

/// Cauchy bound: every root has modulus below the returned value.
fn cauchy_bound(c: &[f64]) -> f64 {
    let lead = c.last().copied().unwrap_or(1.0).abs();
    1.0 + c[..c.len() - 1]
        .iter()
        .map(|a| a.abs() / lead)
        .fold(0.0, f64::max)
}

/// All strictly positive real roots of `p`, ascending.
pub fn positive_roots(p: &RealPoly, tol: f64) -> Vec<f64> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let shifted = RealPoly::new(p.coeffs()[p.zero_order()..].to_vec());
    let c = shifted.to_f64_scaled();
    if c.len() < 2 {
        return Vec::new();
    }
    roots_in(&c, 0.0, cauchy_bound(&c), tol)
}

/// All real roots of `p`, ascending, roots at the origin included once.
pub fn real_roots(p: &RealPoly, tol: f64) -> Vec<f64> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let order = p.zero_order();
    let shifted = RealPoly::new(p.coeffs()[order..].to_vec());
    let c = shifted.to_f64_scaled();
    let mut out = Vec::new();
    if c.len() >= 2 {
        let bound = cauchy_bound(&c);
        let mirrored: Vec<f64> = c
            .iter()
            .enumerate()
            .map(|(i, &a)| if i % 2 == 1 { -a } else { a })
            .collect();
        out.extend(roots_in(&mirrored, 0.0, bound, tol).into_iter().map(|r| -r));
        out.extend(roots_in(&c, 0.0, bound, tol));
    }
    if order > 0 {
        out.push(0.0);
    }
    out.sort_by(f64::total_cmp);
    out
}

/// Smallest strictly positive root of a floating polynomial whose constant
/// term is nonzero.
pub(crate) fn smallest_positive_root_f64(c: &[f64], tol: f64) -> Option<f64> {
    let scale = c.iter().fold(0.0f64, |m, a| m.max(a.abs()));
    if scale == 0.0 || c.len() < 2 {
        return None;
    }
    let mut c: Vec<f64> = c.iter().map(|a| a / scale).collect();
    while c.last() == Some(&0.0) {
        c.pop();
    }
    if c.len() < 2 {
        return None;
    }
    roots_in(&c, 0.0, cauchy_bound(&c), tol).into_iter().next()
}

/// Smallest strictly positive real root of `p`, or `None` when there is none.
///
/// `tol` is relative; [`DEFAULT_ROOT_TOL`] is the documented default and the
/// estimators pass something much tighter.
pub fn smallest_positive_root(p: &RealPoly, tol: f64) -> Option<f64> {
    positive_roots(p, tol).into_iter().next()
}
