//! Quartics whose smallest positive root is the relative degree of
//! regularity of the quadratic modeling.
//!
//! Over GF(2) the saddle-point equation of the truncated Hilbert series
//! `(1 + k z)^{w'} / ((1 - z)(1 + z^2)^m)` is a cubic in `z`. Two saddle points
//! coalesce when its discriminant vanishes, which is a quartic in `δ`. With
//! `a = k^2` the same quartic covers the plain system (`k = l - 1`, `c = 1/l`),
//! the full-window hybrid (`c = (1 - γ)/l`) and the partial-window hybrid
//! (`k = l' - 1`, `c = 1/l`), where `k c` is the number of free variables
//! per original variable.

use num_rational::BigRational;

use super::poly::{int, RealPoly};

/// Coefficients `p_0..p_3` of the GF(2) saddle-point cubic at a given `δ`.
pub fn saddle_cubic_f2(
    k: &BigRational,
    c: &BigRational,
    mu: &BigRational,
    delta: &BigRational,
) -> [BigRational; 4] {
    let two_mu = mu * int(2);
    [
        delta.clone(),
        k * (delta - c),
        &two_mu + delta,
        k * (&two_mu + delta - c),
    ]
}

/// Coefficients `p_0..p_3` of the saddle-point cubic for the big-field
/// series `(1 + (l-1) z)^w (1 - z^2)^m / (1 - z)^{w+1}`.
pub fn saddle_cubic_fq(l: usize, mu: &BigRational, delta: &BigRational) -> [BigRational; 4] {
    let km = int(l as i64 - 1);
    let two_mu = mu * int(2);
    [
        delta.clone(),
        delta * &km - int(1),
        &two_mu - delta - int(1),
        &km * (&two_mu - delta),
    ]
}

/// `18 p3 p2 p1 p0 - 4 p2^3 p0 + p2^2 p1^2 - 4 p3 p1^3 - 27 p3^2 p0^2`.
pub fn cubic_discriminant(p: &[BigRational; 4]) -> BigRational {
    let [p0, p1, p2, p3] = p;
    int(18) * p3 * p2 * p1 * p0 - int(4) * p2 * p2 * p2 * p0 + p2 * p2 * p1 * p1
        - int(4) * p3 * p1 * p1 * p1
        - int(27) * p3 * p3 * p0 * p0
}

/// The GF(2) quartic `r_0 + r_1 δ + ... + r_4 δ^4` for window parameter `k`,
/// free-variable density `c` and equation ratio `mu`.
///
/// It equals `-1/4` times the discriminant of [`saddle_cubic_f2`].
pub fn quartic_unified(k: &BigRational, c: &BigRational, mu: &BigRational) -> RealPoly {
    let a = k * k;
    let one = int(1);
    let a1 = &a + &one;
    let c2 = c * c;
    let c3 = &c2 * c;
    let mu2 = mu * mu;
    let a2 = &a * &a;
    let r4 = &a1 * &a1;
    let r3 = int(2) * mu * &a1 * (&a + int(3)) - int(4) * c * &a * &a1;
    let r2 = int(4) * &mu2 * (int(2) * &a + int(3)) - int(2) * mu * c * &a * (int(3) * &a - &one)
        + int(2) * &c2 * &a * (int(3) * &a + &one);
    let r1 = int(8) * &mu2 * mu
        + int(20) * &mu2 * c * &a
        + int(2) * mu * &c2 * &a * (int(3) * &a - int(5))
        - int(4) * &c3 * &a2;
    let r0 = -(&mu2 * &c2 * &a) - int(2) * mu * &c3 * &a2 + &c3 * c * &a2;
    RealPoly::new(vec![r0, r1, r2, r3, r4])
}

/// Floating-point twin of [`quartic_unified`] for optimizer scans.
pub(crate) fn quartic_unified_f64(k: f64, c: f64, mu: f64) -> [f64; 5] {
    let a = k * k;
    let a1 = a + 1.0;
    [
        -mu * mu * c * c * a - 2.0 * mu * c.powi(3) * a * a + c.powi(4) * a * a,
        8.0 * mu.powi(3) + 20.0 * mu * mu * c * a + 2.0 * mu * c * c * a * (3.0 * a - 5.0)
            - 4.0 * c.powi(3) * a * a,
        4.0 * mu * mu * (2.0 * a + 3.0) - 2.0 * mu * c * a * (3.0 * a - 1.0)
            + 2.0 * c * c * a * (3.0 * a + 1.0),
        2.0 * mu * a1 * (a + 3.0) - 4.0 * c * a * a1,
        a1 * a1,
    ]
}

/// Quartic of the plain system over GF(2).
pub fn quartic_plain_f2(l: usize, mu: &BigRational) -> RealPoly {
    quartic_unified(
        &int(l as i64 - 1),
        &BigRational::new(1.into(), (l as i64).into()),
        mu,
    )
}

/// Quartic after guessing a fraction `gamma` of whole windows.
pub fn quartic_hybrid_full(l: usize, gamma: &BigRational, mu: &BigRational) -> RealPoly {
    let c = (int(1) - gamma) / int(l as i64);
    quartic_unified(&int(l as i64 - 1), &c, mu)
}

/// Quartic after guessing `l - l'` zeros in every window.
pub fn quartic_hybrid_partial(l: usize, l_prime: usize, mu: &BigRational) -> RealPoly {
    quartic_unified(
        &int(l_prime as i64 - 1),
        &BigRational::new(1.into(), (l as i64).into()),
        mu,
    )
}

/// Big-field quartic, equal to the discriminant of [`saddle_cubic_fq`].
///
/// The coefficients are obtained by expanding that discriminant; the leading
/// one is `4 l^2 (l - 2)^2`, so the polynomial degenerates to a quadratic at
/// `l = 2`.
pub fn quartic_plain_fq(l: usize, mu: &BigRational) -> RealPoly {
    let l = int(l as i64);
    let mu2 = mu * mu;
    let lm2 = &l - int(2);
    let l2 = &l * &l;
    let l3 = &l2 * &l;
    let r4 = int(4) * &l2 * &lm2 * &lm2;
    let r3 = int(-4)
        * &lm2
        * (int(2) * &l3 * mu - int(4) * &l2 * mu + int(3) * &l2 - int(4) * &l * mu - int(8) * &l
            + int(8));
    let r2 = int(-16) * &mu2 * (int(2) * &l2 - int(4) * &l - int(1))
        + int(8) * mu * (int(3) * &l3 - int(14) * &l2 + int(29) * &l - int(24))
        + int(13) * &l2
        - int(48) * &l
        + int(48);
    let r1 = int(-32) * &mu2 * mu
        - int(16) * &mu2 * (int(5) * &l - int(8))
        - int(4) * mu * (int(6) * &l2 - int(23) * &l + int(24))
        - int(6) * &lm2;
    let r0 = int(4) * &mu2 + int(4) * mu * (int(2) * &l - int(3)) + int(1);
    RealPoly::new(vec![r0, r1, r2, r3, r4])
}

#[cfg(test)]
mod tests {
    use super::super::poly::{frac, rational_approx};
    use super::super::resultant::ratio_of;
    use super::*;

    /// The discriminant, as a polynomial in δ, interpolated from five samples.
    fn disc_poly(f: impl Fn(&BigRational) -> [BigRational; 4]) -> RealPoly {
        let xs: Vec<BigRational> = (0..5).map(int).collect();
        let ys: Vec<BigRational> = xs.iter().map(|d| cubic_discriminant(&f(d))).collect();
        super::super::resultant::interpolate(&xs, &ys)
    }

    #[test]
    fn plain_l2_coefficients() {
        let q = quartic_plain_f2(2, &frac(1, 2));
        let want = [frac(-1, 8), frac(5, 2), int(6), int(4), int(4)];
        assert_eq!(q.coeffs(), &want);
        let mu = rational_approx(3f64.log2() / 3.0, 1e-12);
        assert_eq!(quartic_plain_f2(3, &mu).coeff(4), int(25));
    }

    #[test]
    fn quartic_is_minus_quarter_discriminant() {
        let samples = [
            (int(1), frac(1, 2), frac(1, 2)),
            (int(2), frac(1, 3), frac(7, 11)),
            (int(5), frac(3, 29), frac(2, 9)),
            (frac(3, 2), frac(1, 7), frac(13, 5)),
        ];
        for (k, c, mu) in samples {
            let q = quartic_unified(&k, &c, &mu);
            let d = disc_poly(|delta| saddle_cubic_f2(&k, &c, &mu, delta));
            assert_eq!(ratio_of(&d, &q), Some(int(-4)), "k={k} c={c} mu={mu}");
        }
    }

    #[test]
    fn float_twin_matches() {
        let (k, c, mu) = (frac(7, 1), frac(3, 80), frac(3, 8));
        let exact = quartic_unified(&k, &c, &mu);
        let approx = quartic_unified_f64(7.0, 3.0 / 80.0, 0.375);
        for (i, v) in approx.iter().enumerate() {
            let e = crate::estimator::ratio_to_f64(&exact.coeff(i));
            assert!((v - e).abs() <= 1e-12 * e.abs().max(1.0), "r{i}");
        }
    }

    #[test]
    fn fq_quartic_is_the_discriminant() {
        for l in [2usize, 3, 4, 7, 12] {
            for mu in [frac(1, 3), frac(5, 4), frac(2, 17)] {
                let q = quartic_plain_fq(l, &mu);
                let d = disc_poly(|delta| saddle_cubic_fq(l, &mu, delta));
                assert_eq!(d, q, "l={l} mu={mu}");
            }
        }
    }
}
