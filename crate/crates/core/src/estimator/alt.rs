//! Cost of attacks on the alternative modeling, where each window is encoded
//! by `s = log2 l` bits and equations have degree `2s`.
//!
//! With `F` the fraction of the `n` original coordinates that survive as
//! encoding bits, the truncated Hilbert series is
//! `(1 + z)^{F n} / ((1 - z)(1 + z^e)^m)` with `e` the equation degree, so the
//! saddle-point condition is `F z/(1+z) - e μ z^e/(1+z^e) = δ`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::entropy::h;
use super::poly::{frac, int, ratio_to_f64, RealPoly};
use super::report::{ComplexityReport, Method};
use super::resultant::LinearFamily;
use super::ROOT_TOL;
use crate::error::{Error, Result};

const GAMMA_GRID: usize = 1000;

fn log2_exact(l: usize) -> Result<usize> {
    if l < 2 || !l.is_power_of_two() {
        return Err(Error::Parameter(format!(
            "alternative modeling needs l to be a power of two >= 2, got {l}"
        )));
    }
    Ok(l.trailing_zeros() as usize)
}

/// Saddle-point family `F z (1 + z^e) - e μ z^e (1 + z) - δ (1 + z)(1 + z^e)`.
pub fn alt_family(free: &BigRational, e: usize, mu: &BigRational) -> LinearFamily {
    let mut ze = vec![int(0); e + 1];
    ze[e] = int(1);
    let z_e = RealPoly::new(ze);
    let one_plus_ze = z_e.add(&RealPoly::constant(int(1)));
    let one_plus_z = RealPoly::from_integers(&[1, 1]);
    let a = RealPoly::x()
        .mul(&one_plus_ze)
        .scale(free)
        .sub(&z_e.mul(&one_plus_z).scale(&(mu * int(e as i64))));
    LinearFamily::new(a, one_plus_z.mul(&one_plus_ze))
}

/// `δ̄` from the exact resultant, checked against the floating critical-value
/// path and against `(0, F]`.
fn alt_delta(free: &BigRational, e: usize, mu: &BigRational, what: &str) -> Result<f64> {
    let family = alt_family(free, e, mu);
    let (res, root) = family.smallest_positive_resultant_root(ROOT_TOL);
    let delta = root.ok_or_else(|| Error::Estimator(format!("{what}: no positive root")))?;
    if res.residual(delta) > 1e-6 {
        return Err(Error::Estimator(format!("{what}: residual too large")));
    }
    if delta > ratio_to_f64(free) + 1e-12 {
        return Err(Error::Estimator(format!(
            "{what}: relative degree {delta} above the variable fraction"
        )));
    }
    Ok(delta)
}

fn alt_delta_fast(free: &BigRational, e: usize, mu: &BigRational) -> Option<f64> {
    alt_family(free, e, mu).smallest_positive_critical_value(ROOT_TOL)
}

fn alt_mu(s: usize, l: usize) -> BigRational {
    frac(s as i64, l as i64)
}

/// Full-window hybrid on the alternative modeling at guessed fraction `gamma`.
pub fn tau_alt_full_at(l: usize, omega: f64, gamma: &BigRational) -> Result<ComplexityReport> {
    let s = log2_exact(l)?;
    if gamma < &BigRational::zero() || gamma > &BigRational::one() {
        return Err(Error::Parameter(format!("gamma {gamma} outside [0, 1]")));
    }
    let mu = alt_mu(s, l);
    let g = ratio_to_f64(gamma);
    let guess = g * s as f64 / l as f64;
    let method = if gamma.is_zero() {
        Method::AltPlain
    } else {
        Method::AltFull
    };
    let mut r = ComplexityReport::new(method, l, 2, omega, ratio_to_f64(&mu), guess);
    r.gamma = Some(g);
    if gamma.is_one() {
        return Ok(r);
    }
    let free = (int(1) - gamma) * &mu;
    let delta = alt_delta(&free, 2 * s, &mu, &format!("alt-full l={l} gamma={gamma}"))?;
    let ff = ratio_to_f64(&free);
    r.tau = guess + omega * ff * h(delta / ff);
    r.delta_bar = Some(delta);
    Ok(r)
}

/// Plain Gröbner basis on the alternative modeling.
pub fn tau_alt_plain(l: usize, omega: f64) -> Result<ComplexityReport> {
    let mut r = tau_alt_full_at(l, omega, &int(0))?;
    r.gamma = None;
    Ok(r)
}

/// Full-window hybrid on the alternative modeling, minimized over the
/// guessed fraction on a `1e-3` grid.
pub fn tau_alt_full(l: usize, omega: f64) -> Result<ComplexityReport> {
    let s = log2_exact(l)?;
    let mu = alt_mu(s, l);
    let lf = l as f64;
    let mut best: Option<(f64, usize)> = None;
    for k in 0..=GAMMA_GRID {
        let gamma = frac(k as i64, GAMMA_GRID as i64);
        let g = ratio_to_f64(&gamma);
        let guess = g * s as f64 / lf;
        let tau = if k == GAMMA_GRID {
            guess
        } else {
            let free = (int(1) - &gamma) * &mu;
            let ff = ratio_to_f64(&free);
            match alt_delta_fast(&free, 2 * s, &mu) {
                Some(d) if d <= ff => guess + omega * ff * h(d / ff),
                _ => continue,
            }
        };
        if best.is_none_or(|b| tau < b.0) {
            best = Some((tau, k));
        }
    }
    let (_, k) = best.ok_or_else(|| Error::Estimator(format!("alt-full l={l}: no gamma")))?;
    let mut r = tau_alt_full_at(l, omega, &frac(k as i64, GAMMA_GRID as i64))?;
    r.method = Method::AltFull;
    Ok(r)
}

/// Partial-window hybrid on the alternative modeling: guess `s - s'` bits
/// of every window, leaving windows of length `2^{s'}`.
pub fn tau_alt_partial_at(l: usize, omega: f64, s_prime: usize) -> Result<ComplexityReport> {
    let s = log2_exact(l)?;
    if s_prime > s {
        return Err(Error::Parameter(format!("s'={s_prime} exceeds s={s}")));
    }
    let mu = alt_mu(s, l);
    let lf = l as f64;
    let guess = (s - s_prime) as f64 / lf;
    let mut r = ComplexityReport::new(Method::AltPartial, l, 2, omega, ratio_to_f64(&mu), guess);
    r.l_prime = Some(1 << s_prime);
    if s_prime == 0 {
        return Ok(r);
    }
    let free = frac(s_prime as i64, l as i64);
    let delta = alt_delta(
        &free,
        2 * s_prime,
        &mu,
        &format!("alt-partial l={l} s'={s_prime}"),
    )?;
    let ff = ratio_to_f64(&free);
    r.tau = guess + omega * ff * h(delta / ff);
    r.delta_bar = Some(delta);
    Ok(r)
}

/// Partial-window hybrid on the alternative modeling, minimized over `s'`.
pub fn tau_alt_partial(l: usize, omega: f64) -> Result<ComplexityReport> {
    let s = log2_exact(l)?;
    (0..=s)
        .filter_map(|sp| tau_alt_partial_at(l, omega, sp).ok())
        .min_by(|a, b| a.tau.total_cmp(&b.tau))
        .ok_or_else(|| Error::Estimator(format!("alt-partial l={l}: no admissible s'")))
}

/// Dinur's parity-counting algorithm run on the degree-`2s` system:
/// exponent `log2(l)/l - 1/(4l)`.
pub fn tau_alt_dinur(l: usize) -> Result<f64> {
    let s = log2_exact(l)?;
    Ok(s as f64 / l as f64 - 0.25 / l as f64)
}

/// [`tau_alt_dinur`] wrapped as a report.
pub fn tau_alt_dinur_report(l: usize) -> Result<ComplexityReport> {
    let tau = tau_alt_dinur(l)?;
    let s = log2_exact(l)?;
    Ok(ComplexityReport::new(
        Method::DinurAlt,
        l,
        2,
        2.0,
        s as f64 / l as f64,
        tau,
    ))
}
