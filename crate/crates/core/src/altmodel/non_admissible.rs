//! Monomials the encoded ideal cannot reach at a given degree, and the
//! empirical check of the Hilbert function prediction built on them.
//!
//! In the homogenized ring with `x'^2 = x' y`, every generator of the
//! encoded system involves at most two windows and has degree `2s`. A
//! monomial `x'^alpha y^h` of degree `d` such that for every pair of windows
//! the degrees inside the pair plus `h` stay below `2s` cannot be a leading
//! term of any degree-`d` ideal element, so such monomials survive in the
//! quotient.

use super::transform_instance;
use crate::algebra::Monomial;
use crate::error::{Error, Result};
use crate::instance::plant_instance;
use crate::modeling::{
    binomial_u128, hilbert_function_probe_homogenized_as, series_coefficients, truncate_positive,
    IntPoly, DEFAULT_COLUMN_GUARD,
};

/// Calls `f` on every window-degree vector of a non-admissible pattern.
fn for_each_profile(s: usize, w: usize, d: usize, mut f: impl FnMut(&[usize], usize)) {
    let mut b = vec![0usize; w];
    loop {
        let total: usize = b.iter().sum();
        if total <= d {
            let h = d - total;
            let mut sorted = b.clone();
            sorted.sort_unstable_by(|x, y| y.cmp(x));
            if sorted[0] + sorted[1] + h < 2 * s {
                f(&b, h);
            }
        }
        // Odometer over 0..=s per window.
        let mut i = 0;
        loop {
            if i == w {
                return;
            }
            b[i] += 1;
            if b[i] <= s {
                break;
            }
            b[i] = 0;
            i += 1;
        }
    }
}

fn check(s: usize, w: usize) -> Result<()> {
    if s == 0 || w < 2 {
        return Err(Error::Parameter(format!(
            "need s >= 1 and w >= 2, got s={s}, w={w}"
        )));
    }
    Ok(())
}

/// Number of non-admissible monomials of degree `d`.
pub fn count_non_admissible(s: usize, w: usize, d: usize) -> Result<u128> {
    check(s, w)?;
    let mut count = 0u128;
    for_each_profile(s, w, d, |b, _| {
        count += b.iter().map(|&k| binomial_u128(s, k)).product::<u128>()
    });
    Ok(count)
}

/// Non-admissible monomials of degree `d`, as (x' part, power of y).
pub fn enumerate_non_admissible(
    s: usize,
    w: usize,
    d: usize,
    guard: usize,
) -> Result<Vec<(Monomial, usize)>> {
    let total = count_non_admissible(s, w, d)?;
    if total > guard as u128 {
        return Err(Error::Size(format!(
            "{total} non-admissible monomials exceed the guard of {guard}"
        )));
    }
    let mut out = Vec::new();
    for_each_profile(s, w, d, |b, h| {
        // All x' parts with the given per-window degrees.
        let mut parts = vec![0u128];
        for (i, &k) in b.iter().enumerate() {
            let subsets: Vec<u128> = (0u128..1 << s)
                .filter(|m| m.count_ones() as usize == k)
                .map(|m| m << (i * s))
                .collect();
            parts = parts
                .iter()
                .flat_map(|p| subsets.iter().map(move |q| p | q))
                .collect();
        }
        out.extend(parts.into_iter().map(|p| (Monomial::from_bits(p), h)));
    });
    out.sort();
    Ok(out)
}

/// Measured against predicted Hilbert function values over several seeds.
#[derive(Clone, Debug, PartialEq)]
pub struct AltHilbertCheck {
    pub d: usize,
    /// Truncated series coefficient at `d`.
    pub series: i128,
    pub non_admissible: u128,
    /// `max(series, non_admissible)`.
    pub predicted: u128,
    pub measured: Vec<u64>,
    pub pass_rate: f64,
}

/// Every equation is homogenized to degree `2s`, even when its actual
/// degree is lower, as the prediction assumes.
///
/// Compares `HF(d)` of the homogenized encoded system of planted instances
/// with `max([(1+z)^{sw} / ((1-z)(1+z^{2s})^m)]_+ at d, |M_NA(d)|)`.
pub fn alt_hilbert_check(
    s: usize,
    w: usize,
    m: usize,
    d: usize,
    seeds: &[u64],
) -> Result<AltHilbertCheck> {
    check(s, w)?;
    if seeds.is_empty() {
        return Err(Error::Parameter("no seeds given".into()));
    }
    let n = s * w;
    let num = IntPoly::binomial(1, 1, 1).pow(n);
    let den = IntPoly::binomial(1, -1, 1).mul(&IntPoly::binomial(1, 1, 2 * s).pow(m));
    let series = truncate_positive(&series_coefficients(&num, &den, d + 1)?)[d];
    let non_admissible = count_non_admissible(s, w, d)?;
    let predicted = (series.max(0) as u128).max(non_admissible);
    let mut measured = Vec::with_capacity(seeds.len());
    for &seed in seeds {
        let ds = transform_instance(&plant_instance(1 << s, w, m, seed)?)?;
        let sys = ds.to_poly_system()?;
        let degrees = vec![2 * s; sys.len()];
        measured.push(
            hilbert_function_probe_homogenized_as(&sys, &degrees, d, DEFAULT_COLUMN_GUARD)?.value,
        );
    }
    let pass = measured.iter().filter(|&&v| v as u128 == predicted).count();
    Ok(AltHilbertCheck {
        d,
        series,
        non_admissible,
        predicted,
        pass_rate: pass as f64 / seeds.len() as f64,
        measured,
    })
}
