//! Cost of Gröbner-basis attacks on the quadratic modeling, plain and hybrid.
//!
//! Every exponent counts columns in the variables that survive the linear
//! window equations: each window of `l` coordinates keeps `l - 1` after
//! elimination. So the plain attack works with `(l-1)/l` of the `n`
//! variables, and a window reduced to `l'` candidate positions keeps `l' - 1`.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::entropy::h;
use super::poly::{
    frac, int, ratio_to_f64, rational_approx, smallest_positive_root, smallest_positive_root_f64,
    RealPoly,
};
use super::quartic::{
    quartic_hybrid_full, quartic_hybrid_partial, quartic_plain_f2, quartic_plain_fq,
    quartic_unified_f64,
};
use super::report::{ComplexityReport, Method};
use super::resultant::LinearFamily;
use super::{brute_force_tau, check_l, mu_f2, ROOT_TOL};
use crate::error::{Error, Result};

/// Largest residual accepted when a root is substituted back.
const RESIDUAL_TOL: f64 = 1e-6;
/// Granularity of the window-fraction grid of the full-window optimizer.
const GAMMA_GRID: usize = 10_000;
/// Tuple counts up to which the different-windows search is exhaustive.
pub const EXHAUSTIVE_TUPLE_LIMIT: u128 = 25_000;

fn root_checked(p: &RealPoly, what: &str) -> Result<f64> {
    let r = smallest_positive_root(p, ROOT_TOL)
        .ok_or_else(|| Error::Estimator(format!("{what}: no positive root")))?;
    let res = p.residual(r);
    if res > RESIDUAL_TOL {
        return Err(Error::Estimator(format!(
            "{what}: residual {res:e} at root {r}"
        )));
    }
    Ok(r)
}

fn admissible(delta: f64, l: usize, what: &str) -> Result<f64> {
    if delta <= 0.0 || delta > 1.0 / l as f64 + 1e-12 {
        return Err(Error::Estimator(format!(
            "{what}: relative degree {delta} outside (0, 1/{l}]"
        )));
    }
    Ok(delta)
}

/// Plain Gröbner basis over GF(2) at the uniqueness ratio `log2(l)/l`.
pub fn tau_plain_gb_f2(l: usize, omega: f64) -> Result<ComplexityReport> {
    check_l(l)?;
    let mu = mu_f2(l);
    let what = format!("plain l={l}");
    let delta = admissible(root_checked(&quartic_plain_f2(l, &mu), &what)?, l, &what)?;
    let lf = l as f64;
    let free = (lf - 1.0) / lf;
    let tau = omega * free * h(delta / free);
    let mut r = ComplexityReport::new(Method::Plain, l, 2, omega, ratio_to_f64(&mu), tau);
    r.delta_bar = Some(delta);
    Ok(r)
}

/// Plain Gröbner basis over `GF(q)` at the uniqueness ratio
/// `log_q((q-1) l) / l`.
pub fn tau_plain_gb_fq(l: usize, q: u64, omega: f64) -> Result<ComplexityReport> {
    check_l(l)?;
    if q < 3 {
        return Err(Error::Parameter(format!(
            "big-field estimate needs q >= 3, got {q}"
        )));
    }
    let lf = l as f64;
    let mu_f = ((q - 1) as f64 * lf).log2() / (q as f64).log2() / lf;
    let mu = rational_approx(mu_f, 1e-12);
    let delta = root_checked(&quartic_plain_fq(l, &mu), &format!("plain-fq l={l} q={q}"))?;
    let tau = omega * (1.0 + delta) * h(delta / (1.0 + delta));
    let mut r = ComplexityReport::new(Method::PlainFq, l, q, omega, mu_f, tau);
    r.delta_bar = Some(delta);
    Ok(r)
}

/// Full-window hybrid at a fixed guessed fraction `gamma` of the windows.
pub fn tau_hybrid_full_at(l: usize, omega: f64, gamma: &BigRational) -> Result<ComplexityReport> {
    check_l(l)?;
    if gamma < &BigRational::zero() || gamma > &BigRational::one() {
        return Err(Error::Parameter(format!("gamma {gamma} outside [0, 1]")));
    }
    let mu = mu_f2(l);
    let lf = l as f64;
    let g = ratio_to_f64(gamma);
    let guess = g * lf.log2() / lf;
    let mut r = ComplexityReport::new(Method::HybridFull, l, 2, omega, ratio_to_f64(&mu), guess);
    r.gamma = Some(g);
    if gamma.is_one() {
        return Ok(r);
    }
    let what = format!("full l={l} gamma={gamma}");
    let delta = admissible(
        root_checked(&quartic_hybrid_full(l, gamma, &mu), &what)?,
        l,
        &what,
    )?;
    let free = (1.0 - g) * (lf - 1.0) / lf;
    r.tau = guess + omega * free * h(delta / free);
    r.delta_bar = Some(delta);
    Ok(r)
}

/// Full-window hybrid minimized over the guessed fraction.
///
/// The fraction is scanned on a `1e-4` grid and the best cell refined by a
/// golden-section search between its neighbours.
pub fn tau_hybrid_full(l: usize, omega: f64) -> Result<ComplexityReport> {
    check_l(l)?;
    let eval = |gamma: &BigRational| tau_hybrid_full_at(l, omega, gamma).ok();
    let lf = l as f64;
    let mu = ratio_to_f64(&mu_f2(l));
    // Scan in floating point; the winner is recomputed exactly below.
    let scan = |k: usize| -> f64 {
        let g = k as f64 / GAMMA_GRID as f64;
        let guess = g * lf.log2() / lf;
        if k == GAMMA_GRID {
            return guess;
        }
        let q = quartic_unified_f64(lf - 1.0, (1.0 - g) / lf, mu);
        match smallest_positive_root_f64(&q, ROOT_TOL) {
            Some(d) if d <= 1.0 / lf + 1e-12 => {
                let free = (1.0 - g) * (lf - 1.0) / lf;
                guess + omega * free * h(d / free)
            }
            _ => f64::INFINITY,
        }
    };
    let k = (0..=GAMMA_GRID)
        .into_par_iter()
        .map(|k| (scan(k), k))
        .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)))
        .map(|(_, k)| k)
        .expect("grid is nonempty");
    let grid_best = eval(&frac(k as i64, GAMMA_GRID as i64))
        .ok_or_else(|| Error::Estimator(format!("full l={l}: no admissible gamma")))?;
    let step = 1.0 / GAMMA_GRID as f64;
    let lo = (k as f64 - 1.0).max(0.0) * step;
    let hi = (k as f64 + 1.0).min(GAMMA_GRID as f64) * step;
    let refined = golden_section(lo, hi, 40, |g| {
        eval(&rational_approx(g, 1e-13))
            .map(|r| r.tau)
            .unwrap_or(f64::INFINITY)
    });
    let candidate = eval(&rational_approx(refined, 1e-13));
    Ok(match candidate {
        Some(r) if r.tau < grid_best.tau => r,
        _ => grid_best,
    })
}

fn golden_section(mut a: f64, mut b: f64, iters: usize, f: impl Fn(f64) -> f64) -> f64 {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..iters {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        c
    } else {
        d
    }
}

/// Partial-window hybrid keeping `l_prime` candidate positions per window.
pub fn tau_hybrid_partial_at(l: usize, omega: f64, l_prime: usize) -> Result<ComplexityReport> {
    check_l(l)?;
    if l_prime == 0 || l_prime > l {
        return Err(Error::Parameter(format!("l'={l_prime} outside 1..={l}")));
    }
    let mu = mu_f2(l);
    let lf = l as f64;
    let guess = (lf / l_prime as f64).log2() / lf;
    let mut r = ComplexityReport::new(Method::HybridPartial, l, 2, omega, ratio_to_f64(&mu), guess);
    r.l_prime = Some(l_prime);
    if l_prime == 1 {
        return Ok(r);
    }
    let what = format!("partial l={l} l'={l_prime}");
    let delta = admissible(
        root_checked(&quartic_hybrid_partial(l, l_prime, &mu), &what)?,
        l,
        &what,
    )?;
    let free = (l_prime as f64 - 1.0) / lf;
    r.tau = guess + omega * free * h(delta / free);
    r.delta_bar = Some(delta);
    Ok(r)
}

/// Partial-window hybrid minimized over `l'`.
pub fn tau_hybrid_partial(l: usize, omega: f64) -> Result<ComplexityReport> {
    check_l(l)?;
    (1..=l)
        .filter_map(|lp| tau_hybrid_partial_at(l, omega, lp).ok())
        .min_by(|a, b| a.tau.total_cmp(&b.tau))
        .ok_or_else(|| Error::Estimator(format!("partial l={l}: no admissible l'")))
}

/// Saddle-point family of the different-windows hybrid.
///
/// `tuple[i]` is the fraction of windows reduced to `i + 1` candidate
/// positions. The saddle-point equation is
/// `Σ c_{l'} z / (1 + (l'-1) z) - 2 μ z^2 / (1 + z^2) = δ` with
/// `c_{l'} = γ_{l'} (l'-1) / l`; the returned family is its numerator.
/// `None` when every window is fully guessed.
pub fn different_family(l: usize, tuple: &[BigRational], mu: &BigRational) -> Option<LinearFamily> {
    let active: Vec<(usize, BigRational)> = tuple
        .iter()
        .enumerate()
        .map(|(i, g)| (i + 1, g.clone()))
        .filter(|(lp, g)| *lp >= 2 && !g.is_zero())
        .collect();
    if active.is_empty() {
        return None;
    }
    let lin = |lp: usize| RealPoly::new(vec![int(1), int(lp as i64 - 1)]);
    let one_plus_z2 = RealPoly::from_integers(&[1, 0, 1]);
    let all = active
        .iter()
        .fold(RealPoly::constant(int(1)), |acc, (lp, _)| {
            acc.mul(&lin(*lp))
        });
    let b = one_plus_z2.mul(&all);
    let mut a = RealPoly::from_integers(&[0, 0, 1])
        .mul(&all)
        .scale(&(mu * int(-2)));
    for (idx, (lp, g)) in active.iter().enumerate() {
        let c = g * int(*lp as i64 - 1) / int(l as i64);
        let others = active
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != idx)
            .fold(RealPoly::constant(int(1)), |acc, (_, (q, _))| {
                acc.mul(&lin(*q))
            });
        a = a.add(&RealPoly::x().mul(&one_plus_z2).mul(&others).scale(&c));
    }
    Some(LinearFamily::new(a, b))
}

fn tuple_parts(l: usize, tuple: &[BigRational]) -> (f64, f64) {
    let lf = l as f64;
    let mut guess = 0.0;
    let mut free = 0.0;
    for (i, g) in tuple.iter().enumerate() {
        let lp = (i + 1) as f64;
        let gf = ratio_to_f64(g);
        guess += gf * (lf / lp).log2() / lf;
        free += gf * (lp - 1.0) / lf;
    }
    (guess, free)
}

fn check_tuple(l: usize, tuple: &[BigRational]) -> Result<()> {
    if tuple.len() != l {
        return Err(Error::Dimension(format!(
            "tuple has {} entries, expected {l}",
            tuple.len()
        )));
    }
    if tuple.iter().any(|g| g < &BigRational::zero()) {
        return Err(Error::Parameter("negative window fraction".into()));
    }
    let total: BigRational = tuple.iter().sum();
    if !total.is_one() {
        return Err(Error::Parameter(format!(
            "window fractions sum to {total}, not 1"
        )));
    }
    Ok(())
}

/// Different-windows hybrid for one tuple, with `δ̄` the smallest positive
/// root of the exact resultant `Res_z(g, g')`.
pub fn tau_hybrid_different_at(
    l: usize,
    omega: f64,
    tuple: &[BigRational],
) -> Result<ComplexityReport> {
    check_l(l)?;
    check_tuple(l, tuple)?;
    let mu = mu_f2(l);
    let (guess, free) = tuple_parts(l, tuple);
    let mut r = ComplexityReport::new(
        Method::HybridDifferent,
        l,
        2,
        omega,
        ratio_to_f64(&mu),
        guess,
    );
    r.tuple = Some(tuple.to_vec());
    let Some(family) = different_family(l, tuple, &mu) else {
        return Ok(r);
    };
    let what = format!("different l={l}");
    let (res, root) = family.smallest_positive_resultant_root(ROOT_TOL);
    if res.is_zero() {
        return Err(Error::Estimator(format!(
            "{what}: resultant vanishes identically (degenerate tuple)"
        )));
    }
    let delta = root.ok_or_else(|| Error::Estimator(format!("{what}: no positive root")))?;
    if res.residual(delta) > RESIDUAL_TOL {
        return Err(Error::Estimator(format!("{what}: residual too large")));
    }
    let delta = admissible(delta, l, &what)?;
    r.tau = guess + omega * free * h(delta / free);
    r.delta_bar = Some(delta);
    Ok(r)
}

/// Floating-point objective for the tuple search; the reported optimum is
/// recomputed through the exact resultant.
fn different_fast(l: usize, omega: f64, mu: &BigRational, counts: &[usize], split: usize) -> f64 {
    let tuple = counts_to_tuple(counts, split);
    let (guess, free) = tuple_parts(l, &tuple);
    let Some(family) = different_family(l, &tuple, mu) else {
        return guess;
    };
    match family.smallest_positive_critical_value(ROOT_TOL) {
        Some(delta) if delta <= 1.0 / l as f64 + 1e-12 => guess + omega * free * h(delta / free),
        _ => f64::INFINITY,
    }
}

fn counts_to_tuple(counts: &[usize], split: usize) -> Vec<BigRational> {
    counts
        .iter()
        .map(|&c| frac(c as i64, split as i64))
        .collect()
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; parts];
    fn rec(i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur[i] = k;
            rec(i + 1, left - k, cur, out);
        }
    }
    rec(0, total, &mut cur, &mut out);
    out
}

/// Default grid denominator for the tuple search.
pub fn default_split(l: usize) -> usize {
    if l <= 6 {
        200
    } else {
        60
    }
}

/// Different-windows hybrid minimized over tuples on the `1/split` grid.
///
/// The grid is searched exhaustively when it has at most
/// [`EXHAUSTIVE_TUPLE_LIMIT`] points. Beyond that the search sweeps every
/// tuple supported on at most two window types and then improves the best
/// one by moving mass between pairs of window types in shrinking steps; the
/// report is flagged `heuristic` in that case.
pub fn tau_hybrid_different(l: usize, omega: f64, split: usize) -> Result<ComplexityReport> {
    check_l(l)?;
    if split == 0 {
        return Err(Error::Parameter("split must be positive".into()));
    }
    let mu = mu_f2(l);
    let size = crate::modeling::binomial_u128(split + l - 1, l - 1);
    let exhaustive = size <= EXHAUSTIVE_TUPLE_LIMIT;
    let candidates: Vec<Vec<usize>> = if exhaustive {
        compositions(split, l)
    } else {
        let mut c = Vec::new();
        for a in 0..l {
            let mut v = vec![0; l];
            v[a] = split;
            c.push(v);
            for b in a + 1..l {
                for k in 1..split {
                    let mut v = vec![0; l];
                    v[a] = k;
                    v[b] = split - k;
                    c.push(v);
                }
            }
        }
        c
    };
    let scored: Vec<(f64, Vec<usize>)> = candidates
        .into_par_iter()
        .map(|c| (different_fast(l, omega, &mu, &c, split), c))
        .collect();
    let (mut best_tau, mut best) = scored
        .into_iter()
        .min_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)))
        .expect("at least one tuple");
    if !exhaustive {
        let mut cache: HashMap<Vec<usize>, f64> = HashMap::new();
        for step in [8usize, 4, 2, 1] {
            loop {
                let moves: Vec<Vec<usize>> = (0..l)
                    .flat_map(|i| (0..l).map(move |j| (i, j)))
                    .filter(|&(i, j)| i != j && best[i] >= step)
                    .map(|(i, j)| {
                        let mut v = best.clone();
                        v[i] -= step;
                        v[j] += step;
                        v
                    })
                    .filter(|v| !cache.contains_key(v))
                    .collect();
                let scored: Vec<(f64, Vec<usize>)> = moves
                    .into_par_iter()
                    .map(|v| (different_fast(l, omega, &mu, &v, split), v))
                    .collect();
                let mut improved = false;
                for (t, v) in scored {
                    if t < best_tau - 1e-15 {
                        best_tau = t;
                        best = v.clone();
                        improved = true;
                    }
                    cache.insert(v, t);
                }
                if !improved {
                    break;
                }
            }
        }
    }
    if !best_tau.is_finite() {
        return Err(Error::Estimator(format!(
            "different l={l}: no admissible tuple"
        )));
    }
    let mut r = tau_hybrid_different_at(l, omega, &counts_to_tuple(&best, split))?;
    r.split = Some(split);
    r.heuristic = !exhaustive;
    if !exhaustive {
        r.note = Some(format!(
            "heuristic search: {size} grid tuples exceed the exhaustive limit"
        ));
    }
    Ok(r)
}

/// Closed-form relative degree of regularity of a semi-regular quadratic
/// system over GF(2) with `μ` equations per variable.
pub fn simple_delta_bar(mu: f64) -> f64 {
    let inner = 2.0 * mu * mu - 10.0 * mu - 1.0 + 2.0 * (mu + 2.0) * (mu * (mu + 2.0)).sqrt();
    -mu + 0.5 + 0.5 * inner.sqrt()
}

/// Closed-form cost of the `l' = 2` partial-window hybrid: after guessing,
/// each window keeps one free variable, so `w` variables face
/// `log2(l) w` equations.
pub fn tau_simple_estimate(l: usize, omega: f64) -> Result<ComplexityReport> {
    if l < 4 {
        return Err(Error::Parameter(format!(
            "closed-form estimate needs l >= 4, got {l}"
        )));
    }
    let lf = l as f64;
    let mu = lf.log2();
    let delta = simple_delta_bar(mu);
    let tau = ((lf / 2.0).log2() + omega * h(delta)) / lf;
    let mut r = ComplexityReport::new(Method::SimpleEstimate, l, 2, omega, mu, tau);
    r.delta_bar = Some(delta);
    r.l_prime = Some(2);
    Ok(r)
}

/// Sanity bound used by callers: no attack should be priced above
/// exhaustive search by more than rounding.
pub fn within_brute_force(r: &ComplexityReport) -> bool {
    r.tau <= brute_force_tau(r.l, r.q) + 1e-9
}
