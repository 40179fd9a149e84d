//! Asymptotic cost of every attack in the workbench.
//!
//! Costs are reported as `τ`, meaning `2^(τ n)` operations up to polynomial
//! factors, for systems at the uniqueness ratio `μ = log2(l)/l` unless stated
//! otherwise. Algebraic attacks are priced through the relative degree of
//! regularity `δ̄`, the smallest positive root of a polynomial obtained from a
//! saddle-point analysis of the Hilbert series. Coefficients are exact
//! rationals and only the final root isolation is done in floating point.
//! Optimizers may scan their grids with floating-point twins of those
//! polynomials, but every reported optimum is recomputed exactly.
//!
//! `ω` is the linear-algebra exponent; the curves are usually drawn with
//! `ω = 2` (sparse elimination).

mod alt;
mod entropy;
mod hybrid;
mod poly;
mod polybound;
mod quartic;
mod report;
mod resultant;

use rayon::prelude::*;

use crate::error::{Error, Result};

pub use alt::{
    alt_family, tau_alt_dinur, tau_alt_dinur_report, tau_alt_full, tau_alt_full_at,
    tau_alt_partial, tau_alt_partial_at, tau_alt_plain,
};
pub use entropy::{entropy, entropy_star};
pub use hybrid::{
    default_split, different_family, simple_delta_bar, tau_hybrid_different,
    tau_hybrid_different_at, tau_hybrid_full, tau_hybrid_full_at, tau_hybrid_partial,
    tau_hybrid_partial_at, tau_plain_gb_f2, tau_plain_gb_fq, tau_simple_estimate,
    within_brute_force, EXHAUSTIVE_TUPLE_LIMIT,
};
pub use poly::{
    positive_roots, ratio_to_f64, rational_approx, real_roots, smallest_positive_root, RealPoly,
    DEFAULT_ROOT_TOL,
};
pub use polybound::{g_poly_method, tau_poly_bjorklund, tau_poly_dinur, tau_poly_nonrecursive};
pub use quartic::{
    cubic_discriminant, quartic_hybrid_full, quartic_hybrid_partial, quartic_plain_f2,
    quartic_plain_fq, quartic_unified, saddle_cubic_f2, saddle_cubic_fq,
};
pub use report::{empty_csv_row, ComplexityReport, Method, COMPLEXITY_CSV_HEADER};
pub use resultant::{
    bareiss_determinant, interpolate, ratio_of, resultant, sylvester_matrix, LinearFamily,
};

/// Relative tolerance of every root isolation done by the estimators.
pub(crate) const ROOT_TOL: f64 = 1e-14;

pub(crate) fn check_l(l: usize) -> Result<()> {
    if l < 2 {
        return Err(Error::Parameter(format!(
            "window length l={l} must be >= 2"
        )));
    }
    Ok(())
}

pub(crate) fn log2_over(l: usize) -> f64 {
    (l as f64).log2() / l as f64
}

/// `log2(l)/l` as a rational within `1e-12` (exact when `l` is a power of two
/// over itself, e.g. `1/2` at `l = 2`).
pub fn mu_f2(l: usize) -> num_rational::BigRational {
    if l.is_power_of_two() {
        return num_rational::BigRational::new(
            (l.trailing_zeros() as i64).into(),
            (l as i64).into(),
        );
    }
    rational_approx(log2_over(l), 1e-12)
}

/// Exponent of exhaustive search over regular vectors in `GF(q)`:
/// `log2((q-1) l) / l`.
pub fn brute_force_tau(l: usize, q: u64) -> f64 {
    (((q.max(2) - 1) as f64) * l as f64).log2() / l as f64
}

/// Inputs of a single estimate.
#[derive(Clone, Debug, PartialEq)]
pub struct EstimateParams {
    pub l: usize,
    pub q: u64,
    pub omega: f64,
    /// Grid denominator of the different-windows search.
    pub split: Option<usize>,
}

impl EstimateParams {
    pub fn new(l: usize) -> EstimateParams {
        EstimateParams {
            l,
            q: 2,
            omega: 2.0,
            split: None,
        }
    }
}

/// Runs one estimator.
pub fn estimate(method: Method, p: &EstimateParams) -> Result<ComplexityReport> {
    let (l, omega) = (p.l, p.omega);
    if method != Method::PlainFq && method != Method::BruteForce && p.q != 2 {
        return Err(Error::Parameter(format!(
            "{method} is a GF(2) estimate; q={} is only meaningful for plain-fq and brute",
            p.q
        )));
    }
    match method {
        Method::BruteForce => {
            check_l(l)?;
            let mu = if p.q == 2 {
                log2_over(l)
            } else {
                brute_force_tau(l, p.q) / (p.q as f64).log2()
            };
            Ok(ComplexityReport::new(
                method,
                l,
                p.q,
                omega,
                mu,
                brute_force_tau(l, p.q),
            ))
        }
        Method::Plain => tau_plain_gb_f2(l, omega),
        Method::PlainFq => tau_plain_gb_fq(l, if p.q == 2 { 3 } else { p.q }, omega),
        Method::HybridFull => tau_hybrid_full(l, omega),
        Method::HybridPartial => tau_hybrid_partial(l, omega),
        Method::HybridDifferent => {
            tau_hybrid_different(l, omega, p.split.unwrap_or_else(|| default_split(l)))
        }
        Method::SimpleEstimate => tau_simple_estimate(l, omega),
        Method::PolyNonrecursive => tau_poly_nonrecursive(l),
        Method::Bjorklund => tau_poly_bjorklund(l),
        Method::Dinur => tau_poly_dinur(l),
        Method::AltPlain => tau_alt_plain(l, omega),
        Method::AltFull => tau_alt_full(l, omega),
        Method::AltPartial => tau_alt_partial(l, omega),
        Method::DinurAlt => tau_alt_dinur_report(l),
    }
}

/// Methods drawn on the comparison curves of the quadratic modeling.
pub const QUADRATIC_CURVES: [Method; 7] = [
    Method::BruteForce,
    Method::Plain,
    Method::HybridFull,
    Method::HybridPartial,
    Method::PolyNonrecursive,
    Method::Bjorklund,
    Method::Dinur,
];

/// Methods drawn on the comparison curves of the alternative modeling.
pub const ALTERNATIVE_CURVES: [Method; 5] = [
    Method::BruteForce,
    Method::AltPlain,
    Method::AltFull,
    Method::AltPartial,
    Method::DinurAlt,
];

/// One cell of a comparison sweep.
#[derive(Clone, Debug)]
pub struct CompareRow {
    pub method: Method,
    pub l: usize,
    pub omega: f64,
    pub result: std::result::Result<ComplexityReport, String>,
}

impl CompareRow {
    pub fn tau(&self) -> Option<f64> {
        self.result.as_ref().ok().map(|r| r.tau)
    }
}

/// Evaluates every `(method, l)` pair, methods outermost. Failures become
/// rows with an error message instead of aborting the sweep.
pub fn compare_all(ls: &[usize], omega: f64, methods: &[Method]) -> Vec<CompareRow> {
    let cells: Vec<(Method, usize)> = methods
        .iter()
        .flat_map(|&m| ls.iter().map(move |&l| (m, l)))
        .collect();
    cells
        .into_par_iter()
        .map(|(method, l)| {
            let mut params = EstimateParams::new(l);
            params.omega = omega;
            CompareRow {
                method,
                l,
                omega,
                result: estimate(method, &params).map_err(|e| e.to_string()),
            }
        })
        .collect()
}

/// CSV rendering of a sweep: version line, header, one row per cell, and a
/// trailing comment per failed cell.
pub fn render_compare_csv(rows: &[CompareRow]) -> String {
    let mut out = format!("{}\n{COMPLEXITY_CSV_HEADER}\n", crate::CSV_VERSION_LINE);
    let mut notes = Vec::new();
    for row in rows {
        match &row.result {
            Ok(r) => out.push_str(&r.csv_row()),
            Err(e) => {
                out.push_str(&empty_csv_row(row.method, row.l, 2, row.omega));
                notes.push(format!("# {} l={}: {e}", row.method, row.l));
            }
        }
        out.push('\n');
    }
    for n in notes {
        out.push_str(&n);
        out.push('\n');
    }
    out
}
