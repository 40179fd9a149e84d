//! Probabilistic polynomial method for regular solutions, without recursion.
//!
//! The windows are split into a prefix `y` and a suffix `z` of `n_z` windows.
//! For a random full-rank combination `R_1..R_k` of the equations, the
//! function `F~ = prod (1 + R_i)` is one on every solution and, for a
//! non-solution, zero except with probability `2^-k`. Summing `F~(y, z)` over
//! the regular `z` cancels every monomial that misses a `z` window (each
//! appears `l'` times, an even number), so `G(y)` has degree at most
//! `2k - n_z`. `G` is evaluated at the low-weight at-most-regular `y`,
//! interpolated, and read off at every regular `y`. A per-`y` majority over
//! `t` independent draws fixes the rare wrong partial parities, and the sum
//! of the partial parities is the parity of the number of regular solutions.
//! With a unique solution that parity answers the decision problem, and
//! fixing one window at a time turns decisions into a search.

mod mobius;

pub use mobius::{regular_mobius_interpolate, AmrPoint, RegularAnf};

use std::collections::HashMap;
use std::time::Instant;

use rand::Rng as _;
use rayon::prelude::*;

use crate::algebra::BitMatrix;
use crate::error::{Error, Result};
use crate::instance::{
    all_regular, at_most_regular_upto, QuadraticPoly, RegularVector, RmqInstance,
};
use crate::modeling::{GuessPlan, SolveReport, SolveStatus};
use crate::rng::{derive_seed, rng_from_seed};

const SUBSYSTEM_STREAM: u64 = 0x5342;
const DECISION_STREAM: u64 = 0x4443;

/// User-facing parameters; unset fields are derived from the instance.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMethodParams {
    /// Fraction of windows summed over; `0.45 / log2 l'` when unset.
    pub gamma: Option<f64>,
    /// Free positions kept per window before counting (even); defaults to
    /// `l` for even `l` and `l - 1` for odd `l`.
    pub l_prime: Option<usize>,
    /// Number of random combinations; `floor(n_z log2 l') + 2 + k_margin`
    /// when unset.
    pub k: Option<usize>,
    /// Extra combinations on top of the derived `k`. Each one halves the
    /// false-positive rate of a draw.
    pub k_margin: usize,
    /// Repetitions for the majority vote; `max(15, 2w + 1)` when unset.
    pub t: Option<usize>,
    pub seed: u64,
}

impl PolyMethodParams {
    pub fn new(seed: u64) -> PolyMethodParams {
        PolyMethodParams {
            gamma: None,
            l_prime: None,
            k: None,
            k_margin: 0,
            t: None,
            seed,
        }
    }
}

/// Parameters of one parity computation after derivation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParityPlan {
    /// Windows summed over.
    pub n_z: usize,
    pub k: usize,
    /// Degree bound used for interpolation (capped at the prefix length).
    pub d_g: usize,
    pub t: usize,
    /// `k >= m`: the full system is used and every draw is exact.
    pub exact: bool,
}

impl ParityPlan {
    pub fn derive(inst: &RmqInstance, params: &PolyMethodParams) -> Result<ParityPlan> {
        let (l, w) = (inst.l, inst.w);
        if l % 2 != 0 {
            return Err(Error::Parameter(format!(
                "parity counting needs an even window length, got {l}"
            )));
        }
        if w < 2 {
            return Err(Error::Parameter(
                "parity counting needs at least two windows".into(),
            ));
        }
        let log_l = (l as f64).log2();
        let bound = 1.0 / (2.0 * log_l);
        let gamma = params.gamma.unwrap_or(0.45 / log_l);
        if !(gamma > 0.0 && gamma < bound) {
            return Err(Error::Parameter(format!(
                "gamma {gamma} outside (0, {bound:.4}) for l' = {l}"
            )));
        }
        let n_z = ((gamma * w as f64).round() as usize).clamp(1, w - 1);
        let k = params
            .k
            .unwrap_or((n_z as f64 * log_l + 1e-9).floor() as usize + 2 + params.k_margin);
        if k == 0 {
            return Err(Error::Parameter("k must be positive".into()));
        }
        let t = params.t.unwrap_or((2 * w + 1).max(15));
        if t == 0 {
            return Err(Error::Parameter("t must be positive".into()));
        }
        let exact = k >= inst.m();
        let k = k.min(inst.m());
        let d_g = (2 * k).saturating_sub(n_z).min(w - n_z);
        Ok(ParityPlan {
            n_z,
            k,
            d_g,
            t,
            exact,
        })
    }

    /// Number of prefix evaluations one draw needs.
    pub fn prefix_evaluations(&self, l: usize, w: usize) -> usize {
        at_most_regular_upto(l, w - self.n_z, self.d_g).len()
    }
}

/// `k` random combinations of the equations with a full-rank coefficient matrix.
pub fn random_subsystem(inst: &RmqInstance, k: usize, seed: u64) -> Result<Vec<QuadraticPoly>> {
    let m = inst.m();
    if k == 0 || k >= m {
        return Err(Error::Parameter(format!(
            "subsystem size {k} must be in 1..{m}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    loop {
        let rows: Vec<Vec<bool>> = (0..k)
            .map(|_| (0..m).map(|_| rng.gen()).collect())
            .collect();
        if BitMatrix::from_bool_rows(&rows, m).rank() < k {
            continue;
        }
        return Ok(rows
            .iter()
            .map(|row| {
                let mut acc = QuadraticPoly::zero(inst.l, inst.w);
                for (p, _) in inst.polys.iter().zip(row).filter(|(_, &a)| a) {
                    acc.add_assign(p);
                }
                acc
            })
            .collect());
    }
}

/// Partial parities of one draw, for every regular prefix in
/// [`all_regular`] order over the first `w - n_z` windows.
pub fn partial_parities_once(
    inst: &RmqInstance,
    plan: &ParityPlan,
    seed: u64,
) -> Result<Vec<bool>> {
    let (l, w) = (inst.l, inst.w);
    let wy = w - plan.n_z;
    let polys = if plan.exact {
        inst.polys.clone()
    } else {
        random_subsystem(inst, plan.k, seed)?
    };
    let zs: Vec<RegularVector> = all_regular(l, plan.n_z).collect();
    let mut evals = HashMap::new();
    let mut point = vec![0usize; w];
    for y in at_most_regular_upto(l, wy, plan.d_g) {
        point[..wy].copy_from_slice(&y);
        let mut parity = false;
        for z in &zs {
            point[wy..].copy_from_slice(z.positions());
            parity ^= polys.iter().all(|p| !p.eval_at_most_regular(&point));
        }
        evals.insert(y, parity);
    }
    let g = regular_mobius_interpolate(&evals, l, wy, plan.d_g)?;
    Ok(all_regular(l, wy).map(|y| g.eval(y.positions())).collect())
}

/// Exact partial parities by exhaustive search, in the same order.
pub fn exact_partial_parities(inst: &RmqInstance, n_z: usize) -> Vec<bool> {
    let wy = inst.w - n_z;
    let zs: Vec<RegularVector> = all_regular(inst.l, n_z).collect();
    all_regular(inst.l, wy)
        .map(|y| {
            let mut pos = y.positions().to_vec();
            pos.resize(inst.w, 0);
            zs.iter().fold(false, |acc, z| {
                pos[wy..].copy_from_slice(z.positions());
                acc ^ inst.polys.iter().all(|p| !p.eval_positions(&pos))
            })
        })
        .collect()
}

/// Result of a parity computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityRun {
    pub parity: bool,
    pub plan: ParityPlan,
}

/// Parity of the number of regular solutions, by per-prefix majority vote
/// over `t` draws.
pub fn regular_parity_count(inst: &RmqInstance, params: &PolyMethodParams) -> Result<ParityRun> {
    let plan = ParityPlan::derive(inst, params)?;
    let draws = if plan.exact { 1 } else { plan.t };
    let tables: Vec<Vec<bool>> = (0..draws)
        .into_par_iter()
        .map(|r| {
            partial_parities_once(
                inst,
                &plan,
                derive_seed(params.seed, SUBSYSTEM_STREAM, r as u64),
            )
        })
        .collect::<Result<_>>()?;
    let mut parity = false;
    for y in 0..tables[0].len() {
        let votes = tables.iter().filter(|t| t[y]).count();
        parity ^= 2 * votes > draws;
    }
    Ok(ParityRun { parity, plan })
}

/// Outcome of the search-to-decision loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub solution: Option<RegularVector>,
    pub decision_calls: usize,
}

/// Finds the unique regular solution (if any) by fixing one window at a time.
///
/// Each candidate position of the next window is tested by parity counting
/// on the reduced instance; once a single window is left its candidates are
/// checked directly. At most `w * l` calls are made.
pub fn search_via_decision(inst: &RmqInstance, params: &PolyMethodParams) -> Result<SearchOutcome> {
    let l = inst.l;
    let mut cur = inst.clone();
    let mut fixed = Vec::new();
    let mut calls = 0;
    while cur.w > 1 {
        let mut chosen = None;
        for j in 1..=l {
            let sub = cur.fix_block(0, j)?;
            calls += 1;
            let positive = if sub.w >= 2 {
                let p = PolyMethodParams {
                    seed: derive_seed(params.seed, DECISION_STREAM, calls as u64),
                    ..params.clone()
                };
                regular_parity_count(&sub, &p)?.parity
            } else {
                all_regular(l, 1).filter(|v| sub.is_solution(v)).count() % 2 == 1
            };
            if positive {
                chosen = Some((j, sub));
                break;
            }
        }
        match chosen {
            Some((j, sub)) => {
                fixed.push(j);
                cur = sub;
            }
            None if fixed.is_empty() => {
                return Ok(SearchOutcome {
                    solution: None,
                    decision_calls: calls,
                })
            }
            None => {
                return Err(Error::InconsistentDecision(format!(
                    "no position of window {} is positive after fixing {fixed:?}",
                    fixed.len()
                )))
            }
        }
    }
    let last = (1..=l).find(|&j| {
        calls += 1;
        cur.is_solution(&RegularVector::new(l, vec![j]).expect("valid position"))
    });
    let Some(j) = last else {
        if fixed.is_empty() {
            return Ok(SearchOutcome {
                solution: None,
                decision_calls: calls,
            });
        }
        return Err(Error::InconsistentDecision(format!(
            "the last window has no solution after fixing {fixed:?}"
        )));
    };
    fixed.push(j);
    let v = RegularVector::new(l, fixed)?;
    if !inst.is_solution(&v) {
        return Err(Error::InconsistentDecision(format!(
            "decoded {:?} does not satisfy the instance",
            v.positions()
        )));
    }
    Ok(SearchOutcome {
        solution: Some(v),
        decision_calls: calls,
    })
}

/// Solves an instance assumed to have at most one regular solution.
///
/// Windows are first restricted to `l'` kept positions (odd `l` needs at
/// least one guessed zero); every choice of kept positions is tried in order
/// until a solution is found.
pub fn polymethod_solve(inst: &RmqInstance, params: &PolyMethodParams) -> Result<SolveReport> {
    let start = Instant::now();
    let l = inst.l;
    let lp = params.l_prime.unwrap_or(if l % 2 == 0 { l } else { l - 1 });
    if lp < 2 || lp > l || lp % 2 != 0 {
        return Err(Error::Parameter(format!(
            "l' = {lp} must be even and in 2..={l}"
        )));
    }
    let mut rep = SolveReport::new("polymethod", inst);
    let plan = GuessPlan::new(l, vec![lp; inst.w])?;
    let mut calls = 0;
    let mut inconsistent = None;
    for g in 0..plan.guess_count() {
        rep.guesses_tried += 1;
        let pattern = plan.pattern(g)?;
        let kept: Vec<Vec<usize>> = (0..inst.w).map(|i| pattern.free(i)).collect();
        let sub = if lp == l {
            inst.clone()
        } else {
            inst.restrict(&kept)?
        };
        match search_via_decision(&sub, params) {
            Ok(out) => {
                calls += out.decision_calls;
                if let Some(v) = out.solution {
                    let v = if lp == l {
                        v
                    } else {
                        RmqInstance::lift_restricted(&kept, l, &v)
                    };
                    rep.solutions.push(v);
                    break;
                }
            }
            Err(Error::InconsistentDecision(msg)) => inconsistent = inconsistent.or(Some(msg)),
            Err(e) => return Err(e),
        }
    }
    rep.status = match (&rep.solutions.is_empty(), &inconsistent) {
        (false, _) => SolveStatus::Found,
        (true, None) => SolveStatus::Unsatisfiable,
        (true, Some(_)) => SolveStatus::Inconclusive,
    };
    rep.note = match inconsistent {
        Some(msg) if !rep.found() => format!("{calls} decision calls; {msg}"),
        _ => format!("{calls} decision calls"),
    };
    rep.elapsed = start.elapsed().as_secs_f64();
    Ok(rep)
}
