//! Hybrid solving: guess zeros in some coordinates, then run XL on what is left.

use std::time::Instant;

use rayon::prelude::*;

use super::report::{SolveReport, SolveStatus};
use super::xl::{xl_solve_system, XlOptions, XlStatus};
use super::{build_modeling, GuessPattern};
use crate::error::{Error, Result};
use crate::instance::{RegularVector, RmqInstance};

/// How many coordinates to keep free in each window.
#[derive(Clone, Debug, PartialEq)]
pub enum Strategy {
    /// Fix the nonzero position of `round(gamma * w)` windows by exhaustive
    /// guessing; the other windows stay untouched.
    Full { gamma: f64 },
    /// Keep `l_prime` free coordinates in every window.
    Partial { l_prime: usize },
    /// `windows[k]` windows keep `k + 1` free coordinates.
    Different { windows: Vec<usize> },
}

/// Number of free coordinates per window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GuessPlan {
    l: usize,
    free: Vec<usize>,
}

impl GuessPlan {
    pub fn new(l: usize, free: Vec<usize>) -> Result<GuessPlan> {
        if let Some(&f) = free.iter().find(|&&f| f == 0 || f > l) {
            return Err(Error::Parameter(format!(
                "{f} free coordinates is outside 1..={l}"
            )));
        }
        Ok(GuessPlan { l, free })
    }

    pub fn from_strategy(strategy: &Strategy, l: usize, w: usize) -> Result<GuessPlan> {
        match strategy {
            Strategy::Full { gamma } => {
                if !(0.0..=1.0).contains(gamma) {
                    return Err(Error::Parameter(format!("gamma {gamma} is outside [0, 1]")));
                }
                let guessed = (gamma * w as f64).round() as usize;
                GuessPlan::new(l, (0..w).map(|i| if i < guessed { 1 } else { l }).collect())
            }
            Strategy::Partial { l_prime } => GuessPlan::new(l, vec![*l_prime; w]),
            Strategy::Different { windows } => {
                if windows.len() > l || windows.iter().sum::<usize>() != w {
                    return Err(Error::Parameter(format!(
                        "window counts {windows:?} must have at most {l} entries summing to {w}"
                    )));
                }
                let free = windows
                    .iter()
                    .enumerate()
                    .flat_map(|(k, &c)| std::iter::repeat(k + 1).take(c))
                    .collect();
                GuessPlan::new(l, free)
            }
        }
    }

    pub fn free_counts(&self) -> &[usize] {
        &self.free
    }

    /// The candidate sets of free positions for a window keeping `lp`
    /// coordinates: consecutive runs, plus the last `lp` positions when `lp`
    /// does not divide `l`.
    pub fn chunks(l: usize, lp: usize) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = (0..l / lp)
            .map(|c| (c * lp + 1..=c * lp + lp).collect())
            .collect();
        if l % lp != 0 {
            out.push((l - lp + 1..=l).collect());
        }
        out
    }

    /// Total number of guesses.
    pub fn guess_count(&self) -> u128 {
        self.free
            .iter()
            .map(|&lp| Self::chunks(self.l, lp).len() as u128)
            .product()
    }

    /// The guess with odometer index `idx` (last window varies fastest).
    pub fn pattern(&self, mut idx: u128) -> Result<GuessPattern> {
        let mut zeros = vec![Vec::new(); self.free.len()];
        for (i, &lp) in self.free.iter().enumerate().rev() {
            let ch = Self::chunks(self.l, lp);
            let k = (idx % ch.len() as u128) as usize;
            idx /= ch.len() as u128;
            zeros[i] = (1..=self.l).filter(|j| !ch[k].contains(j)).collect();
        }
        GuessPattern::new(self.l, zeros)
    }
}

#[derive(Clone, Debug)]
pub struct HybridOptions {
    pub xl: XlOptions,
    pub eliminate_linear: bool,
    /// Keep going after the first solution and collect all of them.
    pub exhaustive: bool,
    /// Refuse plans with more guesses than this.
    pub max_guesses: u128,
}

impl Default for HybridOptions {
    fn default() -> Self {
        HybridOptions {
            xl: XlOptions::default(),
            eliminate_linear: true,
            exhaustive: false,
            max_guesses: 1 << 24,
        }
    }
}

struct GuessOutcome {
    solutions: Vec<RegularVector>,
    unsat: bool,
    degree: usize,
    rows: usize,
    cols: usize,
    note: String,
}

fn run_guess(
    inst: &RmqInstance,
    plan: &GuessPlan,
    idx: u128,
    opts: &HybridOptions,
) -> Result<GuessOutcome> {
    let pattern = plan.pattern(idx)?;
    let md = build_modeling(inst, Some(&pattern), opts.eliminate_linear)?;
    let verify = |a: &[bool]| md.verify(inst, a).is_some();
    let run = xl_solve_system(&md.system, &opts.xl, &verify)?;
    let mut out = GuessOutcome {
        solutions: Vec::new(),
        unsat: false,
        degree: run.degree,
        rows: run.max_rows,
        cols: run.max_cols,
        note: String::new(),
    };
    match run.status {
        XlStatus::Solved(sols) => {
            out.solutions = sols.iter().filter_map(|a| md.verify(inst, a)).collect()
        }
        XlStatus::Unsat => out.unsat = true,
        XlStatus::Inconclusive(why) => out.note = why,
    }
    Ok(out)
}

/// Guesses zeros according to `strategy` and solves each specialization by XL.
///
/// Guesses run in parallel batches; the first verified solution in guess
/// order wins unless `exhaustive` is set.
pub fn hybrid_solve(
    inst: &RmqInstance,
    strategy: &Strategy,
    opts: &HybridOptions,
) -> Result<SolveReport> {
    let start = Instant::now();
    let plan = GuessPlan::from_strategy(strategy, inst.l, inst.w)?;
    let total = plan.guess_count();
    if total > opts.max_guesses {
        return Err(Error::Size(format!(
            "{total} guesses exceed the limit of {}",
            opts.max_guesses
        )));
    }
    let mut rep = SolveReport::new("hybrid", inst);
    let batch = (rayon::current_num_threads() * 2) as u128;
    let mut all_unsat = true;
    let mut next = 0u128;
    while next < total {
        let end = (next + batch).min(total);
        let outcomes: Vec<Result<GuessOutcome>> = (next..end)
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|i| run_guess(inst, &plan, i, opts))
            .collect();
        for o in outcomes {
            let o = o?;
            rep.guesses_tried += 1;
            rep.solving_degree = rep.solving_degree.max(o.degree);
            rep.max_rows = rep.max_rows.max(o.rows);
            rep.max_cols = rep.max_cols.max(o.cols);
            all_unsat &= o.unsat;
            if !o.note.is_empty() && rep.note.is_empty() {
                rep.note = o.note;
            }
            rep.solutions.extend(o.solutions);
            if !opts.exhaustive && !rep.solutions.is_empty() {
                break;
            }
        }
        if !opts.exhaustive && !rep.solutions.is_empty() {
            break;
        }
        next = end;
    }
    rep.solutions.sort();
    rep.solutions.dedup();
    rep.status = if !rep.solutions.is_empty() {
        SolveStatus::Found
    } else if all_unsat {
        SolveStatus::Unsatisfiable
    } else {
        SolveStatus::Inconclusive
    };
    rep.elapsed = start.elapsed().as_secs_f64();
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{brute_force_solve, plant_instance};

    #[test]
    fn chunking() {
        assert_eq!(GuessPlan::chunks(4, 2), vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(
            GuessPlan::chunks(5, 2),
            vec![vec![1, 2], vec![3, 4], vec![4, 5]]
        );
        assert_eq!(GuessPlan::chunks(3, 3), vec![vec![1, 2, 3]]);
        assert_eq!(GuessPlan::chunks(3, 1).len(), 3);
    }

    #[test]
    fn plans_from_strategies() {
        let p = GuessPlan::from_strategy(&Strategy::Full { gamma: 0.5 }, 4, 4).unwrap();
        assert_eq!(p.free_counts(), &[1, 1, 4, 4]);
        assert_eq!(p.guess_count(), 16);
        let p = GuessPlan::from_strategy(
            &Strategy::Different {
                windows: vec![1, 0, 2],
            },
            3,
            3,
        )
        .unwrap();
        assert_eq!(p.free_counts(), &[1, 3, 3]);
        assert!(GuessPlan::from_strategy(
            &Strategy::Different {
                windows: vec![1, 1]
            },
            3,
            3
        )
        .is_err());
        assert!(GuessPlan::from_strategy(&Strategy::Partial { l_prime: 0 }, 3, 3).is_err());
        assert!(GuessPlan::from_strategy(&Strategy::Full { gamma: 1.5 }, 3, 3).is_err());
    }

    #[test]
    fn every_regular_vector_is_covered_by_some_guess() {
        let plan = GuessPlan::from_strategy(&Strategy::Partial { l_prime: 2 }, 3, 2).unwrap();
        let pats: Vec<_> = (0..plan.guess_count())
            .map(|i| plan.pattern(i).unwrap())
            .collect();
        for v in crate::instance::all_regular(3, 2) {
            assert!(pats.iter().any(|p| p.admits(&v)));
        }
    }

    #[test]
    fn full_guessing_matches_brute_force() {
        let inst = plant_instance(3, 3, 4, 9).unwrap();
        let opts = HybridOptions {
            exhaustive: true,
            ..HybridOptions::default()
        };
        let rep = hybrid_solve(&inst, &Strategy::Full { gamma: 1.0 }, &opts).unwrap();
        assert_eq!(rep.guesses_tried, 27);
        assert_eq!(rep.solutions, brute_force_solve(&inst).unwrap());
    }

    #[test]
    fn partial_finds_planted() {
        for seed in 0..5 {
            let inst = plant_instance(4, 3, 8, seed).unwrap();
            let rep = hybrid_solve(
                &inst,
                &Strategy::Partial { l_prime: 2 },
                &HybridOptions::default(),
            )
            .unwrap();
            assert!(rep.found());
            assert!(rep.solutions.iter().all(|v| inst.is_solution(v)));
        }
    }
}
