//! Outcome of a solver run.

use std::fmt::Write as _;

use crate::instance::{RegularVector, RmqInstance};

/// Final verdict of a solver.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    /// At least one verified solution.
    Found,
    /// No solution exists (proven, or the guess space was exhausted).
    Unsatisfiable,
    /// Gave up before deciding, e.g. the degree bound was reached.
    Inconclusive,
}

impl SolveStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveStatus::Found => "found",
            SolveStatus::Unsatisfiable => "unsat",
            SolveStatus::Inconclusive => "inconclusive",
        }
    }
}

/// `solutions` lists each solution as space-separated 1-based window
/// positions, solutions separated by `;`.
pub const SOLVE_CSV_HEADER: &str =
    "method,l,w,m,seed,status,d_solv,max_rows,max_cols,guesses,elapsed_s,solutions";

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub method: String,
    pub l: usize,
    pub w: usize,
    pub m: usize,
    pub seed: u64,
    pub status: SolveStatus,
    /// Verified solutions in lexicographic order.
    pub solutions: Vec<RegularVector>,
    /// Largest Macaulay degree processed (0 for methods without one).
    pub solving_degree: usize,
    pub max_rows: usize,
    pub max_cols: usize,
    pub guesses_tried: usize,
    pub elapsed: f64,
    /// Free-form diagnostics (why a run was inconclusive, and so on).
    pub note: String,
}

impl SolveReport {
    pub fn new(method: &str, inst: &RmqInstance) -> SolveReport {
        SolveReport {
            method: method.to_string(),
            l: inst.l,
            w: inst.w,
            m: inst.m(),
            seed: inst.seed,
            status: SolveStatus::Inconclusive,
            solutions: Vec::new(),
            solving_degree: 0,
            max_rows: 0,
            max_cols: 0,
            guesses_tried: 0,
            elapsed: 0.0,
            note: String::new(),
        }
    }

    pub fn found(&self) -> bool {
        self.status == SolveStatus::Found
    }

    /// One CSV row matching [`SOLVE_CSV_HEADER`].
    pub fn csv_row(&self) -> String {
        let sols: Vec<String> = self.solutions.iter().map(|v| v.to_string()).collect();
        let mut s = String::new();
        let _ = write!(
            s,
            "{},{},{},{},{},{},{},{},{},{},{:.3},{}",
            self.method,
            self.l,
            self.w,
            self.m,
            self.seed,
            self.status.as_str(),
            self.solving_degree,
            self.max_rows,
            self.max_cols,
            self.guesses_tried,
            self.elapsed,
            sols.join(";")
        );
        s
    }
}
