//! XL with degree-fall closure, run modulo the monomial part of the ideal.
//!
//! Pure monomial generators (window products after elimination, unit
//! guesses) are not expanded into matrix rows. Columns are restricted to the
//! standard monomials of that monomial ideal and every product is reduced
//! on the fly, so a degree-`d` matrix only carries monomials that can be
//! nonzero on a solution. At each degree the remaining generators are
//! multiplied by all standard multipliers. With closure enabled, every row
//! whose leading monomial falls below `d` is also multiplied by each variable
//! and the results are reduced back in, until nothing new appears. The
//! degree at which the linear part pins down a unique candidate (or proves
//! that none exists) is the reported solving degree.

use std::collections::HashMap;
use std::time::Instant;

use super::report::{SolveReport, SolveStatus};
use super::Modeling;
use crate::algebra::{rref, words_for, BitMatrix, Echelon, Monomial};
use crate::error::{Error, Result};
use crate::instance::{PolySystem, RmqInstance};

#[derive(Clone, Debug)]
pub struct XlOptions {
    /// Highest degree to try before giving up.
    pub d_max: usize,
    /// Multiply degree-fall rows by variables until closure.
    pub mutants: bool,
    /// Refuse to build matrices with more columns than this.
    pub column_guard: usize,
    /// At saturation, enumerate affine solution spaces up to this dimension.
    pub max_free_dims: usize,
}

impl Default for XlOptions {
    fn default() -> Self {
        XlOptions {
            d_max: 12,
            mutants: true,
            column_guard: super::DEFAULT_COLUMN_GUARD,
            max_free_dims: 20,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum XlStatus {
    /// Verified assignments of the system variables.
    Solved(Vec<Vec<bool>>),
    Unsat,
    Inconclusive(String),
}

#[derive(Clone, Debug)]
pub struct XlRun {
    pub status: XlStatus,
    /// Degree at which the run stopped.
    pub degree: usize,
    /// Largest number of rows (products, including closure products) at one degree.
    pub max_rows: usize,
    pub max_cols: usize,
}

/// A monomial ideal, kept in a form that makes divisibility tests cheap.
#[derive(Clone, Debug)]
pub(crate) struct Quotient {
    nvars: usize,
    /// Variables that are themselves generators.
    forbidden: u128,
    /// For each variable, the partners it forms a quadratic generator with.
    conflict: Vec<u128>,
    /// Generators of degree three or more.
    higher: Vec<u128>,
}

impl Quotient {
    pub(crate) fn free(nvars: usize) -> Quotient {
        Quotient {
            nvars,
            forbidden: 0,
            conflict: vec![0; nvars],
            higher: Vec::new(),
        }
    }

    fn add_generator(&mut self, m: Monomial) {
        let b = m.bits();
        match m.degree() {
            0 => self.forbidden = u128::MAX,
            1 => self.forbidden |= b,
            2 => {
                let mut vs = m.vars();
                let (a, c) = (vs.next().unwrap(), vs.next().unwrap());
                self.conflict[a] |= 1 << c;
                self.conflict[c] |= 1 << a;
            }
            _ => self.higher.push(b),
        }
    }

    fn is_trivial(&self) -> bool {
        self.forbidden == u128::MAX
    }

    pub(crate) fn is_standard(&self, m: Monomial) -> bool {
        let b = m.bits();
        if b & self.forbidden != 0 {
            return false;
        }
        if m.vars().any(|v| self.conflict[v] & b != 0) {
            return false;
        }
        self.higher.iter().all(|&h| h & b != h)
    }

    /// Can variable `v` be added to the standard monomial `cur`?
    fn extends(&self, cur: u128, v: usize) -> bool {
        let b = cur | 1 << v;
        if self.forbidden >> v & 1 == 1 || self.conflict[v] & cur != 0 {
            return false;
        }
        self.higher.iter().all(|&h| h & b != h)
    }

    /// All standard monomials of degree at most `d`.
    pub(crate) fn standard_upto(&self, d: usize, guard: usize) -> Result<Vec<Monomial>> {
        let mut out = Vec::new();
        if self.is_trivial() {
            return Ok(out);
        }
        // Explicit stack of (monomial, next variable to try, degree).
        let mut stack = vec![(0u128, 0usize, 0usize)];
        out.push(Monomial::ONE);
        while let Some((cur, start, deg)) = stack.pop() {
            if deg == d {
                continue;
            }
            for v in (start..self.nvars).rev() {
                if self.extends(cur, v) {
                    let nm = cur | 1 << v;
                    out.push(Monomial::from_bits(nm));
                    if out.len() > guard {
                        return Err(Error::Size(format!(
                            "more than {guard} standard monomials up to degree {d}"
                        )));
                    }
                    stack.push((nm, v + 1, deg + 1));
                }
            }
        }
        Ok(out)
    }
}

/// Splits a system into its monomial ideal and the remaining generators,
/// reduced modulo that ideal.
fn split_system(sys: &PolySystem) -> (Quotient, Vec<Vec<Monomial>>) {
    let mut q = Quotient::free(sys.nvars());
    for f in sys.polys() {
        if f.len() == 1 {
            q.add_generator(f.terms().next().unwrap());
        }
    }
    let mut rest = Vec::new();
    for f in sys.polys() {
        if f.len() > 1 {
            let terms: Vec<Monomial> = f.terms().filter(|&t| q.is_standard(t)).collect();
            if !terms.is_empty() {
                rest.push(terms);
            }
        }
    }
    (q, rest)
}

/// The matrix state at one degree.
struct Level<'a> {
    q: &'a Quotient,
    cols: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// First column of degree below `d`.
    low_start: usize,
    /// First column of degree at most one.
    lin_start: usize,
    ech: Echelon,
    rows: usize,
}

impl<'a> Level<'a> {
    fn new(q: &'a Quotient, d: usize, guard: usize) -> Result<Level<'a>> {
        let mut cols = q.standard_upto(d, guard)?;
        cols.sort_by_key(|&m| (std::cmp::Reverse(m.degree()), m));
        let index = cols.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let low_start = cols
            .iter()
            .position(|m| m.degree() < d)
            .unwrap_or(cols.len());
        let lin_start = cols
            .iter()
            .position(|m| m.degree() <= 1)
            .unwrap_or(cols.len());
        let ech = Echelon::new(cols.len());
        Ok(Level {
            q,
            cols,
            index,
            low_start,
            lin_start,
            ech,
            rows: 0,
        })
    }

    fn top_count(&self) -> usize {
        self.low_start
    }

    fn product(&self, m: Monomial, f: &[Monomial]) -> Vec<u64> {
        let mut row = vec![0u64; words_for(self.cols.len())];
        for &t in f {
            let p = t * m;
            if self.q.is_standard(p) {
                let c = self.index[&p];
                row[c / 64] ^= 1 << (c % 64);
            }
        }
        row
    }

    fn insert(&mut self, row: Vec<u64>) -> Option<usize> {
        self.rows += 1;
        self.ech.insert(row)
    }

    /// Products of row `i` with every variable.
    fn shifts(&self, i: usize) -> Vec<Vec<u64>> {
        let nv = self.q.nvars;
        let stride = words_for(self.cols.len());
        let mut out = vec![vec![0u64; stride]; nv];
        let row = self.ech.row(i);
        let mut c = self.ech.pivot(i);
        loop {
            let mono = self.cols[c];
            for (v, r) in out.iter_mut().enumerate() {
                let p = mono * Monomial::var(v);
                if self.q.is_standard(p) {
                    let k = self.index[&p];
                    r[k / 64] ^= 1 << (k % 64);
                }
            }
            match crate::algebra::next_one(row, c + 1) {
                Some(n) => c = n,
                None => break,
            }
        }
        out.retain(|r| r.iter().any(|&x| x != 0));
        out
    }

    fn is_low(&self, i: usize) -> bool {
        self.ech.pivot(i) >= self.low_start
    }

    /// Runs closure over the queued rows.
    fn close(&mut self, mut queue: Vec<usize>) {
        while let Some(i) = queue.pop() {
            for r in self.shifts(i) {
                if let Some(j) = self.insert(r) {
                    if self.is_low(j) {
                        queue.push(j);
                    }
                }
            }
        }
    }

    /// Reads the linear rows: `None` if the constant row was derived,
    /// otherwise the reduced linear system as `(matrix, pivots, variable of
    /// each linear column)`.
    fn linear_part(&self) -> Option<(BitMatrix, Vec<usize>, Vec<Option<usize>>)> {
        let width = self.cols.len() - self.lin_start;
        let mut rows = Vec::new();
        for i in 0..self.ech.rank() {
            if self.ech.pivot(i) >= self.lin_start {
                let row = self.ech.row(i);
                let bits: Vec<bool> = (self.lin_start..self.cols.len())
                    .map(|c| row[c / 64] >> (c % 64) & 1 == 1)
                    .collect();
                rows.push(bits);
            }
        }
        let (_, red, pivots) = rref(&BitMatrix::from_bool_rows(&rows, width));
        if pivots.last() == Some(&(width - 1)) {
            return None;
        }
        let vars = self.cols[self.lin_start..]
            .iter()
            .map(|m| m.vars().next())
            .collect();
        Some((red, pivots, vars))
    }
}

/// Solves `sys` by XL, calling `verify` on every candidate assignment.
pub fn xl_solve_system(
    sys: &PolySystem,
    opts: &XlOptions,
    verify: &dyn Fn(&[bool]) -> bool,
) -> Result<XlRun> {
    let nv = sys.nvars();
    let (q, gens) = split_system(sys);
    let d0 = (sys.max_degree().max(2)) as usize;
    let max_gen = gens
        .iter()
        .map(|f| f.iter().map(|m| m.degree()).max().unwrap_or(0))
        .max()
        .unwrap_or(0);
    let mut run = XlRun {
        status: XlStatus::Inconclusive(String::new()),
        degree: d0,
        max_rows: 0,
        max_cols: 0,
    };
    if q.is_trivial() {
        run.status = XlStatus::Unsat;
        return Ok(run);
    }
    if opts.d_max < d0 {
        return Err(Error::Degree(format!(
            "d_max {} is below the generator degree {d0}",
            opts.d_max
        )));
    }
    // Top degree of the quotient ring, once known.
    let mut top: Option<usize> = None;

    for d in d0..=opts.d_max {
        run.degree = d;
        let mut lv = Level::new(&q, d, opts.column_guard)?;
        run.max_cols = run.max_cols.max(lv.cols.len());
        if lv.top_count() == 0 && top.is_none() {
            top = Some(d - 1);
        }
        let multipliers = q.standard_upto(d.saturating_sub(1), opts.column_guard)?;
        let mut queue = Vec::new();
        for f in &gens {
            let e = f.iter().map(|m| m.degree()).max().unwrap();
            for &m in multipliers.iter().filter(|m| m.degree() + e <= d) {
                let nominal = m.degree() + e;
                let row = lv.product(m, f);
                if let Some(i) = lv.insert(row) {
                    if opts.mutants && nominal == d && lv.is_low(i) {
                        queue.push(i);
                    }
                }
            }
        }
        if opts.mutants {
            lv.close(queue);
        }
        run.max_rows = run.max_rows.max(lv.rows);

        let Some((red, pivots, vars)) = lv.linear_part() else {
            run.status = XlStatus::Unsat;
            return Ok(run);
        };
        let const_col = red.cols() - 1;
        let pivot_set: Vec<usize> = pivots.clone();
        let free: Vec<usize> = (0..const_col).filter(|c| !pivot_set.contains(c)).collect();
        let saturated = if opts.mutants {
            lv.top_count() == 0
        } else {
            top.is_some_and(|t| d >= t + max_gen)
        };

        if free.is_empty() || saturated {
            if free.len() > opts.max_free_dims {
                run.status = XlStatus::Inconclusive(format!(
                    "saturated at degree {d} with {} free linear dimensions",
                    free.len()
                ));
                return Ok(run);
            }
            let mut sols = Vec::new();
            for mask in 0u64..1 << free.len() {
                let mut x = vec![false; nv];
                for (k, &c) in free.iter().enumerate() {
                    x[vars[c].unwrap()] = mask >> k & 1 == 1;
                }
                for (r, &p) in pivots.iter().enumerate() {
                    let mut val = red.get(r, const_col);
                    for &c in &free {
                        if red.get(r, c) {
                            val ^= x[vars[c].unwrap()];
                        }
                    }
                    x[vars[p].unwrap()] = val;
                }
                if verify(&x) {
                    sols.push(x);
                }
            }
            run.status = if sols.is_empty() {
                XlStatus::Unsat
            } else {
                XlStatus::Solved(sols)
            };
            return Ok(run);
        }
    }
    run.status = XlStatus::Inconclusive(format!("no decision up to degree {}", opts.d_max));
    Ok(run)
}

/// Runs XL on a quadratic modeling of `inst` and reports verified solutions.
pub fn xl_solve(inst: &RmqInstance, modeling: &Modeling, opts: &XlOptions) -> Result<SolveReport> {
    let start = Instant::now();
    let verify = |a: &[bool]| modeling.verify(inst, a).is_some();
    let run = xl_solve_system(&modeling.system, opts, &verify)?;
    let mut rep = SolveReport::new("xl", inst);
    rep.solving_degree = run.degree;
    rep.max_rows = run.max_rows;
    rep.max_cols = run.max_cols;
    rep.guesses_tried = 1;
    match run.status {
        XlStatus::Solved(sols) => {
            let mut vs: Vec<_> = sols
                .iter()
                .filter_map(|a| modeling.verify(inst, a))
                .collect();
            vs.sort();
            vs.dedup();
            rep.solutions = vs;
            rep.status = SolveStatus::Found;
        }
        XlStatus::Unsat => rep.status = SolveStatus::Unsatisfiable,
        XlStatus::Inconclusive(why) => {
            rep.status = SolveStatus::Inconclusive;
            rep.note = why;
        }
    }
    rep.elapsed = start.elapsed().as_secs_f64();
    Ok(rep)
}
