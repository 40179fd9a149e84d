//! The quadratic modeling of RMQ and the algebraic solvers built on it.
//!
//! The modeling adds to the instance equations the window constraints: every
//! product of two coordinates of one window vanishes, and every window sums
//! to one. Field equations are implicit because all arithmetic is
//! squarefree. By default the linear window constraints are used to eliminate
//! one coordinate per window, leaving `(l-1) w` variables.

mod hilbert;
mod hybrid;
mod macaulay;
mod report;
mod xl;

pub use hilbert::{
    hilbert_function_probe, hilbert_function_probe_homogenized,
    hilbert_function_probe_homogenized_as, series_coefficients, structured_homogeneous_system,
    truncate_positive, HilbertProbe, IntPoly,
};
pub use hybrid::{hybrid_solve, GuessPlan, HybridOptions, Strategy};
pub(crate) use macaulay::binomial as binomial_u128;
pub use macaulay::{macaulay_cost, macaulay_matrix, MacaulayMatrix, DEFAULT_COLUMN_GUARD};
pub use report::{SolveReport, SolveStatus, SOLVE_CSV_HEADER};
pub use xl::{xl_solve, xl_solve_system, XlOptions, XlRun, XlStatus};

use crate::algebra::{AnfPoly, Monomial, MAX_VARS};
use crate::error::{Error, Result};
use crate::instance::{Origin, PolySystem, RegularVector, RmqInstance};

/// Coordinates guessed to be zero, per window (1-based positions).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GuessPattern {
    l: usize,
    zeros: Vec<Vec<usize>>,
}

impl GuessPattern {
    pub fn new(l: usize, mut zeros: Vec<Vec<usize>>) -> Result<GuessPattern> {
        for (i, z) in zeros.iter_mut().enumerate() {
            z.sort_unstable();
            z.dedup();
            if z.iter().any(|&j| j == 0 || j > l) {
                return Err(Error::Parameter(format!(
                    "window {i}: guessed position outside 1..={l}"
                )));
            }
            if z.len() == l {
                return Err(Error::InfeasibleGuess(format!(
                    "window {i} has every coordinate guessed zero"
                )));
            }
        }
        Ok(GuessPattern { l, zeros })
    }

    /// No coordinate guessed.
    pub fn empty(l: usize, w: usize) -> GuessPattern {
        GuessPattern {
            l,
            zeros: vec![Vec::new(); w],
        }
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn w(&self) -> usize {
        self.zeros.len()
    }

    pub fn zeros(&self, block: usize) -> &[usize] {
        &self.zeros[block]
    }

    /// Free (not guessed) positions of a window.
    pub fn free(&self, block: usize) -> Vec<usize> {
        (1..=self.l)
            .filter(|j| !self.zeros[block].contains(j))
            .collect()
    }

    /// Fraction of windows left with `l'` free coordinates, for `l' = 1..=l`
    /// (index 0 of the result is `l' = 1`).
    pub fn gammas(&self) -> Vec<f64> {
        let mut g = vec![0.0; self.l];
        for i in 0..self.w() {
            g[self.l - self.zeros[i].len() - 1] += 1.0 / self.w() as f64;
        }
        g
    }

    pub fn admits(&self, v: &RegularVector) -> bool {
        v.positions()
            .iter()
            .enumerate()
            .all(|(i, j)| !self.zeros[i].contains(j))
    }
}

/// How one original coordinate is expressed in the variables of a modeling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoordMap {
    /// Fixed value (guessed zero, or the only free coordinate of a window).
    Const(bool),
    /// Kept as variable `k`.
    Var(usize),
    /// Eliminated: `1 + sum of the listed variables`.
    OnePlusSum(Vec<usize>),
}

/// Back-mapping from modeling variables to the original `l*w` coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    l: usize,
    nvars: usize,
    coords: Vec<CoordMap>,
}

impl Substitution {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn coord(&self, k: usize) -> &CoordMap {
        &self.coords[k]
    }

    /// Expands an assignment of the modeling variables into original coordinates.
    pub fn apply(&self, assignment: &[bool]) -> Vec<bool> {
        self.coords
            .iter()
            .map(|c| match c {
                CoordMap::Const(b) => *b,
                CoordMap::Var(k) => assignment[*k],
                CoordMap::OnePlusSum(vs) => vs.iter().fold(true, |acc, &k| acc ^ assignment[k]),
            })
            .collect()
    }

    /// Decodes an assignment into a regular vector, if it is one.
    pub fn decode(&self, assignment: &[bool]) -> Option<RegularVector> {
        RegularVector::from_bits(&self.apply(assignment), self.l)
    }

    /// Restricts an original point to the modeling variables.
    pub fn restrict(&self, original: &[bool]) -> Vec<bool> {
        let mut out = vec![false; self.nvars];
        for (k, c) in self.coords.iter().enumerate() {
            if let CoordMap::Var(v) = c {
                out[*v] = original[k];
            }
        }
        out
    }

    fn image(&self, k: usize) -> AnfPoly {
        match &self.coords[k] {
            CoordMap::Const(false) => AnfPoly::zero(self.nvars),
            CoordMap::Const(true) => AnfPoly::one(self.nvars),
            CoordMap::Var(v) => AnfPoly::var(self.nvars, *v),
            CoordMap::OnePlusSum(vs) => AnfPoly::from_monomials(
                self.nvars,
                std::iter::once(Monomial::ONE).chain(vs.iter().map(|&v| Monomial::var(v))),
            ),
        }
    }
}

/// A modeling: the generator system plus how to read solutions back.
#[derive(Clone, Debug)]
pub struct Modeling {
    pub system: PolySystem,
    pub recipe: Substitution,
}

impl Modeling {
    /// Decodes and checks a candidate against the instance.
    pub fn verify(&self, inst: &RmqInstance, assignment: &[bool]) -> Option<RegularVector> {
        self.recipe
            .decode(assignment)
            .filter(|v| inst.is_solution(v))
    }
}

/// Builds the quadratic modeling of `inst`, optionally under a guess.
///
/// Without elimination, the system lives in all `n` coordinates and lists the
/// `m` equations, the `w C(l,2)` window products, the `w` window sums and one
/// unit monomial per guessed coordinate. With elimination the guessed
/// coordinates are substituted by zero and the last free coordinate of each
/// window by one plus the sum of the others; generators that become zero are
/// dropped.
pub fn build_modeling(
    inst: &RmqInstance,
    guess: Option<&GuessPattern>,
    eliminate_linear: bool,
) -> Result<Modeling> {
    if inst.q != 2 {
        return Err(Error::Parameter(
            "the quadratic modeling is implemented over GF(2) only".into(),
        ));
    }
    let (l, w, n) = (inst.l, inst.w, inst.n());
    if n > MAX_VARS {
        return Err(Error::Size(format!(
            "{n} variables exceed the {MAX_VARS}-variable limit"
        )));
    }
    let guess = match guess {
        Some(g) if g.l() != l || g.w() != w => {
            return Err(Error::Dimension(
                "guess pattern geometry differs from the instance".into(),
            ))
        }
        Some(g) => g.clone(),
        None => GuessPattern::empty(l, w),
    };

    let recipe = if eliminate_linear {
        let mut coords = vec![CoordMap::Const(false); n];
        let mut next = 0;
        for i in 0..w {
            let free = guess.free(i);
            let (&last, kept) = free
                .split_last()
                .expect("GuessPattern keeps a free coordinate");
            let mut vars = Vec::new();
            for &j in kept {
                coords[i * l + j - 1] = CoordMap::Var(next);
                vars.push(next);
                next += 1;
            }
            coords[i * l + last - 1] = if vars.is_empty() {
                CoordMap::Const(true)
            } else {
                CoordMap::OnePlusSum(vars)
            };
        }
        Substitution {
            l,
            nvars: next,
            coords,
        }
    } else {
        Substitution {
            l,
            nvars: n,
            coords: (0..n).map(CoordMap::Var).collect(),
        }
    };

    let nv = recipe.nvars;
    let images: Vec<AnfPoly> = (0..n).map(|k| recipe.image(k)).collect();
    let mut system = PolySystem::new(nv);
    let mut push = |p: AnfPoly, o: Origin| -> Result<()> {
        if eliminate_linear && p.is_zero() {
            return Ok(());
        }
        system.push(p, o)
    };

    for poly in &inst.polys {
        let mut f = AnfPoly::zero(nv);
        if poly.constant() {
            f.toggle(Monomial::ONE);
        }
        for i1 in 0..w {
            for j1 in 0..l {
                if poly.linear(i1, j1) {
                    f.add_assign(&images[i1 * l + j1]);
                }
                for i2 in i1 + 1..w {
                    for j2 in 0..l {
                        if poly.cross(i1, j1, i2, j2) {
                            f.add_assign(&images[i1 * l + j1].mul(&images[i2 * l + j2]));
                        }
                    }
                }
            }
        }
        push(f, Origin::Init)?;
    }
    for i in 0..w {
        for j1 in 0..l {
            for j2 in j1 + 1..l {
                push(
                    images[i * l + j1].mul(&images[i * l + j2]),
                    Origin::QuadConstraint,
                )?;
            }
        }
    }
    for i in 0..w {
        let mut s = AnfPoly::one(nv);
        for j in 0..l {
            s.add_assign(&images[i * l + j]);
        }
        push(s, Origin::LinearConstraint)?;
    }
    if !eliminate_linear {
        for i in 0..w {
            for &j in guess.zeros(i) {
                push(AnfPoly::var(nv, i * l + j - 1), Origin::Guess)?;
            }
        }
    }
    Ok(Modeling { system, recipe })
}
