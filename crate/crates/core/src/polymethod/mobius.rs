//! Möbius interpolation restricted to at-most-regular supports.
//!
//! A subset of the support of an at-most-regular vector is again
//! at-most-regular, so the coefficient of every at-most-regular monomial of
//! degree `<= d` is determined by evaluations at at-most-regular points of
//! weight `<= d`. Those coefficients in turn give the value at every regular
//! point of a function of degree `<= d`.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};

/// Points and supports are per-window 1-based positions, 0 for an empty window.
pub type AmrPoint = Vec<usize>;

/// The at-most-regular part of the algebraic normal form of a function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularAnf {
    l: usize,
    w: usize,
    d: usize,
    /// Supports with coefficient 1.
    ones: HashSet<AmrPoint>,
}

/// Calls `f` on every sub-support of `point` with at most `max` windows set.
fn for_each_subset(point: &[usize], max: usize, mut f: impl FnMut(&[usize])) {
    let set: Vec<usize> = (0..point.len()).filter(|&i| point[i] != 0).collect();
    let mut sub = vec![0usize; point.len()];
    for mask in 0u64..1 << set.len() {
        if mask.count_ones() as usize > max {
            continue;
        }
        for (b, &i) in set.iter().enumerate() {
            sub[i] = if mask >> b & 1 == 1 { point[i] } else { 0 };
        }
        f(&sub);
    }
}

fn render(p: &[usize]) -> String {
    let parts: Vec<String> = p.iter().map(|j| j.to_string()).collect();
    format!("({})", parts.join(","))
}

impl RegularAnf {
    pub fn coefficient(&self, support: &[usize]) -> bool {
        self.ones.contains(support)
    }

    /// Supports with a nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = &AmrPoint> {
        self.ones.iter()
    }

    /// Largest weight among the nonzero coefficients (0 for the zero function).
    pub fn degree(&self) -> usize {
        self.ones
            .iter()
            .map(|s| s.iter().filter(|&&j| j != 0).count())
            .max()
            .unwrap_or(0)
    }

    /// Value at an at-most-regular point.
    pub fn eval(&self, point: &[usize]) -> bool {
        debug_assert_eq!(point.len(), self.w);
        let mut acc = false;
        for_each_subset(point, self.d, |s| acc ^= self.ones.contains(s));
        acc
    }

    pub fn l(&self) -> usize {
        self.l
    }
}

/// Recovers the coefficients of every at-most-regular monomial of degree
/// `<= d` from the values at all at-most-regular points of weight `<= d`.
pub fn regular_mobius_interpolate(
    evals: &HashMap<AmrPoint, bool>,
    l: usize,
    w: usize,
    d: usize,
) -> Result<RegularAnf> {
    let mut ones = HashSet::new();
    for s in crate::instance::at_most_regular_upto(l, w, d) {
        let mut a = false;
        let mut missing = None;
        for_each_subset(&s, d, |t| match evals.get(t) {
            Some(&v) => a ^= v,
            None => missing = missing.take().or_else(|| Some(t.to_vec())),
        });
        if let Some(t) = missing {
            return Err(Error::IncompleteData(format!(
                "no evaluation at {}",
                render(&t)
            )));
        }
        if a {
            ones.insert(s);
        }
    }
    if evals
        .keys()
        .any(|k| k.len() != w || k.iter().any(|&j| j > l))
    {
        return Err(Error::Dimension(format!(
            "evaluation keys must be {w} positions in 0..={l}"
        )));
    }
    Ok(RegularAnf { l, w, d, ones })
}
