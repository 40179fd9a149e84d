//! Regular and at-most-regular vectors.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::rng::rng_from_seed;

/// A vector of `w` windows of length `l` with exactly one set bit per window,
/// stored compactly as the 1-based position of that bit in each window.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RegularVector {
    l: usize,
    positions: Vec<usize>,
}

impl RegularVector {
    pub fn new(l: usize, positions: Vec<usize>) -> Result<RegularVector> {
        if l < 1 {
            return Err(Error::Parameter("block length must be positive".into()));
        }
        if let Some(&bad) = positions.iter().find(|&&j| j == 0 || j > l) {
            return Err(Error::Parameter(format!("position {bad} outside 1..={l}")));
        }
        Ok(RegularVector { l, positions })
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn w(&self) -> usize {
        self.positions.len()
    }

    /// 1-based position of the set bit in each window.
    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    /// Expanded bit vector of length `l*w`; coordinate `(i, j)` sits at `i*l + j - 1`.
    pub fn to_bits(&self) -> Vec<bool> {
        let mut v = vec![false; self.l * self.w()];
        for (i, &j) in self.positions.iter().enumerate() {
            v[i * self.l + j - 1] = true;
        }
        v
    }

    /// Inverse of [`RegularVector::to_bits`]; `None` when `v` is not regular.
    pub fn from_bits(v: &[bool], l: usize) -> Option<RegularVector> {
        if l == 0 || v.len() % l != 0 {
            return None;
        }
        let mut positions = Vec::with_capacity(v.len() / l);
        for window in v.chunks(l) {
            let mut ones = window.iter().enumerate().filter(|(_, &b)| b);
            match (ones.next(), ones.next()) {
                (Some((j, _)), None) => positions.push(j + 1),
                _ => return None,
            }
        }
        Some(RegularVector { l, positions })
    }
}

impl fmt::Debug for RegularVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Regular(l={}; {:?})", self.l, self.positions)
    }
}

impl fmt::Display for RegularVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.positions.iter().map(|j| j.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

pub(crate) fn check_geometry(l: usize, w: usize) -> Result<()> {
    if l < 2 {
        return Err(Error::Parameter(format!(
            "block length l={l} must be at least 2"
        )));
    }
    if w < 1 {
        return Err(Error::Parameter("block count w must be at least 1".into()));
    }
    Ok(())
}

/// Uniformly random regular vector, deterministic in `seed`.
pub fn random_regular_vector(l: usize, w: usize, seed: u64) -> Result<RegularVector> {
    check_geometry(l, w)?;
    let mut rng = rng_from_seed(seed);
    Ok(RegularVector {
        l,
        positions: (0..w).map(|_| rng.gen_range(1..=l)).collect(),
    })
}

fn check_windows(v: &[bool], l: usize) -> Result<()> {
    if l == 0 || v.len() % l != 0 {
        return Err(Error::Dimension(format!(
            "length {} is not a multiple of l={l}",
            v.len()
        )));
    }
    Ok(())
}

/// Exactly one set bit in every window of length `l`.
pub fn is_regular(v: &[bool], l: usize) -> Result<bool> {
    check_windows(v, l)?;
    Ok(v.chunks(l).all(|c| c.iter().filter(|&&b| b).count() == 1))
}

/// At most one set bit in every window of length `l`.
pub fn is_at_most_regular(v: &[bool], l: usize) -> Result<bool> {
    check_windows(v, l)?;
    Ok(v.chunks(l).all(|c| c.iter().filter(|&&b| b).count() <= 1))
}

/// Odometer over all `l^w` regular vectors in lexicographic position order.
pub fn all_regular(l: usize, w: usize) -> impl Iterator<Item = RegularVector> {
    let mut next = Some(vec![1usize; w]);
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut succ = cur.clone();
        let mut i = w;
        let mut done = true;
        while i > 0 {
            i -= 1;
            if succ[i] < l {
                succ[i] += 1;
                done = false;
                break;
            }
            succ[i] = 1;
        }
        if !done {
            next = Some(succ);
        }
        Some(RegularVector { l, positions: cur })
    })
}

/// At-most-regular vectors with at most `max_weight` nonzero windows, given as
/// per-window positions where 0 means "empty window".
///
/// Ordered by weight, then lexicographically.
pub fn at_most_regular_upto(l: usize, w: usize, max_weight: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for weight in 0..=max_weight.min(w) {
        let mut cur = vec![0usize; w];
        fill_weight(l, &mut cur, 0, weight, &mut out);
    }
    out
}

fn fill_weight(
    l: usize,
    cur: &mut Vec<usize>,
    from: usize,
    left: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if left == 0 {
        out.push(cur.clone());
        return;
    }
    let w = cur.len();
    for i in from..=w - left {
        for j in 1..=l {
            cur[i] = j;
            fill_weight(l, cur, i + 1, left - 1, out);
        }
        cur[i] = 0;
    }
}
