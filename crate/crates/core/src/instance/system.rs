//! Labelled lists of ANF polynomials.

use crate::algebra::AnfPoly;
use crate::error::{Error, Result};

/// Where a generator of a [`PolySystem`] comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Origin {
    /// One of the equations of the instance.
    Init,
    /// `x^2 + x`; kept implicit by squarefree arithmetic, listed for completeness.
    FieldEq,
    /// Product of two coordinates of the same window.
    QuadConstraint,
    /// Sum of a window plus one.
    LinearConstraint,
    /// A coordinate guessed to be zero.
    Guess,
}

/// A polynomial system with the origin of each generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySystem {
    nvars: usize,
    polys: Vec<AnfPoly>,
    labels: Vec<Origin>,
}

impl PolySystem {
    pub fn new(nvars: usize) -> PolySystem {
        PolySystem {
            nvars,
            polys: Vec::new(),
            labels: Vec::new(),
        }
    }

    /// All generators share one origin label.
    pub fn from_polys(nvars: usize, polys: Vec<AnfPoly>, origin: Origin) -> Result<PolySystem> {
        let mut s = PolySystem::new(nvars);
        for p in polys {
            s.push(p, origin)?;
        }
        Ok(s)
    }

    pub fn push(&mut self, p: AnfPoly, origin: Origin) -> Result<()> {
        if p.nvars() != self.nvars {
            return Err(Error::Dimension(format!(
                "generator over {} variables in a system over {}",
                p.nvars(),
                self.nvars
            )));
        }
        self.polys.push(p);
        self.labels.push(origin);
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn polys(&self) -> &[AnfPoly] {
        &self.polys
    }

    pub fn labels(&self) -> &[Origin] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&AnfPoly, Origin)> {
        self.polys.iter().zip(self.labels.iter().copied())
    }

    pub fn count(&self, origin: Origin) -> usize {
        self.labels.iter().filter(|&&o| o == origin).count()
    }

    pub fn max_degree(&self) -> i32 {
        self.polys.iter().map(|p| p.degree()).max().unwrap_or(-1)
    }

    /// True when every generator vanishes at `point`.
    pub fn vanishes_at(&self, point: &[bool]) -> Result<bool> {
        for p in &self.polys {
            if p.eval(point)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
