//! The encoded system and its text form.
//!
//! ```text
//! ALT <s> <w> <m>
//! 2: 0,3 ; 1: 5 ; 0:
//! zero
//! ```
//! One polynomial per line, monomials separated by `;`, each written as its
//! degree, a colon and its variable indices. `zero` is the zero polynomial.

use crate::algebra::{AnfPoly, Monomial};
use crate::error::{Error, Result};
use crate::instance::{Origin, PolySystem};

/// Equations of degree at most `2s` in `s w` variables, window `i` owning
/// variables `i s .. (i + 1) s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSystem {
    s: usize,
    w: usize,
    polys: Vec<AnfPoly>,
}

impl DegreeSystem {
    pub fn new(s: usize, w: usize, polys: Vec<AnfPoly>) -> DegreeSystem {
        DegreeSystem { s, w, polys }
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn w(&self) -> usize {
        self.w
    }

    pub fn nvars(&self) -> usize {
        self.s * self.w
    }

    pub fn polys(&self) -> &[AnfPoly] {
        &self.polys
    }

    /// Equations per variable.
    pub fn mu(&self) -> f64 {
        self.polys.len() as f64 / self.nvars() as f64
    }

    /// Largest number of windows any monomial involves.
    pub fn max_blocks_touched(&self) -> usize {
        let s = self.s;
        self.polys
            .iter()
            .flat_map(|f| f.terms())
            .map(|m| {
                let mut blocks: Vec<usize> = m.vars().map(|v| v / s).collect();
                blocks.dedup();
                blocks.len()
            })
            .max()
            .unwrap_or(0)
    }

    pub fn to_poly_system(&self) -> Result<PolySystem> {
        PolySystem::from_polys(self.nvars(), self.polys.clone(), Origin::Init)
    }
}

pub fn render_degree_system(ds: &DegreeSystem) -> String {
    let mut out = format!("ALT {} {} {}\n", ds.s, ds.w, ds.polys.len());
    for f in &ds.polys {
        if f.is_zero() {
            out.push_str("zero\n");
            continue;
        }
        let terms: Vec<String> = f
            .terms()
            .rev()
            .map(|m| {
                let vars: Vec<String> = m.vars().map(|v| v.to_string()).collect();
                format!("{}: {}", m.degree(), vars.join(","))
            })
            .collect();
        out.push_str(terms.join(" ; ").trim_end());
        out.push('\n');
    }
    out
}

pub fn parse_degree_system(text: &str) -> Result<DegreeSystem> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty input".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [tag, s, w, m] = fields[..] else {
        return Err(Error::Parse(format!("bad header {header:?}")));
    };
    let num = |x: &str| {
        x.parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad number {x:?} in header")))
    };
    if tag != "ALT" {
        return Err(Error::Parse(format!("expected ALT header, got {tag:?}")));
    }
    let (s, w, m) = (num(s)?, num(w)?, num(m)?);
    let n = s * w;
    let mut polys = Vec::with_capacity(m);
    for (k, line) in lines.enumerate() {
        let mut f = AnfPoly::zero(n);
        if line != "zero" {
            for term in line.split(';') {
                let (deg, vars) = term.split_once(':').ok_or_else(|| {
                    Error::Parse(format!("line {}: term {term:?} lacks ':'", k + 2))
                })?;
                let vars: Vec<usize> = vars
                    .split(',')
                    .map(str::trim)
                    .filter(|v| !v.is_empty())
                    .map(|v| {
                        v.parse()
                            .map_err(|_| Error::Parse(format!("line {}: bad index {v:?}", k + 2)))
                    })
                    .collect::<Result<_>>()?;
                if deg.trim().parse::<usize>().ok() != Some(vars.len())
                    || vars.iter().any(|&v| v >= n)
                {
                    return Err(Error::Parse(format!(
                        "line {}: inconsistent term {term:?}",
                        k + 2
                    )));
                }
                f.toggle(Monomial::from_vars(&vars)?);
            }
        }
        polys.push(f);
    }
    if polys.len() != m {
        return Err(Error::Parse(format!(
            "header announces {m} polynomials, found {}",
            polys.len()
        )));
    }
    Ok(DegreeSystem { s, w, polys })
}
