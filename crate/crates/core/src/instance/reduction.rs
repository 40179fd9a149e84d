//! Embedding a plain MQ system into an RMQ instance.
//!
//! Variable `x_i` of the MQ system becomes the first coordinate of window `i`.
//! A solution `v` maps to the regular vector whose window `i` is `(1, 0, ...)`
//! when `v_i = 1` and `(0, 1, 0, ...)` otherwise; projecting each window on its
//! first coordinate goes back.

use super::{PolySystem, QuadraticPoly, RegularVector, RmqInstance};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct RmqReduction {
    pub instance: RmqInstance,
    pub n: usize,
    pub l: usize,
}

impl RmqReduction {
    pub fn forward(&self, v: &[bool]) -> Result<RegularVector> {
        if v.len() != self.n {
            return Err(Error::Dimension(format!(
                "MQ point of length {} for n={}",
                v.len(),
                self.n
            )));
        }
        RegularVector::new(self.l, v.iter().map(|&b| if b { 1 } else { 2 }).collect())
    }

    pub fn backward(&self, r: &RegularVector) -> Vec<bool> {
        r.positions().iter().map(|&j| j == 1).collect()
    }
}

pub fn mq_to_rmq_reduction(mq: &PolySystem, l: usize) -> Result<RmqReduction> {
    if l < 2 {
        return Err(Error::Parameter("windows need length at least 2".into()));
    }
    if mq.max_degree() > 2 {
        return Err(Error::Degree(format!(
            "MQ input has degree {}",
            mq.max_degree()
        )));
    }
    let n = mq.nvars();
    if n == 0 {
        return Err(Error::Parameter("MQ system has no variables".into()));
    }
    let polys = mq
        .polys()
        .iter()
        .map(|f| {
            let mut p = QuadraticPoly::zero(l, n);
            for m in f.terms() {
                let v: Vec<usize> = m.vars().collect();
                match v[..] {
                    [] => p.set_constant(!p.constant()),
                    [a] => p.set_linear(a, 0, !p.linear(a, 0)),
                    [a, b] => p.set_cross(a, 0, b, 0, !p.cross(a, 0, b, 0)),
                    _ => unreachable!("degree checked above"),
                }
            }
            p
        })
        .collect();
    Ok(RmqReduction {
        instance: RmqInstance::new(l, n, polys, None, 0)?,
        n,
        l,
    })
}
