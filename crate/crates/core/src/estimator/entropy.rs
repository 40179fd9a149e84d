//! Binary entropy.

use crate::error::{Error, Result};

fn check(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!(
            "entropy argument {p} outside [0, 1]"
        )));
    }
    Ok(())
}

/// `H(p) = -p log2 p - (1-p) log2 (1-p)`, with `H(0) = H(1) = 0`.
pub fn entropy(p: f64) -> Result<f64> {
    check(p)?;
    Ok(h(p))
}

/// `H` on `[0, 1/2]` and 1 above: the exponent of a partial binomial sum.
pub fn entropy_star(p: f64) -> Result<f64> {
    check(p)?;
    Ok(if p >= 0.5 { 1.0 } else { h(p) })
}

/// Unchecked entropy for the optimizers; arguments are known to lie in the
/// unit interval up to rounding, which is clamped away.
pub(crate) fn h(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        return 0.0;
    }
    -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
}
