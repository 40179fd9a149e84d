//! GF(2) kernels: squarefree monomials, ANF polynomials, the binary Möbius
//! transform and dense bit-packed elimination.

mod anf;
mod bitmatrix;
mod monomial;

pub use anf::{mobius_transform, AnfPoly};
pub(crate) use bitmatrix::{next_one, words_for};
pub use bitmatrix::{rref, BitMatrix, Echelon};
pub use monomial::{Monomial, MAX_VARS};

use crate::error::Result;

/// Evaluates `p` at `point`; see [`AnfPoly::eval`].
pub fn eval_anf(p: &AnfPoly, point: &[bool]) -> Result<bool> {
    p.eval(point)
}
