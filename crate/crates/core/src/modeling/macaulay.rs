//! Macaulay matrices and their cost model.

use std::collections::HashSet;

use num_bigint::BigUint;

use super::xl::Quotient;
use crate::algebra::{words_for, BitMatrix, Monomial};
use crate::error::{Error, Result};
use crate::instance::PolySystem;

/// Default cap on the number of columns of any Macaulay matrix.
pub const DEFAULT_COLUMN_GUARD: usize = 2_000_000;

/// Rows are `multiplier * generator` products; columns are squarefree
/// monomials of degree at most `d`, highest degree first and lexicographic
/// within a degree.
#[derive(Clone, Debug)]
pub struct MacaulayMatrix {
    pub matrix: BitMatrix,
    pub columns: Vec<Monomial>,
    /// `(generator index, multiplier)` of each row.
    pub row_origins: Vec<(usize, Monomial)>,
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of squarefree monomials of degree at most `d` in `n` variables.
pub(crate) fn monomials_upto(n: usize, d: usize) -> u128 {
    (0..=d.min(n)).map(|i| binomial(n, i)).sum()
}

/// Builds the degree-`d` Macaulay matrix of `sys`, dropping zero and repeated rows.
pub fn macaulay_matrix(sys: &PolySystem, d: usize, column_guard: usize) -> Result<MacaulayMatrix> {
    let maxdeg = sys.max_degree();
    if maxdeg > d as i32 {
        return Err(Error::Degree(format!(
            "degree bound {d} is below the generator degree {maxdeg}"
        )));
    }
    let n = sys.nvars();
    let ncols = monomials_upto(n, d);
    if ncols > column_guard as u128 {
        return Err(Error::Size(format!(
            "{ncols} columns exceed the guard of {column_guard}"
        )));
    }
    let free = Quotient::free(n);
    let mut columns = free.standard_upto(d, column_guard)?;
    columns.sort_by_key(|&m| (std::cmp::Reverse(m.degree()), m));
    let index: std::collections::HashMap<Monomial, usize> =
        columns.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let stride = words_for(columns.len());

    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut rows = Vec::new();
    let mut row_origins = Vec::new();
    for (gi, f) in sys.polys().iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        let e = f.degree() as usize;
        for m in free.standard_upto(d - e, column_guard)? {
            let mut row = vec![0u64; stride];
            for t in f.terms() {
                let c = index[&(t * m)];
                row[c / 64] ^= 1 << (c % 64);
            }
            if row.iter().any(|&x| x != 0) && seen.insert(row.clone()) {
                rows.push(row);
                row_origins.push((gi, m));
            }
        }
    }
    Ok(MacaulayMatrix {
        matrix: BitMatrix::from_packed_rows(rows, columns.len()),
        columns,
        row_origins,
    })
}

/// Cost of sparse linear algebra on the degree-`d` Macaulay matrix:
/// `3 * r_avg * (number of columns)^2`.
pub fn macaulay_cost(nvars: usize, d: usize, r_avg: u64) -> BigUint {
    let cols = BigUint::from(monomials_upto(nvars, d));
    BigUint::from(3u32) * BigUint::from(r_avg) * &cols * &cols
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rref, AnfPoly};
    use crate::instance::Origin;

    #[test]
    fn column_counts() {
        let sys = PolySystem::from_polys(
            4,
            vec![AnfPoly::var(4, 0).mul(&AnfPoly::var(4, 1))],
            Origin::Init,
        )
        .unwrap();
        assert_eq!(
            macaulay_matrix(&sys, 2, DEFAULT_COLUMN_GUARD)
                .unwrap()
                .columns
                .len(),
            11
        );
    }

    #[test]
    fn single_generator_rows() {
        let sys = PolySystem::from_polys(3, vec![AnfPoly::var(3, 0)], Origin::Init).unwrap();
        let mac = macaulay_matrix(&sys, 2, DEFAULT_COLUMN_GUARD).unwrap();
        let mut products: Vec<String> = mac
            .row_origins
            .iter()
            .map(|&(g, m)| sys.polys()[g].mul_monomial(m).to_string())
            .collect();
        products.sort();
        assert_eq!(products, vec!["x0", "x0*x1", "x0*x2"]);
    }

    #[test]
    fn row_count_before_dedup_formula() {
        // m * sum_{i <= d-2} C(n, i) products; distinct generic quadratics keep them all.
        let n = 5;
        let polys: Vec<AnfPoly> = (0..3)
            .map(|k| {
                let mut p = AnfPoly::var(n, k).mul(&AnfPoly::var(n, (k + 1) % n));
                p.toggle(Monomial::var((k + 2) % n));
                p.toggle(Monomial::ONE);
                p
            })
            .collect();
        let sys = PolySystem::from_polys(n, polys, Origin::Init).unwrap();
        let mac = macaulay_matrix(&sys, 3, DEFAULT_COLUMN_GUARD).unwrap();
        assert!(mac.matrix.rows() <= 3 * (1 + 5));
        assert_eq!(mac.columns.len() as u128, monomials_upto(5, 3));
        assert!(rref(&mac.matrix).0 <= mac.matrix.rows());
    }

    #[test]
    fn guard_and_degree_errors() {
        let sys = PolySystem::from_polys(30, vec![AnfPoly::var(30, 0)], Origin::Init).unwrap();
        assert!(matches!(
            macaulay_matrix(&sys, 6, 1000),
            Err(Error::Size(_))
        ));
        let q = PolySystem::from_polys(
            3,
            vec![AnfPoly::var(3, 0).mul(&AnfPoly::var(3, 1))],
            Origin::Init,
        )
        .unwrap();
        assert!(matches!(
            macaulay_matrix(&q, 1, 1000),
            Err(Error::Degree(_))
        ));
    }

    #[test]
    fn cost_examples() {
        assert_eq!(macaulay_cost(4, 2, 1), BigUint::from(363u32));
        assert_eq!(macaulay_cost(4, 2, 2), BigUint::from(726u32));
        assert_eq!(macaulay_cost(10, 3, 20), BigUint::from(1_858_560u32));
    }
}
