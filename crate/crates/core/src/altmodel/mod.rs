//! Binary encoding of the window positions.
//!
//! For `l = 2^s` every window is replaced by `s` new variables. Coordinate
//! `x_{i,j}` becomes `g_j(x'_i) = prod_a (x'_{i,a} + bit_a(j-1))`, the
//! indicator of the point whose bits are the complement of `j - 1`. Every
//! assignment of the new variables then stands for exactly one regular
//! vector, the regularity constraints disappear, and each quadratic equation
//! becomes an equation of degree at most `2s` in `s w` variables.
//!
//! Guessing `x'_{i,a}` corresponds to guessing zeros in the original
//! modeling: `x'_{i,a} = 0` says that the position `j` of window `i` has
//! `bit_a(j-1) = 1`, which rules out the `l/2` positions with that bit clear.

mod degree_system;
mod non_admissible;

pub use degree_system::{parse_degree_system, render_degree_system, DegreeSystem};
pub use non_admissible::{
    alt_hilbert_check, count_non_admissible, enumerate_non_admissible, AltHilbertCheck,
};

use std::time::Instant;

use crate::algebra::{mobius_transform, AnfPoly, Monomial};
use crate::error::{Error, Result};
use crate::instance::{Origin, PolySystem, RegularVector, RmqInstance};
use crate::modeling::{xl_solve_system, SolveReport, SolveStatus, XlOptions, XlStatus};

/// `s` with `l = 2^s`, or a parameter error.
pub fn log2_exact(l: usize) -> Result<usize> {
    if l < 2 || !l.is_power_of_two() {
        return Err(Error::Parameter(format!(
            "window length {l} is not a power of two >= 2"
        )));
    }
    Ok(l.trailing_zeros() as usize)
}

/// The polynomials `g_1..g_l` over `s` variables.
pub fn encode_map_g(l: usize) -> Result<Vec<AnfPoly>> {
    let s = log2_exact(l)?;
    Ok((0..l)
        .map(|j| {
            (0..s).fold(AnfPoly::one(s), |acc, a| {
                let mut f = AnfPoly::var(s, a);
                if j >> a & 1 == 1 {
                    f.toggle(Monomial::ONE);
                }
                acc.mul(&f)
            })
        })
        .collect())
}

/// Position (1-based) selected by the bits `v` of one window.
fn position_of(v: usize, l: usize) -> usize {
    ((l - 1) ^ v) + 1
}

/// Bits of the new variables for a regular vector.
pub fn encode_solution(v: &RegularVector) -> Result<Vec<bool>> {
    let l = v.l();
    let s = log2_exact(l)?;
    Ok(v.positions()
        .iter()
        .flat_map(|&j| (0..s).map(move |a| ((l - 1) ^ (j - 1)) >> a & 1 == 1))
        .collect())
}

/// Regular vector encoded by `vp` (length `s w`).
pub fn decode_solution(vp: &[bool], l: usize) -> Result<RegularVector> {
    let s = log2_exact(l)?;
    if vp.len() % s != 0 {
        return Err(Error::Dimension(format!(
            "{} bits is not a multiple of s = {s}",
            vp.len()
        )));
    }
    let pos = vp
        .chunks(s)
        .map(|c| {
            position_of(
                c.iter()
                    .enumerate()
                    .fold(0, |acc, (a, &b)| acc | (b as usize) << a),
                l,
            )
        })
        .collect();
    RegularVector::new(l, pos)
}

fn anf_from_table(table: &[bool], vars: &[usize], nvars: usize) -> Result<AnfPoly> {
    let coeffs = mobius_transform(table)?;
    Ok(AnfPoly::from_monomials(
        nvars,
        coeffs.iter().enumerate().filter(|(_, &c)| c).map(|(u, _)| {
            Monomial::from_vars(
                &vars
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| u >> b & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect::<Vec<_>>(),
            )
            .expect("variables are in range")
        }),
    ))
}

/// Rewrites every equation in the binary encoding.
pub fn transform_instance(inst: &RmqInstance) -> Result<DegreeSystem> {
    if inst.q != 2 {
        return Err(Error::Parameter(
            "the binary encoding is defined over GF(2) only".into(),
        ));
    }
    let (l, w) = (inst.l, inst.w);
    let s = log2_exact(l)?;
    let nvars = s * w;
    if nvars > crate::algebra::MAX_VARS {
        return Err(Error::Size(format!("{nvars} variables exceed the limit")));
    }
    let block_vars = |i: usize| (i * s..(i + 1) * s).collect::<Vec<_>>();
    let mut polys = Vec::with_capacity(inst.m());
    for p in &inst.polys {
        let mut f = if p.constant() {
            AnfPoly::one(nvars)
        } else {
            AnfPoly::zero(nvars)
        };
        for i in 0..w {
            let table: Vec<bool> = (0..l).map(|v| p.linear(i, position_of(v, l) - 1)).collect();
            f.add_assign(&anf_from_table(&table, &block_vars(i), nvars)?);
            for i2 in i + 1..w {
                let table: Vec<bool> = (0..l * l)
                    .map(|v| p.cross(i, position_of(v % l, l) - 1, i2, position_of(v / l, l) - 1))
                    .collect();
                let vars: Vec<usize> = block_vars(i).into_iter().chain(block_vars(i2)).collect();
                f.add_assign(&anf_from_table(&table, &vars, nvars)?);
            }
        }
        polys.push(f);
    }
    Ok(DegreeSystem::new(s, w, polys))
}

/// Solves the encoded system by XL, optionally after fixing the first
/// `s - s_prime` bits of every window to the values given by `guess`
/// (one bit vector per window).
fn solve_encoded(
    inst: &RmqInstance,
    ds: &DegreeSystem,
    fixed: Option<&[Vec<bool>]>,
    opts: &XlOptions,
) -> Result<(crate::modeling::XlRun, Vec<RegularVector>)> {
    let (s, w) = (ds.s(), ds.w());
    let mut sys = PolySystem::new(s * w);
    for f in ds.polys() {
        sys.push(f.clone(), Origin::Init)?;
    }
    if let Some(fixed) = fixed {
        for (i, bits) in fixed.iter().enumerate() {
            for (a, &b) in bits.iter().enumerate() {
                let mut f = AnfPoly::var(s * w, i * s + a);
                if b {
                    f.toggle(Monomial::ONE);
                }
                sys.push(f, Origin::Guess)?;
            }
        }
    }
    let verify = |vp: &[bool]| decode_solution(vp, inst.l).is_ok_and(|v| inst.is_solution(&v));
    let run = xl_solve_system(&sys, opts, &verify)?;
    let sols = match &run.status {
        XlStatus::Solved(vs) => vs
            .iter()
            .filter_map(|vp| decode_solution(vp, inst.l).ok())
            .collect(),
        _ => Vec::new(),
    };
    Ok((run, sols))
}

/// XL on the binary encoding of `inst`.
pub fn alt_xl_solve(inst: &RmqInstance, opts: &XlOptions) -> Result<SolveReport> {
    alt_hybrid_solve(inst, log2_exact(inst.l)?, opts)
}

/// Guesses the first `s - s_prime` bits of every window and solves the rest
/// of the encoded system by XL; `s_prime = s` is plain XL.
pub fn alt_hybrid_solve(
    inst: &RmqInstance,
    s_prime: usize,
    opts: &XlOptions,
) -> Result<SolveReport> {
    let start = Instant::now();
    let ds = transform_instance(inst)?;
    let (s, w) = (ds.s(), ds.w());
    if s_prime == 0 || s_prime > s {
        return Err(Error::Parameter(format!(
            "s' = {s_prime} must be in 1..={s}"
        )));
    }
    let g = (s - s_prime) * w;
    if g > 24 {
        return Err(Error::Size(format!("2^{g} guesses are too many")));
    }
    let mut rep = SolveReport::new(if s_prime == s { "alt-xl" } else { "alt-hybrid" }, inst);
    let mut all_unsat = true;
    for guess in 0u64..1 << g {
        rep.guesses_tried += 1;
        let fixed: Vec<Vec<bool>> = (0..w)
            .map(|i| {
                (0..s - s_prime)
                    .map(|a| guess >> (i * (s - s_prime) + a) & 1 == 1)
                    .collect()
            })
            .collect();
        let (run, sols) = solve_encoded(inst, &ds, (g > 0).then_some(&fixed[..]), opts)?;
        rep.solving_degree = rep.solving_degree.max(run.degree);
        rep.max_rows = rep.max_rows.max(run.max_rows);
        rep.max_cols = rep.max_cols.max(run.max_cols);
        match run.status {
            XlStatus::Unsat => {}
            XlStatus::Solved(_) => all_unsat = false,
            XlStatus::Inconclusive(why) => {
                all_unsat = false;
                rep.note = why;
            }
        }
        rep.solutions.extend(sols);
    }
    rep.solutions.sort();
    rep.solutions.dedup();
    rep.status = if !rep.solutions.is_empty() {
        SolveStatus::Found
    } else if all_unsat {
        SolveStatus::Unsatisfiable
    } else {
        SolveStatus::Inconclusive
    };
    rep.elapsed = start.elapsed().as_secs_f64();
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{all_regular, brute_force_solve, plant_instance};

    #[test]
    fn g_for_small_windows() {
        let g = encode_map_g(2).unwrap();
        assert_eq!(g[0], AnfPoly::var(1, 0));
        assert_eq!(
            g[1],
            AnfPoly::from_monomials(1, [Monomial::ONE, Monomial::var(0)])
        );
        let g4 = encode_map_g(4).unwrap();
        assert_eq!(
            g4[0],
            AnfPoly::from_monomial(2, Monomial::from_vars(&[0, 1]).unwrap())
        );
        assert!(matches!(encode_map_g(6), Err(Error::Parameter(_))));
    }

    #[test]
    fn g_is_a_partition_of_unity() {
        for s in 1..=5 {
            let g = encode_map_g(1 << s).unwrap();
            let sum = g.iter().fold(AnfPoly::zero(s), |acc, f| acc.add(f));
            assert_eq!(sum, AnfPoly::one(s));
            for v in 0..1usize << s {
                let pt: Vec<bool> = (0..s).map(|a| v >> a & 1 == 1).collect();
                assert_eq!(g.iter().filter(|f| f.eval(&pt).unwrap()).count(), 1);
            }
        }
    }

    #[test]
    fn encode_decode_round_trip() {
        for vp in 0u32..16 {
            let bits: Vec<bool> = (0..4).map(|k| vp >> k & 1 == 1).collect();
            let v = decode_solution(&bits, 4).unwrap();
            assert_eq!(encode_solution(&v).unwrap(), bits);
        }
        // The all-ones pattern is the complement of bits (0, 0): positions 1.
        assert_eq!(decode_solution(&[true; 4], 4).unwrap().positions(), &[1, 1]);
        assert_eq!(
            decode_solution(&[false, true], 2).unwrap().positions(),
            &[2, 1]
        );
    }

    #[test]
    fn encoded_point_selects_the_window_position() {
        let g = encode_map_g(8).unwrap();
        for v in all_regular(8, 1) {
            let bits = encode_solution(&v).unwrap();
            let j = v.positions()[0];
            for (k, f) in g.iter().enumerate() {
                assert_eq!(f.eval(&bits).unwrap(), k + 1 == j);
            }
        }
    }

    #[test]
    fn transform_preserves_values_exhaustively() {
        for (l, w) in [(2, 3), (4, 2), (4, 3), (8, 2)] {
            let inst = plant_instance(l, w, 4, 5).unwrap();
            let ds = transform_instance(&inst).unwrap();
            assert_eq!(ds.nvars(), log2_exact(l).unwrap() * w);
            for v in all_regular(l, w) {
                let bits = encode_solution(&v).unwrap();
                for (p, f) in inst.polys.iter().zip(ds.polys()) {
                    assert_eq!(f.eval(&bits).unwrap(), p.eval_positions(v.positions()));
                }
            }
            assert!(ds
                .polys()
                .iter()
                .all(|f| f.degree() <= 2 * log2_exact(l).unwrap() as i32));
            assert!(ds.max_blocks_touched() <= 2);
        }
    }

    #[test]
    fn window_length_two_gives_quadratics() {
        let inst = plant_instance(2, 6, 8, 1).unwrap();
        let ds = transform_instance(&inst).unwrap();
        assert_eq!(ds.nvars(), 6);
        assert!(ds.polys().iter().all(|f| f.degree() <= 2));
    }

    #[test]
    fn xl_on_encoding_matches_brute_force() {
        for seed in 0..8 {
            let (l, w) = [(2, 5), (4, 3), (8, 2), (4, 4)][seed as usize % 4];
            let inst = plant_instance(l, w, 2 * w, seed).unwrap();
            let want = brute_force_solve(&inst).unwrap();
            let rep = alt_xl_solve(&inst, &XlOptions::default()).unwrap();
            assert_eq!(rep.solutions, want, "l={l} w={w} seed={seed}");
            if l > 2 {
                let hyb = alt_hybrid_solve(&inst, 1, &XlOptions::default()).unwrap();
                assert_eq!(hyb.solutions, want);
            }
        }
    }
}
