//! RMQ instances: generation, evaluation, text format, exhaustive search and
//! the reduction from plain MQ.

mod format;
mod quadratic;
mod reduction;
mod regular;
mod system;

pub use format::{parse_instance, render_instance};
pub use quadratic::QuadraticPoly;
pub use reduction::{mq_to_rmq_reduction, RmqReduction};
pub use regular::{
    all_regular, at_most_regular_upto, is_at_most_regular, is_regular, random_regular_vector,
    RegularVector,
};
pub use system::{Origin, PolySystem};

use crate::error::{Error, Result};
use crate::rng::{derive_seed, rng_from_seed};
use regular::check_geometry;

/// Seed stream label for the polynomial coefficients of a planted instance.
const COEFF_STREAM: u64 = 0x636f_6566;

/// A quadratic system over `F_q` whose solutions of interest are regular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RmqInstance {
    pub q: u64,
    pub l: usize,
    pub w: usize,
    pub polys: Vec<QuadraticPoly>,
    pub planted: Option<RegularVector>,
    pub seed: u64,
}

impl RmqInstance {
    /// Assembles an instance, checking geometry and (if given) the planted solution.
    pub fn new(
        l: usize,
        w: usize,
        polys: Vec<QuadraticPoly>,
        planted: Option<RegularVector>,
        seed: u64,
    ) -> Result<RmqInstance> {
        check_geometry(l, w)?;
        if let Some(p) = polys.iter().find(|p| (p.l(), p.w()) != (l, w)) {
            return Err(Error::Dimension(format!(
                "polynomial over (l={}, w={}) in an (l={l}, w={w}) instance",
                p.l(),
                p.w()
            )));
        }
        let inst = RmqInstance {
            q: 2,
            l,
            w,
            polys,
            planted,
            seed,
        };
        if let Some(v) = &inst.planted {
            if v.l() != l || v.w() != w {
                return Err(Error::Dimension(
                    "planted vector has the wrong geometry".into(),
                ));
            }
            if !inst.is_solution(v) {
                return Err(Error::Parameter(
                    "planted vector does not solve the system".into(),
                ));
            }
        }
        Ok(inst)
    }

    pub fn n(&self) -> usize {
        self.l * self.w
    }

    pub fn m(&self) -> usize {
        self.polys.len()
    }

    /// Equation density `m / n` (derived, never stored).
    pub fn mu(&self) -> f64 {
        self.m() as f64 / self.n() as f64
    }

    pub fn is_solution(&self, v: &RegularVector) -> bool {
        v.l() == self.l
            && v.w() == self.w
            && self.polys.iter().all(|p| !p.eval_positions(v.positions()))
    }

    /// Substitutes window `block` by position `j` (1-based).
    pub fn fix_block(&self, block: usize, j: usize) -> Result<RmqInstance> {
        if block >= self.w || j == 0 || j > self.l {
            return Err(Error::Parameter(format!(
                "cannot fix window {block} at position {j}"
            )));
        }
        if self.w < 2 {
            return Err(Error::Parameter("cannot fix the only window".into()));
        }
        let planted = self.planted.as_ref().and_then(|v| {
            (v.positions()[block] == j).then(|| {
                let rest = v
                    .positions()
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != block)
                    .map(|(_, &p)| p);
                RegularVector::new(self.l, rest.collect()).expect("positions stay in range")
            })
        });
        Ok(RmqInstance {
            q: self.q,
            l: self.l,
            w: self.w - 1,
            polys: self
                .polys
                .iter()
                .map(|p| p.fix_block(block, j - 1))
                .collect(),
            planted,
            seed: self.seed,
        })
    }

    /// Keeps only the listed 1-based positions in each window (the others are
    /// guessed to be zero). All windows must keep the same count `l'`.
    pub fn restrict(&self, kept: &[Vec<usize>]) -> Result<RmqInstance> {
        let zero_based: Vec<Vec<usize>> = kept
            .iter()
            .map(|k| {
                k.iter()
                    .map(|&j| j.checked_sub(1).filter(|&x| x < self.l))
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Parameter("kept position outside 1..=l".into()))?;
        let lp = kept.first().map_or(0, |k| k.len());
        if lp < 2 {
            return Err(Error::Parameter(
                "restricted windows need at least 2 positions".into(),
            ));
        }
        let polys = self
            .polys
            .iter()
            .map(|p| p.restrict(&zero_based))
            .collect::<Result<Vec<_>>>()?;
        let planted = self.planted.as_ref().and_then(|v| {
            let pos: Option<Vec<usize>> = v
                .positions()
                .iter()
                .zip(kept)
                .map(|(&j, k)| k.iter().position(|&x| x == j).map(|a| a + 1))
                .collect();
            pos.map(|p| RegularVector::new(lp, p).expect("positions stay in range"))
        });
        Ok(RmqInstance {
            q: self.q,
            l: lp,
            w: self.w,
            polys,
            planted,
            seed: self.seed,
        })
    }

    /// Maps a regular vector of a [`RmqInstance::restrict`]ed instance back.
    pub fn lift_restricted(kept: &[Vec<usize>], l: usize, v: &RegularVector) -> RegularVector {
        let pos = v
            .positions()
            .iter()
            .zip(kept)
            .map(|(&a, k)| k[a - 1])
            .collect();
        RegularVector::new(l, pos).expect("kept positions are in range")
    }
}

/// Generates `m` random quadratic polynomials vanishing at a random regular vector.
///
/// The non-constant coefficients are uniform; each constant is then set to the
/// value of the random part at the planted vector, so the polynomial vanishes
/// there.
pub fn plant_instance(l: usize, w: usize, m: usize, seed: u64) -> Result<RmqInstance> {
    check_geometry(l, w)?;
    if m == 0 {
        return Err(Error::Parameter("need at least one equation".into()));
    }
    if l * w > crate::algebra::MAX_VARS {
        return Err(Error::Size(format!(
            "n = {} exceeds {} variables",
            l * w,
            crate::algebra::MAX_VARS
        )));
    }
    let planted = random_regular_vector(l, w, seed)?;
    let mut rng = rng_from_seed(derive_seed(seed, COEFF_STREAM, 0));
    let polys = (0..m)
        .map(|_| {
            let mut p = QuadraticPoly::random(l, w, &mut rng);
            let c = p.eval_positions(planted.positions());
            p.set_constant(c);
            p
        })
        .collect();
    Ok(RmqInstance {
        q: 2,
        l,
        w,
        polys,
        planted: Some(planted),
        seed,
    })
}

/// Number of equations used for the small experiments: 1.2 times the
/// uniqueness bound `w * log2(l)`, rounded up.
pub fn default_m(l: usize, w: usize) -> usize {
    (1.2 * w as f64 * (l as f64).log2() - 1e-9).ceil() as usize
}

/// Residual vector `(P_1(v), ..., P_m(v))`.
pub fn evaluate_instance(inst: &RmqInstance, v: &[bool]) -> Result<Vec<bool>> {
    inst.polys.iter().map(|p| p.eval(v)).collect()
}

/// Equation density at which one regular solution is expected.
///
/// Over GF(2) this is `log2(l)/l`; over `F_q` it is `log_q((q-1) l)/l`.
pub fn uniqueness_mu(l: usize, q: u64) -> Result<f64> {
    if l < 2 || q < 2 {
        return Err(Error::Parameter(format!(
            "need l >= 2 and q >= 2, got l={l}, q={q}"
        )));
    }
    let (l, q) = (l as f64, q as f64);
    Ok(((q - 1.0) * l).ln() / q.ln() / l)
}

/// Largest search space brute force agrees to enumerate.
pub const BRUTE_FORCE_LIMIT: u128 = 1 << 28;

/// All regular solutions in lexicographic position order.
pub fn brute_force_solve(inst: &RmqInstance) -> Result<Vec<RegularVector>> {
    let space = (inst.l as u128)
        .checked_pow(inst.w as u32)
        .unwrap_or(u128::MAX);
    if space > BRUTE_FORCE_LIMIT {
        return Err(Error::Size(format!(
            "l^w = {space} regular vectors exceeds 2^28"
        )));
    }
    Ok(all_regular(inst.l, inst.w)
        .filter(|v| inst.is_solution(v))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planted_vector_solves() {
        for seed in 0..20 {
            let inst = plant_instance(4, 3, 8, seed).unwrap();
            let v = inst.planted.clone().unwrap();
            assert!(evaluate_instance(&inst, &v.to_bits())
                .unwrap()
                .iter()
                .all(|&b| !b));
        }
    }

    #[test]
    fn constant_term_is_fair() {
        // 10^4 polynomials; Pr[a = 0] = 1/2 within a 3 sigma band.
        let mut zeros = 0usize;
        let total = 10_000;
        for seed in 0..(total / 50) as u64 {
            let inst = plant_instance(3, 4, 50, seed).unwrap();
            zeros += inst.polys.iter().filter(|p| !p.constant()).count();
        }
        let sigma = (total as f64 * 0.25).sqrt();
        assert!(
            (zeros as f64 - total as f64 / 2.0).abs() < 3.0 * sigma,
            "zeros = {zeros}"
        );
    }

    #[test]
    fn flipped_bit_is_rarely_a_solution() {
        let mut nonzero = 0;
        for seed in 0..200u64 {
            let inst = plant_instance(3, 3, 6, seed).unwrap();
            let mut v = inst.planted.clone().unwrap().to_bits();
            let k = (seed as usize * 7) % v.len();
            v[k] = !v[k];
            nonzero += evaluate_instance(&inst, &v).unwrap().iter().any(|&b| b) as usize;
        }
        // Expected rate 1 - 2^-6, about 197 of 200.
        assert!(
            nonzero >= 190,
            "only {nonzero} of 200 residuals were nonzero"
        );
    }

    #[test]
    fn zero_point_with_zero_constants() {
        let mut inst = plant_instance(2, 3, 4, 1).unwrap();
        for p in &mut inst.polys {
            p.set_constant(false);
        }
        assert!(evaluate_instance(&inst, &[false; 6])
            .unwrap()
            .iter()
            .all(|&b| !b));
        assert!(evaluate_instance(&inst, &[false; 5]).is_err());
    }

    #[test]
    fn uniqueness_mu_values() {
        assert!((uniqueness_mu(2, 2).unwrap() - 0.5).abs() < 1e-12);
        assert!((uniqueness_mu(4, 2).unwrap() - 0.5).abs() < 1e-12);
        assert!((uniqueness_mu(2, 3).unwrap() - 0.6309).abs() < 1e-4);
    }

    #[test]
    fn default_m_values() {
        assert_eq!(default_m(4, 4), 10);
        assert_eq!(default_m(4, 3), 8);
        assert_eq!(default_m(4, 5), 12);
        assert_eq!(default_m(2, 5), 6);
    }

    #[test]
    fn brute_force_examples() {
        let inst = plant_instance(4, 4, default_m(4, 4), 3).unwrap();
        let sols = brute_force_solve(&inst).unwrap();
        assert!(sols.contains(inst.planted.as_ref().unwrap()));

        let mut unsat = plant_instance(3, 2, 2, 1).unwrap();
        let mut one = QuadraticPoly::zero(3, 2);
        one.set_constant(true);
        unsat.polys.push(one);
        assert!(brute_force_solve(&unsat).unwrap().is_empty());

        let empty = RmqInstance::new(3, 2, vec![], None, 0).unwrap();
        assert_eq!(brute_force_solve(&empty).unwrap().len(), 9);
    }

    #[test]
    fn planted_uniqueness_rate_matches_random_model() {
        // Each of the other l^w - 1 regular vectors solves all m random
        // equations with probability 2^-m, so the planted vector is alone with
        // probability (1 - 2^-m)^(l^w - 1), about 0.78 for l = w = 4, m = 10.
        let (l, w) = (4usize, 4usize);
        let m = default_m(l, w);
        let trials = 100;
        let unique = (0..trials as u64)
            .filter(|&s| {
                brute_force_solve(&plant_instance(l, w, m, s).unwrap())
                    .unwrap()
                    .len()
                    == 1
            })
            .count();
        let p = (1.0 - 0.5f64.powi(m as i32)).powi(l.pow(w as u32) as i32 - 1);
        let sigma = (trials as f64 * p * (1.0 - p)).sqrt();
        assert!(
            (unique as f64 - trials as f64 * p).abs() < 3.0 * sigma,
            "unique in {unique} of {trials}, model predicts {:.1}",
            trials as f64 * p
        );
    }

    #[test]
    fn fix_and_restrict_track_the_planted_vector() {
        let inst = plant_instance(4, 3, 8, 5).unwrap();
        let v = inst.planted.clone().unwrap();
        let fixed = inst.fix_block(1, v.positions()[1]).unwrap();
        assert!(fixed.is_solution(fixed.planted.as_ref().unwrap()));
        let kept: Vec<Vec<usize>> = v
            .positions()
            .iter()
            .map(|&j| vec![j, if j == 1 { 2 } else { 1 }])
            .collect();
        let r = inst.restrict(&kept).unwrap();
        let rp = r.planted.clone().unwrap();
        assert!(r.is_solution(&rp));
        assert_eq!(RmqInstance::lift_restricted(&kept, 4, &rp), v);
    }
}
