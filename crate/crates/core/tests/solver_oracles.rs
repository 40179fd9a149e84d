//! Every solver against a naive enumeration written here from scratch.

use rmq_core::altmodel::alt_xl_solve;
use rmq_core::instance::{brute_force_solve, plant_instance, RegularVector, RmqInstance};
use rmq_core::modeling::{
    build_modeling, hybrid_solve, xl_solve, HybridOptions, SolveStatus, Strategy, XlOptions,
};
use rmq_core::polymethod::{polymethod_solve, PolyMethodParams};
use rmq_core::rng::derive_seed;

/// All regular solutions, by evaluating the ANF of every equation at every
/// regular vector in lexicographic order.
fn naive_solutions(inst: &RmqInstance) -> Vec<RegularVector> {
    let anfs: Vec<_> = inst.polys.iter().map(|p| p.to_anf()).collect();
    let mut out = Vec::new();
    let mut pos = vec![1usize; inst.w];
    loop {
        let mut bits = vec![false; inst.l * inst.w];
        for (i, &j) in pos.iter().enumerate() {
            bits[i * inst.l + j - 1] = true;
        }
        if anfs.iter().all(|f| !f.eval(&bits).unwrap()) {
            out.push(RegularVector::new(inst.l, pos.clone()).unwrap());
        }
        let Some(i) = (0..inst.w).rev().find(|&i| pos[i] < inst.l) else {
            return out;
        };
        pos[i] += 1;
        pos[i + 1..].iter_mut().for_each(|p| *p = 1);
    }
}

/// Planted instances at, below and above the default equation count, plus
/// a few made unsatisfiable by flipping a constant.
fn corpus() -> Vec<RmqInstance> {
    let shapes = [
        (2, 3),
        (2, 5),
        (3, 3),
        (4, 2),
        (4, 3),
        (3, 4),
        (2, 8),
        (8, 2),
        (4, 4),
    ];
    let mut out = Vec::new();
    for (k, &(l, w)) in shapes.iter().enumerate() {
        let n = l * w;
        for (j, m) in [n / 2, n - 2, n + 3].into_iter().enumerate() {
            let seed = derive_seed(2024, k as u64, j as u64);
            out.push(plant_instance(l, w, m.max(1), seed).unwrap());
        }
        let mut broken = plant_instance(l, w, n + 3, derive_seed(7, k as u64, 0)).unwrap();
        let c = broken.polys[0].constant();
        broken.polys[0].set_constant(!c);
        broken.planted = None;
        out.push(broken);
    }
    out
}

#[test]
fn library_brute_force_agrees_with_naive_enumeration() {
    for inst in corpus() {
        assert_eq!(brute_force_solve(&inst).unwrap(), naive_solutions(&inst));
    }
}

#[test]
fn xl_finds_every_solution() {
    for inst in corpus() {
        let want = naive_solutions(&inst);
        for eliminate in [true, false] {
            let md = build_modeling(&inst, None, eliminate).unwrap();
            let rep = xl_solve(&inst, &md, &XlOptions::default()).unwrap();
            assert_eq!(
                rep.solutions,
                want,
                "l={} w={} m={}",
                inst.l,
                inst.w,
                inst.m()
            );
            let expected = if want.is_empty() {
                SolveStatus::Unsatisfiable
            } else {
                SolveStatus::Found
            };
            assert_eq!(rep.status, expected);
        }
    }
}

#[test]
fn exhaustive_hybrids_find_every_solution() {
    let opts = HybridOptions {
        exhaustive: true,
        ..HybridOptions::default()
    };
    for inst in corpus() {
        let want = naive_solutions(&inst);
        let mut windows = vec![0; inst.l];
        windows[0] = inst.w / 2;
        windows[inst.l - 1] = inst.w - inst.w / 2;
        for strategy in [
            Strategy::Full { gamma: 0.5 },
            Strategy::Full { gamma: 1.0 },
            Strategy::Partial { l_prime: 2 },
            Strategy::Different { windows },
        ] {
            let rep = hybrid_solve(&inst, &strategy, &opts).unwrap();
            assert_eq!(
                rep.solutions, want,
                "{strategy:?} on l={} w={}",
                inst.l, inst.w
            );
        }
    }
}

#[test]
fn binary_reencoding_finds_every_solution() {
    for inst in corpus().into_iter().filter(|i| i.l.is_power_of_two()) {
        let rep = alt_xl_solve(&inst, &XlOptions::default()).unwrap();
        assert_eq!(
            rep.solutions,
            naive_solutions(&inst),
            "l={} w={}",
            inst.l,
            inst.w
        );
    }
}

#[test]
fn polynomial_method_on_unique_and_empty_instances() {
    for (i, inst) in corpus().into_iter().enumerate() {
        let want = naive_solutions(&inst);
        if want.len() > 1 {
            continue;
        }
        let mut params = PolyMethodParams::new(derive_seed(99, i as u64, 0));
        params.k_margin = 3;
        let rep = polymethod_solve(&inst, &params).unwrap();
        assert_eq!(
            rep.solutions,
            want,
            "l={} w={} m={}",
            inst.l,
            inst.w,
            inst.m()
        );
    }
}
