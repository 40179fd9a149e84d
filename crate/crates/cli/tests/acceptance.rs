//! Acceptance run: one PASS or FAIL line per criterion, nonzero exit if any
//! criterion fails. Each line ends with the wall time the check took.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::Instant;

use rand::Rng;
use rmq_core::algebra::{AnfPoly, Monomial};
use rmq_core::altmodel::{alt_xl_solve, enumerate_non_admissible};
use rmq_core::estimator::*;
use rmq_core::instance::{
    all_regular, at_most_regular_upto, brute_force_solve, default_m, plant_instance,
};
use rmq_core::modeling::{
    build_modeling, hilbert_function_probe, hybrid_solve, structured_homogeneous_system, xl_solve,
    HybridOptions, Strategy, XlOptions, DEFAULT_COLUMN_GUARD,
};
use rmq_core::polymethod::{
    exact_partial_parities, partial_parities_once, polymethod_solve, regular_mobius_interpolate,
    regular_parity_count, ParityPlan, PolyMethodParams,
};
use rmq_core::rng::{derive_seed, rng_from_seed};
use rmq_lab::table1;

type Check = Result<String, String>;

/// `summary`, followed by the listed problems if there are any.
fn with_problems(summary: String, problems: &[String]) -> String {
    if problems.is_empty() {
        summary
    } else {
        format!("{summary}; {}", problems.join("; "))
    }
}

fn ensure(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

// ---------------------------------------------------------------------------
// 1. comparison curves

/// Reference points per method id.
fn reference_curves() -> Vec<(&'static str, Vec<(usize, f64)>)> {
    let ls = [2, 3, 4, 5, 6, 10, 20, 50, 100];
    let zip = |v: [f64; 9]| ls.iter().copied().zip(v).collect::<Vec<_>>();
    vec![
        (
            "plain",
            zip([
                0.4364, 0.5484, 0.5773, 0.5773, 0.5659, 0.4982, 0.3710, 0.2179, 0.1355,
            ]),
        ),
        (
            "full",
            zip([
                0.3955, 0.4567, 0.4512, 0.4297, 0.4052, 0.3220, 0.2136, 0.1125, 0.06637,
            ]),
        ),
        (
            "partial",
            zip([
                0.4364, 0.4195, 0.3962, 0.3708, 0.3469, 0.2741, 0.1836, 0.09826, 0.05831,
            ]),
        ),
        (
            "poly",
            zip([
                0.4272, 0.4798, 0.4427, 0.4185, 0.3852, 0.3002, 0.1979, 0.1048, 0.06221,
            ]),
        ),
        (
            "brute",
            ls.iter()
                .map(|&l| (l, (l as f64).log2() / l as f64))
                .collect(),
        ),
        ("bjorklund", vec![(2, 0.4249), (100, 0.06219)]),
        ("dinur", vec![(2, 0.4075), (100, 0.06156)]),
        (
            "alt-plain",
            vec![
                (4, 0.7244),
                (8, 0.6235),
                (16, 0.4421),
                (32, 0.2858),
                (64, 0.1751),
                (128, 0.1036),
            ],
        ),
        (
            "dinur-alt",
            vec![
                (2, 0.3750),
                (4, 0.4375),
                (8, 0.3438),
                (16, 0.2344),
                (32, 0.1484),
                (64, 0.08984),
                (128, 0.05273),
            ],
        ),
    ]
}

fn criterion_1() -> Check {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = rmq_lab::run_from_args(["rmq-lab", "compare", "--sheet", "all"], &mut out, &mut err);
    if code != 0 {
        return Err(format!(
            "compare exited {code}: {}",
            String::from_utf8_lossy(&err)
        ));
    }
    let text = String::from_utf8(out).map_err(|e| e.to_string())?;
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header: Vec<&str> = lines.next().ok_or("empty output")?.split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    let (cm, cl, ct) = (col("method"), col("l"), col("tau"));
    let mut got: HashMap<(String, usize), f64> = HashMap::new();
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        if let (Ok(l), Ok(t)) = (f[cl].parse(), f[ct].parse()) {
            got.insert((f[cm].to_string(), l), t);
        }
    }
    let (mut cells, mut worst) = (0, 0.0f64);
    let mut misses = Vec::new();
    for (method, points) in reference_curves() {
        for (l, want) in points {
            cells += 1;
            match got.get(&(method.to_string(), l)) {
                Some(&t) => {
                    worst = worst.max((t - want).abs());
                    if (t - want).abs() > 2e-3 {
                        misses.push(format!("{method} l={l}: {t:.5} vs {want}"));
                    }
                }
                None => misses.push(format!("{method} l={l}: missing")),
            }
        }
    }
    ensure(
        misses.is_empty(),
        with_problems(
            format!("{cells} cells, worst deviation {worst:.2e}"),
            &misses,
        ),
    )
}

// ---------------------------------------------------------------------------
// 2. case studies

fn criterion_2() -> Check {
    let mut notes = Vec::new();
    let mut ok = true;

    let full = tau_hybrid_full(2, 2.0).map_err(|e| e.to_string())?;
    let gamma = full.gamma.unwrap_or(f64::NAN);
    let delta = full.delta_bar.unwrap_or(f64::NAN);
    ok &= (gamma - 0.449).abs() <= 0.01 && (delta - 0.0154).abs() <= 5e-4;
    notes.push(format!("l=2 gamma={gamma:.4} delta={delta:.6}"));

    let diff = tau_hybrid_different(3, 2.0, default_split(3)).map_err(|e| e.to_string())?;
    let tuple: Vec<f64> = diff.tuple.iter().flatten().map(ratio_to_f64).collect();
    let want = [0.127, 0.873, 0.0];
    let delta = diff.delta_bar.unwrap_or(f64::NAN);
    ok &= tuple.len() == 3
        && tuple.iter().zip(want).all(|(a, b)| (a - b).abs() <= 0.01)
        && (delta - 0.01622).abs() <= 5e-4
        && (diff.tau - 0.4179).abs() <= 2e-3;
    notes.push(format!(
        "l=3 tuple={tuple:.4?} delta={delta:.6} tau={:.5}",
        diff.tau
    ));

    for l in 4..=6 {
        let diff = tau_hybrid_different(l, 2.0, default_split(l)).map_err(|e| e.to_string())?;
        let part = tau_hybrid_partial(l, 2.0).map_err(|e| e.to_string())?;
        let tuple: Vec<f64> = diff.tuple.iter().flatten().map(ratio_to_f64).collect();
        let two_only = tuple
            .iter()
            .enumerate()
            .all(|(i, &g)| if i == 1 { g == 1.0 } else { g == 0.0 });
        let same = (diff.tau - part.tau).abs() <= 1e-9;
        ok &= two_only && same;
        notes.push(format!(
            "l={l} gamma_2=1:{two_only} tau={:.5} partial={:.5}{}",
            diff.tau,
            part.tau,
            if diff.heuristic {
                " (heuristic search)"
            } else {
                ""
            }
        ));
    }
    ensure(ok, notes.join("; "))
}

// ---------------------------------------------------------------------------
// 3. solving degrees at desk scale

fn criterion_3() -> Check {
    let quad = [
        ((2, 5), 4),
        ((2, 6), 4),
        ((2, 7), 5),
        ((3, 4), 4),
        ((4, 2), 3),
        ((4, 3), 4),
        ((5, 2), 3),
    ];
    let alt: HashMap<(usize, usize), usize> = [
        ((2, 5), 5),
        ((2, 6), 6),
        ((3, 4), 8),
        ((4, 2), 8),
        ((5, 2), 10),
    ]
    .into();
    let mut ok = true;
    let mut notes = Vec::new();
    for ((s, w), want) in quad {
        let t0 = Instant::now();
        let row = table1::run_row(s, w, rmq_lab::DEFAULT_SEED, true, &XlOptions::default())
            .map_err(|e| format!("({s},{w}): {e}"))?;
        let secs = t0.elapsed().as_secs_f64();
        let q = row.quadratic.solving_degree;
        let a = row
            .alternative
            .as_ref()
            .map(|r| r.solving_degree)
            .unwrap_or(0);
        let mut row_ok = row.quadratic.found() && q.abs_diff(want) <= 1 && secs < 300.0;
        if let Some(&target) = alt.get(&(s, w)) {
            let found = row.alternative.as_ref().is_some_and(|r| r.found());
            row_ok &= found && a.abs_diff(target) <= 1;
            notes.push(format!(
                "({s},{w}) quad {q}/{want} alt {a}/{target} {secs:.1}s"
            ));
        } else {
            notes.push(format!("({s},{w}) quad {q}/{want} alt {a} {secs:.1}s"));
        }
        ok &= row_ok;
    }
    ensure(ok, notes.join("; "))
}

// ---------------------------------------------------------------------------
// 4. every solver against brute force

fn criterion_4() -> Check {
    let shapes: Vec<(usize, usize)> = (2..=8)
        .flat_map(|l| (2..=16 / l).map(move |w| (l, w)))
        .collect();
    let mut failures: Vec<String> = Vec::new();
    let (mut alt_runs, mut poly_runs) = (0, 0);
    let hopts = HybridOptions {
        exhaustive: true,
        ..HybridOptions::default()
    };
    for i in 0..100u64 {
        let (l, w) = shapes[i as usize % shapes.len()];
        let inst = plant_instance(l, w, default_m(l, w), derive_seed(4, i, 0))
            .map_err(|e| e.to_string())?;
        let want = brute_force_solve(&inst).map_err(|e| e.to_string())?;
        let tag = format!("#{i} l={l} w={w}");

        let md = build_modeling(&inst, None, true).map_err(|e| e.to_string())?;
        match xl_solve(&inst, &md, &XlOptions::default()) {
            Ok(r) if r.solutions == want => {}
            other => failures.push(format!("xl {tag}: {:?}", other.map(|r| r.status))),
        }

        let mut windows = vec![0; l];
        windows[0] = w / 2;
        windows[l - 1] = w - w / 2;
        for strategy in [
            Strategy::Full { gamma: 0.5 },
            Strategy::Partial { l_prime: 2 },
            Strategy::Different { windows },
        ] {
            match hybrid_solve(&inst, &strategy, &hopts) {
                Ok(r) if r.solutions == want => {}
                other => {
                    failures.push(format!("{strategy:?} {tag}: {:?}", other.map(|r| r.status)))
                }
            }
        }

        if l.is_power_of_two() {
            alt_runs += 1;
            match alt_xl_solve(&inst, &XlOptions::default()) {
                Ok(r) if r.solutions == want => {}
                other => failures.push(format!("alt {tag}: {:?}", other.map(|r| r.status))),
            }
        }

        if want.len() == 1 {
            poly_runs += 1;
            let mut params = PolyMethodParams::new(derive_seed(4, i, 1));
            params.k_margin = 3;
            match polymethod_solve(&inst, &params) {
                Ok(r) if r.solutions == want => {}
                other => failures.push(format!("poly {tag}: {:?}", other.map(|r| r.status))),
            }
        }
    }
    ensure(
        failures.is_empty(),
        with_problems(
            format!(
                "100 instances over {} shapes; alt on {alt_runs}, polymethod on {poly_runs} unique",
                shapes.len()
            ),
            &failures,
        ),
    )
}

// ---------------------------------------------------------------------------
// 5. Hilbert function of the structured part

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn criterion_5() -> Check {
    let mut cases = 0;
    let mut misses = Vec::new();
    for l in 2..=4u64 {
        for w in 1..=4u64 {
            let sys =
                structured_homogeneous_system(l as usize, w as usize).map_err(|e| e.to_string())?;
            for d in 0..=w {
                let got = hilbert_function_probe(&sys, d as usize, DEFAULT_COLUMN_GUARD)
                    .map_err(|e| e.to_string())?
                    .value;
                let want = binomial(w, d) * (l - 1).pow(d as u32);
                cases += 1;
                if got != want {
                    misses.push(format!("l={l} w={w} d={d}: {got} vs {want}"));
                }
            }
        }
    }
    ensure(
        misses.is_empty(),
        with_problems(format!("{cases} values checked"), &misses),
    )
}

// ---------------------------------------------------------------------------
// 6. reconstruction from at-most-regular evaluations

fn criterion_6() -> Check {
    let mut rng = rng_from_seed(6);
    let mut checked = 0usize;
    let mut bad = Vec::new();
    for trial in 0..100 {
        let l = if trial % 2 == 0 { 2 } else { 4 };
        let w = rng.gen_range(1..=4usize);
        let n = l * w;
        let mut f = AnfPoly::zero(n);
        for _ in 0..rng.gen_range(1..=30) {
            let k = rng.gen_range(0..=4.min(n));
            let vars = rand::seq::index::sample(&mut rng, n, k).into_vec();
            f.toggle(Monomial::from_vars(&vars).map_err(|e| e.to_string())?);
        }
        let d = 4;
        let evals: HashMap<Vec<usize>, bool> = at_most_regular_upto(l, w, d)
            .into_iter()
            .map(|pt| {
                let mut bits = vec![false; n];
                for (i, &j) in pt.iter().enumerate() {
                    if j > 0 {
                        bits[i * l + j - 1] = true;
                    }
                }
                let v = f.eval(&bits).unwrap();
                (pt, v)
            })
            .collect();
        let g = regular_mobius_interpolate(&evals, l, w, d).map_err(|e| e.to_string())?;
        for v in all_regular(l, w) {
            checked += 1;
            if g.eval(v.positions()) != f.eval(&v.to_bits()).map_err(|e| e.to_string())? {
                bad.push(format!("trial {trial} l={l} w={w}"));
                break;
            }
        }
    }
    ensure(
        bad.is_empty(),
        with_problems(format!("100 polynomials, {checked} regular points"), &bad),
    )
}

// ---------------------------------------------------------------------------
// 7. polynomial-method statistics

fn criterion_7() -> Check {
    // One draw at the derived k: the partial parity of a seed-chosen prefix.
    let (l, w) = (2, 6);
    let mut single = 0;
    for seed in 0..200u64 {
        let inst = plant_instance(l, w, default_m(l, w), seed).map_err(|e| e.to_string())?;
        let plan =
            ParityPlan::derive(&inst, &PolyMethodParams::new(seed)).map_err(|e| e.to_string())?;
        let got = partial_parities_once(&inst, &plan, derive_seed(seed, 7, 1))
            .map_err(|e| e.to_string())?;
        let want = exact_partial_parities(&inst, plan.n_z);
        let y = (derive_seed(seed, 7, 2) % want.len() as u64) as usize;
        single += (got[y] == want[y]) as usize;
    }

    // Majority vote over t = 2w + 1 draws, three extra combinations per draw.
    let mut notes = vec![format!("single draw {single}/200")];
    let mut ok = single * 100 >= 70 * 200;
    for (l, w) in [(2usize, 8usize), (4, 4)] {
        let mut right = 0;
        for seed in 0..100u64 {
            let inst = plant_instance(l, w, default_m(l, w), derive_seed(77, seed, 0))
                .map_err(|e| e.to_string())?;
            let truth = brute_force_solve(&inst).map_err(|e| e.to_string())?.len() % 2 == 1;
            let mut params = PolyMethodParams::new(derive_seed(77, seed, 1));
            params.k_margin = 3;
            params.t = Some(2 * w + 1);
            let run = regular_parity_count(&inst, &params).map_err(|e| e.to_string())?;
            right += (run.parity == truth) as usize;
        }
        ok &= right == 100;
        notes.push(format!("majority l={l} w={w} {right}/100"));
    }
    ensure(ok, notes.join("; "))
}

// ---------------------------------------------------------------------------
// 8. non-admissible monomials

fn criterion_8() -> Check {
    let mut degrees = 0;
    let mut bad = Vec::new();
    for s in 1..=3 {
        for w in 2..=3 {
            let bound = (s - 1) * w + 1;
            for d in bound + 1..=s * w + 2 * s {
                degrees += 1;
                let found =
                    enumerate_non_admissible(s, w, d, 1 << 20).map_err(|e| e.to_string())?;
                if !found.is_empty() {
                    bad.push(format!("s={s} w={w} d={d}: {}", found.len()));
                }
            }
        }
    }
    let witness = enumerate_non_admissible(2, 2, 3, 1 << 20).map_err(|e| e.to_string())?;
    ensure(
        bad.is_empty() && !witness.is_empty(),
        with_problems(
            format!(
                "{degrees} degrees empty, witness at s=2 w=2 d=3 has {} monomials",
                witness.len()
            ),
            &bad,
        ),
    )
}

// ---------------------------------------------------------------------------
// 9. estimator identities

fn criterion_9() -> Check {
    let q = |n: i64, d: i64| num_rational::BigRational::new(n.into(), d.into());
    let e = |r: rmq_core::Result<ComplexityReport>| r.map(|r| r.tau).map_err(|e| e.to_string());
    let mut worst = 0.0f64;
    for l in 2..=12 {
        let plain = e(tau_plain_gb_f2(l, 2.0))?;
        worst = worst.max((e(tau_hybrid_full_at(l, 2.0, &q(0, 1)))? - plain).abs());
        worst = worst.max((e(tau_hybrid_partial_at(l, 2.0, l))? - plain).abs());
        for (n, d) in [(1, 5), (1, 2), (3, 4)] {
            let mut tuple = vec![q(0, 1); l];
            tuple[0] = q(n, d);
            tuple[l - 1] = q(d - n, d);
            let diff = e(tau_hybrid_different_at(l, 2.0, &tuple))?;
            worst = worst.max((diff - e(tau_hybrid_full_at(l, 2.0, &q(n, d)))?).abs());
        }
        for lp in 2..=l {
            let mut tuple = vec![q(0, 1); l];
            tuple[lp - 1] = q(1, 1);
            let diff = e(tau_hybrid_different_at(l, 2.0, &tuple))?;
            worst = worst.max((diff - e(tau_hybrid_partial_at(l, 2.0, lp))?).abs());
        }
    }
    let mut simple = Vec::new();
    let mut simple_ok = true;
    for l in [4, 8, 16] {
        let gap = (e(tau_simple_estimate(l, 2.0))? - e(tau_hybrid_partial(l, 2.0))?).abs();
        simple_ok &= gap < 2e-3;
        simple.push(format!("l={l} {gap:.1e}"));
    }
    ensure(
        worst < 1e-9 && simple_ok,
        format!(
            "identities within {worst:.1e}; simple vs partial {}",
            simple.join(", ")
        ),
    )
}

// ---------------------------------------------------------------------------
// 10. larger fields

fn criterion_10() -> Check {
    let beats = |l: usize, q: u64| -> Result<bool, String> {
        tau_plain_gb_fq(l, q, 2.0)
            .map(|r| r.beats_brute_force())
            .map_err(|e| e.to_string())
    };
    let winners = |q: u64| -> Result<Vec<usize>, String> {
        let mut out = Vec::new();
        for l in 2..=40 {
            if beats(l, q)? {
                out.push(l);
            }
        }
        Ok(out)
    };
    let mut ok = true;
    let mut notes = Vec::new();
    for q in [3, 4, 5] {
        let w = winners(q)?;
        ok &= w.is_empty();
        notes.push(format!("q={q} never:{}", w.is_empty()));
    }
    for (qs, last) in [([7u64, 8u64], 2usize), ([31, 32], 8), ([255, 256], 31)] {
        for q in qs {
            let w = winners(q)?;
            let exact = w == (2..=last).collect::<Vec<_>>();
            ok &= exact && beats(last, q)? && !beats(last + 1, q)?;
            notes.push(format!("q={q} iff l<={last}:{exact}"));
        }
    }
    ensure(ok, notes.join("; "))
}

fn main() -> ExitCode {
    let criteria: [(usize, fn() -> Check); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let mut failed = 0;
    for (n, check) in criteria {
        let t0 = Instant::now();
        let outcome = check();
        let secs = t0.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {n}: {detail} [{secs:.1}s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {n}: {detail} [{secs:.1}s]");
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
