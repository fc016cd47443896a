//! Acceptance criteria, one line per criterion.
//!
//! Run with `cargo test -p touching-lines --test acceptance`. Exits non-zero if
//! any criterion fails. The best-effort seven-line search reports
//! `NOT-ACHIEVED` instead of failing when its budget runs out.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::Rng;
use touching_lines::geometry::{plucker, signed_gram_entry};
use touching_lines::signed_graph::{builtin, paley_17, switching_isomorphic};
use touching_lines::solver::{distance_jacobian, distance_residuals, jacobian, residuals, solve, verify};
use touching_lines::spectral::{
    cross_norm_matrix_with_tol, series::multi_indices, series_coefficient, signed_gram_matrix, taylor_coefficient,
    truncated_cross_norm, Signature,
};
use touching_lines::{Error, LineConfiguration, SignedCompleteGraph, SolverOptions};

const LEMMA_SETS_PER_N: usize = 1000;
const LEMMA_MIN_ANGLE: f64 = 1e-3;
const RELATIVE_ZERO_TOL: f64 = 1e-8;
const GRAM_PAIRS: usize = 10_000;
const GRAM_ROUTE_TOL: f64 = 1e-12;
const EIGHT_LINE_CONFIGS: usize = 1000;
const THEOREM_SOLVES: usize = 100;
const VERIFY_TOL: f64 = 1e-8;
const SOUNDNESS_MULTISTARTS: usize = 200;
const SOUNDNESS_SEED: u64 = 1;
const FD_POINTS: usize = 100;
const FD_STEP: f64 = 1e-6;
const FD_REL_TOL: f64 = 1e-5;
const SEVEN_LINE_SEED: u64 = 28;
const SEVEN_LINE_BUDGET: usize = 1000;
const SERIES_TERMS: u32 = 50;
const SERIES_TOL: f64 = 1e-6;

enum Status {
    Pass,
    Fail,
    NotAchieved,
}

struct Outcome {
    status: Status,
    detail: String,
}

impl Outcome {
    fn check(ok: bool, detail: impl Into<String>) -> Self {
        let status = if ok { Status::Pass } else { Status::Fail };
        Self { status, detail: detail.into() }
    }
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 lemma signature (1, n-1, 0)", Duration::from_secs(10), lemma_signature),
        ("2 Pluecker Gram identity", Duration::from_secs(1), gram_identity),
        ("3 signed Gram signature cap", Duration::from_secs(5), signed_gram_cap),
        ("4 no monochromatic K5 in solved 5-line configurations", Duration::from_secs(300), five_line_solves),
        ("5 published 7-line graphs reconcile", Duration::from_secs(10), blr_reconciliation),
        ("6 Paley 17 has no monochromatic K4", Duration::from_secs(1), ramsey_witness),
        ("7 solver soundness", Duration::from_secs(120), solver_soundness),
        ("8 seven-line configuration (best effort)", Duration::from_secs(600), seven_lines),
        ("9 series check", Duration::from_secs(1), series_check),
    ];
    let mut failed = 0;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if elapsed > budget && matches!(outcome.status, Status::Pass) {
            outcome = Outcome::check(false, format!("{}; over time budget {budget:?}", outcome.detail));
        }
        let tag = match outcome.status {
            Status::Pass => "PASS",
            Status::Fail => {
                failed += 1;
                "FAIL"
            }
            Status::NotAchieved => "NOT-ACHIEVED",
        };
        println!("[{tag}] {name}: {} ({:.2?})", outcome.detail, elapsed);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}

fn lemma_signature() -> Outcome {
    let mut rng = common::rng(101);
    let mut bad = Vec::new();
    let mut tightest = f64::INFINITY;
    for n in 2..=12 {
        for _ in 0..LEMMA_SETS_PER_N {
            let vs = common::spread_unit_vectors(&mut rng, n, LEMMA_MIN_ANGLE);
            let report = cross_norm_matrix_with_tol(&vs, RELATIVE_ZERO_TOL).unwrap();
            let max = report.eigenvalues().iter().fold(0f64, |m, l| m.max(l.abs()));
            tightest = tightest.min(report.min_abs_eigenvalue() / max);
            if report.signature() != Signature::new(1, n - 1, 0) {
                bad.push((n, report.signature()));
            }
        }
    }
    Outcome::check(
        bad.is_empty(),
        format!(
            "{} sets for n = 2..12, {} off-signature, smallest |lambda|/max|lambda| = {tightest:.2e}",
            11 * LEMMA_SETS_PER_N,
            bad.len()
        ),
    )
}

fn gram_identity() -> Outcome {
    let mut rng = common::rng(102);
    let worst = (0..GRAM_PAIRS)
        .map(|_| {
            let (a, b) = common::skew_pair(&mut rng, 1e-6);
            (signed_gram_entry(&a, &b) - plucker(&a).pairing(&plucker(&b))).abs()
        })
        .fold(0f64, f64::max);
    Outcome::check(worst <= GRAM_ROUTE_TOL, format!("{GRAM_PAIRS} skew pairs, max route gap {worst:.2e}"))
}

fn signed_gram_cap() -> Outcome {
    let mut rng = common::rng(103);
    let mut worst = (0, 0);
    let mut done = 0;
    while done < EIGHT_LINE_CONFIGS {
        let lines: Vec<_> = (0..8).map(|_| common::line(&mut rng)).collect();
        let Ok(report) = signed_gram_matrix(&lines) else { continue };
        let s = report.signature();
        worst = (worst.0.max(s.positive), worst.1.max(s.negative));
        done += 1;
    }
    Outcome::check(
        worst.0 <= 3 && worst.1 <= 3,
        format!("{EIGHT_LINE_CONFIGS} configurations of 8 skew lines, max (positive, negative) = {worst:?}"),
    )
}

fn five_line_solves() -> Outcome {
    let mut successes = 0;
    let mut seed = 0;
    let mut violations = Vec::new();
    while successes < THEOREM_SOLVES {
        seed += 1;
        let opts = SolverOptions { n: 5, seed, ..Default::default() };
        let Ok(sol) = solve::<f64>(&opts) else { continue };
        successes += 1;
        let config = &sol.configuration;
        let graph = config.chirality_graph().unwrap();
        if graph.mono_k_possible(5) || graph.find_mono_clique(5).is_some() {
            violations.push(seed);
        }
        for flips in (1..=5).powerset() {
            let g = config.with_reversed(&flips).chirality_graph().unwrap();
            if g.find_mono_clique(5).is_some() {
                violations.push(seed);
            }
        }
    }
    Outcome::check(
        violations.is_empty(),
        format!("{successes} solves (seeds 1..={seed}), 32 orientations each, violations at seeds {violations:?}"),
    )
}

fn blr_reconciliation() -> Outcome {
    let canon = builtin("blr_canonical").unwrap();
    let found: Vec<bool> = ["blr_graph_a", "blr_graph_b"]
        .iter()
        .map(|name| {
            let g = builtin(name).unwrap();
            match switching_isomorphic(&g, &canon).unwrap() {
                Some(m) => g.relabel(&m.mapping).switch(&m.switching) == canon,
                None => false,
            }
        })
        .collect();
    Outcome::check(found.iter().all(|&x| x), format!("graph a: {}, graph b: {}", found[0], found[1]))
}

fn ramsey_witness() -> Outcome {
    let g = paley_17();
    let subsets: Vec<Vec<usize>> = (1..=17).combinations(4).collect();
    let mono = subsets
        .iter()
        .filter(|s| s.iter().array_combinations().map(|[&a, &b]| g.sign(a, b)).all_equal())
        .count();
    let library = g.find_mono_clique(4);
    Outcome::check(
        subsets.len() == 2380 && mono == 0 && library.is_none(),
        format!("{} subsets checked, {mono} monochromatic", subsets.len()),
    )
}

fn fd_gap(f: impl Fn(&[f64]) -> Vec<f64>, jac: &[Vec<f64>], p: &[f64]) -> f64 {
    let mut worst = 0f64;
    for c in 0..p.len() {
        let (mut up, mut down) = (p.to_vec(), p.to_vec());
        up[c] += FD_STEP;
        down[c] -= FD_STEP;
        let (ru, rd) = (f(&up), f(&down));
        for (row, (a, b)) in jac.iter().zip(ru.iter().zip(&rd)) {
            let fd = (a - b) / (2.0 * FD_STEP);
            worst = worst.max((fd - row[c]).abs() / (1.0 + row[c].abs()));
        }
    }
    worst
}

fn solver_soundness() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for n in 2..=6 {
        let opts = SolverOptions { n, seed: SOUNDNESS_SEED, multistarts: SOUNDNESS_MULTISTARTS, ..Default::default() };
        match solve::<f64>(&opts) {
            Ok(s) => {
                let r = verify(&s.configuration, VERIFY_TOL);
                ok &= r.passed;
                notes.push(format!("n={n} dev {:.1e}", r.max_abs_deviation));
            }
            Err(e) => {
                ok = false;
                notes.push(format!("n={n} {e}"));
            }
        }
    }
    let mut rng = common::rng(107);
    let mut worst = 0f64;
    for n in 2..=7 {
        for _ in 0..FD_POINTS {
            let p: Vec<f64> = (0..4 * n - 6).map(|_| rng.gen_range(-2.0..2.0)).collect();
            worst = worst.max(fd_gap(|q| residuals(q, n, 1.0), &jacobian(&p, n, 1.0), &p));
            let lines = touching_lines::solver::decode(&p, n);
            let min_sine = lines
                .iter()
                .array_combinations()
                .map(|[a, b]| a.direction().cross(b.direction()).norm())
                .fold(f64::INFINITY, f64::min);
            if min_sine > 0.05 {
                worst = worst.max(fd_gap(|q| distance_residuals(q, n, 1.0), &distance_jacobian(&p, n), &p));
            }
        }
    }
    ok &= worst <= FD_REL_TOL;
    Outcome::check(ok, format!("{}; Jacobian vs central differences max rel gap {worst:.1e}", notes.join(", ")))
}

fn seven_lines() -> Outcome {
    let canon = builtin("blr_canonical").unwrap();
    let opts = SolverOptions { n: 7, seed: SEVEN_LINE_SEED, multistarts: SEVEN_LINE_BUDGET, ..Default::default() };
    match solve::<f64>(&opts) {
        Ok(s) => {
            let config: &LineConfiguration = &s.configuration;
            let report = verify(config, VERIFY_TOL);
            let graph: SignedCompleteGraph = config.chirality_graph().unwrap();
            let iso = switching_isomorphic(&graph, &canon).unwrap().is_some();
            Outcome::check(
                report.passed && iso,
                format!(
                    "seed {SEVEN_LINE_SEED}, start {} of {SEVEN_LINE_BUDGET}, dev {:.1e}, switching-isomorphic to canonical: {iso}",
                    s.start_index, report.max_abs_deviation
                ),
            )
        }
        Err(Error::NoConvergence { starts, best_residual }) => Outcome {
            status: Status::NotAchieved,
            detail: format!("seed {SEVEN_LINE_SEED}, {starts} starts, best residual {best_residual:.3e}"),
        },
        Err(e) => Outcome::check(false, e.to_string()),
    }
}

fn series_check() -> Outcome {
    let worst = (0..10)
        .map(|i| {
            let x = i as f64 / 10.0;
            (truncated_cross_norm(x, SERIES_TERMS).unwrap() - (1.0 - x * x).sqrt()).abs()
        })
        .fold(0f64, f64::max);
    let positive = (1..=8u32).all(|k| multi_indices(2 * k).all(|(a, b, c)| taylor_coefficient(k, a, b, c).unwrap().is_positive()));
    // sqrt(1 - u) = sum a_k u^k, a_k = a_{k-1} (k - 3/2) / k
    let mut a = BigRational::one();
    let mut exact = true;
    for k in 1..=3u32 {
        a *= BigRational::new(BigInt::from(2 * k as i64 - 3), BigInt::from(2 * k as i64));
        exact &= series_coefficient(k) == -a.clone();
    }
    let expected = [(1, 2), (1, 8), (1, 16)];
    let literal = (1..=3u32).zip(expected).all(|(k, (p, q))| {
        taylor_coefficient(k, 2 * k, 0, 0).unwrap().value == BigRational::new(BigInt::from(p), BigInt::from(q))
    });
    Outcome::check(
        worst <= SERIES_TOL && positive && exact && literal,
        format!("max |partial sum - sqrt(1 - x^2)| = {worst:.1e}, positivity {positive}, c_1..c_3 recurrence {exact}, 1/2 1/8 1/16 {literal}"),
    )
}
