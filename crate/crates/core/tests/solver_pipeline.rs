mod common;

use rand::Rng;
use touching_lines::geometry::{distance, PairClass};
use touching_lines::signed_graph::{chirality_graph, switch};
use touching_lines::solver::{
    dedupe, distance_jacobian, distance_residuals, initial_params, jacobian, levenberg_marquardt, orient_first_positive,
    residuals, run_all, solve, solve_all, verify, LmSettings,
};
use touching_lines::spectral::{cross_norm_matrix, signed_gram_matrix};
use touching_lines::{Error, LineConfiguration, Objective, SolverOptions};

fn finite_difference_check(f: impl Fn(&[f64]) -> Vec<f64>, jac: &[Vec<f64>], p: &[f64]) {
    let h = 1e-6;
    for c in 0..p.len() {
        let (mut up, mut down) = (p.to_vec(), p.to_vec());
        up[c] += h;
        down[c] -= h;
        let (ru, rd) = (f(&up), f(&down));
        for (row, (a, b)) in jac.iter().zip(ru.iter().zip(&rd)) {
            let fd = (a - b) / (2.0 * h);
            assert!((fd - row[c]).abs() <= 1e-5 * (1.0 + row[c].abs()), "column {c}: {fd} vs {}", row[c]);
        }
    }
}

fn well_separated(p: &[f64], n: usize) -> bool {
    let lines = touching_lines::solver::decode(p, n);
    (0..n).all(|i| (i + 1..n).all(|j| lines[i].direction().cross(lines[j].direction()).norm() > 0.05))
}

#[test]
fn jacobians_match_central_differences() {
    let mut rng = common::rng(20);
    for n in 2..=7 {
        let mut checked = 0;
        while checked < 100 {
            let p: Vec<f64> = (0..4 * n - 6).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let t = rng.gen_range(0.5..2.0);
            finite_difference_check(|q| residuals(q, n, t), &jacobian(&p, n, t), &p);
            if well_separated(&p, n) {
                finite_difference_check(|q| distance_residuals(q, n, t), &distance_jacobian(&p, n), &p);
            }
            checked += 1;
        }
    }
}

#[test]
fn solutions_verify_for_both_objectives() {
    for objective in [Objective::Distance, Objective::Squared] {
        for n in 2..=6 {
            let opts = SolverOptions { n, seed: 3, multistarts: 200, objective, ..Default::default() };
            let s = solve::<f64>(&opts).unwrap_or_else(|e| panic!("n={n} {objective:?}: {e}"));
            let report = verify(&s.configuration, 1e-8);
            assert!(report.passed, "n={n} {objective:?}");
            let sig = report.signed_gram_signature.unwrap();
            assert!(sig.positive <= 3 && sig.negative <= 3);
            assert_eq!(report.lemma_signature.unwrap().as_tuple(), (1, n - 1, 0));
            for r in residuals(&s.params, n, 1.0) {
                assert!(r.abs() < 1e-10);
            }
        }
    }
}

#[test]
fn sequential_and_parallel_runs_agree_bitwise() {
    let base = SolverOptions { n: 5, seed: 17, multistarts: 24, ..Default::default() };
    let seq = run_all::<f64>(&SolverOptions { parallel: false, ..base }).unwrap();
    let par = run_all::<f64>(&SolverOptions { parallel: true, ..base }).unwrap();
    let again = run_all::<f64>(&SolverOptions { parallel: false, ..base }).unwrap();
    for ((a, b), c) in seq.iter().zip(&par).zip(&again) {
        assert_eq!(a.lm.params, b.lm.params);
        assert_eq!(a.lm.params, c.lm.params);
        assert_eq!(a.lm.iterations, b.lm.iterations);
    }
    let s1 = solve::<f64>(&SolverOptions { parallel: false, ..base }).unwrap();
    let s2 = solve::<f64>(&SolverOptions { parallel: true, ..base }).unwrap();
    assert_eq!(s1.start_index, s2.start_index);
    assert_eq!(s1.configuration, s2.configuration);
}

#[test]
fn two_lines_reach_tolerance_in_few_iterations() {
    let settings = LmSettings { polish_iterations: 0, ..LmSettings::default() };
    let mut worst = 0;
    let mut hist = std::collections::BTreeMap::new();
    for k in 0..2000 {
        let x0: Vec<f64> = initial_params(2, 1, k);
        let out = levenberg_marquardt(x0, &settings, |p| {
            (distance_residuals(p, 2, 1.0), distance_jacobian(p, 2))
        });
        assert!(out.converged(), "start {k}");
        worst = worst.max(out.iterations);
        *hist.entry(out.iterations).or_insert(0) += 1;
    }
    assert!(worst <= 7, "{worst} {hist:?}");
    let within_five: usize = hist.range(..=5).map(|(_, c)| c).sum();
    assert!(within_five >= 1600, "{hist:?}");
}

#[test]
fn solved_configurations_are_rigid_motion_invariant() {
    let mut rng = common::rng(21);
    let opts = SolverOptions { n: 5, seed: 8, multistarts: 30, ..Default::default() };
    let sols = solve_all::<f64>(&opts).unwrap();
    assert!(sols.len() >= 5);
    for s in &sols {
        let c = &s.configuration;
        let g = c.chirality_graph().unwrap();
        for _ in 0..10 {
            let moved = c.transformed(&common::rigid_motion(&mut rng));
            for (a, b) in moved.pairwise_distances().iter().zip(c.pairwise_distances()) {
                assert!((a - b).abs() < 1e-10);
            }
            assert_eq!(moved.chirality_graph().unwrap(), g);
        }
        assert_eq!(c.reflect_z().chirality_graph().unwrap(), g.negated());
    }
    let copies: Vec<_> = sols.iter().map(|s| s.configuration.transformed(&common::rigid_motion(&mut rng))).collect();
    let all: Vec<_> = sols.iter().map(|s| s.configuration.clone()).chain(copies).collect();
    let kept = dedupe(&all);
    assert!(kept.iter().all(|&k| k < sols.len()));
}

#[test]
fn reversing_a_line_switches_its_vertex() {
    let mut rng = common::rng(22);
    for _ in 0..300 {
        let n = rng.gen_range(2..=8);
        let lines: Vec<_> = (0..n).map(|_| common::line(&mut rng)).collect();
        let Ok(g) = chirality_graph(&lines) else { continue };
        let config = LineConfiguration::new(lines, 1.0).unwrap();
        for i in 1..=n {
            assert_eq!(config.with_reversed(&[i]).chirality_graph().unwrap(), switch(&g, &[i]));
        }
        let oriented = orient_first_positive(&config).unwrap();
        let og = oriented.chirality_graph().unwrap();
        assert!((2..=n).all(|i| og.sign(1, i) == touching_lines::Sign::Plus));
        assert_eq!(orient_first_positive(&oriented).unwrap(), oriented);
    }
}

#[test]
fn five_line_solutions_never_hide_a_positive_clique() {
    let opts = SolverOptions { n: 5, seed: 42, multistarts: 100, ..Default::default() };
    let sols = solve_all::<f64>(&opts).unwrap();
    assert!(!sols.is_empty());
    for s in sols {
        let c = &s.configuration;
        let signed = signed_gram_matrix(&c.lines).unwrap();
        let cross = cross_norm_matrix(&c.directions()).unwrap();
        let g = c.chirality_graph().unwrap();
        // at unit distance the signed Gram entries are ε_ij ‖v_i × v_j‖
        for (i, j, e) in g.edges() {
            let expected = e.value() as f64 * cross.entries()[(i - 1, j - 1)];
            assert!((signed.entries()[(i - 1, j - 1)] - expected).abs() < 1e-8);
        }
        assert!(signed.signature().negative <= 3);
        assert_eq!(cross.signature().negative, 4);
        assert!(!g.mono_k_possible(5));
        assert!(c.pair_classes().iter().all(|&p| p == PairClass::Skew));
        for (i, j) in c.pairs() {
            assert!((distance(&c.lines[i], &c.lines[j]) - 1.0).abs() < 1e-8);
        }
    }
}

#[test]
fn exhausted_budget_reports_no_convergence() {
    let opts = SolverOptions { n: 7, seed: 0, multistarts: 3, max_iterations: 2, ..Default::default() };
    match solve::<f64>(&opts) {
        Err(Error::NoConvergence { starts: 3, best_residual }) => assert!(best_residual.is_finite()),
        other => panic!("{other:?}"),
    }
    assert!(solve::<f64>(&SolverOptions { n: 1, ..Default::default() }).is_err());
}
