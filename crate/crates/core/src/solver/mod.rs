//! Multistart search for `n` directed lines at a common pairwise distance.
//!
//! Each start draws a random gauge-fixed parameter vector and runs
//! Levenberg–Marquardt on one of two residual forms (see [`Objective`]) plus
//! a barrier that keeps directions away from parallel. Start `k` uses
//! ChaCha8 seeded with `seed` on stream `k`, so the outcome of a start does
//! not depend on which thread runs it.

pub mod lm;
pub mod residual;
mod verify;

use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::LineConfiguration;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::signed_graph::{switching_isomorphic, SignedCompleteGraph};

pub use lm::{levenberg_marquardt, LmOutcome, LmSettings, Termination};
pub use residual::{barrier, decode, dimension, distance_jacobian, distance_residuals, jacobian, residuals};
pub use verify::{orient_first_positive, verify, VerificationReport};

/// Half-width of the uniform box the random moment coordinates come from.
pub const MOMENT_RANGE: f64 = 2.0;

/// Residual vector handed to Levenberg–Marquardt.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    /// `d² − target²` per pair ([`distance_residuals`]).
    #[default]
    Distance,
    /// `(d² − target²) ‖v_i × v_j‖²` per pair ([`residuals`]).
    Squared,
}

impl std::str::FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "distance" => Ok(Self::Distance),
            "squared" => Ok(Self::Squared),
            other => Err(Error::InvalidInput(format!("unknown objective `{other}` (distance or squared)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverOptions {
    pub n: usize,
    pub seed: u64,
    pub multistarts: usize,
    pub max_iterations: usize,
    /// Target for `‖r‖₂` of the squared residuals.
    pub residual_tol: f64,
    pub step_tol: f64,
    pub target_distance: f64,
    pub objective: Objective,
    /// Run starts on the rayon pool. The result is the same either way.
    pub parallel: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            n: 5,
            seed: 0,
            multistarts: 100,
            max_iterations: 200,
            residual_tol: 1e-12,
            step_tol: 1e-14,
            target_distance: 1.0,
            objective: Objective::Distance,
            parallel: true,
        }
    }
}

impl SolverOptions {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidInput(m.to_string()));
        if self.n < 2 {
            return bad("n must be at least 2");
        }
        if self.multistarts == 0 || self.max_iterations == 0 {
            return bad("multistarts and max_iterations must be positive");
        }
        for (name, v) in [
            ("residual_tol", self.residual_tol),
            ("step_tol", self.step_tol),
            ("target_distance", self.target_distance),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidInput(format!("{name} must be positive")));
            }
        }
        Ok(())
    }

    /// Largest accepted `|d_ij − target|`: `√residual_tol · target`.
    pub fn distance_tolerance(&self) -> f64 {
        self.residual_tol.sqrt() * self.target_distance
    }
}

/// What one start produced.
#[derive(Debug, Clone)]
pub struct StartOutcome<T> {
    pub start_index: usize,
    pub initial_params: Vec<T>,
    pub lm: LmOutcome<T>,
    /// Present when the start converged to an admissible configuration.
    pub configuration: Option<LineConfiguration<T>>,
}

/// A successful start.
#[derive(Debug, Clone)]
pub struct Solution<T> {
    pub configuration: LineConfiguration<T>,
    pub params: Vec<T>,
    pub start_index: usize,
    pub iterations: usize,
    pub residual_norm: T,
}

impl<T> Solution<T> {
    fn from_start(s: StartOutcome<T>) -> Option<Self> {
        let configuration = s.configuration?;
        Some(Self {
            configuration,
            params: s.lm.params,
            start_index: s.start_index,
            iterations: s.lm.iterations,
            residual_norm: s.lm.residual_norm,
        })
    }
}

/// Random gauge-fixed starting point for start `start_index`.
pub fn initial_params<T: Scalar>(n: usize, seed: u64, start_index: usize) -> Vec<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(start_index as u64);
    let sphere_angles = |rng: &mut ChaCha8Rng| {
        let g: [f64; 3] = std::array::from_fn(|_| StandardNormal.sample(rng));
        let len = (g[0] * g[0] + g[1] * g[1] + g[2] * g[2]).sqrt();
        ((g[2] / len).clamp(-1.0, 1.0).acos(), g[1].atan2(g[0]))
    };
    let moment = |rng: &mut ChaCha8Rng| rng.gen_range(-MOMENT_RANGE..MOMENT_RANGE);

    let mut out = Vec::with_capacity(dimension(n));
    let (theta, _) = sphere_angles(&mut rng);
    out.push(theta);
    out.push(moment(&mut rng));
    for _ in 2..n {
        let (theta, phi) = sphere_angles(&mut rng);
        out.extend([theta, phi, moment(&mut rng), moment(&mut rng)]);
    }
    out.into_iter().map(T::lit).collect()
}

/// Runs a single start.
pub fn run_start<T: Scalar>(opts: &SolverOptions, start_index: usize) -> StartOutcome<T> {
    let n = opts.n;
    let target = T::lit(opts.target_distance);
    let x0 = initial_params::<T>(n, opts.seed, start_index);
    let settings = LmSettings {
        max_iterations: opts.max_iterations,
        residual_tol: T::lit(opts.residual_tol),
        step_tol: T::lit(opts.step_tol),
        ..LmSettings::default()
    };
    let lm = levenberg_marquardt(x0.clone(), &settings, |p| objective(p, n, target, opts.objective));
    let configuration = lm.converged().then(|| accept(&lm.params, opts)).flatten();
    StartOutcome {
        start_index,
        initial_params: x0,
        lm,
        configuration,
    }
}

/// Residuals followed by the barrier terms, with the stacked Jacobian.
fn objective<T: Scalar>(p: &[T], n: usize, target: T, kind: Objective) -> (Vec<T>, Vec<Vec<T>>) {
    let (mut r, mut j) = match kind {
        Objective::Distance => (distance_residuals(p, n, target), distance_jacobian(p, n)),
        Objective::Squared => (residuals(p, n, target), jacobian(p, n, target)),
    };
    let (br, bj) = barrier(p, n);
    r.extend(br);
    j.extend(bj);
    (r, j)
}

fn accept<T: Scalar>(params: &[T], opts: &SolverOptions) -> Option<LineConfiguration<T>> {
    let config = LineConfiguration::new(decode(params, opts.n), T::lit(opts.target_distance))
        .ok()?
        .with_label(format!("n={} seed={}", opts.n, opts.seed));
    let ok = config.first_coplanar_pair().is_none()
        && config.max_abs_deviation() <= T::lit(opts.distance_tolerance());
    ok.then_some(config)
}

/// First successful start in index order.
pub fn solve<T: Scalar>(opts: &SolverOptions) -> Result<Solution<T>> {
    opts.validate()?;
    let best = AtomicU64::new(f64::INFINITY.to_bits());
    let attempt = |k: usize| {
        let s = run_start::<T>(opts, k);
        // non-negative floats order like their bit patterns
        best.fetch_min(s.lm.residual_norm.to_f64_lossy().abs().to_bits(), Ordering::Relaxed);
        Solution::from_start(s)
    };
    let found = if opts.parallel {
        (0..opts.multistarts).into_par_iter().find_map_first(attempt)
    } else {
        (0..opts.multistarts).find_map(attempt)
    };
    found.ok_or_else(|| Error::NoConvergence {
        starts: opts.multistarts,
        best_residual: f64::from_bits(best.load(Ordering::Relaxed)),
    })
}

/// Every start's outcome, in index order.
pub fn run_all<T: Scalar>(opts: &SolverOptions) -> Result<Vec<StartOutcome<T>>> {
    opts.validate()?;
    Ok(if opts.parallel {
        (0..opts.multistarts).into_par_iter().map(|k| run_start(opts, k)).collect()
    } else {
        (0..opts.multistarts).map(|k| run_start(opts, k)).collect()
    })
}

/// Every successful start, in index order.
pub fn solve_all<T: Scalar>(opts: &SolverOptions) -> Result<Vec<Solution<T>>> {
    Ok(run_all(opts)?.into_iter().filter_map(Solution::from_start).collect())
}

/// Rigid-motion and relabeling invariant summary of a configuration.
#[derive(Debug, Clone)]
pub struct Fingerprint<T> {
    /// Sorted `arccos |⟨v_i, v_j⟩|`.
    pub angles: Vec<T>,
    pub graph: Option<SignedCompleteGraph>,
}

impl<T: Scalar> Fingerprint<T> {
    pub fn of(config: &LineConfiguration<T>) -> Self {
        let dirs = config.directions();
        let mut angles: Vec<T> = config
            .pairs()
            .map(|(i, j)| dirs[i].dot(dirs[j]).abs().min(T::one()).acos())
            .collect();
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        Self {
            angles,
            graph: config.chirality_graph().ok(),
        }
    }

    /// Angles agree to `tol` and the chirality graphs are switching-isomorphic.
    pub fn matches(&self, other: &Self, tol: T) -> bool {
        let angles_agree = self.angles.len() == other.angles.len()
            && self.angles.iter().zip(&other.angles).all(|(a, b)| (*a - *b).abs() <= tol);
        let graphs_agree = match (&self.graph, &other.graph) {
            (Some(a), Some(b)) => matches!(switching_isomorphic(a, b), Ok(Some(_))),
            (None, None) => true,
            _ => false,
        };
        angles_agree && graphs_agree
    }
}

/// Indices of pairwise distinct configurations (first representative kept).
pub fn dedupe<T: Scalar>(configs: &[LineConfiguration<T>]) -> Vec<usize> {
    let tol = T::lit(1e-6);
    let prints: Vec<Fingerprint<T>> = configs.iter().map(Fingerprint::of).collect();
    let mut kept: Vec<usize> = Vec::new();
    for (i, p) in prints.iter().enumerate() {
        if !kept.iter().any(|&k| prints[k].matches(p, tol)) {
            kept.push(i);
        }
    }
    kept
}
