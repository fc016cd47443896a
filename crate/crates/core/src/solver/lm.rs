//! Levenberg–Marquardt for small dense least-squares problems.

use crate::linalg::{cholesky_solve, SquareMatrix};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy)]
pub struct LmSettings<T> {
    pub max_iterations: usize,
    /// Stop once `‖r‖₂` falls below this.
    pub residual_tol: T,
    /// Stop once an accepted step is shorter than this (relative to `1 + ‖x‖`).
    pub step_tol: T,
    pub initial_lambda: T,
    /// Extra accepted iterations allowed after `residual_tol` is met, as long
    /// as each one still lowers the residual.
    pub polish_iterations: usize,
}

impl<T: Scalar> Default for LmSettings<T> {
    fn default() -> Self {
        Self {
            max_iterations: 200,
            residual_tol: T::lit(1e-12),
            step_tol: T::lit(1e-14),
            initial_lambda: T::lit(1e-3),
            polish_iterations: 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    ResidualTolerance,
    StepTolerance,
    MaxIterations,
    /// Damping grew without finding a descent step.
    Stalled,
    NonFinite,
}

#[derive(Debug, Clone)]
pub struct LmOutcome<T> {
    pub params: Vec<T>,
    pub residual_norm: T,
    pub iterations: usize,
    pub termination: Termination,
}

impl<T: Scalar> LmOutcome<T> {
    pub fn converged(&self) -> bool {
        self.termination == Termination::ResidualTolerance
    }
}

fn norm<T: Scalar>(r: &[T]) -> T {
    r.iter().fold(T::zero(), |s, &x| s + x * x).sqrt()
}

/// Minimizes `½‖r(x)‖²`. `eval` returns the residual vector and its row-major Jacobian.
///
/// Damped normal equations `(JᵀJ + λI) δ = −Jᵀr`; λ is divided by 10 on an
/// accepted step and multiplied by 10 on a rejected one.
pub fn levenberg_marquardt<T, F>(x0: Vec<T>, settings: &LmSettings<T>, mut eval: F) -> LmOutcome<T>
where
    T: Scalar,
    F: FnMut(&[T]) -> (Vec<T>, Vec<Vec<T>>),
{
    let dim = x0.len();
    let mut x = x0;
    let (mut r, mut jac) = eval(&x);
    let mut rnorm = norm(&r);
    let mut lambda = settings.initial_lambda;
    let lambda_max = T::lit(1e16);
    let lambda_min = T::lit(1e-20);
    let mut polish_left: Option<usize> = None;

    let finish = |x: Vec<T>, rnorm: T, iterations, termination| LmOutcome {
        params: x,
        residual_norm: rnorm,
        iterations,
        termination,
    };

    if !rnorm.is_finite() {
        return finish(x, rnorm, 0, Termination::NonFinite);
    }

    for it in 0..settings.max_iterations {
        if rnorm < settings.residual_tol {
            let left = *polish_left.get_or_insert(settings.polish_iterations);
            if left == 0 {
                return finish(x, rnorm, it, Termination::ResidualTolerance);
            }
        }

        let mut jtj = SquareMatrix::zeros(dim);
        let mut grad = vec![T::zero(); dim];
        for (row, &ri) in jac.iter().zip(&r) {
            for a in 0..dim {
                if row[a] == T::zero() {
                    continue;
                }
                grad[a] = grad[a] + row[a] * ri;
                for b in a..dim {
                    jtj[(a, b)] = jtj[(a, b)] + row[a] * row[b];
                }
            }
        }
        for a in 0..dim {
            for b in 0..a {
                jtj[(a, b)] = jtj[(b, a)];
            }
        }
        let rhs: Vec<T> = grad.iter().map(|&g| -g).collect();

        loop {
            let mut damped = jtj.clone();
            for a in 0..dim {
                damped[(a, a)] = damped[(a, a)] + lambda;
            }
            let step = cholesky_solve(&damped, &rhs);
            let Some(step) = step.filter(|s| s.iter().all(|v| v.is_finite())) else {
                lambda = lambda * T::lit(10.0);
                if lambda > lambda_max {
                    let term = if polish_left.is_some() { Termination::ResidualTolerance } else { Termination::Stalled };
                    return finish(x, rnorm, it, term);
                }
                continue;
            };
            let trial: Vec<T> = x.iter().zip(&step).map(|(&a, &d)| a + d).collect();
            let (r_new, jac_new) = eval(&trial);
            let n_new = norm(&r_new);
            if n_new.is_finite() && n_new < rnorm {
                let step_norm = norm(&step);
                let x_norm = norm(&x);
                x = trial;
                r = r_new;
                jac = jac_new;
                rnorm = n_new;
                lambda = (lambda / T::lit(10.0)).max(lambda_min);
                if let Some(left) = polish_left.as_mut() {
                    *left = left.saturating_sub(1);
                }
                if step_norm < settings.step_tol * (T::one() + x_norm) {
                    let term = if rnorm < settings.residual_tol {
                        Termination::ResidualTolerance
                    } else {
                        Termination::StepTolerance
                    };
                    return finish(x, rnorm, it + 1, term);
                }
                break;
            }
            lambda = lambda * T::lit(10.0);
            if lambda > lambda_max {
                let term = if polish_left.is_some() { Termination::ResidualTolerance } else { Termination::Stalled };
                return finish(x, rnorm, it + 1, term);
            }
        }
    }
    let term = if rnorm < settings.residual_tol {
        Termination::ResidualTolerance
    } else {
        Termination::MaxIterations
    };
    finish(x, rnorm, settings.max_iterations, term)
}
