//! Gauge-fixed parametrization of `n` directed lines and the unit-distance
//! residuals.
//!
//! Line `i` has spherical angles `(θ, φ)` for its direction
//! `v = (sin θ cos φ, sin θ sin φ, cos θ)` and moment `w = a p + b q` in the
//! frame `p = (−sin φ, cos φ, 0)`, `q = (−cos θ cos φ, −cos θ sin φ, sin θ)`,
//! which satisfies `p × q = v`. Rigid motions are removed by freezing line 1
//! to the x-axis and constraining line 2 to `φ = 0`, `b = 0` (direction in the
//! xz-plane, moment on the y-axis). That leaves `2 + 4(n − 2) = 4n − 6`
//! unknowns.

use crate::geometry::{normalize_line, DirectedLine, Vector3};
use crate::scalar::Scalar;

/// `‖v_i × v_j‖²` below which the parallel barrier switches on.
pub const BARRIER_THRESHOLD: f64 = 1e-6;

/// Number of free parameters for `n ≥ 2` lines.
pub fn dimension(n: usize) -> usize {
    assert!(n >= 2, "need at least two lines");
    4 * n - 6
}

pub fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Per-line angles and moment coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineParams<T> {
    pub theta: T,
    pub phi: T,
    pub a: T,
    pub b: T,
}

/// Expands the free parameter vector into all `n` lines' parameters.
pub fn expand<T: Scalar>(params: &[T], n: usize) -> Vec<LineParams<T>> {
    assert_eq!(params.len(), dimension(n), "parameter vector has the wrong length");
    let z = T::zero();
    let mut out = Vec::with_capacity(n);
    out.push(LineParams {
        theta: T::FRAC_PI_2(),
        phi: z,
        a: z,
        b: z,
    });
    out.push(LineParams {
        theta: params[0],
        phi: z,
        a: params[1],
        b: z,
    });
    for chunk in params[2..].chunks_exact(4) {
        out.push(LineParams {
            theta: chunk[0],
            phi: chunk[1],
            a: chunk[2],
            b: chunk[3],
        });
    }
    out
}

/// Inverse of [`expand`] on the free coordinates.
pub fn compress<T: Scalar>(lines: &[LineParams<T>]) -> Vec<T> {
    let mut out = vec![lines[1].theta, lines[1].a];
    for l in &lines[2..] {
        out.extend([l.theta, l.phi, l.a, l.b]);
    }
    out
}

/// Parameter columns owned by line `k` (0-based), in `(θ, φ, a, b)` order.
fn columns(k: usize) -> [Option<usize>; 4] {
    match k {
        0 => [None; 4],
        1 => [Some(0), None, Some(1), None],
        _ => {
            let base = 2 + 4 * (k - 2);
            [Some(base), Some(base + 1), Some(base + 2), Some(base + 3)]
        }
    }
}

/// A line with the partial derivatives of `(v, w)` in `(θ, φ, a, b)`.
struct LineJet<T> {
    v: Vector3<T>,
    w: Vector3<T>,
    dv: [Vector3<T>; 4],
    dw: [Vector3<T>; 4],
}

fn jet<T: Scalar>(k: usize, p: &LineParams<T>) -> LineJet<T> {
    let z = Vector3::zero();
    if k == 0 {
        // exact x-axis, no trigonometric round-off
        return LineJet {
            v: Vector3::e1(),
            w: z,
            dv: [z; 4],
            dw: [z; 4],
        };
    }
    let (st, ct) = p.theta.sin_cos();
    let (sp, cp) = p.phi.sin_cos();
    let v = Vector3::new(st * cp, st * sp, ct);
    let pv = Vector3::new(-sp, cp, T::zero());
    let qv = Vector3::new(-ct * cp, -ct * sp, st);
    let dp_dphi = Vector3::new(-cp, -sp, T::zero());
    let dq_dphi = Vector3::new(ct * sp, -ct * cp, T::zero());
    LineJet {
        v,
        w: pv * p.a + qv * p.b,
        dv: [-qv, pv * st, z, z],
        dw: [v * p.b, dp_dphi * p.a + dq_dphi * p.b, pv, qv],
    }
}

fn jets<T: Scalar>(params: &[T], n: usize) -> Vec<LineJet<T>> {
    expand(params, n).iter().enumerate().map(|(k, p)| jet(k, p)).collect()
}

/// The lines encoded by a parameter vector.
pub fn decode<T: Scalar>(params: &[T], n: usize) -> Vec<DirectedLine<T>> {
    jets(params, n)
        .into_iter()
        .map(|j| normalize_line(j.w, j.v).expect("unit direction by construction"))
        .collect()
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| ((i + 1)..n).map(move |j| (i, j)))
}

/// `r_ij = ⟨v_i × v_j, w_i − w_j⟩² − target² ‖v_i × v_j‖²`, lexicographic in `(i, j)`.
///
/// Zero exactly when the pair sits at distance `target` (or is parallel).
pub fn residuals<T: Scalar>(params: &[T], n: usize, target: T) -> Vec<T> {
    pair_rows(params, n, false, |g, s, _| g * g - target * target * s)
}

/// Row-major `C(n, 2) × (4n − 6)` Jacobian of [`residuals`].
pub fn jacobian<T: Scalar>(params: &[T], n: usize, target: T) -> Vec<Vec<T>> {
    let t2 = target * target;
    let two = T::lit(2.0);
    pair_rows(params, n, true, |g, _, d| {
        d.iter().map(|&(dg, ds)| two * g * dg - t2 * ds).collect::<Vec<_>>()
    })
}

/// `r_ij / ‖v_i × v_j‖² = d(L_i, L_j)² − target²`.
///
/// Same zero set on skew pairs as [`residuals`], but it does not shrink as a
/// pair turns parallel.
pub fn distance_residuals<T: Scalar>(params: &[T], n: usize, target: T) -> Vec<T> {
    pair_rows(params, n, false, |g, s, _| g * g / s - target * target)
}

/// Row-major Jacobian of [`distance_residuals`].
pub fn distance_jacobian<T: Scalar>(params: &[T], n: usize) -> Vec<Vec<T>> {
    let two = T::lit(2.0);
    pair_rows(params, n, true, |g, s, d| {
        let d2 = g * g / s;
        d.iter().map(|&(dg, ds)| (two * g * dg - d2 * ds) / s).collect::<Vec<_>>()
    })
}

/// Evaluates `f(g, s, ∂)` per pair, with `g = ⟨c, w_i − w_j⟩`, `s = ‖c‖²`,
/// `c = v_i × v_j`, and `∂` holding `(∂g, ∂s)` for every free column
/// (all zero unless `derivatives`).
fn pair_rows<T: Scalar, R>(params: &[T], n: usize, derivatives: bool, f: impl Fn(T, T, &[(T, T)]) -> R) -> Vec<R> {
    let js = jets(params, n);
    let dim = if derivatives { dimension(n) } else { 0 };
    let two = T::lit(2.0);
    let mut d = vec![(T::zero(), T::zero()); dim];
    pairs(n)
        .map(|(i, j)| {
            let c = js[i].v.cross(js[j].v);
            let dw = js[i].w - js[j].w;
            let g = c.dot(dw);
            if derivatives {
                d.iter_mut().for_each(|x| *x = (T::zero(), T::zero()));
                for (col, k) in columns(i).into_iter().zip(0..4) {
                    if let Some(col) = col {
                        let dc = js[i].dv[k].cross(js[j].v);
                        let e = &mut d[col];
                        *e = (e.0 + dc.dot(dw) + c.dot(js[i].dw[k]), e.1 + two * c.dot(dc));
                    }
                }
                for (col, k) in columns(j).into_iter().zip(0..4) {
                    if let Some(col) = col {
                        let dc = js[i].v.cross(js[j].dv[k]);
                        let e = &mut d[col];
                        *e = (e.0 + dc.dot(dw) - c.dot(js[j].dw[k]), e.1 + two * c.dot(dc));
                    }
                }
            }
            f(g, c.norm_squared(), &d)
        })
        .collect()
}

/// Penalty `max(0, δ − ‖v_i × v_j‖²)` per pair, and its Jacobian.
pub fn barrier<T: Scalar>(params: &[T], n: usize) -> (Vec<T>, Vec<Vec<T>>) {
    let js = jets(params, n);
    let dim = dimension(n);
    let delta = T::lit(BARRIER_THRESHOLD);
    let two = T::lit(2.0);
    pairs(n)
        .map(|(i, j)| {
            let mut row = vec![T::zero(); dim];
            let c = js[i].v.cross(js[j].v);
            let gap = delta - c.norm_squared();
            if gap <= T::zero() {
                return (T::zero(), row);
            }
            for (col, k) in columns(i).into_iter().zip(0..4) {
                if let Some(col) = col {
                    row[col] = row[col] - two * c.dot(js[i].dv[k].cross(js[j].v));
                }
            }
            for (col, k) in columns(j).into_iter().zip(0..4) {
                if let Some(col) = col {
                    row[col] = row[col] - two * c.dot(js[i].v.cross(js[j].dv[k]));
                }
            }
            (gap, row)
        })
        .unzip()
}
