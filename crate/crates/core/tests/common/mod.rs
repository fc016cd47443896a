#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use touching_lines::geometry::{DirectedLine, RigidMotion, Vector3};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn unit_vector(rng: &mut ChaCha8Rng) -> Vector3<f64> {
    loop {
        let g: [f64; 3] = std::array::from_fn(|_| StandardNormal.sample(rng));
        if let Some(v) = Vector3::from(g).normalized() {
            return v;
        }
    }
}

pub fn point(rng: &mut ChaCha8Rng, half_width: f64) -> Vector3<f64> {
    Vector3::new(
        rng.gen_range(-half_width..half_width),
        rng.gen_range(-half_width..half_width),
        rng.gen_range(-half_width..half_width),
    )
}

pub fn line(rng: &mut ChaCha8Rng) -> DirectedLine<f64> {
    DirectedLine::new(point(rng, 2.0), unit_vector(rng)).unwrap()
}

/// A pair whose directions are at least `min_sine` from parallel.
pub fn skew_pair(rng: &mut ChaCha8Rng, min_sine: f64) -> (DirectedLine<f64>, DirectedLine<f64>) {
    loop {
        let (a, b) = (line(rng), line(rng));
        let c = a.direction().cross(b.direction());
        let gap = c.dot(a.moment_point() - b.moment_point()).abs();
        if c.norm() >= min_sine && gap > 1e-3 {
            return (a, b);
        }
    }
}

pub fn rigid_motion(rng: &mut ChaCha8Rng) -> RigidMotion<f64> {
    let q: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(rng));
    RigidMotion::from_quaternion(q, point(rng, 5.0)).unwrap()
}

/// `n` unit vectors with pairwise angles at least `min_angle` (mod π).
pub fn spread_unit_vectors(rng: &mut ChaCha8Rng, n: usize, min_angle: f64) -> Vec<Vector3<f64>> {
    loop {
        let vs: Vec<_> = (0..n).map(|_| unit_vector(rng)).collect();
        let ok = (0..n).all(|i| (i + 1..n).all(|j| vs[i].cross(vs[j]).norm() >= min_angle.sin()));
        if ok {
            return vs;
        }
    }
}
