//! Static exports: cylinder meshes (Wavefront OBJ) and line tables (CSV).

use std::fmt::Write;

use crate::config::LineConfiguration;
use crate::geometry::Vector3;

/// Facets around each cylinder.
pub const OBJ_SEGMENTS: usize = 32;

/// Any unit vector orthogonal to `v` (for unit `v`).
fn orthogonal_unit(v: Vector3<f64>) -> Vector3<f64> {
    let helper = if v.x.abs() < 0.9 { Vector3::e1() } else { Vector3::e2() };
    v.cross(helper).normalized().expect("helper is not parallel to v")
}

/// One closed cylinder per line, centered on the moment point, with the given
/// radius and length. Objects are named `cylinder_1`, `cylinder_2`, ...
pub fn to_obj(config: &LineConfiguration<f64>, radius: f64, length: f64) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {} cylinders, radius {radius}, length {length}", config.n());
    let mut base = 1usize;
    for (k, line) in config.lines.iter().enumerate() {
        let v = line.direction();
        let p = orthogonal_unit(v);
        let q = v.cross(p);
        let ends = [line.point_at(-length / 2.0), line.point_at(length / 2.0)];
        let _ = writeln!(out, "o cylinder_{}", k + 1);
        for end in ends {
            for s in 0..OBJ_SEGMENTS {
                let t = std::f64::consts::TAU * s as f64 / OBJ_SEGMENTS as f64;
                let x = end + (p * t.cos() + q * t.sin()) * radius;
                let _ = writeln!(out, "v {:.12} {:.12} {:.12}", x.x, x.y, x.z);
            }
        }
        for c in ends {
            let _ = writeln!(out, "v {:.12} {:.12} {:.12}", c.x, c.y, c.z);
        }
        let bottom = |s: usize| base + s % OBJ_SEGMENTS;
        let top = |s: usize| base + OBJ_SEGMENTS + s % OBJ_SEGMENTS;
        let (bottom_center, top_center) = (base + 2 * OBJ_SEGMENTS, base + 2 * OBJ_SEGMENTS + 1);
        for s in 0..OBJ_SEGMENTS {
            let _ = writeln!(out, "f {} {} {} {}", bottom(s), bottom(s + 1), top(s + 1), top(s));
        }
        for s in 0..OBJ_SEGMENTS {
            let _ = writeln!(out, "f {} {} {}", bottom_center, bottom(s + 1), bottom(s));
            let _ = writeln!(out, "f {} {} {}", top_center, top(s), top(s + 1));
        }
        base += 2 * OBJ_SEGMENTS + 2;
    }
    out
}

/// Header plus one row per line: moment point, then unit direction.
pub fn to_csv(config: &LineConfiguration<f64>) -> String {
    let mut out = String::from("line,px,py,pz,dx,dy,dz\n");
    for (k, l) in config.lines.iter().enumerate() {
        let (p, d) = (l.moment_point(), l.direction());
        let _ = writeln!(out, "{},{},{},{},{},{},{}", k + 1, p.x, p.y, p.z, d.x, d.y, d.z);
    }
    out
}
