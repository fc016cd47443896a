//! Directed lines in 3-space.
//!
//! A line is stored as a unit direction `v` together with its *moment point*
//! `w`, the point of the line closest to the origin (so `⟨w, v⟩ = 0`). All the
//! pairwise quantities below are expressed through `v × v'` and `w − w'`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Directions shorter than this are rejected by [`normalize_line`].
pub const ZERO_DIRECTION_TOL: f64 = 1e-12;
/// `‖v × v'‖` below this classifies a pair as parallel.
pub const PARALLEL_TOL: f64 = 1e-9;
/// `|⟨v × v', w − w'⟩|` below `COPLANAR_TOL · max(1, ‖w − w'‖)` classifies a
/// non-parallel pair as intersecting.
pub const COPLANAR_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(
    from = "[T; 3]",
    into = "[T; 3]",
    bound(serialize = "T: Serialize + Clone", deserialize = "T: Deserialize<'de>")
)]
pub struct Vector3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T> From<[T; 3]> for Vector3<T> {
    fn from([x, y, z]: [T; 3]) -> Self {
        Self { x, y, z }
    }
}

impl<T> From<Vector3<T>> for [T; 3] {
    fn from(v: Vector3<T>) -> Self {
        [v.x, v.y, v.z]
    }
}

impl<T: Scalar> Vector3<T> {
    pub const fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    pub fn e1() -> Self {
        Self::new(T::one(), T::zero(), T::zero())
    }

    pub fn e2() -> Self {
        Self::new(T::zero(), T::one(), T::zero())
    }

    pub fn e3() -> Self {
        Self::new(T::zero(), T::zero(), T::one())
    }

    #[inline]
    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    #[inline]
    pub fn cross(self, o: Self) -> Self {
        Self::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    #[inline]
    pub fn norm_squared(self) -> T {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> T {
        self.norm_squared().sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Unit vector in the same direction, or `None` below [`ZERO_DIRECTION_TOL`].
    pub fn normalized(self) -> Option<Self> {
        let n = self.norm();
        (n >= T::lit(ZERO_DIRECTION_TOL) && n.is_finite()).then(|| self * n.recip())
    }

    pub fn map(self, f: impl Fn(T) -> T) -> Self {
        Self::new(f(self.x), f(self.y), f(self.z))
    }

    pub fn to_array(self) -> [T; 3] {
        self.into()
    }
}

impl<T: Scalar> Add for Vector3<T> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<T: Scalar> Sub for Vector3<T> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<T: Scalar> Neg for Vector3<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

impl<T: Scalar> Mul<T> for Vector3<T> {
    type Output = Self;
    #[inline]
    fn mul(self, s: T) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }
}

/// Edge sign of a chirality graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_value(v: i64) -> Option<Self> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    /// Sign of a non-zero real; `None` for zero or NaN.
    pub fn of<T: Scalar>(x: T) -> Option<Self> {
        if x > T::zero() {
            Some(Sign::Plus)
        } else if x < T::zero() {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn to_scalar<T: Scalar>(self) -> T {
        match self {
            Sign::Plus => T::one(),
            Sign::Minus => -T::one(),
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, o: Sign) -> Sign {
        if self == o {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i8(self.value())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = i64::deserialize(d)?;
        Sign::from_value(v).ok_or_else(|| serde::de::Error::custom(format!("sign must be 1 or -1, got {v}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairClass {
    Skew,
    Parallel,
    Intersecting,
    Identical,
}

/// A directed line `ℝv + w` with `‖v‖ = 1` and `⟨w, v⟩ = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectedLine<T> {
    direction: Vector3<T>,
    moment_point: Vector3<T>,
}

/// Canonical line through `point` with the orientation of `direction`.
pub fn normalize_line<T: Scalar>(point: Vector3<T>, direction: Vector3<T>) -> Result<DirectedLine<T>> {
    if !point.is_finite() {
        return Err(Error::InvalidInput("non-finite point".into()));
    }
    let v = direction.normalized().ok_or(Error::ZeroDirection)?;
    Ok(DirectedLine {
        direction: v,
        moment_point: point - v * point.dot(v),
    })
}

impl<T: Scalar> DirectedLine<T> {
    pub fn new(point: Vector3<T>, direction: Vector3<T>) -> Result<Self> {
        normalize_line(point, direction)
    }

    /// The x-axis, directed along `+e₁`.
    pub fn x_axis() -> Self {
        Self {
            direction: Vector3::e1(),
            moment_point: Vector3::zero(),
        }
    }

    pub fn direction(&self) -> Vector3<T> {
        self.direction
    }

    pub fn moment_point(&self) -> Vector3<T> {
        self.moment_point
    }

    /// Point of the line at parameter `s` from the moment point.
    pub fn point_at(&self, s: T) -> Vector3<T> {
        self.moment_point + self.direction * s
    }

    pub fn reverse(&self) -> Self {
        Self {
            direction: -self.direction,
            moment_point: self.moment_point,
        }
    }

    /// Mirror image under `(x, y, z) ↦ (x, y, −z)`.
    pub fn reflect_z(&self) -> Self {
        let flip = |v: Vector3<T>| Vector3::new(v.x, v.y, -v.z);
        normalize_line(flip(self.moment_point), flip(self.direction)).expect("reflection preserves length")
    }

    pub fn plucker(&self) -> PluckerLine<T> {
        PluckerLine {
            q: self.moment_point.cross(self.direction),
            v: self.direction,
        }
    }

    pub fn transformed(&self, motion: &RigidMotion<T>) -> Self {
        normalize_line(motion.apply_point(self.moment_point), motion.apply_vector(self.direction))
            .expect("rotation preserves length")
    }

    pub fn scaled(&self, factor: T) -> Self {
        Self {
            direction: self.direction,
            moment_point: self.moment_point * factor,
        }
    }
}

pub fn reverse<T: Scalar>(a: &DirectedLine<T>) -> DirectedLine<T> {
    a.reverse()
}

pub fn reflect_z<T: Scalar>(a: &DirectedLine<T>) -> DirectedLine<T> {
    a.reflect_z()
}

pub fn plucker<T: Scalar>(a: &DirectedLine<T>) -> PluckerLine<T> {
    a.plucker()
}

/// Plücker coordinates `(q, v)` with `q = w × v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Serialize + Clone", deserialize = "T: Deserialize<'de>"))]
pub struct PluckerLine<T> {
    pub q: Vector3<T>,
    pub v: Vector3<T>,
}

impl<T: Scalar> PluckerLine<T> {
    /// The six coordinates `(q, v)` stacked.
    pub fn coords(&self) -> [T; 6] {
        [self.q.x, self.q.y, self.q.z, self.v.x, self.v.y, self.v.z]
    }

    /// `⟨q_a, v_b⟩ + ⟨v_a, q_b⟩`, the split form pairing of two lines.
    pub fn pairing(&self, other: &Self) -> T {
        self.q.dot(other.v) + self.v.dot(other.q)
    }
}

pub fn classify_pair<T: Scalar>(a: &DirectedLine<T>, b: &DirectedLine<T>, tol: T) -> PairClass {
    let c = a.direction.cross(b.direction);
    let dw = a.moment_point - b.moment_point;
    if c.norm() < tol {
        if parallel_offset(a, b) < tol * T::one().max(dw.norm()) {
            PairClass::Identical
        } else {
            PairClass::Parallel
        }
    } else if c.dot(dw).abs() < tol * T::one().max(dw.norm()) {
        PairClass::Intersecting
    } else {
        PairClass::Skew
    }
}

/// [`classify_pair`] at the default thresholds.
pub fn classify<T: Scalar>(a: &DirectedLine<T>, b: &DirectedLine<T>) -> PairClass {
    classify_pair(a, b, T::lit(PARALLEL_TOL))
}

fn parallel_offset<T: Scalar>(a: &DirectedLine<T>, b: &DirectedLine<T>) -> T {
    let dw = a.moment_point - b.moment_point;
    (dw - a.direction * dw.dot(a.direction)).norm()
}

/// Euclidean distance `min ‖x − y‖` over `x ∈ a`, `y ∈ b`.
pub fn distance<T: Scalar>(a: &DirectedLine<T>, b: &DirectedLine<T>) -> T {
    match classify(a, b) {
        PairClass::Skew => {
            let c = a.direction.cross(b.direction);
            (c.dot(a.moment_point - b.moment_point) / c.norm()).abs()
        }
        PairClass::Parallel | PairClass::Identical => parallel_offset(a, b),
        PairClass::Intersecting => T::zero(),
    }
}

/// `ε(a, b) = sgn⟨v_a × v_b, w_a − w_b⟩`, defined for skew pairs only.
pub fn chirality<T: Scalar>(a: &DirectedLine<T>, b: &DirectedLine<T>) -> Result<Sign> {
    if classify(a, b) != PairClass::Skew {
        return Err(Error::CoplanarPair(1, 2));
    }
    Sign::of(signed_gram_entry(a, b)).ok_or(Error::CoplanarPair(1, 2))
}

/// `⟨v_a × v_b, w_a − w_b⟩`.
pub fn signed_gram_entry<T: Scalar>(a: &DirectedLine<T>, b: &DirectedLine<T>) -> T {
    a.direction.cross(b.direction).dot(a.moment_point - b.moment_point)
}

/// Proper rigid motion `x ↦ R x + t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidMotion<T> {
    rotation: [[T; 3]; 3],
    translation: Vector3<T>,
}

impl<T: Scalar> RigidMotion<T> {
    /// Rotation from a (not necessarily unit) quaternion `w + xi + yj + zk`.
    pub fn from_quaternion(q: [T; 4], translation: Vector3<T>) -> Option<Self> {
        let n = q.iter().fold(T::zero(), |s, &c| s + c * c).sqrt();
        if !(n > T::zero()) {
            return None;
        }
        let [w, x, y, z] = q.map(|c| c / n);
        let two = T::lit(2.0);
        let one = T::one();
        let rotation = [
            [one - two * (y * y + z * z), two * (x * y - w * z), two * (x * z + w * y)],
            [two * (x * y + w * z), one - two * (x * x + z * z), two * (y * z - w * x)],
            [two * (x * z - w * y), two * (y * z + w * x), one - two * (x * x + y * y)],
        ];
        Some(Self { rotation, translation })
    }

    pub fn apply_vector(&self, v: Vector3<T>) -> Vector3<T> {
        let r = &self.rotation;
        Vector3::new(
            r[0][0] * v.x + r[0][1] * v.y + r[0][2] * v.z,
            r[1][0] * v.x + r[1][1] * v.y + r[1][2] * v.z,
            r[2][0] * v.x + r[2][1] * v.y + r[2][2] * v.z,
        )
    }

    pub fn apply_point(&self, p: Vector3<T>) -> Vector3<T> {
        self.apply_vector(p) + self.translation
    }
}
