//! Configurations of directed lines in 3-space at a common pairwise distance:
//! the axes of mutually touching congruent infinite cylinders.
//!
//! The crate computes chirality graphs of skew lines, certifies the spectral
//! facts that forbid a monochromatic `K5` in them, analyses signed complete
//! graphs up to switching, and searches for configurations numerically.
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix `f64`, which is what the file formats and the solver use in
//! practice. Series coefficients are exact rationals.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod export;
pub mod geometry;
pub mod linalg;
pub mod scalar;
pub mod signed_graph;
pub mod solver;
pub mod spectral;

pub use error::{Error, Result};
pub use geometry::{PairClass, Sign};
pub use scalar::Scalar;
pub use signed_graph::{CliqueWitness, SignedCompleteGraph, SwitchingMap};
pub use solver::{Objective, SolverOptions};
pub use spectral::Signature;

pub type Vector3 = geometry::Vector3<f64>;
pub type DirectedLine = geometry::DirectedLine<f64>;
pub type PluckerLine = geometry::PluckerLine<f64>;
pub type RigidMotion = geometry::RigidMotion<f64>;
pub type LineConfiguration = config::LineConfiguration<f64>;
pub type SymmetricMatrixReport = spectral::SymmetricMatrixReport<f64>;
pub type VerificationReport = solver::VerificationReport<f64>;
pub type Solution = solver::Solution<f64>;
pub type SquareMatrix = linalg::SquareMatrix<f64>;

pub type Vector3f = geometry::Vector3<f32>;
pub type DirectedLinef = geometry::DirectedLine<f32>;
