//! Generalized conic functions on planar compact bodies.
//!
//! A conic function measures the average taxicab distance from a point to a
//! compact body `K`, weighted by a finite measure on `K`. This crate
//! evaluates such functions and their gradients, locates the global minimizer
//! deterministically by mass bisection, runs the stochastic sign-vector
//! recursion toward the same point, and ships the diagnostics that check the
//! two against each other.
//!
//! Modules:
//! - [`geometry`]: bodies, membership, bounding boxes, slices
//! - [`measure`]: finite measures with mass, moment, X-ray, and sampling queries
//! - [`conic`]: evaluation, gradient, and Lipschitz bound of the conic function
//! - [`oracle`]: mass-bisection minimizer and X-ray equivalence
//! - [`rm`]: the stochastic recursion and its trajectories
//! - [`diagnostics`]: replicated runs and convergence reports
//! - [`fixtures`]: ready-made bodies and measures

pub mod conic;
pub mod diagnostics;
mod error;
pub mod fixtures;
pub mod geometry;
pub mod measure;
pub mod oracle;
pub mod rm;

pub use conic::ConicFunction;
pub use diagnostics::{ErrorStat, ReplicationReport};
pub use error::{Error, Result};
pub use geometry::{BoundingBox, CompactBody, Point2, Shape};
pub use measure::{
    Axis, BodyMeasure, Density1, GeneralDensity, HalfPlaneQuery, MeasureKind, QuadrantMasses, Side,
    DEFAULT_RESOLUTION,
};
pub use oracle::{BisectionResult, Interval};
pub use rm::{SignVector, StepSchedule, Trajectory};
