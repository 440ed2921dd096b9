//! Exact verification of cocycle deformations of torus-graded function
//! algebras: noncommutative tori, θ-deformed spheres, deformed compact quantum
//! groups and their homogeneous spaces, isospectral spectral triples, and
//! Chern characters of the deformed instanton projector.

pub mod algebra;
pub mod chern;
pub mod cocycle;
pub mod coeff;
pub mod error;
pub mod homog;
pub mod hopf;
pub mod sampling;
pub mod spin;
pub mod suite;

pub use coeff::{CycScalar, RationalAngle};
pub use cocycle::{DeformMatrix, DoubledMatrix};
pub use error::{Error, Result};
