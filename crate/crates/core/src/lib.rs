//! Exact Ehrhart quasi-polynomials of rational polytopes and polytopal balls.
//!
//! The crate builds rational polytopes (and finite unions of them), counts
//! lattice points in their integer dilates, recovers the Ehrhart
//! quasi-polynomial by exact interpolation, and reads off the periods of the
//! coefficient functions.

pub mod error;
pub mod linalg;
pub mod lp;
pub mod qpalg;
pub mod rational;

pub use error::{Error, Result};
pub use rational::Rational;
pub mod polygeom;
pub mod latcount;
pub mod constructions;
