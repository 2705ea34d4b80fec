//! Exact computer algebra for noncommutative spheres: parameter field Q(q, p, s),
//! presented algebras with normal forms, projector and Chern character checks,
//! the FRT construction and numerical representation checks.

pub mod chern;
pub mod coeff;
pub mod error;
pub mod exprio;
pub mod frt;
pub mod matrix;
pub mod ncpoly;
pub mod presentations;
pub mod repr;

pub use error::{Error, Result};
