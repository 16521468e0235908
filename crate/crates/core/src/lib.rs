//! Numerical toolkit for polyharmonic and polyanalytic maps of the unit disk:
//! series evaluation, univalence scans, accessibility margins, a weighted
//! Poisson-type Dirichlet solver, and SVG/CSV rendering of disk images.

pub mod accessibility;
mod cpx;
mod error;
pub mod kernel;
pub mod polyharmonic;
pub mod render;
pub mod series;
pub mod univalence;

pub use error::Error;

/// Convenient alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
