//! Exact computation of the formal Lichnerowicz-Poisson cohomology of
//! quadratic Poisson structures on R^3 that are built from three commuting
//! linear vector fields.
//!
//! The pipeline: [`poly`] and [`multivector`] implement polyvector fields
//! and the Schouten bracket; [`yframe`] rewrites cochains in the frame of
//! the commuting fields `Y1, Y2, Y3` where the coboundary becomes a
//! "gradient/curl/divergence" built from three commuting operators; and
//! [`complex`] assembles, per bidegree, the potential / real /
//! supplementary cochain complexes and their cohomology. [`structures`]
//! holds the two reference families, the closed-form dimension tables they
//! are checked against, and the gl(3) / r-matrix utilities.

pub mod complex;
pub mod linalg;
pub mod multivector;
pub mod poly;
pub mod report;
pub mod structures;
mod text;
pub mod yframe;

pub use linalg::{Matrix3, RatMatrix, Rational, SubspaceBasis};
pub use multivector::{MultiVector, MultivectorError};
pub use poly::{Bigrade, Exponent, Poly};
