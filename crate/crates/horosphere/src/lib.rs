//! Combinatorial models of normal horospherical G-varieties of complexity
//! one.
//!
//! A horospherical homogeneous space G/H is encoded by a lattice M of
//! characters and a set I of simple roots; a variety fibered over a curve is
//! encoded by colored polyhedral divisors glued into a divisorial fan. This
//! crate implements the combinatorial dictionary: properness, germs,
//! rationality of singularities, smoothness, divisor class groups,
//! factoriality, Cartier and piecewise-linear divisors, canonical classes,
//! Gorenstein indices, log-terminality, and resolution by subdivision.
//!
//! All arithmetic is exact (arbitrary-precision integers and rationals); no
//! floating point is used anywhere.

pub mod book;
pub mod cli;
pub mod error;
pub mod fan;
pub mod geometry;
pub mod lattice;
pub mod polyhedra;
pub mod pdiv;
pub mod rootdata;

pub use error::{Error, Result};

pub use cli::run_cli;
