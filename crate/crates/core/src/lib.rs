//! Lattice theta and Epstein zeta functions of unit-area planar lattices,
//! parameterized by a point of the upper half-plane.
//!
//! The crate evaluates the 1-d Jacobi theta function and its derivatives
//! ([`theta1d`]), the auxiliary series and quotient bounds built on it
//! ([`series_bounds`]), the lattice functions and their partials in the
//! lattice parameter ([`lattice`]), the modular reduction ([`modular`]) and
//! grid sign certification ([`certify`]).

pub mod certify;
pub mod cli;
pub mod error;
pub mod lattice;
pub mod modular;
pub mod numeric;
pub mod series_bounds;
pub mod special;
pub mod theta1d;

pub use error::{Error, Result};
pub use modular::UpperHalfPoint;
pub use numeric::{Truncation, ValueWithError};
