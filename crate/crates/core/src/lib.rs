//! Exact computations with matroids, Bergman fans, and polynomial ideals.
//!
//! The crate is organized around five building blocks:
//!
//! * [`linalg`] — arbitrary-precision rational linear algebra and integer
//!   lattice routines (saturations, primitive quotient generators);
//! * [`matroid`] — matroids given by their bases, with minors, duality,
//!   flats, and chains of flats;
//! * [`fan`] — weighted polyhedral fans, projections, ridge incidences, and
//!   the tropical balancing condition;
//! * [`bergman`] — the Bergman fan of a matroid and the comparisons between
//!   its independence data and the matroid's;
//! * [`groebner`] — Gröbner bases over the rationals and the algebraic
//!   matroid of a polynomial ideal via coordinate elimination.
//!
//! Everything is exact; no floating point is used anywhere.  All operations
//! are deterministic: the same inputs produce bit-identical outputs.

pub mod bergman;
pub mod error;
pub mod fan;
pub mod groebner;
pub mod io;
pub mod linalg;
pub mod matroid;

pub use error::Error;
pub use linalg::{IntegerVector, Rational, RationalMatrix};
pub use matroid::{IndependenceFamily, Matroid, Subset};
