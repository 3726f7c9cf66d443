//! The error type shared by every module in the crate.

use thiserror::Error;

use crate::groebner::Polynomial;

#[derive(Debug, Error)]
pub enum Error {
    /// A zero vector has no primitive representative.
    #[error("zero vector has no primitive representative")]
    ZeroVector,

    /// Mismatched or malformed dimensions (ragged rows, wrong vector length, …).
    #[error("shape error: {0}")]
    Shape(String),

    /// A precondition on the input data was violated.
    #[error("{0}")]
    InvalidInput(String),

    /// The matroid has loops; the operation requires a loop-free matroid.
    /// `simplify` deletes the loops first.
    #[error("matroid has loops at {0:?}; delete them first (see simplify)")]
    Loops(Vec<usize>),

    /// The fan is not pure: two maximal cones have different dimensions.
    #[error("fan is not pure: maximal cones of dimensions {0} and {1}")]
    NotPure(usize, usize),

    /// A maximal cone is not simplicial modulo its lineality, so ridges
    /// cannot be enumerated from its generating description.
    #[error("maximal cone {0} is not simplicial modulo lineality; cannot enumerate ridges")]
    NotSimplicial(usize),

    /// A Gröbner computation ran out of budget.  Inconclusive, not an answer:
    /// the partial basis computed so far is carried along for inspection.
    #[error(
        "computation budget exhausted after {pairs} S-pair reductions \
         (caps: {max_pairs} pairs, total degree {max_degree}); \
         partial basis has {} elements",
        partial.len()
    )]
    Budget {
        pairs: usize,
        max_pairs: usize,
        max_degree: u32,
        partial: Vec<Polynomial>,
    },

    /// A file or expression could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// An internal invariant failed; indicates a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}
