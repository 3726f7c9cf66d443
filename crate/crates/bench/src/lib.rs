//! Shared fixtures for the benchmark suite.

use tropmat_core::groebner::Ideal;
use tropmat_core::io::ideal_from_text;
use tropmat_core::Matroid;

/// The cycle matroid of the complete graph on four vertices.
pub fn k4() -> Matroid {
    Matroid::graphic_from_edges(&[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
        .expect("K4 is a valid edge list")
}

/// The ideal of the twisted cubic curve.
pub fn twisted_cubic() -> Ideal {
    ideal_from_text("vars 3\nx2 - x1^2\nx3 - x1^3\n")
        .expect("fixture parses")
        .ideal
}
