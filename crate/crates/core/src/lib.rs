//! Exact Lin–Lu–Yau Ricci curvature on graph edges.
//!
//! Everything is computed in exact rational arithmetic. Curvature is available
//! through three independent routes: an integer 1-Lipschitz potential search,
//! the lazy-random-walk transport limit, and (for maximal outerplanar graphs)
//! closed-form local-configuration formulas. The `enumerate` module generates
//! one representative per isomorphism class of maximal outerplanar graphs so
//! the routes can be cross-checked exhaustively.

pub mod curvature;
pub mod enumerate;
pub mod formulas;
pub mod graph;
pub mod report;
pub mod structure;
pub mod transport;
pub mod triangulation;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational scalar used throughout.
pub type Rat = BigRational;

/// Rational from an integer pair. Panics on zero denominator.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Canonical fraction string `p/q`, lowest terms, `q >= 1`.
pub fn rat_str(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}
