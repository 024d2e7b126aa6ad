//! Exact polyhedral and tropical geometry.
//!
//! Everything in this crate is computed over arbitrary-precision rationals;
//! there is no floating point anywhere. The main objects are lattice
//! polytopes with full face data, lattice subdivisions (with regularity and
//! unimodularity checkers and constructive triangulations), cone complexes
//! with their contact-order calculus, balanced tropical curves ("Chow
//! 1-complexes"), the partial order on stars, and enumeration of rigid
//! decorated curve types in a compact carrier complex.
//!
//! All values are immutable after construction and all operations are pure
//! functions, so everything is safe to call concurrently. Set-valued outputs
//! are returned in a deterministic canonical (lexicographic) order.

pub mod conecomplex;
pub mod dualcomplex;
pub mod error;
pub mod hull;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod polytope;
pub mod rigid;
pub mod starorder;
pub mod subdivision;
pub mod tropical;

pub use error::Error;
pub use lattice::{primitive_decompose, LatticeVector, RatVector};
pub use polytope::LatticePolytope;
pub use subdivision::Subdivision;


/// Arbitrary-precision integer used for all lattice data.
pub type Int = num::BigInt;
/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rat = num::BigRational;

#[cfg(test)]
pub(crate) fn int(x: i64) -> Int {
    Int::from(x)
}

#[cfg(test)]
pub(crate) fn rat(x: i64) -> Rat {
    Rat::from_integer(Int::from(x))
}
