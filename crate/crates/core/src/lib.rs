//! Exact combinatorics for integer deformations of the braid arrangement.
//!
//! An arrangement is described by a [`spec::DeformationSpec`]: vertices come in
//! `N` types with multiplicities, and each unordered pair of types carries a
//! finite set of integer offsets `s`, one hyperplane `x_u - x_v = s` per offset.
//! The classical braid, Catalan, Shi, semiorder and Linial arrangements are the
//! uniform one-type cases.
//!
//! Region counts are computed by three independent routes (signed boxed-tree
//! counts, unsigned counts over tree families with local rules, and a
//! Whitney-sum brute force over integer potentials), together with coboundary,
//! characteristic and Tutte polynomials, truncated exponential generating
//! functions with exact rational coefficients, and explicit bijections between
//! regions, annotated sketches, labeled plane trees and parking functions.
//! All arithmetic is exact; no floating point is used anywhere.

pub mod arrangement;
pub mod biject;
pub mod count;
pub mod error;
pub mod genfun;
pub mod oracle;
pub mod poly;
pub mod polyrat;
pub mod series;
pub mod sketch;
pub mod spec;
pub mod tree;

pub use arrangement::{expand_spec, is_feasible, sign_vector, Hyperplane, Region, Sign};
pub use error::{Error, Result};
pub use poly::BivarPoly;
pub use polyrat::{PolyRat, Var};
pub use series::ExpSeries;
pub use spec::{DeformationSpec, Vertex};
pub use tree::{BoxedTree, CadetChain, PlaneTree};

/// Enumeration guard used by the brute-force oracles, overridable through the
/// `BRAIDDEFORM_GUARD` environment variable.
pub fn enumeration_guard() -> u128 {
    std::env::var("BRAIDDEFORM_GUARD")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(10_000_000)
}
