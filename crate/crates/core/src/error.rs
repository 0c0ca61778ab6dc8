//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("point lies on the hyperplane x[{u}] - x[{v}] = {s}")]
    OnHyperplane { u: usize, v: usize, s: i64 },

    #[error("region leaves {0} hyperplane(s) unsigned")]
    IncompleteRegion(usize),

    #[error("division left a nonzero remainder; input is not a coboundary polynomial")]
    InexactDivision,

    #[error("offsets are not transitive: s = {s}, t = {t} close to {sum}")]
    NotTransitive { s: i64, t: i64, sum: i64 },

    #[error("label budget {budget} exceeded (requested |n| = {requested})")]
    BudgetExceeded { budget: usize, requested: usize },

    #[error(
        "enumeration of size {size} exceeds the guard {guard}; set BRAIDDEFORM_GUARD to raise it"
    )]
    TooLarge { size: u128, guard: u128 },

    #[error("move is not applicable to this sketch")]
    NotApplicable,

    #[error("invalid sketch: {0}")]
    InvalidSketch(String),

    #[error("values collide: x[{i}] + {s} = x[{j}] + {t}")]
    Collision { i: u32, s: u32, j: u32, t: u32 },

    #[error("tree labels do not match the arrangement vertices")]
    LabelMismatch,

    #[error("tree is not in the Shi family")]
    NotShiTree,

    #[error("tree is not in the Linial family")]
    NotLinialTree,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("identity hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("unknown vertex {0}")]
    UnknownVertex(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("fixed point failed to stabilize at truncation {0}")]
    NonConvergence(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
