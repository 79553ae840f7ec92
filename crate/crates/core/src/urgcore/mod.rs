//! The quantum R-matrix algebra: presentation from the RLL relations,
//! straightening rewrite system, Hopf structure, automorphisms, central
//! elements, quotients, the FRT evaluation and the first-order
//! cocommutativity witness.

pub mod auto;
pub mod center;
pub mod cocomm;
pub mod frt;
pub mod hopf;
pub mod presentation;
pub mod quotient;
pub mod rewrite;

pub use auto::GenMap;
pub use center::Center;
pub use cocomm::CocommReport;
pub use frt::FrtRep;
pub use presentation::{Presentation, Relation};
pub use quotient::{QuotientKind, QuotientSystem};
pub use rewrite::{Divergence, RewriteSystem};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UrgError {
    #[error("R-matrix must have truncation order at least 2, got {0}")]
    LowOrder(usize),
    #[error("R-matrix is not congruent to the identity mod ħ")]
    NotUnipotent,
    #[error("no unit pivot for the word {0}")]
    NoUnitPivot(String),
    #[error("relation among ordered words survives elimination: {0}")]
    ResidualRelation(String),
    #[error("termination contract violated by rule {0}")]
    TerminationContractViolation(String),
    #[error("normal form exceeded the step budget of {0} rewrites")]
    StepBudget(usize),
    #[error("V has repeated composition factors")]
    UnsupportedMultiplicity,
    #[error("diagonal sector does not commute: {0}")]
    NonCommutingDiagonal(String),
    #[error("matrix is not in the required group: {0}")]
    Membership(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("quotient normal form did not stabilize")]
    QuotientLoop,
}
