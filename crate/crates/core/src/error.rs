use std::fmt;

use thiserror::Error;

/// The triangle constraint that a rejected input violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constraint {
    NonFinite,
    AngleRange,
    AngleSum,
    SidePositive,
    TriangleInequality,
    LawOfSines,
    LawOfCosines,
    SideAngleOrdering,
    Precondition,
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Constraint::NonFinite => "non-finite value",
            Constraint::AngleRange => "angle outside (0, pi)",
            Constraint::AngleSum => "angle sum",
            Constraint::SidePositive => "side not positive",
            Constraint::TriangleInequality => "triangle inequality",
            Constraint::LawOfSines => "law of sines",
            Constraint::LawOfCosines => "law of cosines",
            Constraint::SideAngleOrdering => "side/angle ordering",
            Constraint::Precondition => "precondition",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid triangle ({constraint}): {detail}")]
    InvalidTriangle {
        constraint: Constraint,
        detail: String,
    },

    #[error("side length {value} exceeds the domain cap {cap}")]
    DomainCap { value: f64, cap: f64 },

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("point ({x}, {y}) is not strictly inside the unit disk")]
    InvalidPoint { x: f64, y: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid tolerance configuration: {0}")]
    InvalidConfig(String),

    #[error("no sign change on [{lo}, {hi}] (f(lo) = {f_lo}, f(hi) = {f_hi})")]
    NoBracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("root finder did not converge after {iterations} iterations (last bracket [{lo}, {hi}])")]
    NonConvergence { iterations: usize, lo: f64, hi: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(constraint: Constraint, detail: impl Into<String>) -> Self {
        Error::InvalidTriangle {
            constraint,
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
