use thiserror::Error;

use crate::variety::{Direction, HyperplaneId};

/// A single problem found while validating a variety description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    OutOfBounds {
        direction: Direction,
        pair: (usize, usize),
    },
    DuplicateLine {
        direction: Direction,
        pair: (usize, usize),
    },
    UnusedHyperplane(HyperplaneId),
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::OutOfBounds { direction, pair } => write!(
                f,
                "pair ({}, {}) of U{} is out of bounds",
                pair.0,
                pair.1,
                direction.index()
            ),
            Violation::DuplicateLine { direction, pair } => write!(
                f,
                "pair ({}, {}) occurs more than once in U{}",
                pair.0,
                pair.1,
                direction.index()
            ),
            Violation::UnusedHyperplane(h) => write!(f, "hyperplane {h} contains no line"),
        }
    }
}

#[derive(Debug, Error)]
pub enum VarietyError {
    #[error("invalid variety: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("point set is empty")]
    EmptyPointSet,
    #[error("point ({0}, {1}, {2}) has a zero index (indices are 1-based)")]
    InvalidPoint(usize, usize, usize),
    #[error("hyperplane {0} does not contain any line of the variety")]
    UnknownHyperplane(HyperplaneId),
    #[error("bad permutation for family {family}: {reason}")]
    BadPermutation { family: char, reason: String },
    #[error("cannot parse rendered grid: {0}")]
    Render(String),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Error)]
pub enum CriteriaError {
    #[error("Hyp_n(*) is only defined here for n in {{4, 5, 6}}, got {0}")]
    BadN(usize),
    #[error("internal inconsistency: the ACM criteria disagree ({0})")]
    Disagreement(Box<crate::criteria::CriteriaDisagreement>),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FerrersError {
    #[error("the variety is not a Ferrers variety of lines")]
    NotFerrers,
    #[error("the variety is not ACM")]
    NotAcm,
    #[error("cannot decide ACM-ness: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("the variety has no lines")]
    EmptyVariety,
    #[error("{vertices} vertices exceed the supported limit of {limit}")]
    SizeLimit { vertices: usize, limit: usize },
}

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Criteria(#[from] CriteriaError),
    #[error(transparent)]
    Ferrers(#[from] FerrersError),
}
