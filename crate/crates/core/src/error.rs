use thiserror::Error;

use crate::lie::{LieType, Weight};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Lie type {family}{rank}")]
    InvalidType { family: char, rank: usize },

    #[error("cannot parse algebra name {0:?}")]
    BadAlgebraName(String),

    #[error("node {node} out of range for rank {rank}")]
    NodeOutOfRange { node: usize, rank: usize },

    #[error("weight {0} has length {1}, expected rank {2}")]
    RankMismatch(Weight, usize, usize),

    #[error("weight {0} is not dominant")]
    NotDominant(Weight),

    #[error("configuration does not partition the root coordinates of the weight")]
    ConfigMismatch,

    #[error("{lie_type} is not supported by {operation}")]
    UnsupportedType {
        lie_type: LieType,
        operation: &'static str,
    },

    #[error("node {node} of {lie_type} has no closed-form table")]
    UnsupportedNode { lie_type: LieType, node: usize },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("non-integral quotient in {0}")]
    NonIntegral(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
