use thiserror::Error;

use crate::decomposition::LayeredNormalForm;
use crate::symmetric_group::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("syntax error at byte {pos}: unexpected token `{token}`")]
    Syntax { pos: usize, token: String },
    #[error("token `{token}`: index {index} exceeds n-1={max}")]
    IndexOutOfRange { token: String, index: usize, max: usize },
    #[error("strand count {strands} outside supported range 2..={max}")]
    StrandCount { strands: usize, max: usize },
    #[error("malformed input: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("word is not pure: its permutation is {0}")]
    NotPure(Permutation),
    #[error("rewrite step budget of {budget} exceeded")]
    ResourceBound { budget: u64, partial: Box<LayeredNormalForm> },
    #[error("coset table for n={strands} is too large (limit {max})")]
    TableLimit { strands: usize, max: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
