use thiserror::Error;

use crate::ncpoly::{Alphabet, Gen};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("`{dividend}` is not divisible by `{divisor}`")]
    NotDivisible { dividend: String, divisor: String },
    #[error("invalid evaluation point q = {0}: q must not be 0, 1 or -1")]
    InvalidQ(String),
    #[error("alphabet mismatch: expected {expected}, found {found}")]
    AlphabetMismatch { expected: Alphabet, found: Alphabet },
    #[error("letter `{0}` does not belong to the {1} alphabet")]
    LetterNotInAlphabet(Gen, Alphabet),
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("reduction exceeded the safety cap of {0} rewrite steps")]
    NonTermination(usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("module has no action for `{0}`")]
    MissingGenerator(Gen),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("kernel of the nu_y action has dimension {0}, expected 1")]
    KernelTooLarge(usize),
    #[error("kernel of the nu_y action is trivial")]
    KernelEmpty,
    #[error("top vector is not an eigenvector of z^2")]
    NotEigen,
    #[error("nu_y does not map v_{0} into the span of v_{prev}", prev = .0 - 1)]
    NotInvariant(usize),
    #[error("the nu_x ladder spans {found} dimensions, module has dimension {dim}")]
    LadderTooShort { found: usize, dim: usize },
    #[error("postcondition violated: {0}")]
    Postcondition(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}
