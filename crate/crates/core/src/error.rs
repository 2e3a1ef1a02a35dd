use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group parameters: {0}")]
    InvalidParams(String),
    #[error("letter {letter} outside the generator range 1..={n}")]
    LetterOutOfRange { letter: u64, n: usize },
    #[error("malformed word syntax: {0}")]
    Syntax(String),
    #[error("word is not in canonical template shape: {0}")]
    TemplateMismatch(String),
    #[error("group order {order} exceeds the budget of {budget} elements")]
    BudgetExceeded { order: u128, budget: u64 },
    #[error("commutativity class exceeds the budget of {0} words")]
    ClassBudgetExceeded(usize),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("invalid suffix: {0}")]
    InvalidSuffix(String),
    #[error("word does not belong to the collection: {0}")]
    NotInCollection(String),
    #[error("canonical form {0} is not a member of the subgroup")]
    NotMember(String),
    #[error("the extra generator (letter 0) requires d/r > 1")]
    NoExtraGenerator,
}

pub type Result<T> = std::result::Result<T, Error>;
