//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors surfaced by group, homological and evaluator operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A generated closure (elements, subgroups, functions) grew past its cap.
    #[error("cap exceeded in {what}: needed more than {cap}")]
    CapExceeded { what: &'static str, cap: usize },

    /// A permutation was not found in the group it was claimed to belong to.
    #[error("element is not a member of the group")]
    ElementNotInGroup,

    /// A claimed subgroup has generators outside the parent group.
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    /// An infinite G-set was used without a truncation window.
    #[error("G-set is infinite: a finite window is required")]
    WindowRequired,

    /// Matrix or presentation dimensions do not line up.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// The block sizes passed to the embedding classifier are not coprime.
    #[error("gcd of the block sizes is {0}, expected 1")]
    GcdNotOne(u64),

    /// The H-set passed to a free-action reduction is not free.
    #[error("action is not free: point {point} is fixed by a non-identity element")]
    ActionNotFree { point: usize },

    /// An evaluator that requires an infinite G-set got a finite one.
    #[error("G-set is finite but the formula requires a countably infinite one")]
    ZNotInfinite,

    /// The requested value is not covered by any closed formula.
    #[error("not computable: {0}")]
    NotComputable(String),

    /// Malformed permutation data (not a bijection, wrong degree, ...).
    #[error("invalid permutation: {0}")]
    InvalidPerm(String),

    /// Malformed input data (JSON schema violations and the like).
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
