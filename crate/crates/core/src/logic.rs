//! Two-variable first-order logic and unary temporal logic on finite words.
//!
//! [`fo2`] and [`tl`] give the two formula languages their syntax, Tarskian
//! semantics, and depth metrics; [`translate`] compiles FO² sentences with
//! order and successor into temporal formulas; [`equiv`] implements the
//! finite-index word equivalence that approximates indistinguishability at
//! alternation depth `m` and quantifier depth `n`.

pub mod equiv;
pub mod fo2;
pub mod tl;
pub mod translate;

pub use equiv::{approx_equiv, EquivChecker, EquivParams};
pub use fo2::{eval_fo2, fo2_metrics, parse_fo2, Fo2Assignment, Fo2Formula, Var};
pub use tl::{eval_tl, parse_tl, tl_metrics, tl_to_fo2, TlFormula};
pub use translate::{translate, TranslateError};

use thiserror::Error;

/// Depth measures shared by both logics: for FO² formulas `m` is the
/// quantifier-alternation depth and `n` the quantifier depth; for temporal
/// formulas `m` is the negation class and `n` the operator depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct DepthMetrics {
    pub m: u32,
    pub n: u32,
}

/// Errors from parsing or evaluating formulas of either logic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("unexpected character `{0}` at position {1}")]
    UnexpectedChar(char, usize),
    #[error("unexpected `{found}` at position {position}")]
    UnexpectedToken { found: String, position: usize },
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("only the variables x and y are allowed, found `{name}` at position {position}")]
    ThirdVariable { name: String, position: usize },
    #[error("unknown word `{word}` at position {position}")]
    UnknownWord { word: String, position: usize },
    #[error("variable {0} has no assigned position")]
    UnboundVariable(String),
    #[error("position {position} lies outside the word (length {length})")]
    PositionOutOfRange { position: usize, length: usize },
    #[error("temporal formulas have no top-level value on the empty word")]
    EmptyWord,
}
