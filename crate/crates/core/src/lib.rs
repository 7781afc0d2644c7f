//! Alternation-level analysis for two-variable logic on finite words.
//!
//! The crate has two halves that meet in [`hierarchy`]:
//!
//! * an **algebraic** half — automata, syntactic semigroups, Green's
//!   relations, and omega-term identities — that decides where a regular
//!   language sits in the quantifier-alternation hierarchy of two-variable
//!   logic with order and successor;
//! * a **logical** half — two-variable first-order formulas, unary temporal
//!   logic, the translation between them, and a word-equivalence relation —
//!   that provides independent, concrete semantics to test the algebra
//!   against.

pub mod automata;
pub mod hierarchy;
pub mod logic;
pub mod semigroup;
pub mod terms;
pub mod words;

pub use automata::{
    compile, parse_regex, parse_regex_inferring_alphabet, syntactic_presentation, Dfa, DfaError,
    Regex, RegexError, SyntacticPresentation,
};
pub use hierarchy::{
    check_level, classify, ClassificationReport, ClassifyOptions, LevelVerdict, MinimalLevel,
    ReportedVerdict,
};
pub use logic::{
    approx_equiv, eval_fo2, eval_tl, fo2_metrics, parse_fo2, parse_tl, tl_metrics, tl_to_fo2,
    translate, DepthMetrics, EquivChecker, EquivParams, Fo2Assignment, Fo2Formula, LogicError,
    TlFormula, TranslateError, Var,
};
pub use semigroup::{
    from_transformations, green, is_lda, is_union_of_j_classes, local_monoid, omega_power,
    GreenData, LocalMonoid, Semigroup, SemigroupError, TransformationClosure,
};
pub use terms::{
    evaluate, level_identity, parse_term, satisfies, Counterexample, IdentityVerdict, OmegaTerm,
    TermError, TermNode, DEFAULT_EVALUATION_BUDGET,
};
pub use words::{
    bounded_prefix, bounded_suffix, factor_alphabet, monomial_member, monomial_profile, Alphabet,
    Gap, MonomialPattern, Word, WordError,
};
