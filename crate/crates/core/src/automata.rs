//! Regular languages: pattern parsing, canonical minimal automata, and the
//! syntactic semigroup of a language of nonempty words.

mod dfa;
mod regex;
mod syntactic;

pub use dfa::{compile, Dfa, DfaError};
pub use regex::{parse_regex, parse_regex_inferring_alphabet, Regex, RegexError};
pub use syntactic::{syntactic_presentation, SyntacticPresentation};
