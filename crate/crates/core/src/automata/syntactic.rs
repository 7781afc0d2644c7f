//! The syntactic semigroup of a regular language, presented concretely.
//!
//! For a canonical minimal complete DFA, the closure of the letter actions
//! under composition is the transition semigroup, and that semigroup is the
//! syntactic semigroup of the recognized language of nonempty words. The
//! syntactic image h(L) falls out of the same data: the elements whose
//! transformation carries the initial state into the accepting set.

use std::collections::{BTreeMap, BTreeSet};

use super::dfa::Dfa;
use crate::semigroup::{from_transformations, Semigroup};
use crate::words::{Word, WordError};

/// A syntactic semigroup together with the homomorphism `h` that defines it:
/// where each letter goes, and which elements form the image of the language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntacticPresentation {
    pub semigroup: Semigroup,
    /// `h` on letters.
    pub letter_map: BTreeMap<char, usize>,
    /// `h(L)`: membership of a nonempty word depends only on whether its
    /// element lands here.
    pub image: BTreeSet<usize>,
}

impl SyntacticPresentation {
    /// `h(u)` for a nonempty word over the language's alphabet.
    pub fn element_of_word(&self, u: &Word) -> Result<usize, WordError> {
        let mut elements = u.symbols().iter().map(|c| {
            self.letter_map.get(c).copied().ok_or(WordError::ForeignSymbol(*c))
        });
        let first = elements.next().ok_or(WordError::EmptyWord)??;
        elements.try_fold(first, |acc, x| Ok(self.semigroup.mul(acc, x?)))
    }

    /// Whether `h(u) ∈ h(L)`, i.e. whether `u` is in the language.
    pub fn accepts(&self, u: &Word) -> Result<bool, WordError> {
        Ok(self.image.contains(&self.element_of_word(u)?))
    }
}

/// Extracts the syntactic semigroup and image from a canonical minimal DFA.
///
/// Elements are numbered by the shortlex-least word generating them, with
/// letters taken in alphabet order.
pub fn syntactic_presentation(dfa: &Dfa) -> SyntacticPresentation {
    let generators: Vec<(char, Vec<usize>)> = dfa
        .alphabet()
        .symbols()
        .iter()
        .enumerate()
        .map(|(s, &c)| (c, dfa.letter_action(s)))
        .collect();
    let closure = from_transformations(&generators).expect("alphabets are nonempty");
    let image = closure
        .transformations
        .iter()
        .enumerate()
        .filter(|(_, action)| dfa.accepting().contains(&action[dfa.initial()]))
        .map(|(x, _)| x)
        .collect();
    SyntacticPresentation {
        semigroup: closure.semigroup,
        letter_map: closure.generator_map,
        image,
    }
}
