//! Translation of two-variable sentences over `<` and `suc` into unary
//! temporal logic.
//!
//! The input must be a sentence (no free variables) without `min`/`max`. The
//! output is equivalent on every nonempty word: `u` satisfies the sentence
//! exactly when `u` satisfies the temporal formula at the top level.
//!
//! The translation works on a negation normal form in which quantifiers are
//! pushed inward until each quantifier's body constrains only its own
//! variable. Along every path of the result, quantifiers then alternate
//! between the two names, so a subformula can be translated relative to a
//! single anchored position: the anchor's letter and the other bound
//! position's letter and relative order (far left, one step left, same, one
//! step right, far right) determine every atom, and each quantifier becomes
//! a five-way case split on where the new position falls, reached by the
//! modality chains `Y Y P`, `Y`, nothing, `X`, and `X X F`. The letter of
//! the new position is pinned by conjoining it at the target, inside the
//! chain. Each quantifier therefore costs at most three modalities, and
//! negations are emitted only for negatively occurring quantifiers, so the
//! operator depth is at most three times the quantifier depth and the
//! negation class never exceeds the alternation depth.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::words::Alphabet;

use super::fo2::{Fo2Formula, Var};
use super::tl::TlFormula;

/// Why a formula cannot be translated.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    /// Only sentences have a temporal counterpart.
    #[error("the formula has the free variable {0}")]
    FreeVariable(String),
    /// `min`/`max` have no counterpart in the target fragment.
    #[error("min and max are not supported by the translation")]
    MinMax,
    /// The formula tests a letter the alphabet lacks.
    #[error("the letter {0} is not in the alphabet")]
    ForeignLetter(char),
}

/// Where the other bound position sits relative to the anchor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum OrdType {
    FarLeft,
    JustLeft,
    Same,
    JustRight,
    FarRight,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum NAtom {
    Top,
    Bottom,
    Letter(char, Var),
    Less(Var, Var),
    Equal(Var, Var),
    Suc(Var, Var),
}

impl NAtom {
    fn variables(&self) -> BTreeSet<Var> {
        match self {
            NAtom::Top | NAtom::Bottom => BTreeSet::new(),
            NAtom::Letter(_, v) => BTreeSet::from([*v]),
            NAtom::Less(a, b) | NAtom::Equal(a, b) | NAtom::Suc(a, b) => {
                BTreeSet::from([*a, *b])
            }
        }
    }
}

/// Negation normal form: negation lives on literals and on quantifiers.
/// `Quant { negated: true, var, body }` reads ¬∃var body — the body itself
/// stays in positive form.
#[derive(Debug, Clone, PartialEq, Eq)]
enum NForm {
    Lit { positive: bool, atom: NAtom },
    And(Vec<NForm>),
    Or(Vec<NForm>),
    Quant { negated: bool, var: Var, body: Box<NForm> },
}

fn lit(positive: bool, atom: NAtom) -> NForm {
    NForm::Lit { positive, atom }
}

fn n_and(mut parts: Vec<NForm>) -> NForm {
    match parts.len() {
        0 => lit(true, NAtom::Top),
        1 => parts.pop().expect("one part"),
        _ => NForm::And(parts),
    }
}

fn n_or(mut parts: Vec<NForm>) -> NForm {
    match parts.len() {
        0 => lit(true, NAtom::Bottom),
        1 => parts.pop().expect("one part"),
        _ => NForm::Or(parts),
    }
}

fn free_vars(n: &NForm) -> BTreeSet<Var> {
    match n {
        NForm::Lit { atom, .. } => atom.variables(),
        NForm::And(parts) | NForm::Or(parts) => {
            parts.iter().flat_map(free_vars).collect()
        }
        NForm::Quant { var, body, .. } => {
            let mut vars = free_vars(body);
            vars.remove(var);
            vars
        }
    }
}

fn to_nform(phi: &Fo2Formula, negated: bool) -> NForm {
    match phi {
        Fo2Formula::True => lit(true, if negated { NAtom::Bottom } else { NAtom::Top }),
        Fo2Formula::False => lit(true, if negated { NAtom::Top } else { NAtom::Bottom }),
        Fo2Formula::Letter(c, v) => lit(!negated, NAtom::Letter(*c, *v)),
        Fo2Formula::Less(a, b) => lit(!negated, NAtom::Less(*a, *b)),
        Fo2Formula::Equal(a, b) => lit(!negated, NAtom::Equal(*a, *b)),
        Fo2Formula::Suc(a, b) => lit(!negated, NAtom::Suc(*a, *b)),
        Fo2Formula::Min(_) | Fo2Formula::Max(_) => {
            unreachable!("min and max are rejected before normalization")
        }
        Fo2Formula::Not(a) => to_nform(a, !negated),
        Fo2Formula::And(a, b) => {
            let parts = vec![to_nform(a, negated), to_nform(b, negated)];
            if negated {
                n_or(parts)
            } else {
                n_and(parts)
            }
        }
        Fo2Formula::Or(a, b) => {
            let parts = vec![to_nform(a, negated), to_nform(b, negated)];
            if negated {
                n_and(parts)
            } else {
                n_or(parts)
            }
        }
        Fo2Formula::Exists(v, a) => NForm::Quant {
            negated,
            var: *v,
            body: Box::new(to_nform(a, false)),
        },
        // ∀v a  =  ¬∃v ¬a, so the universal swaps both flags
        Fo2Formula::Forall(v, a) => NForm::Quant {
            negated: !negated,
            var: *v,
            body: Box::new(to_nform(a, true)),
        },
    }
}

fn negate(n: NForm) -> NForm {
    match n {
        NForm::Lit { positive, atom } => NForm::Lit { positive: !positive, atom },
        NForm::And(parts) => n_or(parts.into_iter().map(negate).collect()),
        NForm::Or(parts) => n_and(parts.into_iter().map(negate).collect()),
        NForm::Quant { negated, var, body } => NForm::Quant { negated: !negated, var, body },
    }
}

/// Disjunctive normal form over units, where a literal or a whole quantified
/// subformula counts as one unit.
fn dnf(n: NForm) -> Vec<Vec<NForm>> {
    match n {
        NForm::Lit { .. } | NForm::Quant { .. } => vec![vec![n]],
        NForm::Or(parts) => parts.into_iter().flat_map(dnf).collect(),
        NForm::And(parts) => {
            let mut clauses: Vec<Vec<NForm>> = vec![Vec::new()];
            for part in parts {
                let part_clauses = dnf(part);
                clauses = clauses
                    .into_iter()
                    .flat_map(|clause| {
                        part_clauses.iter().map(move |extra| {
                            let mut joined = clause.clone();
                            joined.extend(extra.iter().cloned());
                            joined
                        })
                    })
                    .collect();
            }
            clauses
        }
    }
}

/// Pushes `∃var` through a body in normal form: the body is brought to DNF
/// over units, the quantifier distributes over the disjunction, and in each
/// clause the units not mentioning `var` move out of its scope. A clause
/// with no unit mentioning `var` sheds the quantifier entirely — words are
/// nonempty wherever a formula is evaluated, so `∃var` over a constant body
/// is the body itself.
fn push_exists(var: Var, body: NForm) -> NForm {
    let clauses = dnf(body)
        .into_iter()
        .map(|clause| {
            let (dependent, mut parts): (Vec<_>, Vec<_>) = clause
                .into_iter()
                .partition(|unit| free_vars(unit).contains(&var));
            if !dependent.is_empty() {
                parts.push(NForm::Quant {
                    negated: false,
                    var,
                    body: Box::new(n_and(dependent)),
                });
            }
            n_and(parts)
        })
        .collect();
    n_or(clauses)
}

fn miniscope(n: NForm) -> NForm {
    match n {
        NForm::Lit { .. } => n,
        NForm::And(parts) => n_and(parts.into_iter().map(miniscope).collect()),
        NForm::Or(parts) => n_or(parts.into_iter().map(miniscope).collect()),
        NForm::Quant { negated, var, body } => {
            let pushed = push_exists(var, miniscope(*body));
            if negated {
                negate(pushed)
            } else {
                pushed
            }
        }
    }
}

/// Truth value of an atom at the anchor, given everything the surrounding
/// case split has pinned down: the anchor's letter and, when the other
/// variable is bound, its letter and relative order.
fn fold_atom(
    atom: &NAtom,
    anchor: Var,
    cur: char,
    other: Option<(OrdType, char)>,
) -> bool {
    let ord = || {
        other
            .expect("a second position is bound whenever the other variable appears")
            .0
    };
    match atom {
        NAtom::Top => true,
        NAtom::Bottom => false,
        NAtom::Letter(c, v) => {
            if *v == anchor {
                *c == cur
            } else {
                *c == other
                    .expect("a second position is bound whenever the other variable appears")
                    .1
            }
        }
        NAtom::Equal(a, b) => a == b || ord() == OrdType::Same,
        NAtom::Less(a, b) => {
            if a == b {
                false
            } else if *a == anchor {
                matches!(ord(), OrdType::JustRight | OrdType::FarRight)
            } else {
                matches!(ord(), OrdType::JustLeft | OrdType::FarLeft)
            }
        }
        NAtom::Suc(a, b) => {
            if a == b {
                false
            } else if *a == anchor {
                ord() == OrdType::JustRight
            } else {
                ord() == OrdType::JustLeft
            }
        }
    }
}

fn constant(value: bool) -> TlFormula {
    if value {
        TlFormula::True
    } else {
        TlFormula::False
    }
}

fn tl_and(a: TlFormula, b: TlFormula) -> TlFormula {
    TlFormula::And(Box::new(a), Box::new(b))
}

fn tl_or(a: TlFormula, b: TlFormula) -> TlFormula {
    TlFormula::Or(Box::new(a), Box::new(b))
}

/// Translates a normal form at an anchored position. The formula's free
/// variables are `anchor` — whose position carries the letter `cur` — and,
/// when `other` is set, the complementary variable, bound to a position
/// with the given relative order and letter.
fn t_inner(
    n: &NForm,
    anchor: Var,
    cur: char,
    other: Option<(OrdType, char)>,
    alphabet: &Alphabet,
) -> TlFormula {
    match n {
        NForm::Lit { positive, atom } => {
            constant(fold_atom(atom, anchor, cur, other) == *positive)
        }
        NForm::And(parts) => parts
            .iter()
            .map(|part| t_inner(part, anchor, cur, other, alphabet))
            .reduce(tl_and)
            .unwrap_or(TlFormula::True),
        NForm::Or(parts) => parts
            .iter()
            .map(|part| t_inner(part, anchor, cur, other, alphabet))
            .reduce(tl_or)
            .unwrap_or(TlFormula::False),
        NForm::Quant { negated, var, body } => {
            debug_assert_eq!(*var, anchor.other(), "quantifiers alternate after miniscoping");
            // The new position is far left, one step left, here, one step
            // right, or far right of the anchor; each case records where the
            // anchor then sits relative to the new position.
            let reach = |ord_back: OrdType| {
                alphabet
                    .symbols()
                    .iter()
                    .map(|&b| {
                        tl_and(
                            TlFormula::Letter(b),
                            t_inner(body, *var, b, Some((ord_back, cur)), alphabet),
                        )
                    })
                    .reduce(tl_or)
                    .expect("alphabets are nonempty")
            };
            let x = |phi| TlFormula::Next(Box::new(phi));
            let y = |phi| TlFormula::Yesterday(Box::new(phi));
            let cases = vec![
                y(y(TlFormula::Past(Box::new(reach(OrdType::FarRight))))),
                y(reach(OrdType::JustRight)),
                reach(OrdType::Same),
                x(reach(OrdType::JustLeft)),
                x(x(TlFormula::Eventually(Box::new(reach(OrdType::FarLeft))))),
            ];
            let spread = cases.into_iter().reduce(tl_or).expect("five cases");
            if *negated {
                TlFormula::Not(Box::new(spread))
            } else {
                spread
            }
        }
    }
}

/// Translates the sentence-level normal form. Boolean structure at the top
/// passes through; each top-level quantifier picks its position with `F`,
/// pinning the letter there.
fn top(n: &NForm, alphabet: &Alphabet) -> TlFormula {
    match n {
        NForm::Lit { positive, atom } => {
            let value = match atom {
                NAtom::Top => true,
                NAtom::Bottom => false,
                _ => unreachable!("sentences leave no variable literals at the top"),
            };
            constant(value == *positive)
        }
        NForm::And(parts) => parts
            .iter()
            .map(|part| top(part, alphabet))
            .reduce(tl_and)
            .expect("normal forms have no empty connectives"),
        NForm::Or(parts) => parts
            .iter()
            .map(|part| top(part, alphabet))
            .reduce(tl_or)
            .expect("normal forms have no empty connectives"),
        NForm::Quant { negated, var, body } => {
            let inner = alphabet
                .symbols()
                .iter()
                .map(|&b| {
                    tl_and(
                        TlFormula::Letter(b),
                        t_inner(body, *var, b, None, alphabet),
                    )
                })
                .reduce(tl_or)
                .expect("alphabets are nonempty");
            let spread = TlFormula::Eventually(Box::new(inner));
            if *negated {
                TlFormula::Not(Box::new(spread))
            } else {
                spread
            }
        }
    }
}

/// Constant folding: `∧`/`∨`/`¬` absorb truth values, a step or a search to
/// a false formula is false, and a search for a true one succeeds. `X true`
/// and `Y true` stay as they are — they fail at the word's edge.
fn simplify(phi: TlFormula) -> TlFormula {
    match phi {
        TlFormula::True | TlFormula::False | TlFormula::Letter(_) => phi,
        TlFormula::Not(a) => match simplify(*a) {
            TlFormula::True => TlFormula::False,
            TlFormula::False => TlFormula::True,
            inner => TlFormula::Not(Box::new(inner)),
        },
        TlFormula::And(a, b) => match (simplify(*a), simplify(*b)) {
            (TlFormula::False, _) | (_, TlFormula::False) => TlFormula::False,
            (TlFormula::True, other) | (other, TlFormula::True) => other,
            (left, right) => tl_and(left, right),
        },
        TlFormula::Or(a, b) => match (simplify(*a), simplify(*b)) {
            (TlFormula::True, _) | (_, TlFormula::True) => TlFormula::True,
            (TlFormula::False, other) | (other, TlFormula::False) => other,
            (left, right) => tl_or(left, right),
        },
        TlFormula::Next(a) => match simplify(*a) {
            TlFormula::False => TlFormula::False,
            inner => TlFormula::Next(Box::new(inner)),
        },
        TlFormula::Yesterday(a) => match simplify(*a) {
            TlFormula::False => TlFormula::False,
            inner => TlFormula::Yesterday(Box::new(inner)),
        },
        TlFormula::Eventually(a) => match simplify(*a) {
            TlFormula::False => TlFormula::False,
            TlFormula::True => TlFormula::True,
            inner => TlFormula::Eventually(Box::new(inner)),
        },
        TlFormula::Past(a) => match simplify(*a) {
            TlFormula::False => TlFormula::False,
            TlFormula::True => TlFormula::True,
            inner => TlFormula::Past(Box::new(inner)),
        },
    }
}

/// Translates a two-variable sentence over `<` and `suc` into a temporal
/// formula satisfied by exactly the same nonempty words.
pub fn translate(phi: &Fo2Formula, alphabet: &Alphabet) -> Result<TlFormula, TranslateError> {
    if phi.mentions_min_max() {
        return Err(TranslateError::MinMax);
    }
    if let Some(v) = phi.free_variables().into_iter().next() {
        return Err(TranslateError::FreeVariable(v.to_string()));
    }
    if let Some(c) = phi.letters().into_iter().find(|&c| !alphabet.contains(c)) {
        return Err(TranslateError::ForeignLetter(c));
    }
    let normal = miniscope(to_nform(phi, false));
    Ok(simplify(top(&normal, alphabet)))
}
