//! Unary temporal logic with next, eventually, yesterday, and past.
//!
//! Formulas are evaluated at a position of a finite word: `X`/`Y` step one
//! position right/left (false beyond the word's edge), while `F`/`P` ask for
//! some position at or after/before the current one — both are reflexive,
//! mirroring their defining first-order formulas `x <= y` and `y <= x`.
//!
//! A word as a whole satisfies a formula by the top-level rules: letters are
//! false, `X φ` and `Y φ` defer to the first and last position, and `F φ`,
//! `P φ` ask for any position. `X a & Y b`, for instance, defines the words
//! that start with `a` and end with `b`.
//!
//! Concrete syntax: modalities `X F Y P` prefix a single operand and bind
//! tighter than `&` and `|`; letters are single lowercase characters.

use std::collections::BTreeSet;
use std::fmt;

use crate::words::Word;

use super::fo2::{Fo2Formula, Var};
use super::{DepthMetrics, LogicError};

/// A unary temporal formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TlFormula {
    True,
    False,
    Letter(char),
    Not(Box<TlFormula>),
    And(Box<TlFormula>, Box<TlFormula>),
    Or(Box<TlFormula>, Box<TlFormula>),
    /// `X φ`: φ one step to the right.
    Next(Box<TlFormula>),
    /// `F φ`: φ here or somewhere to the right.
    Eventually(Box<TlFormula>),
    /// `Y φ`: φ one step to the left.
    Yesterday(Box<TlFormula>),
    /// `P φ`: φ here or somewhere to the left.
    Past(Box<TlFormula>),
}

impl TlFormula {
    /// Letters appearing in the formula.
    pub fn letters(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(phi) = stack.pop() {
            match phi {
                TlFormula::Letter(c) => {
                    out.insert(*c);
                }
                TlFormula::Not(a)
                | TlFormula::Next(a)
                | TlFormula::Eventually(a)
                | TlFormula::Yesterday(a)
                | TlFormula::Past(a) => stack.push(a),
                TlFormula::And(a, b) | TlFormula::Or(a, b) => {
                    stack.push(a);
                    stack.push(b);
                }
                TlFormula::True | TlFormula::False => {}
            }
        }
        out
    }
}

/// Evaluates a temporal formula on a word.
///
/// With `position: Some(i)` (1-based) the formula is read at that position.
/// With `None` the word itself is the model: letters evaluate to false,
/// `X`/`Y` defer to the first/last position, and `F`/`P` to any position —
/// which requires a nonempty word.
pub fn eval_tl(phi: &TlFormula, u: &Word, position: Option<usize>) -> Result<bool, LogicError> {
    match position {
        Some(i) => {
            if i < 1 || i > u.len() {
                return Err(LogicError::PositionOutOfRange { position: i, length: u.len() });
            }
            Ok(at(phi, u, i))
        }
        None => {
            if u.is_empty() {
                return Err(LogicError::EmptyWord);
            }
            Ok(top(phi, u))
        }
    }
}

fn top(phi: &TlFormula, u: &Word) -> bool {
    match phi {
        TlFormula::True => true,
        TlFormula::False => false,
        // a bare letter holds at positions, never of the whole word
        TlFormula::Letter(_) => false,
        TlFormula::Not(a) => !top(a, u),
        TlFormula::And(a, b) => top(a, u) && top(b, u),
        TlFormula::Or(a, b) => top(a, u) || top(b, u),
        TlFormula::Next(a) => at(a, u, 1),
        TlFormula::Yesterday(a) => at(a, u, u.len()),
        TlFormula::Eventually(a) | TlFormula::Past(a) => (1..=u.len()).any(|i| at(a, u, i)),
    }
}

fn at(phi: &TlFormula, u: &Word, i: usize) -> bool {
    match phi {
        TlFormula::True => true,
        TlFormula::False => false,
        TlFormula::Letter(c) => u.at(i) == Some(*c),
        TlFormula::Not(a) => !at(a, u, i),
        TlFormula::And(a, b) => at(a, u, i) && at(b, u, i),
        TlFormula::Or(a, b) => at(a, u, i) || at(b, u, i),
        TlFormula::Next(a) => i < u.len() && at(a, u, i + 1),
        TlFormula::Yesterday(a) => i > 1 && at(a, u, i - 1),
        TlFormula::Eventually(a) => (i..=u.len()).any(|j| at(a, u, j)),
        TlFormula::Past(a) => (1..=i).any(|j| at(a, u, j)),
    }
}

/// Negation class `m` and operator depth `n`.
///
/// `n` is the maximum modality nesting. For `m`, negations outside every
/// modality are free Boolean structure: a formula without modalities has
/// `m = 0`, and otherwise `m` is one plus the maximum, over the outermost
/// modality-rooted subformulas, of the negation nesting found inside them.
/// (How to count negations against the informal "Boolean combinations of
/// formulae with at most m−1 nested negations" is a convention; this is the
/// one used throughout.)
pub fn tl_metrics(phi: &TlFormula) -> DepthMetrics {
    let mut roots = Vec::new();
    outermost_modal_roots(phi, &mut roots);
    let m = match roots.iter().map(|psi| negation_nesting(psi)).max() {
        Some(depth) => 1 + depth,
        None => 0,
    };
    DepthMetrics { m, n: operator_depth(phi) }
}

fn outermost_modal_roots<'a>(phi: &'a TlFormula, out: &mut Vec<&'a TlFormula>) {
    match phi {
        TlFormula::Next(_)
        | TlFormula::Eventually(_)
        | TlFormula::Yesterday(_)
        | TlFormula::Past(_) => out.push(phi),
        TlFormula::Not(a) => outermost_modal_roots(a, out),
        TlFormula::And(a, b) | TlFormula::Or(a, b) => {
            outermost_modal_roots(a, out);
            outermost_modal_roots(b, out);
        }
        TlFormula::True | TlFormula::False | TlFormula::Letter(_) => {}
    }
}

fn negation_nesting(phi: &TlFormula) -> u32 {
    match phi {
        TlFormula::Not(a) => 1 + negation_nesting(a),
        TlFormula::And(a, b) | TlFormula::Or(a, b) => {
            negation_nesting(a).max(negation_nesting(b))
        }
        TlFormula::Next(a)
        | TlFormula::Eventually(a)
        | TlFormula::Yesterday(a)
        | TlFormula::Past(a) => negation_nesting(a),
        TlFormula::True | TlFormula::False | TlFormula::Letter(_) => 0,
    }
}

fn operator_depth(phi: &TlFormula) -> u32 {
    match phi {
        TlFormula::Next(a)
        | TlFormula::Eventually(a)
        | TlFormula::Yesterday(a)
        | TlFormula::Past(a) => 1 + operator_depth(a),
        TlFormula::Not(a) => operator_depth(a),
        TlFormula::And(a, b) | TlFormula::Or(a, b) => operator_depth(a).max(operator_depth(b)),
        TlFormula::True | TlFormula::False | TlFormula::Letter(_) => 0,
    }
}

/// The first-order formula defining a temporal formula at a position.
///
/// `v` is the free variable holding the evaluation position; each modality
/// spends the other variable on its defining quantifier, so the result stays
/// within two names: `X φ` becomes `∃v'(suc(v,v') ∧ φ(v'))`, `F φ` becomes
/// `∃v'((v<v' ∨ v=v') ∧ φ(v'))`, and `Y`, `P` mirror them.
pub fn tl_to_fo2(phi: &TlFormula, v: Var) -> Fo2Formula {
    let w = v.other();
    let quantified = |guard: Fo2Formula, body: &TlFormula| {
        Fo2Formula::Exists(
            w,
            Box::new(Fo2Formula::And(Box::new(guard), Box::new(tl_to_fo2(body, w)))),
        )
    };
    match phi {
        TlFormula::True => Fo2Formula::True,
        TlFormula::False => Fo2Formula::False,
        TlFormula::Letter(c) => Fo2Formula::Letter(*c, v),
        TlFormula::Not(a) => Fo2Formula::Not(Box::new(tl_to_fo2(a, v))),
        TlFormula::And(a, b) => {
            Fo2Formula::And(Box::new(tl_to_fo2(a, v)), Box::new(tl_to_fo2(b, v)))
        }
        TlFormula::Or(a, b) => {
            Fo2Formula::Or(Box::new(tl_to_fo2(a, v)), Box::new(tl_to_fo2(b, v)))
        }
        TlFormula::Next(a) => quantified(Fo2Formula::Suc(v, w), a),
        TlFormula::Yesterday(a) => quantified(Fo2Formula::Suc(w, v), a),
        TlFormula::Eventually(a) => quantified(
            Fo2Formula::Or(
                Box::new(Fo2Formula::Less(v, w)),
                Box::new(Fo2Formula::Equal(v, w)),
            ),
            a,
        ),
        TlFormula::Past(a) => quantified(
            Fo2Formula::Or(
                Box::new(Fo2Formula::Less(w, v)),
                Box::new(Fo2Formula::Equal(w, v)),
            ),
            a,
        ),
    }
}

impl fmt::Display for TlFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tl(self, f, 0)
    }
}

/// Precedence levels: 0 or-context, 1 and-context, 2 operand of a unary.
fn write_tl(phi: &TlFormula, f: &mut fmt::Formatter<'_>, level: u8) -> fmt::Result {
    let unary = |f: &mut fmt::Formatter<'_>, symbol: &str, inner: &TlFormula| {
        write!(f, "{symbol}")?;
        if matches!(inner, TlFormula::And(_, _) | TlFormula::Or(_, _)) {
            write!(f, " (")?;
            write_tl(inner, f, 0)?;
            write!(f, ")")
        } else {
            write!(f, " ")?;
            write_tl(inner, f, 2)
        }
    };
    match phi {
        TlFormula::True => write!(f, "true"),
        TlFormula::False => write!(f, "false"),
        TlFormula::Letter(c) => write!(f, "{c}"),
        TlFormula::Not(a) => {
            write!(f, "!")?;
            if matches!(**a, TlFormula::And(_, _) | TlFormula::Or(_, _)) {
                write!(f, "(")?;
                write_tl(a, f, 0)?;
                write!(f, ")")
            } else {
                write_tl(a, f, 2)
            }
        }
        TlFormula::And(a, b) => {
            if level > 1 {
                write!(f, "(")?;
                write_tl(phi, f, 0)?;
                return write!(f, ")");
            }
            write_tl(a, f, 2)?;
            write!(f, " & ")?;
            write_tl(b, f, 2)
        }
        TlFormula::Or(a, b) => {
            if level > 0 {
                write!(f, "(")?;
                write_tl(phi, f, 0)?;
                return write!(f, ")");
            }
            write_tl(a, f, 1)?;
            write!(f, " | ")?;
            write_tl(b, f, 1)
        }
        TlFormula::Next(a) => unary(f, "X", a),
        TlFormula::Eventually(a) => unary(f, "F", a),
        TlFormula::Yesterday(a) => unary(f, "Y", a),
        TlFormula::Past(a) => unary(f, "P", a),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Word(String),
    LParen,
    RParen,
    And,
    Or,
    Not,
}

fn lex(text: &str) -> Result<Vec<(Token, usize)>, LogicError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let single = match c {
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            '&' => Some(Token::And),
            '|' => Some(Token::Or),
            '!' => Some(Token::Not),
            _ => None,
        };
        if let Some(token) = single {
            out.push((token, i));
            i += 1;
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((Token::Word(chars[start..i].iter().collect()), start));
        } else if c.is_whitespace() {
            i += 1;
        } else {
            return Err(LogicError::UnexpectedChar(c, i));
        }
    }
    Ok(out)
}

/// Parses the concrete temporal syntax.
///
/// ```text
/// formula := or
/// or      := and ('|' and)*
/// and     := unary ('&' unary)*
/// unary   := ('!'|'X'|'F'|'Y'|'P') unary | primary
/// primary := 'true' | 'false' | LETTER | '(' formula ')'
/// ```
pub fn parse_tl(text: &str) -> Result<TlFormula, LogicError> {
    let tokens = lex(text)?;
    let mut parser = Parser { tokens, pos: 0 };
    let phi = parser.parse_or()?;
    match parser.peek() {
        None => Ok(phi),
        Some((token, position)) => Err(LogicError::UnexpectedToken {
            found: token_text(token),
            position: *position,
        }),
    }
}

fn token_text(token: &Token) -> String {
    match token {
        Token::Word(w) => w.clone(),
        Token::LParen => "(".into(),
        Token::RParen => ")".into(),
        Token::And => "&".into(),
        Token::Or => "|".into(),
        Token::Not => "!".into(),
    }
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&(Token, usize)> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Result<(Token, usize), LogicError> {
        let item = self.tokens.get(self.pos).cloned().ok_or(LogicError::UnexpectedEnd)?;
        self.pos += 1;
        Ok(item)
    }

    fn parse_or(&mut self) -> Result<TlFormula, LogicError> {
        let mut phi = self.parse_and()?;
        while matches!(self.peek(), Some((Token::Or, _))) {
            self.next()?;
            let rhs = self.parse_and()?;
            phi = TlFormula::Or(Box::new(phi), Box::new(rhs));
        }
        Ok(phi)
    }

    fn parse_and(&mut self) -> Result<TlFormula, LogicError> {
        let mut phi = self.parse_unary()?;
        while matches!(self.peek(), Some((Token::And, _))) {
            self.next()?;
            let rhs = self.parse_unary()?;
            phi = TlFormula::And(Box::new(phi), Box::new(rhs));
        }
        Ok(phi)
    }

    fn parse_unary(&mut self) -> Result<TlFormula, LogicError> {
        if matches!(self.peek(), Some((Token::Not, _))) {
            self.next()?;
            return Ok(TlFormula::Not(Box::new(self.parse_unary()?)));
        }
        if let Some((Token::Word(w), _)) = self.peek() {
            let modality = match w.as_str() {
                "X" => Some(TlFormula::Next as fn(_) -> _),
                "F" => Some(TlFormula::Eventually as fn(_) -> _),
                "Y" => Some(TlFormula::Yesterday as fn(_) -> _),
                "P" => Some(TlFormula::Past as fn(_) -> _),
                _ => None,
            };
            if let Some(build) = modality {
                self.next()?;
                return Ok(build(Box::new(self.parse_unary()?)));
            }
        }
        self.parse_primary()
    }

    fn parse_primary(&mut self) -> Result<TlFormula, LogicError> {
        let (token, position) = self.next()?;
        match token {
            Token::LParen => {
                let phi = self.parse_or()?;
                let (close, position) = self.next()?;
                if close == Token::RParen {
                    Ok(phi)
                } else {
                    Err(LogicError::UnexpectedToken { found: token_text(&close), position })
                }
            }
            Token::Word(word) => match word.as_str() {
                "true" => Ok(TlFormula::True),
                "false" => Ok(TlFormula::False),
                _ => {
                    let mut symbols = word.chars();
                    let head = symbols.next().expect("words are nonempty");
                    if symbols.as_str().is_empty() && head.is_ascii_lowercase() {
                        Ok(TlFormula::Letter(head))
                    } else {
                        Err(LogicError::UnknownWord { word, position })
                    }
                }
            },
            other => Err(LogicError::UnexpectedToken { found: token_text(&other), position }),
        }
    }
}
