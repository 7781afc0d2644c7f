//! Two-variable first-order logic over word positions.
//!
//! Formulas speak about positions `1..=|u|` of a finite word through the
//! atoms `a(v)` (label), `v<v'`, `v=v'`, `suc(v,v')`, `min(v)`, `max(v)`,
//! `true`, and `false`, with only the two variable names `x` and `y`.
//!
//! Concrete syntax: quantifiers `Ex Ey Ax Ay`, connectives `&`, `|`, `!`,
//! and parentheses. A quantifier takes the widest scope available, so
//! `Ex a(x) & b(x)` binds both conjuncts. Letters are single lowercase
//! characters.

use std::collections::BTreeSet;
use std::fmt;

use crate::words::Word;

use super::{DepthMetrics, LogicError};

/// One of the two variable names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X,
    Y,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::X => Var::Y,
            Var::Y => Var::X,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::X => "x",
            Var::Y => "y",
        })
    }
}

/// A formula of two-variable first-order logic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fo2Formula {
    True,
    False,
    /// `a(v)`: position `v` carries this letter.
    Letter(char, Var),
    Less(Var, Var),
    Equal(Var, Var),
    /// `suc(v, v')`: `v'` is the position directly after `v`.
    Suc(Var, Var),
    /// `min(v)`: `v` is the first position.
    Min(Var),
    /// `max(v)`: `v` is the last position.
    Max(Var),
    Not(Box<Fo2Formula>),
    And(Box<Fo2Formula>, Box<Fo2Formula>),
    Or(Box<Fo2Formula>, Box<Fo2Formula>),
    Exists(Var, Box<Fo2Formula>),
    Forall(Var, Box<Fo2Formula>),
}

impl Fo2Formula {
    /// Variables with a free occurrence.
    pub fn free_variables(&self) -> BTreeSet<Var> {
        fn walk(phi: &Fo2Formula, out: &mut BTreeSet<Var>, bound: &mut Vec<Var>) {
            let mention = |v: Var, out: &mut BTreeSet<Var>, bound: &[Var]| {
                if !bound.contains(&v) {
                    out.insert(v);
                }
            };
            match phi {
                Fo2Formula::True | Fo2Formula::False => {}
                Fo2Formula::Letter(_, v) | Fo2Formula::Min(v) | Fo2Formula::Max(v) => {
                    mention(*v, out, bound)
                }
                Fo2Formula::Less(a, b) | Fo2Formula::Equal(a, b) | Fo2Formula::Suc(a, b) => {
                    mention(*a, out, bound);
                    mention(*b, out, bound);
                }
                Fo2Formula::Not(inner) => walk(inner, out, bound),
                Fo2Formula::And(a, b) | Fo2Formula::Or(a, b) => {
                    walk(a, out, bound);
                    walk(b, out, bound);
                }
                Fo2Formula::Exists(v, body) | Fo2Formula::Forall(v, body) => {
                    bound.push(*v);
                    walk(body, out, bound);
                    bound.pop();
                }
            }
        }
        let mut out = BTreeSet::new();
        walk(self, &mut out, &mut Vec::new());
        out
    }

    /// Letters appearing in label atoms.
    pub fn letters(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(phi) = stack.pop() {
            match phi {
                Fo2Formula::Letter(c, _) => {
                    out.insert(*c);
                }
                Fo2Formula::Not(inner)
                | Fo2Formula::Exists(_, inner)
                | Fo2Formula::Forall(_, inner) => stack.push(inner),
                Fo2Formula::And(a, b) | Fo2Formula::Or(a, b) => {
                    stack.push(a);
                    stack.push(b);
                }
                _ => {}
            }
        }
        out
    }

    /// Whether a `min` or `max` atom occurs anywhere.
    pub fn mentions_min_max(&self) -> bool {
        let mut stack = vec![self];
        while let Some(phi) = stack.pop() {
            match phi {
                Fo2Formula::Min(_) | Fo2Formula::Max(_) => return true,
                Fo2Formula::Not(inner)
                | Fo2Formula::Exists(_, inner)
                | Fo2Formula::Forall(_, inner) => stack.push(inner),
                Fo2Formula::And(a, b) | Fo2Formula::Or(a, b) => {
                    stack.push(a);
                    stack.push(b);
                }
                _ => {}
            }
        }
        false
    }
}

/// A partial assignment of positions (1-based) to the two variables.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Fo2Assignment {
    pub x: Option<usize>,
    pub y: Option<usize>,
}

impl Fo2Assignment {
    pub fn empty() -> Self {
        Fo2Assignment::default()
    }

    pub fn get(&self, v: Var) -> Option<usize> {
        match v {
            Var::X => self.x,
            Var::Y => self.y,
        }
    }

    pub fn with(mut self, v: Var, position: usize) -> Self {
        match v {
            Var::X => self.x = Some(position),
            Var::Y => self.y = Some(position),
        }
        self
    }
}

/// Evaluates a formula on a word under a partial assignment.
///
/// Positions are 1-based; `min(v)` means position 1 and `max(v)` position
/// `|u|`. Consulting a variable the assignment leaves open is an error, as
/// is an assigned position outside the word.
pub fn eval_fo2(phi: &Fo2Formula, u: &Word, sigma: &Fo2Assignment) -> Result<bool, LogicError> {
    for position in [sigma.x, sigma.y].into_iter().flatten() {
        if position < 1 || position > u.len() {
            return Err(LogicError::PositionOutOfRange { position, length: u.len() });
        }
    }
    eval_in(phi, u, *sigma)
}

fn eval_in(phi: &Fo2Formula, u: &Word, sigma: Fo2Assignment) -> Result<bool, LogicError> {
    let position = |v: Var| sigma.get(v).ok_or_else(|| LogicError::UnboundVariable(v.to_string()));
    match phi {
        Fo2Formula::True => Ok(true),
        Fo2Formula::False => Ok(false),
        Fo2Formula::Letter(c, v) => Ok(u.at(position(*v)?) == Some(*c)),
        Fo2Formula::Less(a, b) => Ok(position(*a)? < position(*b)?),
        Fo2Formula::Equal(a, b) => Ok(position(*a)? == position(*b)?),
        Fo2Formula::Suc(a, b) => Ok(position(*b)? == position(*a)? + 1),
        Fo2Formula::Min(v) => Ok(position(*v)? == 1),
        Fo2Formula::Max(v) => Ok(position(*v)? == u.len()),
        Fo2Formula::Not(inner) => Ok(!eval_in(inner, u, sigma)?),
        Fo2Formula::And(a, b) => Ok(eval_in(a, u, sigma)? && eval_in(b, u, sigma)?),
        Fo2Formula::Or(a, b) => Ok(eval_in(a, u, sigma)? || eval_in(b, u, sigma)?),
        Fo2Formula::Exists(v, body) => {
            for i in 1..=u.len() {
                if eval_in(body, u, sigma.with(*v, i))? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        Fo2Formula::Forall(v, body) => {
            for i in 1..=u.len() {
                if !eval_in(body, u, sigma.with(*v, i))? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// Quantifier-alternation depth `m` and quantifier depth `n`.
///
/// The formula is first brought into negation normal form (negations pushed
/// through connectives and quantifiers onto atoms); `m` is then the maximum
/// over root-to-leaf paths of the number of maximal runs of same-type
/// quantifiers along the path, where Boolean connectives between quantifiers
/// of equal type do not break a run.
pub fn fo2_metrics(phi: &Fo2Formula) -> DepthMetrics {
    let normal = to_nnf(phi, false);
    DepthMetrics { m: alternation(&normal, None), n: quantifier_depth(&normal) }
}

fn to_nnf(phi: &Fo2Formula, negated: bool) -> Fo2Formula {
    match phi {
        Fo2Formula::Not(inner) => to_nnf(inner, !negated),
        Fo2Formula::And(a, b) => {
            let (a, b) = (Box::new(to_nnf(a, negated)), Box::new(to_nnf(b, negated)));
            if negated {
                Fo2Formula::Or(a, b)
            } else {
                Fo2Formula::And(a, b)
            }
        }
        Fo2Formula::Or(a, b) => {
            let (a, b) = (Box::new(to_nnf(a, negated)), Box::new(to_nnf(b, negated)));
            if negated {
                Fo2Formula::And(a, b)
            } else {
                Fo2Formula::Or(a, b)
            }
        }
        Fo2Formula::Exists(v, body) => {
            let body = Box::new(to_nnf(body, negated));
            if negated {
                Fo2Formula::Forall(*v, body)
            } else {
                Fo2Formula::Exists(*v, body)
            }
        }
        Fo2Formula::Forall(v, body) => {
            let body = Box::new(to_nnf(body, negated));
            if negated {
                Fo2Formula::Exists(*v, body)
            } else {
                Fo2Formula::Forall(*v, body)
            }
        }
        atom => {
            if negated {
                Fo2Formula::Not(Box::new(atom.clone()))
            } else {
                atom.clone()
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum QuantKind {
    Existential,
    Universal,
}

fn alternation(phi: &Fo2Formula, last: Option<QuantKind>) -> u32 {
    match phi {
        Fo2Formula::Exists(_, body) => {
            u32::from(last != Some(QuantKind::Existential))
                + alternation(body, Some(QuantKind::Existential))
        }
        Fo2Formula::Forall(_, body) => {
            u32::from(last != Some(QuantKind::Universal))
                + alternation(body, Some(QuantKind::Universal))
        }
        Fo2Formula::Not(inner) => alternation(inner, last),
        Fo2Formula::And(a, b) | Fo2Formula::Or(a, b) => {
            alternation(a, last).max(alternation(b, last))
        }
        _ => 0,
    }
}

fn quantifier_depth(phi: &Fo2Formula) -> u32 {
    match phi {
        Fo2Formula::Exists(_, body) | Fo2Formula::Forall(_, body) => 1 + quantifier_depth(body),
        Fo2Formula::Not(inner) => quantifier_depth(inner),
        Fo2Formula::And(a, b) | Fo2Formula::Or(a, b) => {
            quantifier_depth(a).max(quantifier_depth(b))
        }
        _ => 0,
    }
}

impl fmt::Display for Fo2Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_fo2(self, f, 0)
    }
}

/// Precedence levels: 0 or-context, 1 and-context, 2 operand of a unary.
fn write_fo2(phi: &Fo2Formula, f: &mut fmt::Formatter<'_>, level: u8) -> fmt::Result {
    let parenthesized = |f: &mut fmt::Formatter<'_>, inner: &Fo2Formula| {
        write!(f, "(")?;
        write_fo2(inner, f, 0)?;
        write!(f, ")")
    };
    match phi {
        Fo2Formula::True => write!(f, "true"),
        Fo2Formula::False => write!(f, "false"),
        Fo2Formula::Letter(c, v) => write!(f, "{c}({v})"),
        Fo2Formula::Less(a, b) => write!(f, "{a}<{b}"),
        Fo2Formula::Equal(a, b) => write!(f, "{a}={b}"),
        Fo2Formula::Suc(a, b) => write!(f, "suc({a},{b})"),
        Fo2Formula::Min(v) => write!(f, "min({v})"),
        Fo2Formula::Max(v) => write!(f, "max({v})"),
        Fo2Formula::Not(inner) => {
            write!(f, "!")?;
            write_fo2(inner, f, 2)
        }
        Fo2Formula::And(a, b) => {
            if level > 1 {
                return parenthesized(f, phi);
            }
            write_fo2(a, f, 2)?;
            write!(f, " & ")?;
            write_fo2(b, f, 2)
        }
        Fo2Formula::Or(a, b) => {
            if level > 0 {
                return parenthesized(f, phi);
            }
            write_fo2(a, f, 1)?;
            write!(f, " | ")?;
            write_fo2(b, f, 1)
        }
        // a quantifier reaches as far right as possible, so as an operand of
        // anything it needs parentheses
        Fo2Formula::Exists(v, body) => {
            if level > 0 {
                return parenthesized(f, phi);
            }
            write!(f, "E{v} ")?;
            write_fo2(body, f, 0)
        }
        Fo2Formula::Forall(v, body) => {
            if level > 0 {
                return parenthesized(f, phi);
            }
            write!(f, "A{v} ")?;
            write_fo2(body, f, 0)
        }
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
    Less,
    Equal,
    Comma,
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
            '<' => Some(Token::Less),
            '=' => Some(Token::Equal),
            ',' => Some(Token::Comma),
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

/// Parses the concrete FO² syntax.
///
/// ```text
/// formula := or
/// or      := and ('|' and)*
/// and     := unary ('&' unary)*
/// unary   := '!' unary | ('Ex'|'Ey'|'Ax'|'Ay') or | primary
/// primary := 'true' | 'false' | atom | '(' formula ')'
/// atom    := LETTER '(' VAR ')' | VAR '<' VAR | VAR '=' VAR
///          | 'suc' '(' VAR ',' VAR ')' | 'min' '(' VAR ')' | 'max' '(' VAR ')'
/// ```
pub fn parse_fo2(text: &str) -> Result<Fo2Formula, LogicError> {
    let tokens = lex(text)?;
    let mut parser = Parser { tokens, pos: 0 };
    let phi = parser.parse_or()?;
    match parser.peek() {
        None => Ok(phi),
        Some((token, position)) => {
            Err(LogicError::UnexpectedToken { found: token_text(token), position: *position })
        }
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
        Token::Less => "<".into(),
        Token::Equal => "=".into(),
        Token::Comma => ",".into(),
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

    fn expect(&mut self, token: Token) -> Result<(), LogicError> {
        let (found, position) = self.next()?;
        if found == token {
            Ok(())
        } else {
            Err(LogicError::UnexpectedToken { found: token_text(&found), position })
        }
    }

    fn parse_or(&mut self) -> Result<Fo2Formula, LogicError> {
        let mut phi = self.parse_and()?;
        while matches!(self.peek(), Some((Token::Or, _))) {
            self.next()?;
            let rhs = self.parse_and()?;
            phi = Fo2Formula::Or(Box::new(phi), Box::new(rhs));
        }
        Ok(phi)
    }

    fn parse_and(&mut self) -> Result<Fo2Formula, LogicError> {
        let mut phi = self.parse_unary()?;
        while matches!(self.peek(), Some((Token::And, _))) {
            self.next()?;
            let rhs = self.parse_unary()?;
            phi = Fo2Formula::And(Box::new(phi), Box::new(rhs));
        }
        Ok(phi)
    }

    fn parse_unary(&mut self) -> Result<Fo2Formula, LogicError> {
        match self.peek() {
            Some((Token::Not, _)) => {
                self.next()?;
                Ok(Fo2Formula::Not(Box::new(self.parse_unary()?)))
            }
            Some((Token::Word(w), position)) if w.len() == 2 && w.starts_with(['E', 'A']) => {
                let (word, position) = (w.clone(), *position);
                self.next()?;
                let v = match word.as_bytes()[1] {
                    b'x' => Var::X,
                    b'y' => Var::Y,
                    _ => return Err(LogicError::ThirdVariable { name: word, position }),
                };
                // maximal scope: the body is everything up to the enclosing
                // parenthesis or the end of input
                let body = Box::new(self.parse_or()?);
                Ok(if word.starts_with('E') {
                    Fo2Formula::Exists(v, body)
                } else {
                    Fo2Formula::Forall(v, body)
                })
            }
            _ => self.parse_primary(),
        }
    }

    fn parse_primary(&mut self) -> Result<Fo2Formula, LogicError> {
        let (token, position) = self.next()?;
        match token {
            Token::LParen => {
                let phi = self.parse_or()?;
                self.expect(Token::RParen)?;
                Ok(phi)
            }
            Token::Word(word) => self.parse_atom(word, position),
            other => {
                Err(LogicError::UnexpectedToken { found: token_text(&other), position })
            }
        }
    }

    fn parse_atom(&mut self, word: String, position: usize) -> Result<Fo2Formula, LogicError> {
        match word.as_str() {
            "true" => return Ok(Fo2Formula::True),
            "false" => return Ok(Fo2Formula::False),
            "suc" => {
                self.expect(Token::LParen)?;
                let a = self.parse_var()?;
                self.expect(Token::Comma)?;
                let b = self.parse_var()?;
                self.expect(Token::RParen)?;
                return Ok(Fo2Formula::Suc(a, b));
            }
            "min" | "max" => {
                self.expect(Token::LParen)?;
                let v = self.parse_var()?;
                self.expect(Token::RParen)?;
                return Ok(if word == "min" {
                    Fo2Formula::Min(v)
                } else {
                    Fo2Formula::Max(v)
                });
            }
            _ => {}
        }
        let mut symbols = word.chars();
        let (head, rest) = (symbols.next().expect("words are nonempty"), symbols.as_str());
        if !rest.is_empty() || !head.is_ascii_lowercase() {
            return Err(LogicError::UnknownWord { word, position });
        }
        match self.peek() {
            Some((Token::LParen, _)) => {
                self.next()?;
                let v = self.parse_var()?;
                self.expect(Token::RParen)?;
                Ok(Fo2Formula::Letter(head, v))
            }
            Some((Token::Less, _)) => {
                self.next()?;
                let lhs = var_of(head, position)?;
                Ok(Fo2Formula::Less(lhs, self.parse_var()?))
            }
            Some((Token::Equal, _)) => {
                self.next()?;
                let lhs = var_of(head, position)?;
                Ok(Fo2Formula::Equal(lhs, self.parse_var()?))
            }
            _ => Err(LogicError::UnexpectedToken { found: word, position }),
        }
    }

    fn parse_var(&mut self) -> Result<Var, LogicError> {
        let (token, position) = self.next()?;
        match token {
            Token::Word(w) if w.len() == 1 => var_of(w.chars().next().expect("one char"), position),
            other => Err(LogicError::UnexpectedToken { found: token_text(&other), position }),
        }
    }
}

fn var_of(c: char, position: usize) -> Result<Var, LogicError> {
    match c {
        'x' => Ok(Var::X),
        'y' => Ok(Var::Y),
        _ => Err(LogicError::ThirdVariable { name: c.to_string(), position }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi(text: &str) -> Fo2Formula {
        parse_fo2(text).unwrap()
    }

    fn word(text: &str) -> Word {
        text.parse().unwrap()
    }

    #[test]
    fn parses_the_successor_factor_sentence() {
        let parsed = phi("Ex Ey (suc(x,y) & a(x) & b(y))");
        let expected = Fo2Formula::Exists(
            Var::X,
            Box::new(Fo2Formula::Exists(
                Var::Y,
                Box::new(Fo2Formula::And(
                    Box::new(Fo2Formula::And(
                        Box::new(Fo2Formula::Suc(Var::X, Var::Y)),
                        Box::new(Fo2Formula::Letter('a', Var::X)),
                    )),
                    Box::new(Fo2Formula::Letter('b', Var::Y)),
                )),
            )),
        );
        assert_eq!(parsed, expected);
    }

    #[test]
    fn quantifiers_take_maximal_scope() {
        assert_eq!(
            phi("Ex a(x) & b(x)"),
            Fo2Formula::Exists(
                Var::X,
                Box::new(Fo2Formula::And(
                    Box::new(Fo2Formula::Letter('a', Var::X)),
                    Box::new(Fo2Formula::Letter('b', Var::X)),
                )),
            )
        );
    }

    #[test]
    fn a_third_variable_is_rejected() {
        assert_eq!(
            parse_fo2("Ez a(z)"),
            Err(LogicError::ThirdVariable { name: "Ez".into(), position: 0 })
        );
        assert_eq!(
            parse_fo2("Ex a(z)"),
            Err(LogicError::ThirdVariable { name: "z".into(), position: 5 })
        );
    }

    #[test]
    fn stray_input_is_positioned() {
        assert_eq!(
            parse_fo2("min(x) )"),
            Err(LogicError::UnexpectedToken { found: ")".into(), position: 7 })
        );
        assert_eq!(parse_fo2("Ex"), Err(LogicError::UnexpectedEnd));
        assert_eq!(parse_fo2("x<y ^"), Err(LogicError::UnexpectedChar('^', 4)));
        assert_eq!(
            parse_fo2("foo(x)"),
            Err(LogicError::UnknownWord { word: "foo".into(), position: 0 })
        );
    }

    #[test]
    fn negation_binds_tighter_than_conjunction() {
        assert_eq!(
            phi("!x<y & x=y"),
            Fo2Formula::And(
                Box::new(Fo2Formula::Not(Box::new(Fo2Formula::Less(Var::X, Var::Y)))),
                Box::new(Fo2Formula::Equal(Var::X, Var::Y)),
            )
        );
    }

    #[test]
    fn the_factor_sentence_holds_exactly_on_words_with_ab() {
        let sentence = phi("Ex Ey (suc(x,y) & a(x) & b(y))");
        let empty = Fo2Assignment::empty();
        assert_eq!(eval_fo2(&sentence, &word("aab"), &empty), Ok(true));
        assert_eq!(eval_fo2(&sentence, &word("ba"), &empty), Ok(false));
        assert_eq!(eval_fo2(&sentence, &word("b"), &empty), Ok(false));
    }

    #[test]
    fn min_and_max_pin_the_border_positions() {
        let first_a = phi("Ex (min(x) & a(x))");
        let empty = Fo2Assignment::empty();
        assert_eq!(eval_fo2(&first_a, &word("ba"), &empty), Ok(false));
        assert_eq!(eval_fo2(&first_a, &word("ab"), &empty), Ok(true));
        let last_b = phi("Ax (max(x) | !b(x))");
        assert_eq!(eval_fo2(&last_b, &word("aab"), &empty), Ok(true));
        assert_eq!(eval_fo2(&last_b, &word("aba"), &empty), Ok(false));
    }

    #[test]
    fn free_variables_read_the_assignment() {
        let atom = phi("a(x)");
        assert_eq!(eval_fo2(&atom, &word("ab"), &Fo2Assignment::empty().with(Var::X, 1)), Ok(true));
        assert_eq!(
            eval_fo2(&atom, &word("ab"), &Fo2Assignment::empty()),
            Err(LogicError::UnboundVariable("x".into()))
        );
        assert_eq!(
            eval_fo2(&atom, &word("ab"), &Fo2Assignment::empty().with(Var::X, 3)),
            Err(LogicError::PositionOutOfRange { position: 3, length: 2 })
        );
    }

    #[test]
    fn alternation_counts_blocks_not_quantifiers() {
        assert_eq!(fo2_metrics(&phi("Ex Ey x<y")), DepthMetrics { m: 1, n: 2 });
        assert_eq!(fo2_metrics(&phi("Ex Ay x<y")), DepthMetrics { m: 2, n: 2 });
        // negation normal form turns !ExEy into AxAy: still one block
        assert_eq!(fo2_metrics(&phi("!(Ex Ey x<y)")), DepthMetrics { m: 1, n: 2 });
        assert_eq!(fo2_metrics(&phi("a(x)")), DepthMetrics { m: 0, n: 0 });
    }

    #[test]
    fn blocks_survive_boolean_connectives_on_a_path() {
        // E, then (E & A): the path through the universal branch alternates once
        let sentence = phi("Ex ((Ey a(y)) & Ay b(y))");
        assert_eq!(fo2_metrics(&sentence), DepthMetrics { m: 2, n: 2 });
        let same_type = phi("Ex ((Ey a(y)) & Ey b(y))");
        assert_eq!(fo2_metrics(&same_type), DepthMetrics { m: 1, n: 2 });
        // without the parentheses the inner quantifier swallows the rest
        let swallowed = phi("Ex (Ey a(y) & Ay b(y))");
        assert_eq!(fo2_metrics(&swallowed), DepthMetrics { m: 2, n: 3 });
    }

    #[test]
    fn metrics_are_invariant_under_double_negation() {
        for text in ["Ex Ay (x<y | a(x))", "!(Ax b(x))", "Ex Ey (suc(x,y) & a(x))"] {
            let original = phi(text);
            let doubled = Fo2Formula::Not(Box::new(Fo2Formula::Not(Box::new(original.clone()))));
            assert_eq!(fo2_metrics(&doubled), fo2_metrics(&original));
        }
    }

    #[test]
    fn display_round_trips_through_the_parser() {
        for text in [
            "Ex Ey (suc(x,y) & a(x) & b(y))",
            "!x<y & (x=y | min(x))",
            "Ax (max(x) | !b(x))",
            "Ex a(x) & Ey b(y)",
            "(Ex a(x)) & true",
        ] {
            let parsed = phi(text);
            assert_eq!(phi(&parsed.to_string()), parsed, "through {text}");
        }
    }

    #[test]
    fn free_variable_collection_respects_binders() {
        assert_eq!(phi("Ex a(x)").free_variables(), BTreeSet::new());
        assert_eq!(phi("Ex x<y").free_variables(), BTreeSet::from([Var::Y]));
        assert_eq!(phi("suc(x,y)").free_variables(), BTreeSet::from([Var::X, Var::Y]));
    }
}
