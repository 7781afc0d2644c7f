//! Regular-expression parsing.
//!
//! The grammar, in precedence order (loosest first):
//!
//! ```text
//! expr := alt
//! alt  := cat ('|' cat)*
//! cat  := rep+
//! rep  := atom ('*' | '+' | '?')*
//! atom := SYMBOL | '(' expr ')'
//! ```
//!
//! Every character other than the five metacharacters `| ( ) * + ?` is a
//! symbol. Symbols must belong to the declared alphabet; when no alphabet is
//! declared, it is inferred as the set of symbols occurring in the pattern.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::words::Alphabet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Regex {
    Symbol(char),
    Concat(Box<Regex>, Box<Regex>),
    Union(Box<Regex>, Box<Regex>),
    Star(Box<Regex>),
    Plus(Box<Regex>),
    Optional(Box<Regex>),
}

impl Regex {
    /// The set of symbols occurring in the pattern.
    pub fn symbols(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeSet<char>) {
        match self {
            Regex::Symbol(c) => {
                out.insert(*c);
            }
            Regex::Concat(l, r) | Regex::Union(l, r) => {
                l.collect_symbols(out);
                r.collect_symbols(out);
            }
            Regex::Star(inner) | Regex::Plus(inner) | Regex::Optional(inner) => {
                inner.collect_symbols(out);
            }
        }
    }
}

/// Positions in errors are zero-based character offsets into the pattern.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegexError {
    #[error("empty pattern")]
    EmptyPattern,
    #[error("symbol '{symbol}' at position {position} is not in the alphabet")]
    UnknownSymbol { symbol: char, position: usize },
    #[error("operator '{operator}' at position {position} has nothing to repeat")]
    DanglingOperator { operator: char, position: usize },
    #[error("unbalanced parenthesis at position {position}")]
    UnbalancedParenthesis { position: usize },
    #[error("unexpected '{found}' at position {position}")]
    UnexpectedToken { found: char, position: usize },
    #[error("unexpected end of pattern")]
    UnexpectedEnd,
}

/// Parses a pattern whose symbols must all lie in `alphabet`.
pub fn parse_regex(text: &str, alphabet: &Alphabet) -> Result<Regex, RegexError> {
    parse_with(text, Some(alphabet))
}

/// Parses a pattern and infers its alphabet from the symbols that occur.
pub fn parse_regex_inferring_alphabet(text: &str) -> Result<(Regex, Alphabet), RegexError> {
    let regex = parse_with(text, None)?;
    let alphabet =
        Alphabet::new(regex.symbols()).expect("a parsed pattern contains at least one symbol");
    Ok((regex, alphabet))
}

fn parse_with(text: &str, alphabet: Option<&Alphabet>) -> Result<Regex, RegexError> {
    if text.is_empty() {
        return Err(RegexError::EmptyPattern);
    }
    let mut parser = Parser { chars: text.chars().collect(), pos: 0, alphabet };
    let regex = parser.parse_alt()?;
    match parser.peek() {
        None => Ok(regex),
        // parse_alt stops only at end or an unmatched ')'
        Some(_) => Err(RegexError::UnbalancedParenthesis { position: parser.pos }),
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    alphabet: Option<&'a Alphabet>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn parse_alt(&mut self) -> Result<Regex, RegexError> {
        let mut lhs = self.parse_cat()?;
        while self.peek() == Some('|') {
            self.bump();
            let rhs = self.parse_cat()?;
            lhs = Regex::Union(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_cat(&mut self) -> Result<Regex, RegexError> {
        let mut items = Vec::new();
        while !matches!(self.peek(), None | Some('|') | Some(')')) {
            items.push(self.parse_rep()?);
        }
        items
            .into_iter()
            .reduce(|l, r| Regex::Concat(Box::new(l), Box::new(r)))
            .ok_or_else(|| match self.peek() {
                None => RegexError::UnexpectedEnd,
                Some(found) => RegexError::UnexpectedToken { found, position: self.pos },
            })
    }

    fn parse_rep(&mut self) -> Result<Regex, RegexError> {
        let mut node = self.parse_atom()?;
        while let Some(op @ ('*' | '+' | '?')) = self.peek() {
            self.bump();
            node = match op {
                '*' => Regex::Star(Box::new(node)),
                '+' => Regex::Plus(Box::new(node)),
                _ => Regex::Optional(Box::new(node)),
            };
        }
        Ok(node)
    }

    fn parse_atom(&mut self) -> Result<Regex, RegexError> {
        let position = self.pos;
        match self.bump() {
            None => Err(RegexError::UnexpectedEnd),
            Some('(') => {
                let inner = self.parse_alt()?;
                match self.bump() {
                    Some(')') => Ok(inner),
                    _ => Err(RegexError::UnbalancedParenthesis { position }),
                }
            }
            Some(op @ ('*' | '+' | '?')) => {
                Err(RegexError::DanglingOperator { operator: op, position })
            }
            Some(found @ (')' | '|')) => Err(RegexError::UnexpectedToken { found, position }),
            Some(symbol) => match self.alphabet {
                Some(alphabet) if !alphabet.contains(symbol) => {
                    Err(RegexError::UnknownSymbol { symbol, position })
                }
                _ => Ok(Regex::Symbol(symbol)),
            },
        }
    }
}
