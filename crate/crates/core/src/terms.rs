//! Omega-terms and identity checking over finite semigroups.
//!
//! An omega-term is built from variables by concatenation and the formal
//! idempotent power `t^ω` (written `t^w` in text form). A semigroup satisfies
//! the identity `lhs = rhs` when every assignment of elements to variables
//! makes the two sides evaluate to the same element; [`satisfies`] decides
//! this by exhaustive enumeration, which is the point: target semigroups are
//! syntactic semigroups of desk-scale languages, so brute force with a good
//! constant factor beats cleverness.
//!
//! Terms share subtrees through [`Arc`], and evaluation memoizes on node
//! identity, so a subterm reused in several places costs one evaluation per
//! assignment. Everything here is immutable after construction and safe to
//! share across threads; the checker itself runs single-threaded.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::semigroup::{omega_power, Semigroup};

/// Default ceiling on node evaluations per [`satisfies`] call (one node
/// evaluation = computing the value of one subterm under one assignment).
pub const DEFAULT_EVALUATION_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("unexpected character '{0}' at position {1}")]
    UnexpectedChar(char, usize),
    #[error("expected 'w' after '^' at position {0}")]
    CaretWithoutW(usize),
    #[error("unexpected '{found}' at position {position}")]
    UnexpectedToken { found: String, position: usize },
    #[error("unexpected end of term")]
    UnexpectedEnd,
    #[error("expected '^w' after the group closed at position {0}")]
    MissingOmega(usize),
    #[error("empty term")]
    EmptyTerm,
    #[error("variable '{0}' is not assigned")]
    UnassignedVariable(String),
    #[error("alternation levels start at 1")]
    LevelZero,
}

#[derive(Debug, PartialEq, Eq)]
pub enum TermNode {
    Variable(String),
    /// At least two parts; never directly nested (concatenations flatten).
    Concat(Vec<OmegaTerm>),
    OmegaPower(OmegaTerm),
}

/// A reference-counted omega-term. Cloning is cheap and shares structure;
/// equality is structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaTerm(Arc<TermNode>);

impl OmegaTerm {
    /// A variable; names are identifiers matching `[a-z][a-z0-9_]*`.
    pub fn variable(name: impl Into<String>) -> Self {
        let name = name.into();
        assert!(is_identifier(&name), "invalid variable name {name:?}");
        OmegaTerm(Arc::new(TermNode::Variable(name)))
    }

    /// Concatenation of at least two terms. Parts that are themselves
    /// concatenations are spliced in, keeping the tree in the flat form the
    /// parser produces (concatenation is associative, so nothing is lost).
    pub fn concat(parts: impl IntoIterator<Item = OmegaTerm>) -> Self {
        let mut flat = Vec::new();
        for part in parts {
            match part.node() {
                TermNode::Concat(inner) => flat.extend(inner.iter().cloned()),
                _ => flat.push(part),
            }
        }
        assert!(flat.len() >= 2, "concatenation needs at least two parts");
        OmegaTerm(Arc::new(TermNode::Concat(flat)))
    }

    /// The formal idempotent power `inner^ω`.
    pub fn omega(inner: OmegaTerm) -> Self {
        OmegaTerm(Arc::new(TermNode::OmegaPower(inner)))
    }

    pub fn node(&self) -> &TermNode {
        &self.0
    }

    fn key(&self) -> *const TermNode {
        Arc::as_ptr(&self.0)
    }

    /// Variable names in order of first occurrence (leftmost first).
    pub fn variables(&self) -> Vec<String> {
        let mut order = Vec::new();
        let mut seen = BTreeSet::new();
        self.collect_variables(&mut order, &mut seen);
        order
    }

    fn collect_variables(&self, order: &mut Vec<String>, seen: &mut BTreeSet<String>) {
        match self.node() {
            TermNode::Variable(name) => {
                if seen.insert(name.clone()) {
                    order.push(name.clone());
                }
            }
            TermNode::Concat(parts) => {
                for part in parts {
                    part.collect_variables(order, seen);
                }
            }
            TermNode::OmegaPower(inner) => inner.collect_variables(order, seen),
        }
    }

    /// Records variables with at least one occurrence that is *not* the
    /// immediate child of an omega power. Such variables must range over the
    /// whole semigroup in [`satisfies`]; the others only over idempotents.
    fn collect_bare_variables(&self, directly_under_omega: bool, bare: &mut BTreeSet<String>) {
        match self.node() {
            TermNode::Variable(name) => {
                if !directly_under_omega {
                    bare.insert(name.clone());
                }
            }
            TermNode::Concat(parts) => {
                for part in parts {
                    part.collect_bare_variables(false, bare);
                }
            }
            TermNode::OmegaPower(inner) => inner.collect_bare_variables(true, bare),
        }
    }
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some('a'..='z'))
        && chars.all(|c| matches!(c, 'a'..='z' | '0'..='9' | '_'))
}

impl fmt::Display for OmegaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            TermNode::Variable(name) => write!(f, "{name}"),
            TermNode::Concat(parts) => {
                for (i, part) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{part}")?;
                }
                Ok(())
            }
            TermNode::OmegaPower(inner) => match inner.node() {
                TermNode::Variable(name) => write!(f, "{name}^w"),
                _ => write!(f, "({inner})^w"),
            },
        }
    }
}

#[derive(Debug, PartialEq, Eq)]
enum Token {
    LParen,
    RParen,
    PowW,
    Var(String),
}

fn lex(text: &str) -> Result<Vec<(Token, usize)>, TermError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        match chars[i] {
            c if c.is_whitespace() => i += 1,
            '(' => {
                tokens.push((Token::LParen, i));
                i += 1;
            }
            ')' => {
                tokens.push((Token::RParen, i));
                i += 1;
            }
            '^' => {
                if chars.get(i + 1) == Some(&'w') {
                    tokens.push((Token::PowW, i));
                    i += 2;
                } else {
                    return Err(TermError::CaretWithoutW(i));
                }
            }
            'a'..='z' => {
                let start = i;
                while matches!(chars.get(i), Some('a'..='z' | '0'..='9' | '_')) {
                    i += 1;
                }
                tokens.push((Token::Var(chars[start..i].iter().collect()), start));
            }
            c => return Err(TermError::UnexpectedChar(c, i)),
        }
    }
    Ok(tokens)
}

/// Parses the text form: whitespace-separated factors, where a factor is a
/// variable, `var^w`, or `( term )^w`. A parenthesized group must carry `^w`;
/// bare grouping does not exist in the grammar (concatenation is associative,
/// so it would never change meaning).
pub fn parse_term(text: &str) -> Result<OmegaTerm, TermError> {
    let tokens = lex(text)?;
    let (term, next) = parse_sequence(&tokens, 0)?;
    match tokens.get(next) {
        None => Ok(term),
        Some((_, position)) => {
            Err(TermError::UnexpectedToken { found: ")".into(), position: *position })
        }
    }
}

fn parse_sequence(tokens: &[(Token, usize)], mut i: usize) -> Result<(OmegaTerm, usize), TermError> {
    let mut parts: Vec<OmegaTerm> = Vec::new();
    loop {
        match tokens.get(i) {
            None | Some((Token::RParen, _)) => break,
            Some((Token::Var(name), _)) => {
                let var = OmegaTerm::variable(name.clone());
                i += 1;
                if matches!(tokens.get(i), Some((Token::PowW, _))) {
                    i += 1;
                    parts.push(OmegaTerm::omega(var));
                } else {
                    parts.push(var);
                }
            }
            Some((Token::LParen, open)) => {
                let (inner, after) = parse_sequence(tokens, i + 1)?;
                match tokens.get(after) {
                    Some((Token::RParen, close)) => {
                        if matches!(tokens.get(after + 1), Some((Token::PowW, _))) {
                            parts.push(OmegaTerm::omega(inner));
                            i = after + 2;
                        } else {
                            return Err(TermError::MissingOmega(*close));
                        }
                    }
                    _ => {
                        return Err(TermError::UnexpectedToken {
                            found: "(".into(),
                            position: *open,
                        })
                    }
                }
            }
            Some((Token::PowW, position)) => {
                return Err(TermError::UnexpectedToken { found: "^w".into(), position: *position })
            }
        }
    }
    match parts.len() {
        0 => Err(match tokens.get(i) {
            Some((Token::RParen, position)) => {
                TermError::UnexpectedToken { found: ")".into(), position: *position }
            }
            _ if tokens.is_empty() => TermError::EmptyTerm,
            _ => TermError::UnexpectedEnd,
        }),
        1 => Ok((parts.pop().expect("length checked"), i)),
        _ => Ok((OmegaTerm::concat(parts), i)),
    }
}

/// The identity pair whose satisfaction characterizes alternation level `m`.
///
/// Level 1 is built over the six variables e, f, s, t, x1, y1:
///
/// ```text
/// lhs₁ = (e^w s f^w x1 e^w)^w  s  (f^w y1 e^w t f^w)^w
/// rhs₁ = (e^w s f^w x1 e^w)^w  t  (f^w y1 e^w t f^w)^w
/// ```
///
/// Level m ≥ 2 wraps the previous pair in fresh variables p_m, q_m, x_m, y_m;
/// both sides share the same outer omega-blocks (built from the previous
/// *lhs*) and differ only in the center, where the previous pair recurs:
///
/// ```text
/// lhsₘ = (pₘ lhsₘ₋₁ qₘ xₘ)^w  pₘ lhsₘ₋₁ qₘ  (yₘ pₘ lhsₘ₋₁ qₘ)^w
/// rhsₘ = (pₘ lhsₘ₋₁ qₘ xₘ)^w  pₘ rhsₘ₋₁ qₘ  (yₘ pₘ lhsₘ₋₁ qₘ)^w
/// ```
///
/// The shared blocks are shared `Arc`s, so evaluating the pair costs little
/// more than evaluating one side.
pub fn level_identity(m: u32) -> Result<(OmegaTerm, OmegaTerm), TermError> {
    if m == 0 {
        return Err(TermError::LevelZero);
    }
    let [e, f, s, t] = ["e", "f", "s", "t"].map(OmegaTerm::variable);
    let (x1, y1) = (OmegaTerm::variable("x1"), OmegaTerm::variable("y1"));
    let e_w = OmegaTerm::omega(e);
    let f_w = OmegaTerm::omega(f);
    let left = OmegaTerm::omega(OmegaTerm::concat([
        e_w.clone(),
        s.clone(),
        f_w.clone(),
        x1,
        e_w.clone(),
    ]));
    let right = OmegaTerm::omega(OmegaTerm::concat([f_w.clone(), y1, e_w, t.clone(), f_w]));
    let mut lhs = OmegaTerm::concat([left.clone(), s, right.clone()]);
    let mut rhs = OmegaTerm::concat([left, t, right]);
    for i in 2..=m {
        let p = OmegaTerm::variable(format!("p{i}"));
        let q = OmegaTerm::variable(format!("q{i}"));
        let x = OmegaTerm::variable(format!("x{i}"));
        let y = OmegaTerm::variable(format!("y{i}"));
        let left = OmegaTerm::omega(OmegaTerm::concat([
            p.clone(),
            lhs.clone(),
            q.clone(),
            x,
        ]));
        let right = OmegaTerm::omega(OmegaTerm::concat([y, p.clone(), lhs.clone(), q.clone()]));
        let next_lhs = OmegaTerm::concat([
            left.clone(),
            p.clone(),
            lhs.clone(),
            q.clone(),
            right.clone(),
        ]);
        let next_rhs = OmegaTerm::concat([left, p, rhs, q, right]);
        lhs = next_lhs;
        rhs = next_rhs;
    }
    Ok((lhs, rhs))
}

/// Evaluates a term under an assignment, memoizing shared subterms.
pub fn evaluate(
    term: &OmegaTerm,
    assignment: &BTreeMap<String, usize>,
    s: &Semigroup,
) -> Result<usize, TermError> {
    fn go(
        term: &OmegaTerm,
        assignment: &BTreeMap<String, usize>,
        s: &Semigroup,
        memo: &mut HashMap<*const TermNode, usize>,
    ) -> Result<usize, TermError> {
        if let Some(&value) = memo.get(&term.key()) {
            return Ok(value);
        }
        let value = match term.node() {
            TermNode::Variable(name) => *assignment
                .get(name)
                .ok_or_else(|| TermError::UnassignedVariable(name.clone()))?,
            TermNode::Concat(parts) => {
                let mut acc = go(&parts[0], assignment, s, memo)?;
                for part in &parts[1..] {
                    acc = s.mul(acc, go(part, assignment, s, memo)?);
                }
                acc
            }
            TermNode::OmegaPower(inner) => omega_power(s, go(inner, assignment, s, memo)?),
        };
        memo.insert(term.key(), value);
        Ok(value)
    }
    go(term, assignment, s, &mut HashMap::new())
}

/// Outcome of an identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentityVerdict {
    Holds,
    Fails(Counterexample),
    /// The sweep would have exceeded the evaluation budget; no verdict.
    Inconclusive { budget: u64, assignments_checked: u64 },
}

impl IdentityVerdict {
    pub fn is_definite(&self) -> bool {
        !matches!(self, IdentityVerdict::Inconclusive { .. })
    }
}

/// A falsifying assignment, replayable through [`evaluate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub assignment: BTreeMap<String, usize>,
    pub lhs_value: usize,
    pub rhs_value: usize,
}

/// One evaluation step over the deduplicated nodes of an identity's two
/// sides, in an order where children precede parents.
enum Op {
    Load(usize),
    Mul(Vec<usize>),
    Omega(usize),
}

struct CompiledCheck {
    ops: Vec<Op>,
    lhs_root: usize,
    rhs_root: usize,
    var_names: Vec<String>,
    /// Element choices per variable, in element-index order.
    domains: Vec<Vec<usize>>,
    omega_table: Vec<usize>,
}

fn compile_check(s: &Semigroup, lhs: &OmegaTerm, rhs: &OmegaTerm) -> CompiledCheck {
    let mut var_names = lhs.variables();
    let mut seen: BTreeSet<String> = var_names.iter().cloned().collect();
    rhs.collect_variables(&mut var_names, &mut seen);

    // A variable may safely range over idempotents only when every occurrence
    // sits directly under an omega power: replacing its value v by v^ω then
    // changes no node value, so any counterexample maps onto a restricted one.
    let mut bare = BTreeSet::new();
    lhs.collect_bare_variables(false, &mut bare);
    rhs.collect_bare_variables(false, &mut bare);
    let idempotents = s.idempotents();
    let domains = var_names
        .iter()
        .map(|name| {
            if bare.contains(name) {
                (0..s.order()).collect()
            } else {
                idempotents.clone()
            }
        })
        .collect();

    let var_slots: HashMap<&str, usize> =
        var_names.iter().enumerate().map(|(i, name)| (name.as_str(), i)).collect();
    let mut ops = Vec::new();
    let mut ids: HashMap<*const TermNode, usize> = HashMap::new();
    let lhs_root = flatten_ops(lhs, &var_slots, &mut ids, &mut ops);
    let rhs_root = flatten_ops(rhs, &var_slots, &mut ids, &mut ops);

    CompiledCheck {
        ops,
        lhs_root,
        rhs_root,
        var_names,
        domains,
        omega_table: (0..s.order()).map(|x| omega_power(s, x)).collect(),
    }
}

fn flatten_ops(
    term: &OmegaTerm,
    var_slots: &HashMap<&str, usize>,
    ids: &mut HashMap<*const TermNode, usize>,
    ops: &mut Vec<Op>,
) -> usize {
    if let Some(&id) = ids.get(&term.key()) {
        return id;
    }
    let op = match term.node() {
        TermNode::Variable(name) => Op::Load(var_slots[name.as_str()]),
        TermNode::Concat(parts) => {
            Op::Mul(parts.iter().map(|p| flatten_ops(p, var_slots, ids, ops)).collect())
        }
        TermNode::OmegaPower(inner) => Op::Omega(flatten_ops(inner, var_slots, ids, ops)),
    };
    ops.push(op);
    let id = ops.len() - 1;
    ids.insert(term.key(), id);
    id
}

/// Decides whether `s` satisfies `lhs = rhs` by enumerating assignments.
///
/// Enumeration is lexicographic: variables in first-occurrence order (left
/// side scanned first), elements in index order, last variable cycling
/// fastest — so the reported counterexample is the lexicographically first
/// one over the restricted domains, stable across runs. The check stops as
/// soon as completing the next assignment would push the number of node
/// evaluations past `budget`, reporting how far it got.
pub fn satisfies(s: &Semigroup, lhs: &OmegaTerm, rhs: &OmegaTerm, budget: u64) -> IdentityVerdict {
    let check = compile_check(s, lhs, rhs);
    let per_assignment = check.ops.len() as u64;
    let mut values = vec![0usize; check.ops.len()];
    let mut positions = vec![0usize; check.var_names.len()];
    if check.domains.iter().any(Vec::is_empty) {
        // a semigroup with elements always has an idempotent, so a domain can
        // never actually be empty; guard anyway to keep the loop total
        return IdentityVerdict::Holds;
    }
    let mut used: u64 = 0;
    let mut assignments_checked: u64 = 0;
    loop {
        if used.saturating_add(per_assignment) > budget {
            log::debug!(
                "identity check hit its budget of {budget} after {assignments_checked} assignments"
            );
            return IdentityVerdict::Inconclusive { budget, assignments_checked };
        }
        for (i, op) in check.ops.iter().enumerate() {
            values[i] = match op {
                Op::Load(slot) => check.domains[*slot][positions[*slot]],
                Op::Mul(children) => {
                    let mut acc = values[children[0]];
                    for &child in &children[1..] {
                        acc = s.mul(acc, values[child]);
                    }
                    acc
                }
                Op::Omega(child) => check.omega_table[values[*child]],
            };
        }
        used += per_assignment;
        assignments_checked += 1;
        if assignments_checked.trailing_zeros() >= 22 {
            log::debug!("identity check: {assignments_checked} assignments done");
        }
        if values[check.lhs_root] != values[check.rhs_root] {
            let assignment = check
                .var_names
                .iter()
                .enumerate()
                .map(|(v, name)| (name.clone(), check.domains[v][positions[v]]))
                .collect();
            return IdentityVerdict::Fails(Counterexample {
                assignment,
                lhs_value: values[check.lhs_root],
                rhs_value: values[check.rhs_root],
            });
        }
        let mut v = positions.len();
        loop {
            if v == 0 {
                return IdentityVerdict::Holds;
            }
            v -= 1;
            positions[v] += 1;
            if positions[v] < check.domains[v].len() {
                break;
            }
            positions[v] = 0;
        }
    }
}
