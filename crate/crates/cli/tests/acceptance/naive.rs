//! Independent oracles for the acceptance suite.
//!
//! Everything here is written from scratch against the definitions, on
//! purpose: a plain tree representation of the level identities, an
//! enumerator over *all* variable assignments (no idempotent domain
//! restriction, no sharing of subterm values), and direct ideal-membership
//! checks for Green's relations. Slow and obvious, so it can referee the
//! optimized implementations.

use std::collections::{BTreeMap, BTreeSet};

use fo2alt::Semigroup;

/// Plain omega-term tree; no structure sharing.
#[derive(Clone)]
pub enum Term {
    Var(String),
    Seq(Vec<Term>),
    Omega(Box<Term>),
}

fn var(name: impl Into<String>) -> Term {
    Term::Var(name.into())
}

fn omega(inner: Term) -> Term {
    Term::Omega(Box::new(inner))
}

/// The level-m identity pair, written out exactly as defined:
///
/// ```text
/// U_1 = (e^w s f^w x1 e^w)^w s (f^w y1 e^w t f^w)^w
/// V_1 = (e^w s f^w x1 e^w)^w t (f^w y1 e^w t f^w)^w
/// U_m = (p_m U_{m-1} q_m x_m)^w  p_m U_{m-1} q_m  (y_m p_m U_{m-1} q_m)^w
/// V_m = (p_m U_{m-1} q_m x_m)^w  p_m V_{m-1} q_m  (y_m p_m U_{m-1} q_m)^w
/// ```
pub fn level_pair(m: u32) -> (Term, Term) {
    assert!(m >= 1, "levels start at 1");
    let opening = || {
        omega(Term::Seq(vec![
            omega(var("e")),
            var("s"),
            omega(var("f")),
            var("x1"),
            omega(var("e")),
        ]))
    };
    let closing = || {
        omega(Term::Seq(vec![
            omega(var("f")),
            var("y1"),
            omega(var("e")),
            var("t"),
            omega(var("f")),
        ]))
    };
    let mut u = Term::Seq(vec![opening(), var("s"), closing()]);
    let mut v = Term::Seq(vec![opening(), var("t"), closing()]);
    for i in 2..=m {
        let p = format!("p{i}");
        let q = format!("q{i}");
        let left = omega(Term::Seq(vec![
            var(p.as_str()),
            u.clone(),
            var(q.as_str()),
            var(format!("x{i}")),
        ]));
        let right = omega(Term::Seq(vec![
            var(format!("y{i}")),
            var(p.as_str()),
            u.clone(),
            var(q.as_str()),
        ]));
        let next_u =
            Term::Seq(vec![left.clone(), var(p.as_str()), u.clone(), var(q.as_str()), right.clone()]);
        let next_v = Term::Seq(vec![left, var(p.as_str()), v, var(q.as_str()), right]);
        u = next_u;
        v = next_v;
    }
    (u, v)
}

fn collect_variables(term: &Term, out: &mut BTreeSet<String>) {
    match term {
        Term::Var(name) => {
            out.insert(name.clone());
        }
        Term::Seq(parts) => parts.iter().for_each(|part| collect_variables(part, out)),
        Term::Omega(inner) => collect_variables(inner, out),
    }
}

/// Postfix code for a stack evaluator; one op per tree node, so evaluation
/// is literally a tree walk without the recursion.
enum Op {
    Load(usize),
    Mul,
    Omega,
}

fn compile_into(term: &Term, slots: &BTreeMap<String, usize>, out: &mut Vec<Op>) {
    match term {
        Term::Var(name) => out.push(Op::Load(slots[name])),
        Term::Seq(parts) => {
            compile_into(&parts[0], slots, out);
            for part in &parts[1..] {
                compile_into(part, slots, out);
                out.push(Op::Mul);
            }
        }
        Term::Omega(inner) => {
            compile_into(inner, slots, out);
            out.push(Op::Omega);
        }
    }
}

/// x^ω by walking the powers of x until one is idempotent.
fn omega_table(s: &Semigroup) -> Vec<usize> {
    (0..s.order())
        .map(|x| {
            let mut y = x;
            for _ in 0..=2 * s.order() {
                if s.mul(y, y) == y {
                    return y;
                }
                y = s.mul(y, x);
            }
            unreachable!("a power of every element is idempotent");
        })
        .collect()
}

fn eval(ops: &[Op], assignment: &[usize], s: &Semigroup, omega: &[usize], stack: &mut Vec<usize>) -> usize {
    stack.clear();
    for op in ops {
        match op {
            Op::Load(slot) => stack.push(assignment[*slot]),
            Op::Mul => {
                let right = stack.pop().expect("mul needs two operands");
                let left = stack.pop().expect("mul needs two operands");
                stack.push(s.mul(left, right));
            }
            Op::Omega => {
                let top = stack.pop().expect("omega needs an operand");
                stack.push(omega[top]);
            }
        }
    }
    stack.pop().expect("a term leaves one value")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NaiveVerdict {
    Holds,
    Fails,
    /// The unrestricted assignment count alone exceeds a billion.
    TooBig,
}

/// Decides U_m = V_m by enumerating every assignment of every variable over
/// the whole semigroup.
pub fn check_level_identity(s: &Semigroup, m: u32) -> NaiveVerdict {
    let (u, v) = level_pair(m);
    let mut names = BTreeSet::new();
    collect_variables(&u, &mut names);
    collect_variables(&v, &mut names);
    let slots: BTreeMap<String, usize> =
        names.into_iter().enumerate().map(|(i, name)| (name, i)).collect();

    let mut total: u128 = 1;
    for _ in 0..slots.len() {
        total = total.saturating_mul(s.order() as u128);
    }
    if total > 1_000_000_000 {
        return NaiveVerdict::TooBig;
    }

    let mut u_ops = Vec::new();
    compile_into(&u, &slots, &mut u_ops);
    let mut v_ops = Vec::new();
    compile_into(&v, &slots, &mut v_ops);
    let omega = omega_table(s);

    let mut assignment = vec![0usize; slots.len()];
    let mut stack = Vec::with_capacity(64);
    loop {
        if eval(&u_ops, &assignment, s, &omega, &mut stack)
            != eval(&v_ops, &assignment, s, &omega, &mut stack)
        {
            return NaiveVerdict::Fails;
        }
        let mut i = assignment.len();
        loop {
            if i == 0 {
                return NaiveVerdict::Holds;
            }
            i -= 1;
            assignment[i] += 1;
            if assignment[i] < s.order() {
                break;
            }
            assignment[i] = 0;
        }
    }
}

/// Whether y lies in the two-sided ideal of x.
fn divisible(s: &Semigroup, x: usize, y: usize) -> bool {
    if x == y {
        return true;
    }
    let n = s.order();
    (0..n).any(|a| s.mul(a, x) == y)
        || (0..n).any(|b| s.mul(x, b) == y)
        || (0..n).any(|a| (0..n).any(|b| s.mul(s.mul(a, x), b) == y))
}

fn j_related(s: &Semigroup, x: usize, y: usize) -> bool {
    divisible(s, x, y) && divisible(s, y, x)
}

pub fn image_is_j_union(s: &Semigroup, image: &BTreeSet<usize>) -> bool {
    (0..s.order()).all(|y| image.contains(&y) || !image.iter().any(|&x| j_related(s, x, y)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NaiveMinimal {
    Level(u32),
    AboveBound,
    /// Enumeration was abandoned at this level before an answer was found.
    OutOfReach(u32),
}

/// The least level whose identity holds (with the extra image condition at
/// level 1), found by plain enumeration.
pub fn minimal_level(s: &Semigroup, image: &BTreeSet<usize>, max_m: u32) -> NaiveMinimal {
    for m in 1..=max_m {
        match check_level_identity(s, m) {
            NaiveVerdict::TooBig => return NaiveMinimal::OutOfReach(m),
            NaiveVerdict::Fails => {}
            NaiveVerdict::Holds => {
                if m != 1 || image_is_j_union(s, image) {
                    return NaiveMinimal::Level(m);
                }
            }
        }
    }
    NaiveMinimal::AboveBound
}

/// xS¹ as an explicit set.
pub fn right_ideal(s: &Semigroup, x: usize) -> BTreeSet<usize> {
    let mut out: BTreeSet<usize> = (0..s.order()).map(|a| s.mul(x, a)).collect();
    out.insert(x);
    out
}

/// S¹x as an explicit set.
pub fn left_ideal(s: &Semigroup, x: usize) -> BTreeSet<usize> {
    let mut out: BTreeSet<usize> = (0..s.order()).map(|a| s.mul(a, x)).collect();
    out.insert(x);
    out
}

pub fn r_related(s: &Semigroup, x: usize, y: usize) -> bool {
    right_ideal(s, x) == right_ideal(s, y)
}

pub fn l_related(s: &Semigroup, x: usize, y: usize) -> bool {
    left_ideal(s, x) == left_ideal(s, y)
}

/// The product of a nonempty word over semigroup elements.
pub fn eval_word(s: &Semigroup, word: &[usize]) -> usize {
    word.iter().skip(1).fold(word[0], |acc, &x| s.mul(acc, x))
}

/// All factors of exactly length k, as raw element sequences.
pub fn factors_of_length(word: &[usize], k: usize) -> BTreeSet<Vec<usize>> {
    if k == 0 || word.len() < k {
        return BTreeSet::new();
    }
    word.windows(k).map(<[usize]>::to_vec).collect()
}
