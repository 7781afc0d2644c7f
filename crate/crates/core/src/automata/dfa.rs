//! Complete deterministic automata in a canonical minimal form.
//!
//! Canonical means: states are numbered by breadth-first discovery from the
//! initial state (symbols explored in alphabet order), every state is
//! reachable, and no two states are equivalent. Two runs of [`compile`] on
//! the same pattern produce byte-identical serializations.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::regex::Regex;
use crate::words::{Alphabet, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DfaError {
    #[error("automaton has no states")]
    NoStates,
    #[error("initial state {0} out of range")]
    BadInitial(usize),
    #[error("accepting state {0} out of range")]
    BadAccepting(usize),
    #[error("transition row for state {0} has wrong length")]
    BadRow(usize),
    #[error("transition target {0} out of range")]
    BadTarget(usize),
    #[error("symbol '{0}' is not in the automaton's alphabet")]
    ForeignSymbol(char),
    #[error("invalid automaton JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Word(#[from] crate::words::WordError),
}

/// A complete DFA: every (state, symbol) pair has exactly one successor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    initial: usize,
    accepting: BTreeSet<usize>,
    /// `delta[state][symbol index]`
    delta: Vec<Vec<usize>>,
}

impl Dfa {
    /// Builds a DFA after checking totality and index ranges. The result is
    /// not forced into canonical form; see [`Dfa::canonical_minimal`].
    pub fn new(
        alphabet: Alphabet,
        initial: usize,
        accepting: BTreeSet<usize>,
        delta: Vec<Vec<usize>>,
    ) -> Result<Self, DfaError> {
        let n = delta.len();
        if n == 0 {
            return Err(DfaError::NoStates);
        }
        if initial >= n {
            return Err(DfaError::BadInitial(initial));
        }
        if let Some(&q) = accepting.iter().find(|&&q| q >= n) {
            return Err(DfaError::BadAccepting(q));
        }
        for (q, row) in delta.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(DfaError::BadRow(q));
            }
            if let Some(&t) = row.iter().find(|&&t| t >= n) {
                return Err(DfaError::BadTarget(t));
            }
        }
        Ok(Dfa { alphabet, initial, accepting, delta })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.accepting
    }

    pub fn successor(&self, state: usize, symbol_index: usize) -> usize {
        self.delta[state][symbol_index]
    }

    /// The state transformation induced by one symbol: `action[q]` is the
    /// successor of `q`.
    pub fn letter_action(&self, symbol_index: usize) -> Vec<usize> {
        self.delta.iter().map(|row| row[symbol_index]).collect()
    }

    /// Runs the automaton; the empty word is accepted iff the initial state
    /// is accepting (compiled automata never accept it).
    pub fn accepts(&self, u: &Word) -> Result<bool, DfaError> {
        let mut state = self.initial;
        for &c in u.symbols() {
            let s = self.alphabet.index_of(c).ok_or(DfaError::ForeignSymbol(c))?;
            state = self.delta[state][s];
        }
        Ok(self.accepting.contains(&state))
    }

    /// The minimal automaton of the same language, canonically numbered.
    pub fn canonical_minimal(&self) -> Dfa {
        let parts = Machine {
            delta: self.delta.clone(),
            accepting: self.accepting.clone(),
            initial: self.initial,
        };
        parts.minimize().bfs_renumber().into_dfa(self.alphabet.clone())
    }
}

/// Compiles a pattern to the canonical minimal complete DFA of L(r) ∩ A⁺.
///
/// The framework lives over nonempty words: if the pattern matches the empty
/// word, that word is dropped from the language and a warning is logged.
pub fn compile(regex: &Regex, alphabet: &Alphabet) -> Result<Dfa, DfaError> {
    if let Some(&c) = regex.symbols().iter().find(|&&c| !alphabet.contains(c)) {
        return Err(DfaError::ForeignSymbol(c));
    }
    let mut nfa = Nfa::new(alphabet.len());
    let (enter, exit) = nfa.add_fragment(regex, alphabet);
    let machine = nfa.determinize(enter, exit).drop_empty_word().minimize().bfs_renumber();
    Ok(machine.into_dfa(alphabet.clone()))
}

/// Thompson construction: states with ε-edges and symbol edges.
struct Nfa {
    symbol_count: usize,
    eps: Vec<Vec<usize>>,
    steps: Vec<Vec<(usize, usize)>>,
}

impl Nfa {
    fn new(symbol_count: usize) -> Self {
        Nfa { symbol_count, eps: Vec::new(), steps: Vec::new() }
    }

    fn add_state(&mut self) -> usize {
        self.eps.push(Vec::new());
        self.steps.push(Vec::new());
        self.eps.len() - 1
    }

    fn add_fragment(&mut self, regex: &Regex, alphabet: &Alphabet) -> (usize, usize) {
        match regex {
            Regex::Symbol(c) => {
                let enter = self.add_state();
                let exit = self.add_state();
                let s = alphabet.index_of(*c).expect("symbol checked against alphabet");
                self.steps[enter].push((s, exit));
                (enter, exit)
            }
            Regex::Concat(l, r) => {
                let (l_enter, l_exit) = self.add_fragment(l, alphabet);
                let (r_enter, r_exit) = self.add_fragment(r, alphabet);
                self.eps[l_exit].push(r_enter);
                (l_enter, r_exit)
            }
            Regex::Union(l, r) => {
                let (l_enter, l_exit) = self.add_fragment(l, alphabet);
                let (r_enter, r_exit) = self.add_fragment(r, alphabet);
                let enter = self.add_state();
                let exit = self.add_state();
                self.eps[enter].extend([l_enter, r_enter]);
                self.eps[l_exit].push(exit);
                self.eps[r_exit].push(exit);
                (enter, exit)
            }
            Regex::Star(inner) => {
                let (i_enter, i_exit) = self.add_fragment(inner, alphabet);
                let enter = self.add_state();
                let exit = self.add_state();
                self.eps[enter].extend([i_enter, exit]);
                self.eps[i_exit].extend([i_enter, exit]);
                (enter, exit)
            }
            Regex::Plus(inner) => {
                let (i_enter, i_exit) = self.add_fragment(inner, alphabet);
                let enter = self.add_state();
                let exit = self.add_state();
                self.eps[enter].push(i_enter);
                self.eps[i_exit].extend([i_enter, exit]);
                (enter, exit)
            }
            Regex::Optional(inner) => {
                let (i_enter, i_exit) = self.add_fragment(inner, alphabet);
                let enter = self.add_state();
                let exit = self.add_state();
                self.eps[enter].extend([i_enter, exit]);
                self.eps[i_exit].push(exit);
                (enter, exit)
            }
        }
    }

    fn closure(&self, seed: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = seed.into_iter().collect();
        let mut queue: VecDeque<usize> = set.iter().copied().collect();
        while let Some(q) = queue.pop_front() {
            for &t in &self.eps[q] {
                if set.insert(t) {
                    queue.push_back(t);
                }
            }
        }
        set
    }

    /// Subset construction. The empty subset acts as the sink, so the result
    /// is complete by construction.
    fn determinize(&self, enter: usize, exit: usize) -> Machine {
        let start = self.closure([enter]);
        let mut ids: HashMap<BTreeSet<usize>, usize> = HashMap::new();
        let mut subsets: Vec<BTreeSet<usize>> = vec![start.clone()];
        ids.insert(start, 0);
        let mut delta: Vec<Vec<usize>> = Vec::new();
        let mut next = 0;
        while next < subsets.len() {
            let mut row = Vec::with_capacity(self.symbol_count);
            for s in 0..self.symbol_count {
                let moved: Vec<usize> = subsets[next]
                    .iter()
                    .flat_map(|&q| self.steps[q].iter().filter(|&&(sym, _)| sym == s))
                    .map(|&(_, t)| t)
                    .collect();
                let target = self.closure(moved);
                let id = *ids.entry(target.clone()).or_insert_with(|| {
                    subsets.push(target);
                    subsets.len() - 1
                });
                row.push(id);
            }
            delta.push(row);
            next += 1;
        }
        let accepting = subsets
            .iter()
            .enumerate()
            .filter(|(_, set)| set.contains(&exit))
            .map(|(i, _)| i)
            .collect();
        Machine { delta, accepting, initial: 0 }
    }
}

/// Alphabet-free automaton internals shared by the pipeline stages.
struct Machine {
    delta: Vec<Vec<usize>>,
    accepting: BTreeSet<usize>,
    initial: usize,
}

impl Machine {
    /// Restricts the language to nonempty words by splitting off a
    /// non-accepting copy of the initial state.
    fn drop_empty_word(mut self) -> Machine {
        if self.accepting.contains(&self.initial) {
            log::warn!("pattern matches the empty word; dropping it (languages live over nonempty words)");
            let copy = self.delta[self.initial].clone();
            self.delta.push(copy);
            self.initial = self.delta.len() - 1;
        }
        self
    }

    /// Moore partition refinement to behavioral equivalence classes.
    fn minimize(self) -> Machine {
        let n = self.delta.len();
        let mut class: Vec<usize> =
            (0..n).map(|q| usize::from(self.accepting.contains(&q))).collect();
        let mut class_count = class.iter().max().unwrap() + 1;
        loop {
            let mut sig_ids: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut next_class = vec![0usize; n];
            for q in 0..n {
                let mut sig = Vec::with_capacity(self.delta[q].len() + 1);
                sig.push(class[q]);
                sig.extend(self.delta[q].iter().map(|&t| class[t]));
                let fresh = sig_ids.len();
                next_class[q] = *sig_ids.entry(sig).or_insert(fresh);
            }
            let next_count = sig_ids.len();
            class = next_class;
            if next_count == class_count {
                break;
            }
            class_count = next_count;
        }
        let mut delta = vec![Vec::new(); class_count];
        for q in 0..n {
            if delta[class[q]].is_empty() {
                delta[class[q]] = self.delta[q].iter().map(|&t| class[t]).collect();
            }
        }
        let accepting = self.accepting.iter().map(|&q| class[q]).collect();
        Machine { delta, accepting, initial: class[self.initial] }
    }

    /// Renumbers states by breadth-first discovery from the initial state,
    /// dropping anything unreachable.
    fn bfs_renumber(self) -> Machine {
        let mut new_id: Vec<Option<usize>> = vec![None; self.delta.len()];
        let mut order: Vec<usize> = vec![self.initial];
        new_id[self.initial] = Some(0);
        let mut next = 0;
        while next < order.len() {
            for &t in &self.delta[order[next]] {
                if new_id[t].is_none() {
                    new_id[t] = Some(order.len());
                    order.push(t);
                }
            }
            next += 1;
        }
        let delta = order
            .iter()
            .map(|&q| self.delta[q].iter().map(|&t| new_id[t].unwrap()).collect())
            .collect();
        let accepting =
            self.accepting.iter().filter_map(|&q| new_id[q]).collect();
        Machine { delta, accepting, initial: 0 }
    }

    fn into_dfa(self, alphabet: Alphabet) -> Dfa {
        Dfa {
            alphabet,
            initial: self.initial,
            accepting: self.accepting,
            delta: self.delta,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct DfaJson {
    alphabet: Vec<char>,
    states: usize,
    initial: usize,
    accepting: Vec<usize>,
    transitions: BTreeMap<char, Vec<usize>>,
}

impl Dfa {
    /// Serializes as `{"alphabet":[...],"states":N,"initial":i,"accepting":[...],
    /// "transitions":{"a":[...],...}}` with one length-N array per symbol.
    pub fn to_json_string(&self) -> String {
        let transitions = self
            .alphabet
            .symbols()
            .iter()
            .enumerate()
            .map(|(s, &c)| (c, self.letter_action(s)))
            .collect();
        let doc = DfaJson {
            alphabet: self.alphabet.symbols().to_vec(),
            states: self.state_count(),
            initial: self.initial,
            accepting: self.accepting.iter().copied().collect(),
            transitions,
        };
        serde_json::to_string(&doc).expect("automaton serialization cannot fail")
    }

    /// Parses and validates the JSON automaton format.
    pub fn from_json_str(text: &str) -> Result<Self, DfaError> {
        let doc: DfaJson =
            serde_json::from_str(text).map_err(|e| DfaError::Json(e.to_string()))?;
        let alphabet = Alphabet::new(doc.alphabet)?;
        if doc.transitions.len() != alphabet.len() {
            return Err(DfaError::Json(format!(
                "expected {} transition arrays, got {}",
                alphabet.len(),
                doc.transitions.len()
            )));
        }
        let mut columns = Vec::with_capacity(alphabet.len());
        for &c in alphabet.symbols() {
            let column = doc
                .transitions
                .get(&c)
                .ok_or_else(|| DfaError::Json(format!("missing transitions for symbol '{c}'")))?;
            if column.len() != doc.states {
                return Err(DfaError::Json(format!(
                    "transitions for symbol '{c}' must list {} targets",
                    doc.states
                )));
            }
            columns.push(column.clone());
        }
        let delta = (0..doc.states)
            .map(|q| columns.iter().map(|col| col[q]).collect())
            .collect();
        Dfa::new(alphabet, doc.initial, doc.accepting.into_iter().collect(), delta)
    }
}
