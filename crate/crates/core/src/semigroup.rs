//! Finite semigroups presented by multiplication tables.
//!
//! Elements are indices `0..order`. Tables built by this crate come from
//! transformation closures and are associative by construction; every
//! externally supplied table is validated eagerly, and a failure names a
//! violating triple.
//!
//! All functions here are pure and operate on immutable data; they can be
//! called freely from multiple threads.

mod families;

pub use families::{all_semigroups_up_to_order_3, transition_semigroups_of_order};

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("empty multiplication table")]
    EmptyTable,
    #[error("table row {0} has wrong length")]
    RaggedTable(usize),
    #[error("table entry {0} out of range")]
    EntryOutOfRange(usize),
    #[error("not associative: ({x} {y}) {z} != {x} ({y} {z})")]
    NotAssociative { x: String, y: String, z: String },
    #[error("expected {expected} element names, got {got}")]
    BadNameCount { expected: usize, got: usize },
    #[error("no generators given")]
    NoGenerators,
    #[error("generator maps must share one domain size")]
    MixedDomains,
    #[error("generator map entry out of range")]
    GeneratorOutOfRange,
    #[error("element {0} is not idempotent")]
    NotIdempotent(usize),
    #[error("invalid semigroup JSON: {0}")]
    Json(String),
}

/// A finite semigroup: a set `0..order` with an associative product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semigroup {
    table: Vec<Vec<usize>>,
    names: Vec<String>,
}

impl Semigroup {
    /// Builds a semigroup from a table, checking shape and associativity.
    ///
    /// `names` may be empty, in which case elements are named by index.
    pub fn from_table(table: Vec<Vec<usize>>, names: Vec<String>) -> Result<Self, SemigroupError> {
        let n = table.len();
        if n == 0 {
            return Err(SemigroupError::EmptyTable);
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(SemigroupError::RaggedTable(i));
            }
            if let Some(&e) = row.iter().find(|&&e| e >= n) {
                return Err(SemigroupError::EntryOutOfRange(e));
            }
        }
        let names = if names.is_empty() {
            (0..n).map(|i| i.to_string()).collect()
        } else if names.len() == n {
            names
        } else {
            return Err(SemigroupError::BadNameCount { expected: n, got: names.len() });
        };
        let s = Semigroup { table, names };
        if let Some((x, y, z)) = s.associativity_violation() {
            return Err(SemigroupError::NotAssociative {
                x: s.names[x].clone(),
                y: s.names[y].clone(),
                z: s.names[z].clone(),
            });
        }
        Ok(s)
    }

    /// Builds a semigroup from a table known to be associative (e.g. a
    /// transformation closure). Checked in debug builds only.
    pub(crate) fn from_table_unchecked(table: Vec<Vec<usize>>, names: Vec<String>) -> Self {
        let s = Semigroup { table, names };
        debug_assert!(s.associativity_violation().is_none());
        s
    }

    fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.order();
        for x in 0..n {
            for y in 0..n {
                let xy = self.table[x][y];
                for z in 0..n {
                    if self.table[xy][z] != self.table[x][self.table[y][z]] {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    /// Product of a nonempty sequence of elements, left to right.
    pub fn product(&self, xs: &[usize]) -> Option<usize> {
        let (&first, rest) = xs.split_first()?;
        Some(rest.iter().fold(first, |acc, &x| self.mul(acc, x)))
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    /// All idempotent elements, in index order.
    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.order()).filter(|&e| self.mul(e, e) == e).collect()
    }
}

/// The unique idempotent power of `x`.
///
/// Powers `x, x², x³, ...` are iterated until the first repetition; with
/// `index` the start of the cycle and `period` its length, the idempotent is
/// `x^k` for the unique `k ≡ 0 (mod period)` with `index ≤ k < index + period`.
pub fn omega_power(s: &Semigroup, x: usize) -> usize {
    let mut seen_at: Vec<Option<usize>> = vec![None; s.order()];
    let mut powers: Vec<usize> = Vec::new();
    let mut cur = x;
    let mut exp = 1usize;
    loop {
        if let Some(first) = seen_at[cur] {
            let index = first;
            let period = exp - first;
            let mut k = index.max(1);
            while k % period != 0 {
                k += 1;
            }
            debug_assert!(k < index + period);
            return powers[k - 1];
        }
        seen_at[cur] = Some(exp);
        powers.push(cur);
        cur = s.mul(cur, x);
        exp += 1;
    }
}

/// Green's relations of a finite semigroup.
///
/// Preorders are taken in the monoid completion: `x ≤_R y` iff `x = y` or
/// `x ∈ yS`, and likewise for the other relations. `class` vectors map each
/// element to a class id; class ids are assigned by smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreenData {
    pub leq_r: Vec<Vec<bool>>,
    pub leq_l: Vec<Vec<bool>>,
    pub leq_j: Vec<Vec<bool>>,
    pub r_class: Vec<usize>,
    pub l_class: Vec<usize>,
    pub j_class: Vec<usize>,
    pub h_class: Vec<usize>,
}

impl GreenData {
    pub fn r_classes(&self) -> Vec<Vec<usize>> {
        classes_of(&self.r_class)
    }

    pub fn l_classes(&self) -> Vec<Vec<usize>> {
        classes_of(&self.l_class)
    }

    pub fn j_classes(&self) -> Vec<Vec<usize>> {
        classes_of(&self.j_class)
    }

    pub fn h_classes(&self) -> Vec<Vec<usize>> {
        classes_of(&self.h_class)
    }

    pub fn r_related(&self, x: usize, y: usize) -> bool {
        self.r_class[x] == self.r_class[y]
    }

    pub fn l_related(&self, x: usize, y: usize) -> bool {
        self.l_class[x] == self.l_class[y]
    }

    pub fn j_related(&self, x: usize, y: usize) -> bool {
        self.j_class[x] == self.j_class[y]
    }

    /// True iff `subset` is a union of J-classes.
    pub fn is_union_of_j_classes(&self, subset: &BTreeSet<usize>) -> bool {
        self.j_classes()
            .iter()
            .all(|class| class.iter().all(|x| subset.contains(x)) || class.iter().all(|x| !subset.contains(x)))
    }
}

fn classes_of(class_ids: &[usize]) -> Vec<Vec<usize>> {
    let mut map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (x, &c) in class_ids.iter().enumerate() {
        map.entry(c).or_default().push(x);
    }
    map.into_values().collect()
}

fn class_ids_from_equiv(equiv: impl Fn(usize, usize) -> bool, n: usize) -> Vec<usize> {
    let mut ids = vec![usize::MAX; n];
    for x in 0..n {
        if ids[x] == usize::MAX {
            for y in x..n {
                if ids[y] == usize::MAX && equiv(x, y) {
                    ids[y] = x;
                }
            }
        }
    }
    ids
}

/// Computes Green's preorders and the four class partitions.
pub fn green(s: &Semigroup) -> GreenData {
    let n = s.order();

    // right ideals: x ≤_R y iff x ∈ {y} ∪ yS
    let mut leq_r = vec![vec![false; n]; n];
    let mut leq_l = vec![vec![false; n]; n];
    for y in 0..n {
        leq_r[y][y] = true;
        leq_l[y][y] = true;
        for z in 0..n {
            leq_r[s.mul(y, z)][y] = true;
            leq_l[s.mul(z, y)][y] = true;
        }
    }

    // two-sided ideals: x ≤_J y iff x ∈ {y} ∪ yS ∪ Sy ∪ SyS
    let mut leq_j = vec![vec![false; n]; n];
    for y in 0..n {
        leq_j[y][y] = true;
        for z in 0..n {
            leq_j[s.mul(y, z)][y] = true;
            leq_j[s.mul(z, y)][y] = true;
            let zy = s.mul(z, y);
            for t in 0..n {
                leq_j[s.mul(zy, t)][y] = true;
            }
        }
    }

    let r_class = class_ids_from_equiv(|x, y| leq_r[x][y] && leq_r[y][x], n);
    let l_class = class_ids_from_equiv(|x, y| leq_l[x][y] && leq_l[y][x], n);
    let j_class = class_ids_from_equiv(|x, y| leq_j[x][y] && leq_j[y][x], n);
    let h_class =
        class_ids_from_equiv(|x, y| r_class[x] == r_class[y] && l_class[x] == l_class[y], n);

    GreenData { leq_r, leq_l, leq_j, r_class, l_class, j_class, h_class }
}

/// Convenience wrapper over [`GreenData::is_union_of_j_classes`].
pub fn is_union_of_j_classes(s: &Semigroup, subset: &BTreeSet<usize>) -> bool {
    green(s).is_union_of_j_classes(subset)
}

/// The local monoid `eSe` of an idempotent `e`, as a standalone semigroup.
#[derive(Debug, Clone)]
pub struct LocalMonoid {
    pub semigroup: Semigroup,
    /// Parent element represented by each local element.
    pub parent_elements: Vec<usize>,
    /// Local index of the identity `e`.
    pub identity: usize,
}

/// Builds `eSe` for an idempotent `e`.
pub fn local_monoid(s: &Semigroup, e: usize) -> Result<LocalMonoid, SemigroupError> {
    if s.mul(e, e) != e {
        return Err(SemigroupError::NotIdempotent(e));
    }
    let mut elements: BTreeSet<usize> = BTreeSet::new();
    for x in 0..s.order() {
        elements.insert(s.mul(s.mul(e, x), e));
    }
    let elements: Vec<usize> = elements.into_iter().collect();
    let local_index: HashMap<usize, usize> =
        elements.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let table = elements
        .iter()
        .map(|&x| elements.iter().map(|&y| local_index[&s.mul(x, y)]).collect())
        .collect();
    let names = elements.iter().map(|&x| s.name(x).to_string()).collect();
    Ok(LocalMonoid {
        semigroup: Semigroup::from_table_unchecked(table, names),
        identity: local_index[&e],
        parent_elements: elements,
    })
}

/// Membership in LDA, by the global form: for every idempotent `e` and all
/// `x, y`, the element `g = (exeye)^ω` satisfies `g·exe·g = g`.
///
/// The answer is cross-checked against [`is_lda_via_local_monoids`] in debug
/// builds.
pub fn is_lda(s: &Semigroup) -> bool {
    let answer = is_lda_global(s);
    debug_assert_eq!(answer, is_lda_via_local_monoids(s));
    answer
}

fn is_lda_global(s: &Semigroup) -> bool {
    for e in s.idempotents() {
        for x in 0..s.order() {
            let exe = s.mul(s.mul(e, x), e);
            for y in 0..s.order() {
                let eye = s.mul(s.mul(e, y), e);
                let g = omega_power(s, s.mul(exe, eye));
                if s.mul(s.mul(g, exe), g) != g {
                    return false;
                }
            }
        }
    }
    true
}

/// Membership in LDA, by the local form: every local monoid `eSe` satisfies
/// `(xy)^ω x (xy)^ω = (xy)^ω`.
pub fn is_lda_via_local_monoids(s: &Semigroup) -> bool {
    for e in s.idempotents() {
        let local = local_monoid(s, e).expect("idempotent");
        let ls = &local.semigroup;
        for x in 0..ls.order() {
            for y in 0..ls.order() {
                let g = omega_power(ls, ls.mul(x, y));
                if ls.mul(ls.mul(g, x), g) != g {
                    return false;
                }
            }
        }
    }
    true
}

/// A semigroup generated by transformations, with the generator bookkeeping
/// needed to interpret words over the generator labels.
#[derive(Debug, Clone)]
pub struct TransformationClosure {
    pub semigroup: Semigroup,
    /// Element index of each generator, keyed by its label.
    pub generator_map: BTreeMap<char, usize>,
    /// The transformation each element represents.
    pub transformations: Vec<Vec<usize>>,
}

/// Closes a set of labeled transformations under composition.
///
/// Elements are numbered by the shortlex-least word of generator labels that
/// produces them (labels in the given order), and named by that word.
/// Composition is "apply left, then right": `(x·y)(q) = y(x(q))`.
pub fn from_transformations(
    generators: &[(char, Vec<usize>)],
) -> Result<TransformationClosure, SemigroupError> {
    if generators.is_empty() {
        return Err(SemigroupError::NoGenerators);
    }
    let domain = generators[0].1.len();
    for (_, g) in generators {
        if g.len() != domain {
            return Err(SemigroupError::MixedDomains);
        }
        if g.iter().any(|&q| q >= domain) {
            return Err(SemigroupError::GeneratorOutOfRange);
        }
    }

    let compose = |x: &[usize], y: &[usize]| -> Vec<usize> { x.iter().map(|&q| y[q]).collect() };

    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut transformations: Vec<Vec<usize>> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    let mut generator_map = BTreeMap::new();

    for (label, g) in generators {
        let id = *index.entry(g.clone()).or_insert_with(|| {
            transformations.push(g.clone());
            names.push(label.to_string());
            transformations.len() - 1
        });
        generator_map.insert(*label, id);
    }

    // Breadth-first products with generators enumerate elements in shortlex
    // order of their least generating word.
    let mut next = 0;
    while next < transformations.len() {
        for (label, g) in generators {
            let t = compose(&transformations[next], g);
            if !index.contains_key(&t) {
                let name = format!("{}{}", names[next], label);
                index.insert(t.clone(), transformations.len());
                transformations.push(t);
                names.push(name);
            }
        }
        next += 1;
    }

    let table = transformations
        .iter()
        .map(|x| transformations.iter().map(|y| index[&compose(x, y)]).collect())
        .collect();

    Ok(TransformationClosure {
        semigroup: Semigroup::from_table_unchecked(table, names),
        generator_map,
        transformations,
    })
}

#[derive(Serialize, Deserialize)]
struct SemigroupJson {
    order: usize,
    table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    names: Vec<String>,
}

impl Semigroup {
    /// Serializes as `{"order":N,"table":[[...]],"names":[...]}`.
    pub fn to_json_string(&self) -> String {
        let doc = SemigroupJson {
            order: self.order(),
            table: self.table.clone(),
            names: self.names.clone(),
        };
        serde_json::to_string(&doc).expect("semigroup serialization cannot fail")
    }

    /// Parses and validates the JSON table format.
    pub fn from_json_str(text: &str) -> Result<Self, SemigroupError> {
        let doc: SemigroupJson =
            serde_json::from_str(text).map_err(|e| SemigroupError::Json(e.to_string()))?;
        if doc.table.len() != doc.order {
            return Err(SemigroupError::Json(format!(
                "declared order {} but table has {} rows",
                doc.order,
                doc.table.len()
            )));
        }
        Semigroup::from_table(doc.table, doc.names)
    }
}

impl fmt::Display for Semigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.names.iter().map(String::len).max().unwrap_or(1);
        write!(f, "{:>width$} |", "*")?;
        for name in &self.names {
            write!(f, " {name:>width$}")?;
        }
        writeln!(f)?;
        writeln!(f, "{:-<1$}", "", (width + 1) * (self.order() + 1) + 1)?;
        for (x, row) in self.table.iter().enumerate() {
            write!(f, "{:>width$} |", self.names[x])?;
            for &xy in row {
                write!(f, " {:>width$}", self.names[xy])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
