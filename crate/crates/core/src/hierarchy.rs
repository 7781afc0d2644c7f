//! The end-to-end decision procedure: where does a regular language sit in
//! the quantifier-alternation hierarchy of two-variable logic with order and
//! successor?
//!
//! The pipeline is: syntactic semigroup → LDA gate (definable at all?) →
//! per-level identity checks. Level 1 additionally requires the syntactic
//! image to be a union of J-classes; levels m ≥ 2 are characterized by the
//! identity pair alone. Levels are checked independently up to `max_m` — the
//! report shows every verdict rather than assuming monotonicity, so an
//! anomaly would be visible instead of hidden.

use std::collections::BTreeSet;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::automata::{syntactic_presentation, Dfa};
use crate::semigroup::{green, is_lda, Semigroup};
use crate::terms::{level_identity, satisfies, IdentityVerdict, TermError};

/// Search bound and evaluation budget for [`classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Highest alternation level to test.
    pub max_m: u32,
    /// Node-evaluation budget per identity check; a level whose restricted
    /// assignment count alone exceeds this is skipped as inconclusive.
    pub budget: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { max_m: 3, budget: crate::terms::DEFAULT_EVALUATION_BUDGET }
    }
}

/// An identity verdict with elements rendered by name, ready for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportedVerdict {
    Holds,
    Fails {
        assignment: std::collections::BTreeMap<String, String>,
        lhs: String,
        rhs: String,
    },
    Inconclusive {
        budget: u64,
        assignments_checked: u64,
    },
}

impl ReportedVerdict {
    /// Renders an element-indexed verdict with element names.
    pub fn from_verdict(verdict: &IdentityVerdict, s: &Semigroup) -> Self {
        match verdict {
            IdentityVerdict::Holds => ReportedVerdict::Holds,
            IdentityVerdict::Fails(cx) => ReportedVerdict::Fails {
                assignment: cx
                    .assignment
                    .iter()
                    .map(|(var, &x)| (var.clone(), s.name(x).to_string()))
                    .collect(),
                lhs: s.name(cx.lhs_value).to_string(),
                rhs: s.name(cx.rhs_value).to_string(),
            },
            IdentityVerdict::Inconclusive { budget, assignments_checked } => {
                ReportedVerdict::Inconclusive {
                    budget: *budget,
                    assignments_checked: *assignments_checked,
                }
            }
        }
    }

    pub fn is_definite(&self) -> bool {
        !matches!(self, ReportedVerdict::Inconclusive { .. })
    }
}

/// The verdict for one level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelVerdict {
    pub m: u32,
    pub identity: ReportedVerdict,
    /// Level 1 only: is the syntactic image a union of J-classes?
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j_union: Option<bool>,
    /// Definite membership at this level; `None` when the identity check was
    /// inconclusive and the other conditions did not already settle it.
    pub granted: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinimalLevel {
    Level(u32),
    /// Failed the LDA gate: not definable at any level.
    NotDefinable,
    /// Definable, but no level up to the bound was granted.
    AboveBound,
}

impl Serialize for MinimalLevel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            MinimalLevel::Level(m) => serializer.serialize_u32(*m),
            MinimalLevel::NotDefinable => serializer.serialize_str("NOT_DEFINABLE"),
            MinimalLevel::AboveBound => serializer.serialize_str("ABOVE_BOUND"),
        }
    }
}

/// The full outcome of [`classify`], serializable to stable JSON (fixed key
/// order, sorted maps), so identical inputs produce byte-identical reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    /// Where the language came from, e.g. a pattern or a file name.
    pub source: String,
    pub alphabet: Vec<char>,
    pub semigroup_order: usize,
    pub lda: bool,
    /// One entry per checked level; empty when the LDA gate already failed.
    pub levels: Vec<LevelVerdict>,
    pub minimal_level: MinimalLevel,
}

impl Serialize for ClassificationReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut out = serializer.serialize_struct("ClassificationReport", 6)?;
        out.serialize_field("source", &self.source)?;
        out.serialize_field("alphabet", &self.alphabet)?;
        out.serialize_field("semigroup_order", &self.semigroup_order)?;
        out.serialize_field("lda", &self.lda)?;
        out.serialize_field("levels", &self.levels)?;
        out.serialize_field("minimal_level", &self.minimal_level)?;
        out.end()
    }
}

impl ClassificationReport {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }

    /// Whether the reported minimal level is beyond doubt: no level that
    /// could lie at or below it was left unresolved by a budget cutoff.
    pub fn minimal_level_is_tight(&self) -> bool {
        match self.minimal_level {
            MinimalLevel::NotDefinable => true,
            MinimalLevel::Level(m) => {
                self.levels.iter().all(|level| level.m >= m || level.granted.is_some())
            }
            MinimalLevel::AboveBound => {
                self.levels.iter().all(|level| level.granted.is_some())
            }
        }
    }
}

/// Assignments a level-m identity check will enumerate: the two variables
/// occurring only under omega powers range over idempotents, the other 4m
/// variables over the whole semigroup.
fn restricted_assignment_count(s: &Semigroup, m: u32) -> u128 {
    let idempotents = s.idempotents().len() as u128;
    let order = s.order() as u128;
    (0..4 * m).fold(idempotents * idempotents, |acc, _| acc.saturating_mul(order))
}

/// Decides membership at one level: the level identity, plus (at m = 1) the
/// requirement that the image be a union of J-classes.
///
/// A level whose assignment count alone exceeds the budget is reported
/// inconclusive without being attempted; a level that starts within budget
/// can still come back inconclusive if its node evaluations outgrow it.
pub fn check_level(
    s: &Semigroup,
    image: &BTreeSet<usize>,
    m: u32,
    budget: u64,
) -> Result<LevelVerdict, TermError> {
    let (lhs, rhs) = level_identity(m)?;
    let identity = if restricted_assignment_count(s, m) > u128::from(budget) {
        IdentityVerdict::Inconclusive { budget, assignments_checked: 0 }
    } else {
        satisfies(s, &lhs, &rhs, budget)
    };
    let j_union = (m == 1).then(|| green(s).is_union_of_j_classes(image));
    let granted = match (&identity, j_union) {
        (_, Some(false)) => Some(false),
        (IdentityVerdict::Holds, _) => Some(true),
        (IdentityVerdict::Fails(_), _) => Some(false),
        (IdentityVerdict::Inconclusive { .. }, _) => None,
    };
    Ok(LevelVerdict { m, identity: ReportedVerdict::from_verdict(&identity, s), j_union, granted })
}

/// Classifies the language of a canonical minimal DFA.
///
/// `source` is a human-readable descriptor echoed into the report.
pub fn classify(dfa: &Dfa, source: impl Into<String>, options: &ClassifyOptions) -> ClassificationReport {
    let presentation = syntactic_presentation(dfa);
    let s = &presentation.semigroup;
    let lda = is_lda(s);
    let mut levels = Vec::new();
    if lda {
        for m in 1..=options.max_m.max(1) {
            let verdict = check_level(s, &presentation.image, m, options.budget)
                .expect("levels start at 1");
            levels.push(verdict);
        }
    }
    let minimal_level = if !lda {
        MinimalLevel::NotDefinable
    } else {
        levels
            .iter()
            .find(|level| level.granted == Some(true))
            .map(|level| MinimalLevel::Level(level.m))
            .unwrap_or(MinimalLevel::AboveBound)
    };
    ClassificationReport {
        source: source.into(),
        alphabet: dfa.alphabet().symbols().to_vec(),
        semigroup_order: s.order(),
        lda,
        levels,
        minimal_level,
    }
}
