use serde_json::{json, Value};
use thiserror::Error;

use crate::subset::Subset;

/// A failed quasilinkage axiom together with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("ground set size {0} outside the supported range 1..=16")]
    BadSize(usize),
    #[error("set {0} is not a subset of [n]")]
    OutOfRange(Subset),
    #[error("singleton {{{0}}} is not short")]
    MissingSingleton(usize),
    #[error("{short} is listed as short but its subset {sub} is not")]
    NotMonotone { short: Subset, sub: Subset },
    #[error("{0} and its complement are both short or both long")]
    ComplementClash(Subset),
}

impl Violation {
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::BadSize(_) => "BadSize",
            Violation::OutOfRange(_) => "OutOfRange",
            Violation::MissingSingleton(_) => "MissingSingleton",
            Violation::NotMonotone { .. } => "NotMonotone",
            Violation::ComplementClash(_) => "ComplementClash",
        }
    }

    pub fn witness(&self) -> Vec<Subset> {
        match *self {
            Violation::BadSize(_) => vec![],
            Violation::OutOfRange(s) => vec![s],
            Violation::MissingSingleton(i) => vec![Subset::singleton(i)],
            Violation::NotMonotone { short, sub } => vec![short, sub],
            Violation::ComplementClash(s) => vec![s],
        }
    }

    /// `{"kind": ..., "witness": [[...], ...]}` with 1-based labels.
    pub fn to_json(&self) -> Value {
        let witness: Vec<Vec<usize>> = self.witness().into_iter().map(Subset::to_vec).collect();
        json!({ "kind": self.kind(), "witness": witness })
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Violation(#[from] Violation),
    #[error("{0} is not a maximal short set")]
    NotMaximalShort(Subset),
    #[error("length vector is not generic: {0} has exactly half the total length")]
    NotGeneric(Subset),
    #[error("lengths must be positive")]
    NonPositiveLength,
    #[error("block {0} of the partition is long")]
    BlockNotShort(Subset),
    #[error("blocks do not partition [n]: {0}")]
    BadPartition(String),
    #[error("family is not conflict-free: complement of {t} lies inside {s}")]
    NotConflictFree { t: Subset, s: Subset },
    #[error("n = {0} is odd")]
    OddN(usize),
    #[error("merged arc {0} covers exactly half the circle")]
    DegenerateGap(Subset),
    #[error("not a cyclic order of [n]: {0}")]
    BadVertex(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("postcondition failed: {0}")]
    Postcondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Violation(v) => v.kind(),
            Error::NotMaximalShort(_) => "NotMaximalShort",
            Error::NotGeneric(_) => "NotGeneric",
            Error::NonPositiveLength => "NonPositiveLength",
            Error::BlockNotShort(_) => "BlockNotShort",
            Error::BadPartition(_) => "BadPartition",
            Error::NotConflictFree { .. } => "NotConflictFree",
            Error::OddN(_) => "OddN",
            Error::DegenerateGap(_) => "DegenerateGap",
            Error::BadVertex(_) => "BadVertex",
            Error::BudgetExceeded(_) => "BudgetExceeded",
            Error::Postcondition(_) => "Postcondition",
            Error::Parse(_) => "Parse",
        }
    }

    pub fn to_json(&self) -> Value {
        let witness: Vec<Vec<usize>> = match *self {
            Error::Violation(ref v) => return v.to_json(),
            Error::NotMaximalShort(s) | Error::NotGeneric(s) | Error::BlockNotShort(s) | Error::DegenerateGap(s) => {
                vec![s.to_vec()]
            }
            Error::NotConflictFree { t, s } => vec![t.to_vec(), s.to_vec()],
            _ => vec![],
        };
        json!({ "kind": self.kind(), "witness": witness, "message": self.to_string() })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
