use crate::error::{Error, Result};
use crate::subset::{full_mask, Subset, SubsetTable};

use super::Quasilinkage;

/// Partial short-set data: no member contains the complement of a member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictFreeFamily {
    n: usize,
    members: Vec<Subset>,
}

impl ConflictFreeFamily {
    pub fn new(n: usize, members: Vec<Subset>) -> Result<Self> {
        if let Some(&s) = members.iter().find(|s| !s.fits(n)) {
            return Err(Error::BadPartition(format!("{s} outside [{n}]")));
        }
        for &t in &members {
            let tc = t.complement(n);
            if let Some(&s) = members.iter().find(|s| tc.is_subset_of(**s)) {
                return Err(Error::NotConflictFree { t, s });
            }
        }
        Ok(ConflictFreeFamily { n, members })
    }

    /// True iff `([n] \ T) ⊄ S` for all members `T, S`.
    pub fn is_conflict_free(n: usize, members: &[Subset]) -> bool {
        members.iter().all(|t| members.iter().all(|s| !t.complement(n).is_subset_of(*s)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    fn known_short(&self) -> SubsetTable {
        let mut table = SubsetTable::new(self.n);
        for &m in &self.members {
            for s in m.submasks() {
                table.set(s, true);
            }
        }
        table
    }

    /// Proper non-empty subsets `S` such that neither `S` nor its complement
    /// lies inside a member, in mask order.
    pub fn unknown_subsets(&self) -> Vec<Subset> {
        let known = self.known_short();
        (1..full_mask(self.n)).map(Subset).filter(|&s| !known.get(s) && !known.get(s.complement(self.n))).collect()
    }

    /// Extend to a quasilinkage containing every member.
    ///
    /// Unknown subsets are adjoined one at a time, smallest cardinality first
    /// and lexicographically smallest within a cardinality, until none remain;
    /// the result is the downward closure. Adjoining only ever turns unknown
    /// sets into known ones, so a single pass in that order is equivalent to
    /// repeatedly taking the smallest remaining unknown set.
    pub fn extend(&self) -> Quasilinkage {
        let n = self.n;
        let mut short = self.known_short();
        let mut order: Vec<Subset> = (1..full_mask(n)).map(Subset).collect();
        order.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.lex_cmp(*b)));
        for s in order {
            if !short.get(s) && !short.get(s.complement(n)) {
                for sub in s.submasks() {
                    short.set(sub, true);
                }
            }
        }
        let game = Quasilinkage::from_table_unchecked(n, short);
        debug_assert!(Quasilinkage::from_maximal_short(n, game.maximal_short()).is_ok());
        game
    }
}
