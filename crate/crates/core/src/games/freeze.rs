use crate::error::{Error, Result};
use crate::subset::{full_mask, Subset};

use super::Quasilinkage;

/// An unordered partition of `[n]` into non-empty short blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortPartition {
    blocks: Vec<Subset>,
}

impl ShortPartition {
    pub fn new(game: &Quasilinkage, blocks: Vec<Subset>) -> Result<Self> {
        let n = game.n();
        let mut seen = 0u32;
        for &b in &blocks {
            if b.is_empty() {
                return Err(Error::BadPartition("empty block".into()));
            }
            if !b.fits(n) {
                return Err(Error::BadPartition(format!("block {b} outside [{n}]")));
            }
            if seen & b.0 != 0 {
                return Err(Error::BadPartition(format!("block {b} overlaps an earlier block")));
            }
            seen |= b.0;
        }
        if seen != full_mask(n) {
            return Err(Error::BadPartition(format!("blocks miss {}", Subset(full_mask(n) & !seen))));
        }
        if let Some(&b) = blocks.iter().find(|&&b| game.is_long(b)) {
            return Err(Error::BlockNotShort(b));
        }
        Ok(ShortPartition { blocks })
    }

    pub fn blocks(&self) -> &[Subset] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

impl Quasilinkage {
    /// Collapse each block to a single element: `J ⊆ [k]` is short iff the
    /// union of the blocks indexed by `J` is short here.
    pub fn freeze(&self, partition: &ShortPartition) -> Result<Quasilinkage> {
        let blocks = partition.blocks();
        let k = blocks.len();
        let union_of = |j: Subset| j.elements().fold(Subset::EMPTY, |acc, i| acc.union(blocks[i - 1]));
        Quasilinkage::from_predicate(k, |j| self.is_short(union_of(j))).map_err(Error::from)
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::{validate, FamilyForm};
    use super::*;

    #[test]
    fn singleton_partition_is_identity() {
        let g = example6();
        let p = ShortPartition::new(&g, (1..=6).map(Subset::singleton).collect()).unwrap();
        assert_eq!(g.freeze(&p).unwrap(), g);
    }

    #[test]
    fn freezing_a_pair_of_the_pentagon() {
        // Brute force on the frozen blocks {1,2},{3},{4},{5}: two-block unions
        // containing {1,2} have three edges (long); {3,4},{3,5},{4,5} keep two.
        let g = Quasilinkage::majority(5);
        let p = ShortPartition::new(&g, sets(&[&[1, 2], &[3], &[4], &[5]])).unwrap();
        let frozen = g.freeze(&p).unwrap();
        assert_eq!(frozen.n(), 4);
        assert_eq!(frozen.maximal_short(), &sets(&[&[1], &[2, 3], &[2, 4], &[3, 4]])[..]);
        assert!(validate(4, frozen.maximal_short(), FamilyForm::Maximal).is_ok());
        assert_eq!(frozen, Quasilinkage::apex_neighbor(4));
    }

    #[test]
    fn partition_errors() {
        let g = Quasilinkage::majority(5);
        assert!(matches!(ShortPartition::new(&g, sets(&[&[1, 2, 3], &[4], &[5]])), Err(Error::BlockNotShort(_))));
        assert!(matches!(ShortPartition::new(&g, sets(&[&[1, 2], &[4], &[5]])), Err(Error::BadPartition(_))));
        assert!(matches!(ShortPartition::new(&g, sets(&[&[1, 2], &[2, 3], &[4], &[5]])), Err(Error::BadPartition(_))));
    }
}
