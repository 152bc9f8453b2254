use crate::error::{Error, Result};
use crate::subset::Subset;

use super::Quasilinkage;

impl Quasilinkage {
    /// Make the maximal short set `t` long and its complement short.
    ///
    /// Flipping a singleton yields the dictator game, which is constant-sum but
    /// not proper.
    pub fn flip(&self, t: Subset) -> Result<Quasilinkage> {
        if !self.is_maximal_short(t) {
            return Err(Error::NotMaximalShort(t));
        }
        let mut table = self.table().clone();
        table.set(t, false);
        table.set(t.complement(self.n()), true);
        Ok(Quasilinkage::from_table_unchecked(self.n(), table))
    }

    /// Flips that carry this game to the apex game (a set is long iff it
    /// contains 1). Each step flips the smallest-mask maximal short set
    /// containing 1; the number of short sets containing 1 drops by one per
    /// step, so the loop terminates.
    pub fn flip_path_to_apex(&self) -> Vec<Subset> {
        let mut path = Vec::new();
        let mut cur = self.clone();
        while let Some(&t) = cur.maximal_short().iter().find(|m| m.contains(1)) {
            cur = cur.flip(t).expect("maximal short set");
            path.push(t);
        }
        path
    }

    /// Flips that leave the class of proper quasilinkages closed: maximal
    /// short sets with at least two elements.
    pub fn proper_flips(&self) -> impl Iterator<Item = Subset> + '_ {
        self.maximal_short().iter().copied().filter(|t| t.len() >= 2)
    }
}
