//! Quasilinkages (constant-sum simple games) and the operations that act on
//! them directly: validation, flips, freezing, conflict-free extension and
//! the symmetry / comparability diagnostics.

mod conflict;
mod diagnostics;
mod flip;
mod freeze;

use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::Violation;
use crate::subset::{full_mask, Subset, SubsetTable, MAX_N};

pub use conflict::ConflictFreeFamily;
pub use diagnostics::{symmetric_counting_obstruction, ComparabilityWitness, Permutation};
pub use freeze::ShortPartition;

/// A family of short sets on `[n]` that is closed under subsets and contains
/// exactly one of every complementary pair.
///
/// The family is stored by its maximal short sets, sorted by mask value, plus
/// a membership table for constant-time `is_short`. Equality and hashing use
/// only `(n, maximal_short)`.
///
/// Values built through [`validate`] also contain every singleton. The
/// remaining constructors (flips of a singleton, [`Quasilinkage::apex`],
/// `short_sets` of a vector with one dominating length) may produce the
/// dictator game where one singleton is long; [`Quasilinkage::is_proper`]
/// tells the two apart.
#[derive(Clone)]
pub struct Quasilinkage {
    n: usize,
    maximal: Vec<Subset>,
    short: SubsetTable,
}

/// How a family passed to [`validate`] should be read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyForm {
    /// Claimed maximal short sets; the family is their downward closure.
    Maximal,
    /// Every short set listed explicitly (the empty set may be omitted).
    Explicit,
}

/// Check the three quasilinkage axioms and return the canonical game.
///
/// Violations are reported in a fixed order: size, range, monotonicity (explicit form
/// only), singletons, complementarity.
pub fn validate(n: usize, family: &[Subset], form: FamilyForm) -> Result<Quasilinkage, Violation> {
    let table = closure_table(n, family, form)?;
    if let Some(i) = (1..=n).find(|&i| !table.get(Subset::singleton(i))) {
        return Err(Violation::MissingSingleton(i));
    }
    check_complementarity(n, &table)?;
    Ok(Quasilinkage::from_table_unchecked(n, table))
}

fn closure_table(n: usize, family: &[Subset], form: FamilyForm) -> Result<SubsetTable, Violation> {
    if n == 0 || n > MAX_N {
        return Err(Violation::BadSize(n));
    }
    if let Some(&s) = family.iter().find(|s| !s.fits(n)) {
        return Err(Violation::OutOfRange(s));
    }
    let mut table = SubsetTable::new(n);
    match form {
        FamilyForm::Maximal => {
            for &m in family {
                for s in m.submasks() {
                    table.set(s, true);
                }
            }
        }
        FamilyForm::Explicit => {
            table.set(Subset::EMPTY, true);
            for &s in family {
                table.set(s, true);
            }
            let mut sorted = family.to_vec();
            sorted.sort();
            for s in sorted {
                if let Some(x) = s.elements().find(|&x| !table.get(s.without(x))) {
                    return Err(Violation::NotMonotone { short: s, sub: s.without(x) });
                }
            }
        }
    }
    Ok(table)
}

fn check_complementarity(n: usize, table: &SubsetTable) -> Result<(), Violation> {
    let half = 1u32 << (n - 1);
    for bits in 0..half {
        let s = Subset(bits);
        if table.get(s) == table.get(s.complement(n)) {
            return Err(Violation::ComplementClash(s));
        }
    }
    Ok(())
}

impl Quasilinkage {
    /// Build from a membership table that is already monotone and
    /// strongly complementary.
    pub(crate) fn from_table_unchecked(n: usize, short: SubsetTable) -> Self {
        let full = full_mask(n);
        let mut maximal = Vec::new();
        for bits in 0..=full {
            let s = Subset(bits);
            if !short.get(s) {
                continue;
            }
            let mut free = full & !bits;
            let mut is_max = true;
            while free != 0 {
                let b = free & free.wrapping_neg();
                if short.get(Subset(bits | b)) {
                    is_max = false;
                    break;
                }
                free &= free - 1;
            }
            if is_max {
                maximal.push(s);
            }
        }
        Quasilinkage { n, maximal, short }
    }

    /// Constant-sum game from claimed maximal short sets: closure is taken and
    /// strong complementarity is checked, singletons are not.
    pub fn from_maximal_short(n: usize, sets: &[Subset]) -> Result<Self, Violation> {
        let table = closure_table(n, sets, FamilyForm::Maximal)?;
        check_complementarity(n, &table)?;
        Ok(Self::from_table_unchecked(n, table))
    }

    /// Game whose short sets are exactly those satisfying `pred`.
    pub fn from_predicate<P: Fn(Subset) -> bool>(n: usize, pred: P) -> Result<Self, Violation> {
        if n == 0 || n > MAX_N {
            return Err(Violation::BadSize(n));
        }
        let mut table = SubsetTable::new(n);
        for bits in 0..=full_mask(n) {
            if pred(Subset(bits)) {
                table.set(Subset(bits), true);
            }
        }
        for bits in 0..=full_mask(n) {
            let s = Subset(bits);
            if table.get(s) {
                if let Some(x) = s.elements().find(|&x| !table.get(s.without(x))) {
                    return Err(Violation::NotMonotone { short: s, sub: s.without(x) });
                }
            }
        }
        check_complementarity(n, &table)?;
        Ok(Self::from_table_unchecked(n, table))
    }

    /// The dictator game: a set is long iff it contains element 1.
    pub fn apex(n: usize) -> Self {
        let rest = Subset::full(n).without(1);
        Self::from_maximal_short(n, &[rest]).expect("apex game is constant-sum")
    }

    /// The quasilinkage one flip away from the apex: `{1}` is short, every
    /// other set containing 1 is long. Realized by `(n - 3/2, 1, ..., 1)`.
    pub fn apex_neighbor(n: usize) -> Self {
        assert!(n >= 3);
        let rest = Subset::full(n).without(1);
        Self::from_predicate(n, |s| if s.contains(1) { s.len() == 1 } else { s != rest })
            .expect("apex neighbor is a quasilinkage")
    }

    /// Short sets are the sets of size below `n / 2` (`n` odd).
    pub fn majority(n: usize) -> Self {
        assert!(n % 2 == 1, "majority game needs odd n");
        Self::from_predicate(n, |s| 2 * s.len() < n).expect("majority game is a quasilinkage")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn maximal_short(&self) -> &[Subset] {
        &self.maximal
    }

    #[inline]
    pub fn is_short(&self, s: Subset) -> bool {
        self.short.get(s)
    }

    #[inline]
    pub fn is_long(&self, s: Subset) -> bool {
        !self.short.get(s)
    }

    /// Every singleton is short.
    pub fn is_proper(&self) -> bool {
        (1..=self.n).all(|i| self.is_short(Subset::singleton(i)))
    }

    pub fn short_count(&self) -> usize {
        self.short.count()
    }

    /// All short sets in increasing mask order.
    pub fn short_sets(&self) -> impl Iterator<Item = Subset> + '_ {
        (0..=full_mask(self.n)).map(Subset).filter(move |&s| self.is_short(s))
    }

    pub fn is_maximal_short(&self, t: Subset) -> bool {
        t.fits(self.n) && self.is_short(t) && t.complement(self.n).elements().all(|x| !self.is_short(t.with(x)))
    }

    pub(crate) fn table(&self) -> &SubsetTable {
        &self.short
    }

    /// Canonical key: `(n, maximal short masks)`.
    pub fn key(&self) -> (usize, Vec<u32>) {
        (self.n, self.maximal.iter().map(|s| s.0).collect())
    }

    /// Maximal short sets as sorted 1-based element lists, sorted lexicographically.
    pub fn maximal_short_lists(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self.maximal.iter().map(|s| s.to_vec()).collect();
        out.sort();
        out
    }

    /// Same game after renaming element `i` to `perm[i - 1]`.
    pub fn relabel(&self, perm: &[usize]) -> Quasilinkage {
        let image: Vec<Subset> = self.maximal.iter().map(|&m| permute(m, perm)).collect();
        Self::from_maximal_short(self.n, &image).expect("relabeling preserves the axioms")
    }
}

pub(crate) fn permute(s: Subset, perm: &[usize]) -> Subset {
    Subset::from_elements(s.elements().map(|e| perm[e - 1]))
}

impl PartialEq for Quasilinkage {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.maximal == other.maximal
    }
}

impl Eq for Quasilinkage {}

impl Hash for Quasilinkage {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.maximal.hash(state);
    }
}

impl PartialOrd for Quasilinkage {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Quasilinkage {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, &self.maximal).cmp(&(other.n, &other.maximal))
    }
}

impl fmt::Debug for Quasilinkage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quasilinkage(n={}, maximal={:?})", self.n, self.maximal)
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn example6_short_sets() {
        let g = example6();
        assert!(g.is_short(Subset::from_elements([1, 2, 3])));
        assert!(g.is_short(Subset::EMPTY));
        assert!(g.is_long(Subset::from_elements([1, 2, 3, 4])));
        assert!(g.is_long(Subset::from_elements([2, 3, 4])));
        assert_eq!(g.short_count(), 32);
        assert_eq!(g.maximal_short().len(), 10);
    }

    #[test]
    fn example7_is_a_quasilinkage() {
        let g = example7();
        assert!(g.is_proper());
        assert_eq!(g.short_count(), 64);
        assert!(g.is_long(Subset::from_elements([1, 2, 3])));
        assert!(g.is_short(Subset::from_elements([4, 5, 6, 7])));
    }

    #[test]
    fn example6_explicit_family_validates() {
        let mut fam: Vec<Subset> = (1..=6).map(Subset::singleton).collect();
        for i in 1..=6 {
            for j in i + 1..=6 {
                fam.push(Subset::from_elements([i, j]));
            }
        }
        fam.extend(example6().maximal_short().iter().copied());
        let g = validate(6, &fam, FamilyForm::Explicit).unwrap();
        assert_eq!(g, example6());
    }

    #[test]
    fn missing_singleton_is_reported() {
        let fam = sets(&[&[1], &[2]]);
        assert_eq!(validate(3, &fam, FamilyForm::Maximal).unwrap_err(), Violation::MissingSingleton(3));
    }

    #[test]
    fn complement_clash_is_reported() {
        let fam = sets(&[&[1, 2], &[3, 4]]);
        let err = validate(4, &fam, FamilyForm::Maximal).unwrap_err();
        assert_eq!(err, Violation::ComplementClash(Subset::from_elements([1, 2])));
    }

    #[test]
    fn explicit_family_must_be_monotone() {
        let fam = sets(&[&[1], &[2], &[3], &[1, 2]]);
        // {1,2} is present, fine; now drop {2}
        let fam_bad = sets(&[&[1], &[3], &[1, 2]]);
        assert!(validate(3, &fam, FamilyForm::Explicit).is_err());
        assert_eq!(
            validate(3, &fam_bad, FamilyForm::Explicit).unwrap_err(),
            Violation::NotMonotone { short: Subset::from_elements([1, 2]), sub: Subset::singleton(2) }
        );
    }

    #[test]
    fn apex_is_constant_sum_but_not_proper() {
        let a = Quasilinkage::apex(5);
        assert!(!a.is_proper());
        assert_eq!(a.short_count(), 16);
        assert!(a.is_long(Subset::singleton(1)));
        assert_eq!(validate(5, a.maximal_short(), FamilyForm::Maximal).unwrap_err(), Violation::MissingSingleton(1));
    }

    #[test]
    fn canonical_order_is_by_mask() {
        let g = example6();
        let m = g.maximal_short();
        assert!(m.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn n3_unique_game() {
        let g = Quasilinkage::majority(3);
        assert_eq!(g.maximal_short(), &sets(&[&[1], &[2], &[3]])[..]);
        assert_eq!(Quasilinkage::apex_neighbor(3), g);
    }
}
