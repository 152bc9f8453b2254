//! Comparability, automorphisms and the symmetric-game counting obstruction.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::subset::{full_mask, Subset};

use super::{permute, Quasilinkage};

/// Exhaustive permutation search is capped here.
pub const MAX_SYMMETRY_N: usize = 8;

/// `perm[i - 1]` is the image of element `i`.
pub type Permutation = Vec<usize>;

/// `A ∪ i` long, `A ∪ j` short, `B ∪ i` short, `B ∪ j` long, with
/// `i, j ∉ A ∪ B`: elements `i` and `j` cannot be ordered by length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ComparabilityWitness {
    #[serde(serialize_with = "crate::io::ser_subset")]
    pub a: Subset,
    #[serde(serialize_with = "crate::io::ser_subset")]
    pub b: Subset,
    pub i: usize,
    pub j: usize,
}

impl Quasilinkage {
    /// First witness for the ordered pair `(i, j)`, if any.
    pub fn comparability_witness_for(&self, i: usize, j: usize) -> Option<ComparabilityWitness> {
        let n = self.n();
        if i == j {
            return None;
        }
        let rest = Subset::full(n).without(i).without(j);
        let mut a_found = None;
        let mut b_found = None;
        let mut sub = rest.submasks().collect::<Vec<_>>();
        sub.sort();
        for s in sub {
            let si = self.is_short(s.with(i));
            let sj = self.is_short(s.with(j));
            if a_found.is_none() && !si && sj {
                a_found = Some(s);
            }
            if b_found.is_none() && si && !sj {
                b_found = Some(s);
            }
            if let (Some(a), Some(b)) = (a_found, b_found) {
                return Some(ComparabilityWitness { a, b, i, j });
            }
        }
        None
    }

    /// Scan ordered pairs `(i, j)` lexicographically for a comparability failure.
    pub fn comparability_witness(&self) -> Option<ComparabilityWitness> {
        let n = self.n();
        (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).find_map(|(i, j)| self.comparability_witness_for(i, j))
    }

    pub fn check_comparability(&self) -> bool {
        self.comparability_witness().is_none()
    }

    /// Unordered incomparable pairs `(i, j)` with `i < j`.
    pub fn incomparable_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                if self.comparability_witness_for(i, j).is_some() {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// All permutations mapping short sets to short sets.
    pub fn automorphism_group(&self) -> Result<Vec<Permutation>> {
        let n = self.n();
        if n > MAX_SYMMETRY_N {
            return Err(Error::BudgetExceeded(format!("automorphism search limited to n <= {MAX_SYMMETRY_N}")));
        }
        let mut out = Vec::new();
        for_each_permutation(n, |perm| {
            if self.maximal_short().iter().all(|&m| self.is_short(permute(m, perm))) {
                out.push(perm.to_vec());
            }
        });
        Ok(out)
    }

    /// The automorphism group acts transitively on `[n]`.
    pub fn is_symmetric(&self) -> Result<bool> {
        let group = self.automorphism_group()?;
        let orbit = group.iter().fold(0u32, |acc, p| acc | 1 << (p[0] - 1));
        Ok(orbit == full_mask(self.n()))
    }

    /// Lexicographically smallest maximal-short key over all relabelings.
    pub fn relabeling_canonical_key(&self) -> Result<Vec<u32>> {
        let n = self.n();
        if n > MAX_SYMMETRY_N {
            return Err(Error::BudgetExceeded(format!("relabeling search limited to n <= {MAX_SYMMETRY_N}")));
        }
        let mut best: Option<Vec<u32>> = None;
        for_each_permutation(n, |perm| {
            let mut key: Vec<u32> = self.maximal_short().iter().map(|&m| permute(m, perm).0).collect();
            key.sort_unstable();
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        });
        Ok(best.unwrap_or_default())
    }
}

/// A symmetric game on an even `[n]` puts the same number of short
/// `n/2`-sets through every element, so `n` must divide
/// `(C(n, n/2) / 2) * (n / 2)`. Returns true when it does not, i.e. when no
/// symmetric quasilinkage can exist.
pub fn symmetric_counting_obstruction(n: usize) -> Result<bool> {
    if n % 2 == 1 {
        return Err(Error::OddN(n));
    }
    let half = n / 2;
    let mut binom: u128 = 1;
    for k in 0..half {
        binom = binom * (n - k) as u128 / (k + 1) as u128;
    }
    let incidences = binom / 2 * half as u128;
    Ok(!incidences.is_multiple_of(n as u128))
}

/// Visit all permutations of `[n]` in lexicographic order.
pub(crate) fn for_each_permutation<F: FnMut(&[usize])>(n: usize, mut f: F) {
    let mut perm: Vec<usize> = (1..=n).collect();
    loop {
        f(&perm);
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            return;
        };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
}
