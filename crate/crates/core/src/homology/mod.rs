//! Integral homology of cell complexes and manifold checks.

pub mod cellular;
pub mod manifold;
pub mod simplicial;
pub mod snf;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::ser::{Serialize, SerializeStruct, Serializer};
use serde_json::Value;

use crate::complex::CellComplex;
use crate::error::Result;
use crate::games::Quasilinkage;
use crate::realize::{realize, RealizationResult};

pub use cellular::{cellular_homology, incidence_signs};
pub use manifold::{verify_manifold, verify_manifold_with, ManifoldOptions, ManifoldReport};
pub use simplicial::{homology, order_complex, order_complex_of, SimplicialComplex};
pub use snf::{reduce, Reduction, SparseMatrix};

/// Betti numbers `b_0..b_d` and the torsion coefficients of each `H_k`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HomologyProfile {
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<BigUint>>,
}

impl HomologyProfile {
    pub fn is_torsion_free(&self) -> bool {
        self.torsion.iter().all(|t| t.is_empty())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti.iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
    }

    pub fn torsion_strings(&self) -> Vec<Vec<String>> {
        self.torsion.iter().map(|t| t.iter().map(|f| f.to_string()).collect()).collect()
    }

    /// Homology of the `k`-sphere (`k = -1` is the empty complex).
    pub fn sphere(k: isize) -> HomologyProfile {
        match k {
            k if k < 0 => HomologyProfile::default(),
            0 => HomologyProfile { betti: vec![2], torsion: vec![vec![]] },
            k => {
                let k = k as usize;
                let mut betti = vec![0; k + 1];
                betti[0] = 1;
                betti[k] = 1;
                HomologyProfile { betti, torsion: vec![vec![]; k + 1] }
            }
        }
    }
}

fn factor_json(f: &BigUint) -> Value {
    match f.to_u64() {
        Some(v) => Value::from(v),
        None => Value::from(f.to_string()),
    }
}

impl Serialize for HomologyProfile {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let torsion: Vec<Vec<Value>> = self.torsion.iter().map(|t| t.iter().map(factor_json).collect()).collect();
        let mut st = s.serialize_struct("HomologyProfile", 2)?;
        st.serialize_field("betti", &self.betti)?;
        st.serialize_field("torsion", &torsion)?;
        st.end()
    }
}

/// Assemble homology from chain-group sizes and the reductions of
/// `∂_1..∂_d`.
pub(crate) fn chain_homology(sizes: &[usize], reductions: Vec<Reduction>) -> HomologyProfile {
    let d = sizes.len() - 1;
    let rank = |k: usize| if k == 0 || k > d { 0 } else { reductions[k - 1].rank };
    let betti = (0..=d).map(|k| sizes[k] - rank(k) - rank(k + 1)).collect();
    let torsion = (0..=d).map(|k| if k < d { reductions[k].torsion.clone() } else { Vec::new() }).collect();
    HomologyProfile { betti, torsion }
}

/// `b_k = a_k + a_{n-3-k}` where `a_i` counts short sets of size `i + 1`
/// containing `longest`.
pub fn betti_fs(game: &Quasilinkage, longest: usize) -> Vec<usize> {
    let n = game.n();
    let mut a = vec![0usize; n];
    for s in game.short_sets() {
        if s.contains(longest) && !s.is_empty() {
            a[s.len() - 1] += 1;
        }
    }
    let d = n.saturating_sub(3);
    (0..=d).map(|k| a[k] + a[d - k]).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FsCheck {
    /// Counts from the smallest argmax element.
    pub betti: Vec<usize>,
    /// Every element attaining the maximum in the realizing vector.
    pub argmax: Vec<usize>,
    /// All argmax choices give the same counts.
    pub tie_invariant: bool,
}

/// Betti numbers predicted from a realization, or `None` for imaginary games.
pub fn fs_check(game: &Quasilinkage) -> Result<Option<FsCheck>> {
    let RealizationResult::Real(lengths) = realize(game)? else { return Ok(None) };
    let argmax = lengths.argmax_all();
    let betti = betti_fs(game, argmax[0]);
    let tie_invariant = argmax.iter().all(|&j| betti_fs(game, j) == betti);
    Ok(Some(FsCheck { betti, argmax, tie_invariant }))
}

/// No torsion in any homology group of the moduli complex.
pub fn torsion_free_check(game: &Quasilinkage) -> Result<bool> {
    Ok(cellular_homology(&CellComplex::moduli(game))?.is_torsion_free())
}

/// Vertices in the closure of each cell, summed with sign
/// `(-1)^(dim - 1)` over cells of positive dimension. Equals the sum of
/// the Euler characteristics of all vertex links.
pub fn link_euler_functional(x: &CellComplex) -> i64 {
    (0..x.len())
        .filter(|&c| x.cell(c).dim >= 1)
        .map(|c| {
            let v = x.faces_below(c).into_iter().filter(|&f| x.cell(f).dim == 0).count() as i64;
            if x.cell(c).dim % 2 == 1 {
                v
            } else {
                -v
            }
        })
        .sum()
}
