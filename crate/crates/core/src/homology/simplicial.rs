//! Order complexes of face posets and their simplicial homology.

use rayon::prelude::*;

use crate::complex::CellComplex;

use super::snf::{reduce, SparseMatrix};
use super::{chain_homology, HomologyProfile};

/// Simplices grouped by dimension. Each simplex is a strictly increasing list
/// of vertex indices, and each dimension is sorted lexicographically.
#[derive(Debug, Clone, Default)]
pub struct SimplicialComplex {
    vertices: usize,
    simplices: Vec<Vec<Vec<u32>>>,
}

impl SimplicialComplex {
    /// Close the given simplices under taking faces.
    pub fn from_maximal(vertices: usize, maximal: &[Vec<u32>]) -> Self {
        let mut by_dim: Vec<std::collections::BTreeSet<Vec<u32>>> = Vec::new();
        for s in maximal {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            let k = s.len();
            for mask in 1u64..(1u64 << k) {
                let face: Vec<u32> = (0..k).filter(|&b| mask >> b & 1 == 1).map(|b| s[b]).collect();
                let d = face.len() - 1;
                if by_dim.len() <= d {
                    by_dim.resize_with(d + 1, Default::default);
                }
                by_dim[d].insert(face);
            }
        }
        SimplicialComplex { vertices, simplices: by_dim.into_iter().map(|s| s.into_iter().collect()).collect() }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    /// Top dimension, `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn simplices(&self, k: usize) -> &[Vec<u32>] {
        self.simplices.get(k).map_or(&[], |s| s.as_slice())
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(|s| s.len()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(k, s)| if k % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
            .sum()
    }

    /// Simplices not contained in a larger one.
    pub fn maximal_simplices(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for k in 0..self.simplices.len() {
            let mut covered = vec![false; self.simplices[k].len()];
            if let Some(up) = self.simplices.get(k + 1) {
                for s in up {
                    for drop in 0..s.len() {
                        let face = without(s, drop);
                        if let Ok(i) = self.simplices[k].binary_search(&face) {
                            covered[i] = true;
                        }
                    }
                }
            }
            out.extend(self.simplices[k].iter().zip(&covered).filter(|(_, &c)| !c).map(|(s, _)| s.clone()));
        }
        out
    }

    /// Connected components of the 1-skeleton, counting only vertices used by
    /// some simplex.
    pub fn components(&self) -> usize {
        let verts = self.simplices(0);
        let mut parent: Vec<usize> = (0..verts.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let idx = |v: u32| verts.binary_search(&vec![v]).unwrap();
        for e in self.simplices(1) {
            let a = find(&mut parent, idx(e[0]));
            let b = find(&mut parent, idx(e[1]));
            parent[a] = b;
        }
        (0..verts.len()).filter(|&x| find(&mut parent, x) == x).count()
    }

    /// Boundary map from `k`-simplices to `(k-1)`-simplices.
    pub fn boundary(&self, k: usize) -> SparseMatrix {
        let lower = self.simplices(k - 1);
        let upper = self.simplices(k);
        let mut m = SparseMatrix::new(lower.len(), upper.len());
        for (c, s) in upper.iter().enumerate() {
            for drop in 0..s.len() {
                let face = without(s, drop);
                let r = lower.binary_search(&face).expect("simplicial complex is closed under faces");
                m.push(r, c, if drop % 2 == 0 { 1 } else { -1 });
            }
        }
        m
    }
}

fn without(s: &[u32], drop: usize) -> Vec<u32> {
    s.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &v)| v).collect()
}

/// Chains of the face poset. Vertex `i` of the result is cell `i` of `x`.
pub fn order_complex(x: &CellComplex) -> SimplicialComplex {
    let all: Vec<usize> = (0..x.len()).collect();
    order_complex_of(x, &all)
}

/// Order complex of the subposet on `cells`. Vertex indices are cell indices
/// of `x`.
pub fn order_complex_of(x: &CellComplex, cells: &[usize]) -> SimplicialComplex {
    let mut member = vec![false; x.len()];
    for &c in cells {
        member[c] = true;
    }
    let above: Vec<Vec<u32>> = cells
        .par_iter()
        .map(|&c| x.faces_above(c).into_iter().filter(|&a| member[a]).map(|a| a as u32).collect())
        .collect();
    let slot: std::collections::HashMap<u32, usize> = cells.iter().enumerate().map(|(k, &c)| (c as u32, k)).collect();
    let mut by_dim: Vec<Vec<Vec<u32>>> = Vec::new();
    let mut chain = Vec::new();
    for &c in cells {
        chain.push(c as u32);
        grow(&above, &slot, &mut chain, &mut by_dim);
        chain.pop();
    }
    for level in &mut by_dim {
        level.sort_unstable();
    }
    SimplicialComplex { vertices: x.len(), simplices: by_dim }
}

fn grow(
    above: &[Vec<u32>],
    slot: &std::collections::HashMap<u32, usize>,
    chain: &mut Vec<u32>,
    out: &mut Vec<Vec<Vec<u32>>>,
) {
    let d = chain.len() - 1;
    if out.len() <= d {
        out.resize_with(d + 1, Vec::new);
    }
    out[d].push(chain.clone());
    let last = *chain.last().unwrap();
    for &next in &above[slot[&last]] {
        chain.push(next);
        grow(above, slot, chain, out);
        chain.pop();
    }
}

/// Integral homology via Smith normal form of the boundary maps.
pub fn homology(s: &SimplicialComplex) -> HomologyProfile {
    let Some(d) = s.dim() else { return HomologyProfile::default() };
    let sizes = s.f_vector();
    let reductions = (1..=d).into_par_iter().map(|k| reduce(&s.boundary(k))).collect();
    debug_assert_eq!(sizes.len(), d + 1);
    chain_homology(&sizes, reductions)
}
