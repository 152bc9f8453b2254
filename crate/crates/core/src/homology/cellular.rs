//! Cellular chain complex of a regular cell complex.
//!
//! Incidence numbers are fixed dimension by dimension: the two endpoints of
//! an edge get opposite signs, and on a higher cell a sign chosen on one
//! facet is carried across every ridge, where the two facets meeting there
//! must cancel.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;

use crate::complex::CellComplex;
use crate::error::{Error, Result};

use super::snf::{reduce, SparseMatrix};
use super::{chain_homology, HomologyProfile};

/// `signs[c]` lists `(facet, [c : facet])` for every facet of cell `c`.
pub fn incidence_signs(x: &CellComplex) -> Result<Vec<Vec<(u32, i8)>>> {
    let mut signs: Vec<Vec<(u32, i8)>> = vec![Vec::new(); x.len()];
    let top = x.dim().unwrap_or(0);
    for d in 1..=top {
        let layer: Vec<usize> = (0..x.len()).filter(|&c| x.cell(c).dim == d).collect();
        let computed: Vec<Result<Vec<(u32, i8)>>> = layer.par_iter().map(|&c| orient_cell(x, c, &signs)).collect();
        for (c, s) in layer.into_iter().zip(computed) {
            signs[c] = s?;
        }
    }
    Ok(signs)
}

fn orient_cell(x: &CellComplex, c: usize, signs: &[Vec<(u32, i8)>]) -> Result<Vec<(u32, i8)>> {
    let facets = x.facets(c);
    let bad = |why: &str| Error::Postcondition(format!("cell {:?}: {why}", x.cell(c).label));
    if x.cell(c).dim == 1 {
        if facets.len() != 2 {
            return Err(bad("an edge needs two distinct endpoints"));
        }
        return Ok(vec![(facets[0], 1), (facets[1], -1)]);
    }
    // ridge -> the facets of c containing it, with [facet : ridge]
    let mut ridges: HashMap<u32, Vec<(usize, i8)>> = HashMap::new();
    for (k, &f) in facets.iter().enumerate() {
        for &(g, s) in &signs[f as usize] {
            ridges.entry(g).or_default().push((k, s));
        }
    }
    let mut adj: Vec<Vec<(usize, i8)>> = vec![Vec::new(); facets.len()];
    for pair in ridges.values() {
        let [(a, sa), (b, sb)] = pair.as_slice() else {
            return Err(bad("a ridge is not shared by exactly two facets"));
        };
        // [c:a][a:g] + [c:b][b:g] = 0
        adj[*a].push((*b, -sa * sb));
        adj[*b].push((*a, -sa * sb));
    }
    let mut sign = vec![0i8; facets.len()];
    sign[0] = 1;
    let mut queue = VecDeque::from([0usize]);
    while let Some(a) = queue.pop_front() {
        for &(b, rel) in &adj[a] {
            let want = sign[a] * rel;
            if sign[b] == 0 {
                sign[b] = want;
                queue.push_back(b);
            } else if sign[b] != want {
                return Err(bad("boundary is not orientable"));
            }
        }
    }
    if sign.contains(&0) {
        return Err(bad("boundary is disconnected"));
    }
    Ok(facets.iter().zip(sign).map(|(&f, s)| (f, s)).collect())
}

/// Homology from the cellular chain complex.
pub fn cellular_homology(x: &CellComplex) -> Result<HomologyProfile> {
    let Some(top) = x.dim() else { return Ok(HomologyProfile::default()) };
    let signs = incidence_signs(x)?;
    let mut pos = vec![0usize; x.len()];
    let mut sizes = vec![0usize; top + 1];
    for (c, cell) in x.cells().iter().enumerate() {
        pos[c] = sizes[cell.dim];
        sizes[cell.dim] += 1;
    }
    let reductions = (1..=top)
        .into_par_iter()
        .map(|k| {
            let mut m = SparseMatrix::new(sizes[k - 1], sizes[k]);
            for (c, cell) in x.cells().iter().enumerate() {
                if cell.dim == k {
                    for &(f, s) in &signs[c] {
                        m.push(pos[f as usize], pos[c], s as i64);
                    }
                }
            }
            reduce(&m)
        })
        .collect();
    Ok(chain_homology(&sizes, reductions))
}
