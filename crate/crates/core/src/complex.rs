//! The moduli cell complex `M(F)` and its dual stable-configuration complex.
//!
//! Cells are labeled by cyclically ordered partitions of `[n]` into short
//! blocks. In the moduli variant a cell with `m` blocks has dimension
//! `n - m` and its boundary cells carry finer labels; in the stable variant
//! the same labels have dimension `m - 3` and the order is reversed.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::games::Quasilinkage;
use crate::subset::{full_mask, Subset, SubsetTable, MAX_N};

/// Anything that can answer "is this set short?" on a fixed ground set.
pub trait ShortFamily: Sync {
    fn n(&self) -> usize;
    fn is_short(&self, s: Subset) -> bool;
}

impl ShortFamily for Quasilinkage {
    fn n(&self) -> usize {
        Quasilinkage::n(self)
    }

    fn is_short(&self, s: Subset) -> bool {
        Quasilinkage::is_short(self, s)
    }
}

/// A down-closed family with no complementarity requirement. Used to build
/// complexes from families that are not quasilinkages (negative controls).
#[derive(Clone)]
pub struct MonotoneFamily {
    n: usize,
    short: SubsetTable,
}

impl MonotoneFamily {
    pub fn from_maximal(n: usize, sets: &[Subset]) -> Self {
        assert!(n <= MAX_N);
        let mut short = SubsetTable::new(n);
        for &m in sets {
            for s in m.submasks() {
                short.set(s, true);
            }
        }
        MonotoneFamily { n, short }
    }
}

impl ShortFamily for MonotoneFamily {
    fn n(&self) -> usize {
        self.n
    }

    fn is_short(&self, s: Subset) -> bool {
        self.short.get(s)
    }
}

/// A cyclically ordered partition of `[n]` into non-empty blocks, rotated so
/// that the block containing element 1 comes first. Mirror images are
/// distinct labels.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicPartition {
    blocks: Vec<Subset>,
}

impl CyclicPartition {
    /// Validate and canonicalize a block sequence.
    pub fn new(n: usize, blocks: Vec<Subset>) -> Result<Self> {
        let mut seen = 0u32;
        for &b in &blocks {
            if b.is_empty() || !b.fits(n) || seen & b.0 != 0 {
                return Err(Error::BadPartition(format!("{blocks:?}")));
            }
            seen |= b.0;
        }
        if seen != full_mask(n) {
            return Err(Error::BadPartition(format!("{blocks:?} does not cover [{n}]")));
        }
        Ok(Self::canonical(blocks))
    }

    /// Rotate so that the block holding element 1 is first.
    pub(crate) fn canonical(mut blocks: Vec<Subset>) -> Self {
        if let Some(k) = blocks.iter().position(|b| b.contains(1)) {
            blocks.rotate_left(k);
        }
        CyclicPartition { blocks }
    }

    /// The all-singleton label of a cyclic order (1-based elements).
    pub fn vertex(order: &[usize]) -> Self {
        Self::canonical(order.iter().map(|&e| Subset::singleton(e)).collect())
    }

    pub fn from_lists(n: usize, lists: &[Vec<usize>]) -> Result<Self> {
        Self::new(n, lists.iter().map(|l| Subset::from_elements(l.iter().copied())).collect())
    }

    pub fn blocks(&self) -> &[Subset] {
        &self.blocks
    }

    /// Number of blocks.
    pub fn parts(&self) -> usize {
        self.blocks.len()
    }

    pub fn ground(&self) -> Subset {
        self.blocks.iter().fold(Subset::EMPTY, |a, b| a.union(*b))
    }

    pub fn is_vertex(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    /// Cyclic order read off an all-singleton label.
    pub fn cyclic_order(&self) -> Option<Vec<usize>> {
        self.is_vertex().then(|| self.blocks.iter().map(|b| b.min_element().unwrap()).collect())
    }

    pub fn to_lists(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| b.to_vec()).collect()
    }

    pub fn contains_block(&self, b: Subset) -> bool {
        self.blocks.contains(&b)
    }

    /// Some rotation of `self` can be cut into consecutive runs whose unions
    /// are the blocks of `coarse`, in cyclic order.
    pub fn refines(&self, coarse: &CyclicPartition) -> bool {
        let m = self.blocks.len();
        if coarse.blocks.len() > m || self.ground() != coarse.ground() {
            return false;
        }
        'rot: for r in 0..m {
            let mut j = 0;
            let mut acc = Subset::EMPTY;
            for k in 0..m {
                let b = self.blocks[(r + k) % m];
                let target = coarse.blocks[j];
                if !b.is_subset_of(target) {
                    continue 'rot;
                }
                acc = acc.union(b);
                if acc == target {
                    j += 1;
                    acc = Subset::EMPTY;
                }
            }
            if j == coarse.blocks.len() {
                return true;
            }
        }
        false
    }

    /// Labels obtained by splitting one block into two consecutive blocks.
    pub fn splits(&self) -> Vec<CyclicPartition> {
        let mut out = Vec::new();
        for (i, &b) in self.blocks.iter().enumerate() {
            if b.len() < 2 {
                continue;
            }
            for x in b.submasks() {
                if x.is_empty() || x == b {
                    continue;
                }
                let mut blocks = Vec::with_capacity(self.blocks.len() + 1);
                blocks.extend_from_slice(&self.blocks[..i]);
                blocks.push(x);
                blocks.push(b.difference(x));
                blocks.extend_from_slice(&self.blocks[i + 1..]);
                out.push(Self::canonical(blocks));
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Labels obtained by merging two cyclically adjacent blocks.
    pub fn merges(&self) -> Vec<CyclicPartition> {
        let m = self.blocks.len();
        if m < 2 {
            return Vec::new();
        }
        let mut out = Vec::new();
        for i in 0..m {
            let j = (i + 1) % m;
            let merged = self.blocks[i].union(self.blocks[j]);
            let mut blocks: Vec<Subset> = Vec::with_capacity(m - 1);
            for (k, &b) in self.blocks.iter().enumerate() {
                if k == i {
                    blocks.push(merged);
                } else if k != j {
                    blocks.push(b);
                }
            }
            out.push(Self::canonical(blocks));
            if m == 2 {
                break;
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Debug for CyclicPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                write!(f, " | ")?;
            }
            let items: Vec<String> = b.elements().map(|e| e.to_string()).collect();
            write!(f, "{}", items.join(" "))?;
        }
        write!(f, ")")
    }
}

/// Every block is short.
pub fn is_admissible<F: ShortFamily + ?Sized>(family: &F, p: &CyclicPartition) -> bool {
    p.blocks().iter().all(|&b| family.is_short(b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Moduli,
    Stable,
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "moduli" => Ok(Variant::Moduli),
            "stable" => Ok(Variant::Stable),
            other => Err(Error::Parse(format!("unknown variant {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub label: CyclicPartition,
    pub dim: usize,
}

/// Graded cells with the covering relation of the face poset stored in both
/// directions. Cells are sorted by dimension, then by label.
#[derive(Clone)]
pub struct CellComplex {
    n: usize,
    variant: Variant,
    cells: Vec<Cell>,
    down: Vec<Vec<u32>>,
    up: Vec<Vec<u32>>,
    index: HashMap<CyclicPartition, u32>,
}

/// All admissible cyclic partitions with at least `min_parts` blocks.
pub fn admissible_partitions<F: ShortFamily + ?Sized>(family: &F, min_parts: usize) -> Vec<CyclicPartition> {
    let n = family.n();
    let full = Subset::full(n);
    let firsts: Vec<Subset> = full.without(1).submasks().map(|s| s.with(1)).filter(|&s| family.is_short(s)).collect();
    let mut out: Vec<CyclicPartition> = firsts
        .par_iter()
        .flat_map_iter(|&first| {
            let mut acc = Vec::new();
            let mut stack = vec![first];
            extend_partitions(family, full.difference(first), &mut stack, min_parts, &mut acc);
            acc
        })
        .collect();
    out.sort();
    out
}

fn extend_partitions<F: ShortFamily + ?Sized>(
    family: &F,
    rest: Subset,
    stack: &mut Vec<Subset>,
    min_parts: usize,
    out: &mut Vec<CyclicPartition>,
) {
    if rest.is_empty() {
        if stack.len() >= min_parts {
            out.push(CyclicPartition { blocks: stack.clone() });
        }
        return;
    }
    for b in rest.submasks() {
        if b.is_empty() || !family.is_short(b) {
            continue;
        }
        stack.push(b);
        extend_partitions(family, rest.difference(b), stack, min_parts, out);
        stack.pop();
    }
}

impl CellComplex {
    /// Cells: all admissible cyclic partitions. A cell's facets split one
    /// block into two consecutive blocks.
    pub fn moduli<F: ShortFamily + ?Sized>(family: &F) -> CellComplex {
        let n = family.n();
        let mut labels = admissible_partitions(family, 1);
        labels.sort_by(|a, b| b.parts().cmp(&a.parts()).then_with(|| a.cmp(b)));
        Self::assemble(n, Variant::Moduli, labels, |p| n - p.parts(), |p| p.splits())
    }

    /// Same labels with dimension `m - 3`; a cell's facets are the admissible
    /// merges of two adjacent blocks.
    pub fn stable(game: &Quasilinkage) -> CellComplex {
        let n = game.n();
        let mut labels = admissible_partitions(game, 3);
        labels.sort_by(|a, b| a.parts().cmp(&b.parts()).then_with(|| a.cmp(b)));
        Self::assemble(n, Variant::Stable, labels, |p| p.parts() - 3, |p| p.merges())
    }

    pub fn build(game: &Quasilinkage, variant: Variant) -> CellComplex {
        match variant {
            Variant::Moduli => Self::moduli(game),
            Variant::Stable => Self::stable(game),
        }
    }

    fn assemble(
        n: usize,
        variant: Variant,
        labels: Vec<CyclicPartition>,
        dim_of: impl Fn(&CyclicPartition) -> usize + Sync,
        facets_of: impl Fn(&CyclicPartition) -> Vec<CyclicPartition> + Sync,
    ) -> CellComplex {
        let index: HashMap<CyclicPartition, u32> =
            labels.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        let down: Vec<Vec<u32>> = labels
            .par_iter()
            .map(|p| {
                let mut f: Vec<u32> = facets_of(p).iter().filter_map(|q| index.get(q).copied()).collect();
                f.sort_unstable();
                f
            })
            .collect();
        let mut up = vec![Vec::new(); labels.len()];
        for (c, faces) in down.iter().enumerate() {
            for &f in faces {
                up[f as usize].push(c as u32);
            }
        }
        let cells = labels.into_iter().map(|label| Cell { dim: dim_of(&label), label }).collect();
        CellComplex { n, variant, cells, down, up, index }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, i: usize) -> &Cell {
        &self.cells[i]
    }

    /// Codimension-one faces.
    pub fn facets(&self, i: usize) -> &[u32] {
        &self.down[i]
    }

    /// Cells having `i` as a codimension-one face.
    pub fn cofacets(&self, i: usize) -> &[u32] {
        &self.up[i]
    }

    pub fn index_of(&self, label: &CyclicPartition) -> Option<usize> {
        self.index.get(label).map(|&i| i as usize)
    }

    /// Top dimension, `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.cells.iter().map(|c| c.dim).max()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let Some(d) = self.dim() else { return Vec::new() };
        let mut f = vec![0; d + 1];
        for c in &self.cells {
            f[c.dim] += 1;
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().iter().enumerate().map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.cells.len()).filter(|&i| self.cells[i].dim == 0)
    }

    /// Indices of all cells strictly below `i` in the face order.
    pub fn faces_below(&self, i: usize) -> Vec<usize> {
        self.closure(i, &self.down)
    }

    /// Indices of all cells strictly above `i` in the face order.
    pub fn faces_above(&self, i: usize) -> Vec<usize> {
        self.closure(i, &self.up)
    }

    fn closure(&self, i: usize, adj: &[Vec<u32>]) -> Vec<usize> {
        let mut seen = vec![false; self.cells.len()];
        let mut stack = vec![i];
        let mut out = Vec::new();
        while let Some(c) = stack.pop() {
            for &f in &adj[c] {
                let f = f as usize;
                if !seen[f] {
                    seen[f] = true;
                    out.push(f);
                    stack.push(f);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Strict face order `a < b`.
    pub fn is_face(&self, a: usize, b: usize) -> bool {
        self.cells[a].dim < self.cells[b].dim && self.faces_below(b).binary_search(&a).is_ok()
    }

    /// Number of connected components of the 1-skeleton closure, i.e. of the
    /// covering graph.
    pub fn components(&self) -> usize {
        let mut seen = vec![false; self.cells.len()];
        let mut count = 0;
        for start in 0..self.cells.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(c) = stack.pop() {
                for &f in self.down[c].iter().chain(&self.up[c]) {
                    if !seen[f as usize] {
                        seen[f as usize] = true;
                        stack.push(f as usize);
                    }
                }
            }
        }
        count
    }

    /// Every interval of height two has exactly two middle elements.
    /// Returns the first offending pair `(lower, upper)`.
    pub fn diamond_violation(&self) -> Option<(usize, usize)> {
        for top in 0..self.cells.len() {
            let mut middle: BTreeMap<u32, usize> = BTreeMap::new();
            for &f in &self.down[top] {
                for &g in &self.down[f as usize] {
                    *middle.entry(g).or_default() += 1;
                }
            }
            if let Some((&g, _)) = middle.iter().find(|(_, &c)| c != 2) {
                return Some((g as usize, top));
            }
        }
        None
    }

    /// `(label, dim)` pairs and covering incidences `(face, coface)`.
    pub fn incidences(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (c, faces) in self.down.iter().enumerate() {
            for &f in faces {
                out.push((f as usize, c));
            }
        }
        out
    }
}

/// Cells of `M(F)` that have `t` as a block (deleted by flipping `t`) and
/// cells of the flipped complex that have the complement as a block (added).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellDiff {
    pub deleted: Vec<CyclicPartition>,
    pub added: Vec<CyclicPartition>,
}

impl CellDiff {
    /// Part count -> number of deleted cells.
    pub fn deleted_by_parts(&self) -> BTreeMap<usize, usize> {
        count_by_parts(&self.deleted)
    }

    pub fn added_by_parts(&self) -> BTreeMap<usize, usize> {
        count_by_parts(&self.added)
    }
}

fn count_by_parts(cells: &[CyclicPartition]) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for c in cells {
        *out.entry(c.parts()).or_default() += 1;
    }
    out
}

/// Admissible cyclic partitions having `block` as one of their blocks.
fn partitions_with_block(game: &Quasilinkage, block: Subset) -> Vec<CyclicPartition> {
    let n = game.n();
    if !game.is_short(block) {
        return Vec::new();
    }
    let mut acc = Vec::new();
    let mut stack = vec![block];
    extend_partitions(game, Subset::full(n).difference(block), &mut stack, 3, &mut acc);
    let mut out: Vec<CyclicPartition> = acc.into_iter().map(|p| CyclicPartition::canonical(p.blocks)).collect();
    out.sort();
    out
}

pub fn flip_cell_diff(game: &Quasilinkage, t: Subset) -> Result<CellDiff> {
    let flipped = game.flip(t)?;
    Ok(CellDiff {
        deleted: partitions_with_block(game, t),
        added: partitions_with_block(&flipped, t.complement(game.n())),
    })
}

/// Number of ordered partitions of a `k`-set into `parts` non-empty blocks.
pub fn ordered_set_partitions(k: usize, parts: usize) -> u64 {
    // surjections k -> parts by inclusion-exclusion
    let mut total: i128 = 0;
    let mut binom: i128 = 1;
    for j in 0..=parts {
        let term = binom * ((parts - j) as i128).pow(k as u32);
        total += if j % 2 == 0 { term } else { -term };
        binom = binom * (parts - j) as i128 / (j + 1) as i128;
    }
    total as u64
}
