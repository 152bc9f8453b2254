//! Flip graphs of all quasilinkages on a small ground set.

use std::collections::{BTreeMap, HashMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{flip_cell_diff, ordered_set_partitions, CellComplex};
use crate::error::{Error, Result};
use crate::games::ComparabilityWitness;
use crate::games::Quasilinkage;
use crate::homology::{cellular_homology, verify_manifold_with, HomologyProfile, ManifoldOptions, ManifoldReport};
use crate::realize::{realize, Certificate, LengthVector, RealizationResult};
use crate::subset::Subset;

/// Moduli-complex invariants attached to a node on request.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariants {
    pub f_vector: Vec<usize>,
    pub euler: i64,
    pub homology: HomologyProfile,
}

impl Invariants {
    pub fn of(game: &Quasilinkage) -> Result<Self> {
        let x = CellComplex::moduli(game);
        Ok(Invariants { f_vector: x.f_vector(), euler: x.euler_characteristic(), homology: cellular_homology(&x)? })
    }
}

#[derive(Debug, Clone)]
pub struct Node {
    pub game: Quasilinkage,
    /// Primitive integer realization for real games.
    pub lengths: Option<LengthVector>,
    /// Farkas certificate for imaginary games.
    pub certificate: Option<Certificate>,
    pub comparability: Option<ComparabilityWitness>,
    pub invariants: Option<Invariants>,
}

impl Node {
    fn classify(game: Quasilinkage) -> Result<Node> {
        let (lengths, certificate) = match realize(&game)? {
            RealizationResult::Real(l) => (Some(l.to_primitive_integers()), None),
            RealizationResult::Imaginary(c) => (None, Some(c)),
        };
        let comparability = game.comparability_witness();
        Ok(Node { game, lengths, certificate, comparability, invariants: None })
    }

    pub fn is_real(&self) -> bool {
        self.lengths.is_some()
    }
}

/// `t` is maximal short in `source`; flipping it gives `target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub t: Subset,
}

#[derive(Debug, Clone)]
pub struct FlipGraph {
    n: usize,
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    index: HashMap<Vec<u32>, usize>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct AtlasOptions {
    /// Abort once the node count exceeds this.
    pub budget: Option<usize>,
    /// Attach f-vector, Euler characteristic and homology to every node.
    pub homology: bool,
}

#[derive(Debug)]
pub enum AtlasError {
    /// The node cap was hit; the graph holds what was found so far
    /// (unclassified nodes carry no realization data).
    Budget(Box<FlipGraph>),
    Domain(Error),
}

impl From<Error> for AtlasError {
    fn from(e: Error) -> Self {
        AtlasError::Domain(e)
    }
}

impl From<AtlasError> for Error {
    fn from(e: AtlasError) -> Self {
        match e {
            AtlasError::Budget(g) => Error::BudgetExceeded(format!("stopped after {} nodes", g.len())),
            AtlasError::Domain(e) => e,
        }
    }
}

fn key(g: &Quasilinkage) -> Vec<u32> {
    g.key().1
}

/// Breadth-first search over flips of maximal short sets with at least two
/// elements, seeded with the game whose only short set through 1 is `{1}`.
pub fn enumerate_quasilinkages(n: usize, opts: AtlasOptions) -> std::result::Result<FlipGraph, AtlasError> {
    if !(3..=crate::subset::MAX_N).contains(&n) {
        return Err(Error::Violation(crate::error::Violation::BadSize(n)).into());
    }
    let seed = Quasilinkage::apex_neighbor(n);
    let mut games = vec![seed.clone()];
    let mut index: HashMap<Vec<u32>, usize> = HashMap::from([(key(&seed), 0)]);
    let mut raw_edges: Vec<(usize, Vec<u32>, Subset)> = Vec::new();
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let found: Vec<Vec<(usize, Quasilinkage, Subset)>> = frontier
            .par_iter()
            .map(|&i| games[i].proper_flips().map(|t| (i, games[i].flip(t).expect("maximal short"), t)).collect())
            .collect();
        let mut next = Vec::new();
        for (i, h, t) in found.into_iter().flatten() {
            let k = key(&h);
            if !index.contains_key(&k) {
                index.insert(k.clone(), games.len());
                next.push(games.len());
                games.push(h);
            }
            raw_edges.push((i, k, t));
        }
        if opts.budget.is_some_and(|b| games.len() > b) {
            let nodes = games
                .into_iter()
                .map(|game| Node { game, lengths: None, certificate: None, comparability: None, invariants: None })
                .collect();
            return Err(AtlasError::Budget(Box::new(assemble(n, nodes, raw_edges, index))));
        }
        frontier = next;
    }
    let mut nodes: Vec<Node> = games.into_par_iter().map(Node::classify).collect::<Result<_>>()?;
    if opts.homology {
        let inv: Vec<Invariants> = nodes.par_iter().map(|nd| Invariants::of(&nd.game)).collect::<Result<_>>()?;
        for (nd, i) in nodes.iter_mut().zip(inv) {
            nd.invariants = Some(i);
        }
    }
    let graph = assemble(n, nodes, raw_edges, index);
    if !graph.is_connected() {
        return Err(Error::Postcondition("flip graph is disconnected".into()).into());
    }
    Ok(graph)
}

/// Sort nodes by key and keep each undirected edge once, oriented from the
/// smaller index.
fn assemble(
    n: usize,
    nodes: Vec<Node>,
    raw_edges: Vec<(usize, Vec<u32>, Subset)>,
    index: HashMap<Vec<u32>, usize>,
) -> FlipGraph {
    let mut order: Vec<usize> = (0..nodes.len()).collect();
    order.sort_by_key(|&i| key(&nodes[i].game));
    let mut new_pos = vec![0; nodes.len()];
    for (p, &i) in order.iter().enumerate() {
        new_pos[i] = p;
    }
    let mut slots: Vec<Option<Node>> = nodes.into_iter().map(Some).collect();
    let nodes: Vec<Node> = order.iter().map(|&i| slots[i].take().unwrap()).collect();
    let mut edges: Vec<Edge> = raw_edges
        .into_iter()
        .filter_map(|(i, k, t)| {
            let (a, b) = (new_pos[i], new_pos[index[&k]]);
            (a < b).then_some(Edge { source: a, target: b, t })
        })
        .collect();
    edges.sort();
    edges.dedup();
    let index = index.into_iter().map(|(k, i)| (k, new_pos[i])).collect();
    FlipGraph { n, nodes, edges, index }
}

impl FlipGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn find(&self, game: &Quasilinkage) -> Option<usize> {
        self.index.get(&key(game)).copied()
    }

    pub fn real_count(&self) -> usize {
        self.nodes.iter().filter(|nd| nd.is_real()).count()
    }

    pub fn imaginary_count(&self) -> usize {
        self.nodes.len() - self.real_count()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.edges.iter().filter(|e| e.source == i || e.target == i).count()
    }

    fn adjacency(&self, keep: impl Fn(usize) -> bool) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            if keep(e.source) && keep(e.target) {
                adj[e.source].push(e.target);
                adj[e.target].push(e.source);
            }
        }
        adj
    }

    fn components_among(&self, keep: impl Fn(usize) -> bool + Copy) -> usize {
        let adj = self.adjacency(keep);
        let mut seen = vec![false; self.nodes.len()];
        let mut count = 0;
        for s in (0..self.nodes.len()).filter(|&i| keep(i)) {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.components_among(|_| true) <= 1
    }

    /// Flip neighbours of node `i` with their realizability.
    pub fn neighbors(&self, i: usize) -> Vec<Neighbor> {
        let mut out: Vec<Neighbor> = self
            .edges
            .iter()
            .filter_map(|e| {
                if e.source == i {
                    Some(Neighbor { node: e.target, flipped: e.t, real: self.nodes[e.target].is_real() })
                } else if e.target == i {
                    let t = e.t.complement(self.n);
                    Some(Neighbor { node: e.source, flipped: t, real: self.nodes[e.source].is_real() })
                } else {
                    None
                }
            })
            .collect();
        out.sort_by_key(|nb| nb.node);
        out
    }

    /// Relabeling orbits (exhaustive permutation search, `n <= 8`).
    pub fn orbit_count(&self) -> Result<usize> {
        let keys: Vec<Vec<u32>> =
            self.nodes.par_iter().map(|nd| nd.game.relabeling_canonical_key()).collect::<Result<_>>()?;
        let mut keys = keys;
        keys.sort();
        keys.dedup();
        Ok(keys.len())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Neighbor {
    pub node: usize,
    #[serde(serialize_with = "crate::io::ser_subset")]
    pub flipped: Subset,
    pub real: bool,
}

/// The subgraph induced on real nodes. Every edge joins two realized
/// chambers, each endpoint carrying its own length vector.
#[derive(Debug, Clone)]
pub struct RealChamberGraph {
    pub nodes: Vec<usize>,
    pub edges: Vec<Edge>,
    pub components: usize,
}

pub fn real_chamber_graph(graph: &FlipGraph) -> RealChamberGraph {
    let real = |i: usize| graph.nodes[i].is_real();
    RealChamberGraph {
        nodes: (0..graph.len()).filter(|&i| real(i)).collect(),
        edges: graph.edges.iter().copied().filter(|e| real(e.source) && real(e.target)).collect(),
        components: graph.components_among(real),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub n: usize,
    #[serde(serialize_with = "crate::io::ser_subset")]
    pub t: Subset,
    /// `n - |T| - 1`
    pub index: usize,
    /// Part count -> cells, before and after.
    pub deleted: BTreeMap<usize, usize>,
    pub added: BTreeMap<usize, usize>,
    pub counts_match: bool,
    pub euler_before: i64,
    pub euler_after: i64,
    /// `(-1)^|T| - (-1)^(n-|T|)`
    pub euler_change_expected: i64,
    pub homology_before: HomologyProfile,
    pub homology_after: HomologyProfile,
    /// Betti numbers change only in degrees `λ-1, λ, d-λ, d-λ+1`, by at
    /// most the number of times a degree occurs in that list.
    pub betti_change_local: bool,
    pub manifold_before: ManifoldReport,
    pub manifold_after: ManifoldReport,
}

impl AuditReport {
    pub fn passes(&self) -> bool {
        let odd = (self.n - 3) % 2 == 1;
        self.counts_match
            && self.euler_after - self.euler_before == self.euler_change_expected
            && (!odd || (self.euler_before == 0 && self.euler_after == 0))
            && self.betti_change_local
            && self.manifold_before.plausible()
            && self.manifold_after.plausible()
    }
}

fn expected_counts(k: usize) -> BTreeMap<usize, usize> {
    (2..=k).map(|p| (p + 1, ordered_set_partitions(k, p) as usize)).collect()
}

fn betti_change_local(before: &[usize], after: &[usize], index: usize, d: usize) -> bool {
    let mut allowed = vec![0i64; d + 1];
    let lambda = index as i64;
    for k in [lambda - 1, lambda, d as i64 - lambda, d as i64 - lambda + 1] {
        if (0..=d as i64).contains(&k) {
            allowed[k as usize] += 1;
        }
    }
    (0..=d).all(|k| {
        let b0 = before.get(k).copied().unwrap_or(0) as i64;
        let b1 = after.get(k).copied().unwrap_or(0) as i64;
        (b1 - b0).abs() <= allowed[k]
    })
}

/// Cell bookkeeping, Euler characteristic, homology and manifold checks on
/// both sides of the flip of `t`.
pub fn surgery_audit(game: &Quasilinkage, t: Subset, manifold: ManifoldOptions) -> Result<AuditReport> {
    let n = game.n();
    let flipped = game.flip(t)?;
    let diff = flip_cell_diff(game, t)?;
    let deleted = diff.deleted_by_parts();
    let added = diff.added_by_parts();
    let counts_match = deleted == expected_counts(n - t.len()) && added == expected_counts(t.len());
    let before = CellComplex::moduli(game);
    let after = CellComplex::moduli(&flipped);
    let index = n - t.len() - 1;
    let homology_before = cellular_homology(&before)?;
    let homology_after = cellular_homology(&after)?;
    let sign = |k: usize| if k.is_multiple_of(2) { 1 } else { -1 };
    Ok(AuditReport {
        n,
        t,
        index,
        deleted,
        added,
        counts_match,
        euler_before: before.euler_characteristic(),
        euler_after: after.euler_characteristic(),
        euler_change_expected: sign(t.len()) - sign(n - t.len()),
        betti_change_local: betti_change_local(&homology_before.betti, &homology_after.betti, index, n - 3),
        homology_before,
        homology_after,
        manifold_before: verify_manifold_with(&before, manifold),
        manifold_after: verify_manifold_with(&after, manifold),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::fixtures::example6;

    fn atlas(n: usize) -> FlipGraph {
        enumerate_quasilinkages(n, AtlasOptions::default()).unwrap()
    }

    #[test]
    fn small_counts() {
        let g3 = atlas(3);
        assert_eq!((g3.len(), g3.edges().len()), (1, 0));
        assert_eq!(atlas(4).len(), 8);
        let g5 = atlas(5);
        assert_eq!(g5.len(), 76);
        assert_eq!(g5.imaginary_count(), 0);
        assert!(g5.is_connected());
    }

    #[test]
    fn degree_counts_nonsingleton_maximal_sets() {
        let g = atlas(5);
        for (i, nd) in g.nodes().iter().enumerate() {
            assert_eq!(g.degree(i), nd.game.proper_flips().count());
        }
    }

    #[test]
    fn budget_returns_partial_graph() {
        match enumerate_quasilinkages(5, AtlasOptions { budget: Some(10), homology: false }) {
            Err(AtlasError::Budget(g)) => assert!(g.len() > 10 && g.len() < 76),
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn real_chambers_connected_at_small_n() {
        for n in [4, 5] {
            let g = atlas(n);
            let r = real_chamber_graph(&g);
            assert_eq!(r.nodes.len(), g.len());
            assert_eq!(r.components, 1);
        }
    }

    #[test]
    fn index_two_flip_audit() {
        let g = LengthVector::parse_csv("11/10,11/10,11/10,1,1,1").unwrap().short_sets().unwrap();
        let t = Subset::from_elements([4, 5, 6]);
        let r = surgery_audit(&g, t, ManifoldOptions::default()).unwrap();
        assert_eq!(r.index, 2);
        assert_eq!(r.deleted, BTreeMap::from([(3, 6), (4, 6)]));
        assert_eq!((r.euler_before, r.euler_after), (0, 0));
        assert!(r.passes(), "{r:?}");

        let back = surgery_audit(&g.flip(t).unwrap(), t.complement(6), ManifoldOptions { links: false }).unwrap();
        assert_eq!(back.deleted, r.added);
        assert_eq!(back.added, r.deleted);
    }

    #[test]
    fn example6_flip_audit() {
        let g = example6();
        let t = g.maximal_short()[0];
        let r = surgery_audit(&g, t, ManifoldOptions::default()).unwrap();
        assert!(r.passes(), "{r:?}");
    }

    #[test]
    fn pentagon_audits() {
        let g = Quasilinkage::majority(5);
        for t in g.proper_flips().collect::<Vec<_>>() {
            let r = surgery_audit(&g, t, ManifoldOptions::default()).unwrap();
            assert!([1, 2].contains(&r.index));
            assert!(r.passes(), "{r:?}");
        }
    }

    #[test]
    fn locality_rule() {
        // index 1 on a surface: degrees 0, 1 and 1, 2
        assert!(betti_change_local(&[1, 8, 1], &[1, 6, 1], 1, 2));
        assert!(!betti_change_local(&[1, 8, 1], &[1, 5, 1], 1, 2));
        assert!(!betti_change_local(&[1, 0, 0, 1], &[1, 0, 0, 2], 2, 3));
    }
}
