//! Vertex stars and circular Gale diagrams.
//!
//! The vertex length vector of a cyclic order is laid out as arcs around a
//! circle of circumference 1. Cut `k` sits where arc `k - 1` ends. Dropping
//! a set of cuts merges neighbouring arcs; the dropped set is a face of the
//! star polytope when every merged arc stays below one half.

use std::collections::{BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{CellComplex, CyclicPartition};
use crate::error::{Error, Result};
use crate::games::Quasilinkage;
use crate::realize::{check_cyclic_order, vertex_length_vector};
use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcDiagram {
    order: Vec<usize>,
    arcs: Vec<BigRational>,
    cuts: Vec<BigRational>,
}

impl ArcDiagram {
    /// Arc `k` belongs to element `order[k]`.
    pub fn from_lengths(order: &[usize], lengths: &[BigRational]) -> Result<Self> {
        if lengths.iter().any(|l| *l <= BigRational::zero()) {
            return Err(Error::NonPositiveLength);
        }
        let total: BigRational = order.iter().map(|&e| lengths[e - 1].clone()).sum();
        let arcs: Vec<BigRational> = order.iter().map(|&e| &lengths[e - 1] / &total).collect();
        let mut cuts = Vec::with_capacity(arcs.len());
        let mut acc = BigRational::zero();
        for a in &arcs {
            cuts.push(acc.clone());
            acc += a;
        }
        debug_assert!(acc.is_one());
        Ok(ArcDiagram { order: order.to_vec(), arcs, cuts })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn arcs(&self) -> &[BigRational] {
        &self.arcs
    }

    pub fn cuts(&self) -> &[BigRational] {
        &self.cuts
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Total arc length between consecutive kept cuts, or `None` when fewer
    /// than one cut is kept. `dropped` is a bitmask over cut indices.
    fn gaps(&self, dropped: u64) -> Option<Vec<(BigRational, Subset)>> {
        let n = self.len();
        let kept: Vec<usize> = (0..n).filter(|&k| dropped >> k & 1 == 0).collect();
        if kept.is_empty() {
            return None;
        }
        let mut out = Vec::with_capacity(kept.len());
        for (idx, &start) in kept.iter().enumerate() {
            let end = kept[(idx + 1) % kept.len()];
            let mut g = BigRational::zero();
            let mut block = Subset::EMPTY;
            let mut k = start;
            loop {
                g += &self.arcs[k];
                block = block.with(self.order[k]);
                k = (k + 1) % n;
                if k == end {
                    break;
                }
            }
            out.push((g, block));
        }
        Some(out)
    }
}

/// Arcs from the vertex length vector of `order`, normalized to total 1.
pub fn arc_diagram(game: &Quasilinkage, order: &[usize]) -> Result<ArcDiagram> {
    let lv = vertex_length_vector(game, order)?;
    ArcDiagram::from_lengths(order, lv.lengths())
}

/// Faces of the star polytope as sets of atoms. Atom `k` is the cut between
/// arcs `k - 1` and `k`, i.e. the adjacent pair `(order[k-1], order[k])`.
/// The full atom set is the formal top and is not listed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceLattice {
    order: Vec<usize>,
    atoms: Vec<usize>,
    faces: Vec<u64>,
}

impl FaceLattice {
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn atoms(&self) -> &[usize] {
        &self.atoms
    }

    /// Faces as bitmasks over cut indices, including the empty face, sorted by
    /// size then value.
    pub fn faces(&self) -> &[u64] {
        &self.faces
    }

    /// The elements glued together by dropping cut `k`.
    pub fn atom_pair(&self, k: usize) -> (usize, usize) {
        let n = self.order.len();
        (self.order[(k + n - 1) % n], self.order[k])
    }

    /// `f[i]` counts faces with `i + 1` atoms (the `i`-dimensional faces).
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.faces.iter().map(|f| f.count_ones() as usize).max().unwrap_or(0);
        let mut f = vec![0; top];
        for face in &self.faces {
            let k = face.count_ones() as usize;
            if k > 0 {
                f[k - 1] += 1;
            }
        }
        f
    }

    /// Dimension of the polytope: one more than its largest proper face.
    pub fn dim(&self) -> usize {
        self.f_vector().len()
    }

    pub fn is_intersection_closed(&self) -> bool {
        let set: BTreeSet<u64> = self.faces.iter().copied().collect();
        self.faces.iter().all(|&a| self.faces.iter().all(|&b| set.contains(&(a & b))))
    }

    /// Euler relation for the boundary of a `d`-polytope.
    pub fn euler_relation_holds(&self) -> bool {
        let d = self.dim() as i64;
        let lhs: i64 =
            self.f_vector().iter().enumerate().map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) }).sum();
        lhs == 1 - (-1i64).pow(d as u32)
    }

    /// Label of the cell obtained by merging arcs across the dropped cuts.
    pub fn cell_label(&self, face: u64) -> CyclicPartition {
        let n = self.order.len();
        let start = (0..n).find(|&k| face >> k & 1 == 0).expect("proper faces keep a cut");
        let mut blocks = Vec::new();
        let mut cur = Subset::EMPTY;
        for step in 0..n {
            let k = (start + step) % n;
            if face >> k & 1 == 0 && !cur.is_empty() {
                blocks.push(cur);
                cur = Subset::EMPTY;
            }
            cur = cur.with(self.order[k]);
        }
        blocks.push(cur);
        CyclicPartition::canonical(blocks)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let faces: Vec<Vec<usize>> =
            self.faces.iter().map(|&f| (0..self.order.len()).filter(|&k| f >> k & 1 == 1).collect()).collect();
        serde_json::json!({
            "vertex": self.order,
            "atoms": self.atoms.iter().map(|&k| {
                let (a, b) = self.atom_pair(k);
                vec![a, b]
            }).collect::<Vec<_>>(),
            "faces": faces.iter().map(|f| f.iter().map(|&k| {
                let (a, b) = self.atom_pair(k);
                vec![a, b]
            }).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "f_vector": self.f_vector(),
        })
    }
}

fn is_face(diagram: &ArcDiagram, dropped: u64) -> Result<bool> {
    let half = BigRational::new(1.into(), 2.into());
    let Some(gaps) = diagram.gaps(dropped) else { return Ok(false) };
    for (g, block) in gaps {
        if g == half {
            return Err(Error::DegenerateGap(block));
        }
        if g > half {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Face lattice grown from the atoms, adding one atom at a time.
pub fn star_polytope_faces(game: &Quasilinkage, order: &[usize]) -> Result<FaceLattice> {
    let diagram = arc_diagram(game, order)?;
    let n = order.len();
    let atoms: Vec<usize> =
        (0..n).filter(|&k| game.is_short(Subset::from_elements([order[(k + n - 1) % n], order[k]]))).collect();
    for &k in &atoms {
        debug_assert!(is_face(&diagram, 1 << k)?);
    }
    let mut faces = vec![0u64];
    let mut frontier = vec![0u64];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &f in &frontier {
            let top = if f == 0 { 0 } else { 64 - f.leading_zeros() as usize };
            for &a in atoms.iter().filter(|&&a| a >= top) {
                let g = f | 1 << a;
                if is_face(&diagram, g)? {
                    next.push(g);
                }
            }
        }
        faces.extend_from_slice(&next);
        frontier = next;
    }
    faces.sort_by_key(|&f| (f.count_ones(), f));
    Ok(FaceLattice { order: order.to_vec(), atoms, faces })
}

#[derive(Debug, Clone, Serialize)]
pub struct StarDuality {
    pub vertex: Vec<usize>,
    pub faces: usize,
    /// Faces map bijectively and order-preservingly onto the moduli cells
    /// containing the vertex.
    pub moduli_isomorphic: bool,
    /// The same map reverses order onto the faces of the dual cell in the
    /// stable complex.
    pub stable_anti_isomorphic: bool,
}

impl StarDuality {
    pub fn holds(&self) -> bool {
        self.moduli_isomorphic && self.stable_anti_isomorphic
    }
}

/// Both complexes of a game, built once for checking many vertices.
pub struct StarChecker<'a> {
    game: &'a Quasilinkage,
    moduli: CellComplex,
    stable: CellComplex,
}

impl<'a> StarChecker<'a> {
    pub fn new(game: &'a Quasilinkage) -> Self {
        StarChecker { game, moduli: CellComplex::moduli(game), stable: CellComplex::stable(game) }
    }

    pub fn moduli(&self) -> &CellComplex {
        &self.moduli
    }

    pub fn check(&self, order: &[usize]) -> Result<StarDuality> {
        check_cyclic_order(self.game.n(), order)?;
        let vertex = CyclicPartition::vertex(order);
        let Some(v) = self.moduli.index_of(&vertex) else {
            return Err(Error::BadVertex(format!("{order:?} is not a 0-cell")));
        };
        let lattice = star_polytope_faces(self.game, order)?;
        let proper: Vec<u64> = lattice.faces().iter().copied().filter(|&f| f != 0).collect();
        let labels: Vec<CyclicPartition> = proper.iter().map(|&f| lattice.cell_label(f)).collect();
        let face_of: HashMap<u64, usize> = proper.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let covers: Vec<(usize, usize)> = proper
            .iter()
            .enumerate()
            .flat_map(|(i, &f)| {
                let face_of = &face_of;
                lattice.atoms().iter().filter_map(move |&a| {
                    let g = f | 1 << a;
                    (g != f).then(|| face_of.get(&g).map(|&j| (i, j))).flatten()
                })
            })
            .collect();

        let moduli_isomorphic = matches_poset(&self.moduli, self.moduli.faces_above(v), &labels, &covers, false);
        let dual = self.stable.index_of(&vertex).expect("same labels in both variants");
        let stable_anti_isomorphic = matches_poset(&self.stable, self.stable.faces_below(dual), &labels, &covers, true);
        Ok(StarDuality { vertex: order.to_vec(), faces: proper.len(), moduli_isomorphic, stable_anti_isomorphic })
    }

    /// Every 0-cell, in cell order.
    pub fn check_all(&self) -> Result<Vec<StarDuality>> {
        let verts: Vec<Vec<usize>> =
            self.moduli.vertices().map(|v| self.moduli.cell(v).label.cyclic_order().unwrap()).collect();
        verts.par_iter().map(|o| self.check(o)).collect()
    }
}

/// `labels` hit exactly `cells`, and each cover `i -> j` is a covering
/// relation of `x` (reversed when `reverse`), with equal numbers of covers.
fn matches_poset(
    x: &CellComplex,
    cells: Vec<usize>,
    labels: &[CyclicPartition],
    covers: &[(usize, usize)],
    reverse: bool,
) -> bool {
    let Some(idx) = labels.iter().map(|l| x.index_of(l)).collect::<Option<Vec<usize>>>() else {
        return false;
    };
    let mut sorted = idx.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != idx.len() || sorted != cells {
        return false;
    }
    let member: BTreeSet<usize> = cells.iter().copied().collect();
    let cell_covers: usize = cells
        .iter()
        .map(|&c| {
            let ups = if reverse { x.facets(c) } else { x.cofacets(c) };
            ups.iter().filter(|&&u| member.contains(&(u as usize))).count()
        })
        .sum();
    cell_covers == covers.len()
        && covers.iter().all(|&(i, j)| {
            let (lo, hi) = if reverse { (idx[j], idx[i]) } else { (idx[i], idx[j]) };
            x.facets(hi).contains(&(lo as u32))
        })
}

pub fn verify_star_duality(game: &Quasilinkage, order: &[usize]) -> Result<bool> {
    Ok(StarChecker::new(game).check(order)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::fixtures::example6;
    use crate::realize::LengthVector;

    #[test]
    fn equal_arcs() {
        let d = arc_diagram(&Quasilinkage::majority(3), &[1, 2, 3]).unwrap();
        assert!(d.arcs().iter().all(|a| *a == BigRational::new(1.into(), 3.into())));
        let d = arc_diagram(&Quasilinkage::majority(5), &[1, 3, 5, 2, 4]).unwrap();
        assert!(d.arcs().iter().all(|a| *a == BigRational::new(1.into(), 5.into())));
        assert_eq!(d.cuts()[2], BigRational::new(2.into(), 5.into()));
    }

    #[test]
    fn pentagon_star() {
        let k = star_polytope_faces(&Quasilinkage::majority(5), &[1, 2, 3, 4, 5]).unwrap();
        assert_eq!(k.atoms().len(), 5);
        assert_eq!(k.f_vector(), vec![5, 5]);
        assert!(k.is_intersection_closed());
        assert!(k.euler_relation_holds());
        assert!(verify_star_duality(&Quasilinkage::majority(5), &[1, 2, 3, 4, 5]).unwrap());
    }

    #[test]
    fn triangle_star_is_vacuous() {
        let k = star_polytope_faces(&Quasilinkage::majority(3), &[1, 2, 3]).unwrap();
        assert_eq!(k.faces(), &[0]);
        assert!(verify_star_duality(&Quasilinkage::majority(3), &[1, 3, 2]).unwrap());
    }

    #[test]
    fn circle_star_is_a_segment() {
        let g = LengthVector::from_integers(&[2, 1, 1, 1]).unwrap().short_sets().unwrap();
        let k = star_polytope_faces(&g, &[1, 2, 3, 4]).unwrap();
        assert_eq!(k.f_vector(), vec![2]);
        assert!(k.euler_relation_holds());
        assert!(verify_star_duality(&g, &[1, 2, 3, 4]).unwrap());
    }

    #[test]
    fn example6_stars() {
        let g = example6();
        let checker = StarChecker::new(&g);
        let all = checker.check_all().unwrap();
        assert_eq!(all.len(), checker.moduli().vertices().count());
        assert!(all.iter().all(|s| s.holds()));
        let k = star_polytope_faces(&g, &all[0].vertex).unwrap();
        assert_eq!(k.dim(), 3);
        assert!(k.euler_relation_holds());
    }

    #[test]
    fn non_vertex_is_rejected() {
        let g = Quasilinkage::majority(5);
        assert!(matches!(StarChecker::new(&g).check(&[1, 2, 2, 4, 5]), Err(Error::BadVertex(_))));
    }
}
