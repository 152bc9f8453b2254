//! Combinatorial manifold checks on a moduli complex.

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{CellComplex, CyclicPartition};

use super::simplicial::{homology, order_complex_of};
use super::{link_euler_functional, HomologyProfile};

#[derive(Debug, Clone, Copy)]
pub struct ManifoldOptions {
    /// Compute vertex links. Costly for large complexes.
    pub links: bool,
}

impl Default for ManifoldOptions {
    fn default() -> Self {
        ManifoldOptions { links: true }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ManifoldReport {
    /// Expected dimension `n - 3`.
    pub dim: usize,
    /// Cells not contained in any top cell (including cells above `dim`).
    #[serde(serialize_with = "ser_labels")]
    pub purity_failures: Vec<CyclicPartition>,
    /// Codimension-one cells with a cofacet count other than two.
    #[serde(serialize_with = "ser_counted")]
    pub pseudomanifold_failures: Vec<(CyclicPartition, usize)>,
    pub links_checked: bool,
    /// Vertices whose link does not have the homology of a `(dim-1)`-sphere.
    #[serde(serialize_with = "ser_labels")]
    pub link_homology_failures: Vec<CyclicPartition>,
    /// Vertices with a disconnected link (checked when `dim >= 2`).
    #[serde(serialize_with = "ser_labels")]
    pub link_connectivity_failures: Vec<CyclicPartition>,
    /// Summed Euler characteristic of the links and the value predicted from
    /// cell counts.
    pub link_euler_sum: Option<i64>,
    pub link_euler_expected: i64,
}

fn ser_labels<S: serde::Serializer>(v: &[CyclicPartition], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|p| p.to_lists()))
}

fn ser_counted<S: serde::Serializer>(v: &[(CyclicPartition, usize)], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|(p, k)| (p.to_lists(), k)))
}

impl ManifoldReport {
    pub fn purity(&self) -> bool {
        self.purity_failures.is_empty()
    }

    pub fn pseudomanifold(&self) -> bool {
        self.pseudomanifold_failures.is_empty()
    }

    pub fn link_homology(&self) -> bool {
        self.links_checked && self.link_homology_failures.is_empty()
    }

    pub fn link_connectivity(&self) -> bool {
        self.links_checked && self.link_connectivity_failures.is_empty()
    }

    pub fn link_euler_consistent(&self) -> bool {
        self.link_euler_sum == Some(self.link_euler_expected)
    }

    pub fn plausible(&self) -> bool {
        self.purity() && self.pseudomanifold() && self.link_homology() && self.link_connectivity()
    }

    pub fn verdict(&self) -> &'static str {
        if self.plausible() {
            "manifold: plausible (pure pseudomanifold, vertex links are connected homology spheres)"
        } else if !self.links_checked && self.purity() && self.pseudomanifold() {
            "manifold: undecided (pure pseudomanifold, links not checked)"
        } else {
            "manifold: fails"
        }
    }
}

pub fn verify_manifold(x: &CellComplex) -> ManifoldReport {
    verify_manifold_with(x, ManifoldOptions::default())
}

pub fn verify_manifold_with(x: &CellComplex, opts: ManifoldOptions) -> ManifoldReport {
    let d = x.n().saturating_sub(3);
    let label = |c: usize| x.cell(c).label.clone();

    let mut in_top = vec![false; x.len()];
    for c in (0..x.len()).filter(|&c| x.cell(c).dim == d) {
        in_top[c] = true;
        for f in x.faces_below(c) {
            in_top[f] = true;
        }
    }
    let purity_failures = (0..x.len()).filter(|&c| !in_top[c]).map(label).collect();

    let pseudomanifold_failures = if d == 0 {
        Vec::new()
    } else {
        (0..x.len())
            .filter(|&c| x.cell(c).dim == d - 1)
            .filter_map(|c| {
                let k = x.cofacets(c).iter().filter(|&&u| x.cell(u as usize).dim == d).count();
                (k != 2).then(|| (label(c), k))
            })
            .collect()
    };

    let mut report = ManifoldReport {
        dim: d,
        purity_failures,
        pseudomanifold_failures,
        links_checked: false,
        link_homology_failures: Vec::new(),
        link_connectivity_failures: Vec::new(),
        link_euler_sum: None,
        link_euler_expected: link_euler_functional(x),
    };
    if !opts.links {
        return report;
    }

    let sphere = HomologyProfile::sphere(d as isize - 1);
    let vertices: Vec<usize> = x.vertices().collect();
    let results: Vec<(bool, bool, i64)> = vertices
        .par_iter()
        .map(|&v| {
            let link = order_complex_of(x, &x.faces_above(v));
            let h = homology(&link);
            let connected = d < 2 || link.components() == 1;
            (h == sphere, connected, link.euler_characteristic())
        })
        .collect();
    for (&v, &(sph, conn, _)) in vertices.iter().zip(&results) {
        if !sph {
            report.link_homology_failures.push(label(v));
        }
        if !conn {
            report.link_connectivity_failures.push(label(v));
        }
    }
    report.links_checked = true;
    report.link_euler_sum = Some(results.iter().map(|r| r.2).sum());
    report
}
