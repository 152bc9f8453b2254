//! JSON formats for games, complexes and flip-graph atlases. Elements are
//! 1-based throughout.

use serde::{Deserialize, Serializer};
use serde_json::{json, Value};

use crate::chambers::{real_chamber_graph, FlipGraph};
use crate::complex::CellComplex;
use crate::error::{Error, Result};
use crate::games::{validate, FamilyForm, Quasilinkage};
use crate::realize::{realize, RealizationResult};
use crate::subset::Subset;

pub(crate) fn ser_subset<S: Serializer>(s: &Subset, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.collect_seq(s.elements())
}

/// On-disk game: either the maximal short sets or an explicit short family.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GameFile {
    n: usize,
    #[serde(default)]
    maximal_short: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    short: Option<Vec<Vec<usize>>>,
}

fn to_subsets(n: usize, lists: &[Vec<usize>]) -> Result<Vec<Subset>> {
    lists
        .iter()
        .map(|l| {
            if l.iter().any(|&e| e == 0 || e > 32) {
                return Err(Error::Parse(format!("element out of range in {l:?} (n = {n})")));
            }
            Ok(Subset::from_elements(l.iter().copied()))
        })
        .collect()
}

/// Parse and validate a game from JSON text.
pub fn parse_game(text: &str) -> Result<Quasilinkage> {
    let file: GameFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let (lists, form) = match (&file.maximal_short, &file.short) {
        (Some(m), None) => (m, FamilyForm::Maximal),
        (None, Some(s)) => (s, FamilyForm::Explicit),
        _ => return Err(Error::Parse("expected exactly one of \"maximal_short\" or \"short\"".into())),
    };
    let family = to_subsets(file.n, lists)?;
    Ok(validate(file.n, &family, form)?)
}

pub fn read_game(path: &std::path::Path) -> Result<Quasilinkage> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_game(&text)
}

/// `{"n": .., "maximal_short": [[..], ..]}` with sorted lists.
pub fn game_to_json(game: &Quasilinkage) -> Value {
    json!({ "n": game.n(), "maximal_short": game.maximal_short_lists() })
}

/// `1,2;3,4` -> `[{1,2},{3,4}]`.
pub fn parse_set_list(text: &str) -> Result<Vec<Subset>> {
    text.split(';').filter(|s| !s.trim().is_empty()).map(parse_set).collect()
}

/// `1,2,3` -> `{1,2,3}`.
pub fn parse_set(text: &str) -> Result<Subset> {
    Ok(Subset::from_elements(parse_elements(text)?))
}

pub fn parse_elements(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            match t.parse::<usize>() {
                Ok(e) if (1..=32).contains(&e) => Ok(e),
                _ => Err(Error::Parse(format!("bad element {t:?}"))),
            }
        })
        .collect()
}

/// `{"real": true, "lengths": [..]}` or `{"real": false, "certificate": [..],
/// "comparability_witness": ..}`.
pub fn realization_to_json(game: &Quasilinkage) -> Result<Value> {
    Ok(match realize(game)? {
        RealizationResult::Real(l) => json!({ "real": true, "lengths": l.to_primitive_integers().to_strings() }),
        RealizationResult::Imaginary(c) => json!({
            "real": false,
            "certificate": c.to_json(),
            "comparability_witness": game.comparability_witness(),
        }),
    })
}

pub fn complex_summary(x: &CellComplex) -> Value {
    json!({
        "n": x.n(),
        "variant": x.variant(),
        "dim": x.dim(),
        "cells": x.len(),
        "f_vector": x.f_vector(),
        "euler": x.euler_characteristic(),
        "components": x.components(),
    })
}

/// Cells in canonical order and covering pairs `[face, coface]` by index.
pub fn complex_to_json(x: &CellComplex) -> Value {
    let mut v = complex_summary(x);
    let cells: Vec<Value> = x.cells().iter().map(|c| json!({ "label": c.label.to_lists(), "dim": c.dim })).collect();
    let incidence: Vec<[usize; 2]> = x.incidences().into_iter().map(|(f, c)| [f, c]).collect();
    v["cells"] = Value::from(cells);
    v["incidence"] = json!(incidence);
    v
}

pub fn atlas_to_json(graph: &FlipGraph, orbits: Option<usize>) -> Value {
    let nodes: Vec<Value> = graph
        .nodes()
        .iter()
        .enumerate()
        .map(|(i, nd)| {
            let mut v = json!({
                "id": i,
                "maximal_short": nd.game.maximal_short_lists(),
                "real": nd.is_real(),
                "degree": graph.degree(i),
            });
            if let Some(l) = &nd.lengths {
                v["lengths"] = json!(l.to_strings());
            }
            if let Some(c) = &nd.certificate {
                v["certificate"] = c.to_json();
            }
            if let Some(w) = &nd.comparability {
                v["comparability_witness"] = json!(w);
            }
            if let Some(inv) = &nd.invariants {
                v["f_vector"] = json!(inv.f_vector);
                v["euler"] = json!(inv.euler);
                v["betti"] = json!(inv.homology.betti);
                v["torsion"] = json!(inv.homology)["torsion"].clone();
            }
            if !nd.is_real() {
                let nbrs: Vec<Value> = graph
                    .neighbors(i)
                    .into_iter()
                    .map(|nb| json!({ "node": nb.node, "flip": nb.flipped.to_vec(), "real": nb.real }))
                    .collect();
                v["neighbors"] = Value::from(nbrs);
            }
            v
        })
        .collect();
    let edges: Vec<Value> =
        graph.edges().iter().map(|e| json!({ "source": e.source, "target": e.target, "flip": e.t.to_vec() })).collect();
    let chambers = real_chamber_graph(graph);
    json!({
        "n": graph.n(),
        "nodes": nodes,
        "edges": edges,
        "summary": atlas_summary(graph, orbits, chambers.edges.len(), chambers.components),
    })
}

fn atlas_summary(graph: &FlipGraph, orbits: Option<usize>, real_edges: usize, real_components: usize) -> Value {
    json!({
        "total": graph.len(),
        "real": graph.real_count(),
        "imaginary": graph.imaginary_count(),
        "edges": graph.edges().len(),
        "connected": graph.is_connected(),
        "orbits": orbits,
        "real_chamber_edges": real_edges,
        "real_chamber_components": real_components,
    })
}

/// Counts only, for a partial graph cut off by the node budget.
pub fn partial_atlas_summary(graph: &FlipGraph) -> Value {
    json!({ "n": graph.n(), "nodes_found": graph.len(), "edges_found": graph.edges().len(), "complete": false })
}
