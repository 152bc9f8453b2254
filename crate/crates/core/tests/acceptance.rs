//! End-to-end acceptance checks. Run with `cargo test --test acceptance`;
//! prints one PASS/FAIL line per criterion and exits non-zero on any failure.

mod common;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::time::{Duration, Instant};

use quasilinkage::chambers::{enumerate_quasilinkages, surgery_audit, AtlasOptions};
use quasilinkage::complex::CellComplex;
use quasilinkage::gale::verify_star_duality;
use quasilinkage::homology::{betti_fs, cellular_homology, homology, order_complex, verify_manifold, ManifoldOptions};
use quasilinkage::realize::{segment, vertex_length_vector};
use quasilinkage::{realize, ConflictFreeFamily, LengthVector, Quasilinkage, ShortPartition, Subset};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn c1_example6() -> Outcome {
    let g = fixture("example6.json");
    ensure(g.is_symmetric().map_err(|e| e.to_string())?, "not symmetric")?;
    ensure(!realize(&g).map_err(|e| e.to_string())?.is_real(), "realizable")?;
    let x = CellComplex::moduli(&g);
    ensure(x.dim() == Some(3), format!("dim {:?}", x.dim()))?;
    let m = verify_manifold(&x);
    ensure(m.purity() && m.pseudomanifold() && m.link_homology() && m.link_connectivity(), format!("{m:?}"))?;
    ensure(x.euler_characteristic() == 0, format!("chi {}", x.euler_characteristic()))?;
    Ok(format!("f = {:?}, chi = 0, {}", x.f_vector(), m.verdict()))
}

fn c2_fano() -> Outcome {
    let g = fixture("example7.json");
    ensure(g.is_symmetric().map_err(|e| e.to_string())?, "not symmetric")?;
    ensure(!realize(&g).map_err(|e| e.to_string())?.is_real(), "realizable")?;
    let x = CellComplex::moduli(&g);
    ensure(x.dim() == Some(4), format!("dim {:?}", x.dim()))?;
    let m = verify_manifold(&x);
    ensure(m.purity() && m.pseudomanifold(), format!("{m:?}"))?;
    Ok(format!("f = {:?}, {}", x.f_vector(), m.verdict()))
}

fn c3_pentagon() -> Outcome {
    let g = fixture("pentagon.json");
    let x = CellComplex::moduli(&g);
    let h = homology(&order_complex(&x));
    ensure(h.betti == [1, 8, 1] && h.is_torsion_free(), format!("{h:?}"))?;
    ensure(betti_fs(&g, 1) == h.betti, format!("fs {:?}", betti_fs(&g, 1)))?;
    ensure(x.euler_characteristic() == -6, format!("chi {}", x.euler_characteristic()))?;
    Ok("betti (1, 8, 1), no torsion, chi = -6".into())
}

fn c4_small() -> Outcome {
    let g3 = Quasilinkage::majority(3);
    let x3 = CellComplex::moduli(&g3);
    ensure(x3.f_vector() == [2], format!("n=3 f {:?}", x3.f_vector()))?;
    let h3 = homology(&order_complex(&x3));
    ensure(h3.betti == [2], format!("n=3 {h3:?}"))?;
    let g4 = LengthVector::parse_csv("2,1,1,1").and_then(|l| l.short_sets()).map_err(|e| e.to_string())?;
    let x4 = CellComplex::moduli(&g4);
    let h4 = homology(&order_complex(&x4));
    ensure(h4.betti == [1, 1] && h4.is_torsion_free(), format!("n=4 {h4:?}"))?;
    ensure(betti_fs(&g4, 1) == h4.betti, "n=4 fs mismatch")?;
    ensure(x4.components() == 1 && x4.f_vector()[0] == x4.f_vector()[1], "n=4 not a circle")?;
    Ok(format!("n=3 betti (2); n=4 betti (1, 1), f = {:?}", x4.f_vector()))
}

fn c5_vertex_lemma() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    let mut checked = 0;
    for name in VALID_FIXTURES {
        let g = fixture(name);
        let n = g.n();
        for _ in 0..100 {
            let v = random_vertex(&mut rng, n);
            let l = vertex_length_vector(&g, &v).map_err(|e| format!("{name} {v:?}: {e}"))?;
            let ints: Vec<i64> = l.lengths().iter().map(|x| x.to_integer().try_into().unwrap()).collect();
            ensure(l.lengths().iter().all(|x| x.is_integer()), "non-integral length")?;
            ensure(ints.iter().sum::<i64>() == 2 * n as i64, format!("{name} {v:?}: sum {ints:?}"))?;
            for start in 0..n {
                for len in 1..n {
                    let s = segment(&v, start, len);
                    let sum: i64 = s.elements().map(|e| ints[e - 1]).sum();
                    ensure(g.is_short(s) == (sum < n as i64), format!("{name} {v:?}: segment {s}"))?;
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} vertices, 0 failures"))
}

fn c6_star_duality() -> Outcome {
    let mut checked = 0;
    for name in VALID_FIXTURES {
        let g = fixture(name);
        if g.n() > 6 {
            continue;
        }
        let vertices = all_vertices(g.n());
        let failures: Vec<Vec<usize>> =
            vertices.par_iter().filter(|v| !verify_star_duality(&g, v).unwrap_or(false)).cloned().collect();
        ensure(failures.is_empty(), format!("{name}: {:?}", failures.first()))?;
        checked += vertices.len();
    }
    Ok(format!("{checked} vertices, 0 failures"))
}

fn c7_surgery() -> Outcome {
    let g = fixture("flip_n6.json");
    let t = Subset::from_elements([4, 5, 6]);
    let r = surgery_audit(&g, t, ManifoldOptions::default()).map_err(|e| e.to_string())?;
    ensure(r.index == 2, format!("index {}", r.index))?;
    ensure(r.deleted == BTreeMap::from([(3, 6), (4, 6)]), format!("deleted {:?}", r.deleted))?;
    ensure(r.counts_match, "counts")?;
    ensure(r.euler_before == 0 && r.euler_after == 0, "chi")?;
    ensure(r.manifold_before.plausible() && r.manifold_after.plausible(), "manifold")?;
    ensure(r.passes(), format!("{r:?}"))?;
    Ok(format!(
        "index 2, deleted {:?}, added {:?}, betti {:?} -> {:?}",
        r.deleted, r.added, r.homology_before.betti, r.homology_after.betti
    ))
}

fn c8_enumeration() -> Outcome {
    let mut summary = Vec::new();
    for n in 3..=6 {
        let graph = enumerate_quasilinkages(n, AtlasOptions::default()).map_err(|e| format!("{e:?}"))?;
        ensure(graph.is_connected(), format!("n={n} disconnected"))?;
        if n <= 5 {
            ensure(graph.imaginary_count() == 0, format!("n={n}: {} imaginary", graph.imaginary_count()))?;
        } else {
            ensure(graph.imaginary_count() >= 1, "n=6 has no imaginary node")?;
            let key = fixture("example6.json").relabeling_canonical_key().map_err(|e| e.to_string())?;
            let found = graph
                .nodes()
                .iter()
                .filter(|nd| !nd.is_real())
                .any(|nd| nd.game.relabeling_canonical_key().map(|k| k == key).unwrap_or(false));
            ensure(found, "example 6 orbit missing")?;
        }
        summary.push(format!("n={n}: {}/{}", graph.imaginary_count(), graph.len()));
    }
    Ok(format!("imaginary/total {}; all connected", summary.join(", ")))
}

/// Checks that depend only on the game, run once per distinct game.
fn complex_properties(g: &Quasilinkage) -> Result<bool, String> {
    let m = CellComplex::moduli(g);
    let s = CellComplex::stable(g);
    let labels = |x: &CellComplex| x.cells().iter().map(|c| c.label.clone()).collect::<BTreeSet<_>>();
    ensure(labels(&m) == labels(&s), "moduli and stable labels differ")?;
    for (i, c) in m.cells().iter().enumerate() {
        let j = s.index_of(&c.label).unwrap();
        let down: BTreeSet<_> = m.facets(i).iter().map(|&f| m.cell(f as usize).label.clone()).collect();
        let up: BTreeSet<_> = s.cofacets(j).iter().map(|&f| s.cell(f as usize).label.clone()).collect();
        ensure(down == up, format!("covering relations not reversed at {:?}", c.label))?;
    }
    ensure(m.diamond_violation().is_none(), format!("diamond fails in moduli of {g:?}"))?;
    ensure(s.diamond_violation().is_none(), format!("diamond fails in stable of {g:?}"))?;
    let real = realize(g).map_err(|e| e.to_string())?.is_real();
    if real {
        let h = cellular_homology(&m).map_err(|e| e.to_string())?;
        ensure(h.is_torsion_free(), format!("torsion in real game {g:?}"))?;
    }
    Ok(real)
}

fn game_properties<R: Rng>(rng: &mut R, g: &Quasilinkage) -> Result<(), String> {
    let n = g.n();
    let full = (1u32 << n) - 1;
    let short = short_masks(g);
    ensure(short.len() == 1 << (n - 1), format!("{} short sets", short.len()))?;
    ensure(short.iter().all(|&m| !short.contains(&(full ^ m))), "complementary pair both short")?;

    for &t in g.maximal_short() {
        let back = g.flip(t).and_then(|h| h.flip(t.complement(n))).map_err(|e| e.to_string())?;
        ensure(back == *g, format!("flip of {t} is not an involution"))?;
    }

    // freeze along a random short partition with at least three blocks
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(rng);
    let mut blocks = Vec::new();
    let mut cur = Subset::EMPTY;
    for e in order {
        if !cur.is_empty() && (g.is_long(cur.with(e)) || rng.gen_bool(0.5)) {
            blocks.push(cur);
            cur = Subset::EMPTY;
        }
        cur = cur.with(e);
    }
    blocks.push(cur);
    if blocks.len() >= 3 {
        let k = blocks.len();
        let p = ShortPartition::new(g, blocks.clone()).map_err(|e| e.to_string())?;
        let f = g.freeze(&p).map_err(|e| e.to_string())?;
        let fs = short_masks(&f);
        ensure(fs.len() == 1 << (k - 1), "frozen game is not constant-sum")?;
        for j in 0..1u32 << k {
            let union = (0..k).filter(|i| j >> i & 1 == 1).fold(Subset::EMPTY, |a, i| a.union(blocks[i]));
            ensure(fs.contains(&j) == g.is_short(union), "freeze disagrees with the block unions")?;
        }
    }

    // extend a random conflict-free subfamily of the short sets
    let members: Vec<Subset> = short.iter().filter(|_| rng.gen_bool(0.2)).map(|&m| Subset(m)).collect();
    let fam = ConflictFreeFamily::new(n, members.clone()).map_err(|e| e.to_string())?;
    let e = fam.extend();
    let es = short_masks(&e);
    ensure(es.len() == 1 << (n - 1), "extension is not constant-sum")?;
    ensure(es.iter().all(|&m| !es.contains(&(full ^ m))), "extension breaks complementarity")?;
    ensure(members.iter().all(|m| e.is_short(*m)), "extension drops a member")?;
    ensure(es.iter().all(|&m| (0..n).all(|i| es.contains(&(m & !(1 << i))))), "extension is not monotone")?;
    Ok(())
}

fn c9_properties() -> Outcome {
    const CASES: usize = 10_000;
    let mut rng = StdRng::seed_from_u64(9);
    let games: Vec<Quasilinkage> = (0..CASES)
        .map(|_| {
            let n = rng.gen_range(3..=6);
            let steps = rng.gen_range(0..=8);
            random_game(&mut rng, n, steps)
        })
        .collect();
    let seeds: Vec<u64> = (0..CASES).map(|_| rng.gen()).collect();
    games.par_iter().zip(&seeds).try_for_each(|(g, &s)| game_properties(&mut StdRng::seed_from_u64(s), g))?;

    let mut distinct: HashMap<(usize, Vec<u32>), &Quasilinkage> = HashMap::new();
    for g in &games {
        distinct.entry(g.key()).or_insert(g);
    }
    let distinct: Vec<&Quasilinkage> = distinct.into_values().collect();
    let real: Vec<bool> = distinct.par_iter().map(|g| complex_properties(g)).collect::<Result<_, _>>()?;
    let real = real.iter().filter(|&&r| r).count();
    Ok(format!("{CASES} cases over {} distinct games ({real} real), 0 violations", distinct.len()))
}

fn c10_oracle() -> Outcome {
    let mut sizes = Vec::new();
    for n in 3..=5 {
        let graph = enumerate_quasilinkages(n, AtlasOptions::default()).map_err(|e| format!("{e:?}"))?;
        let bfs: BTreeSet<BTreeSet<u32>> = graph.nodes().iter().map(|nd| short_masks(&nd.game)).collect();
        let brute = brute_force_families(n);
        ensure(bfs.len() == graph.len(), format!("n={n}: duplicate nodes"))?;
        ensure(bfs == brute, format!("n={n}: {} from flips vs {} by search", bfs.len(), brute.len()))?;
        sizes.push(format!("n={n}: {}", brute.len()));
    }
    Ok(format!("node sets equal ({})", sizes.join(", ")))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 example 6 pipeline", c1_example6, Duration::from_secs(60)),
        ("2 Fano game", c2_fano, Duration::from_secs(600)),
        ("3 equilateral pentagon", c3_pentagon, Duration::from_secs(5)),
        ("4 n = 3 and n = 4 sanity", c4_small, Duration::from_secs(1)),
        ("5 vertex length vectors", c5_vertex_lemma, Duration::from_secs(30)),
        ("6 star duality", c6_star_duality, Duration::from_secs(300)),
        ("7 flip surgery audit", c7_surgery, Duration::from_secs(120)),
        ("8 enumeration ground truth", c8_enumeration, Duration::from_secs(600)),
        ("9 property suites", c9_properties, Duration::from_secs(600)),
        ("10 flip graph vs search", c10_oracle, Duration::from_secs(120)),
    ];
    let mut failed = 0;
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => {
                let over = if elapsed > budget { format!(" (over the {budget:?} target)") } else { String::new() };
                println!("criterion {name}: PASS [{elapsed:.2?}{over}] {detail}");
            }
            Err(why) => {
                failed += 1;
                println!("criterion {name}: FAIL [{elapsed:.2?}] {why}");
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
