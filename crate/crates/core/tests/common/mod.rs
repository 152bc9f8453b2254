#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use quasilinkage::io::read_game;
use quasilinkage::{LengthVector, Quasilinkage, Subset};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn fixture(name: &str) -> Quasilinkage {
    read_game(&fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Fixtures that validate as quasilinkages.
pub const VALID_FIXTURES: [&str; 5] =
    ["example6.json", "example7.json", "pentagon.json", "apex_neighbor_5.json", "flip_n6.json"];

/// Short-set masks of a game, read through `is_short` only.
pub fn short_masks(g: &Quasilinkage) -> BTreeSet<u32> {
    (0..1u32 << g.n()).filter(|&m| g.is_short(Subset(m))).collect()
}

/// Every monotone family on `[n]` holding exactly one set from each
/// complementary pair and every singleton, by direct search over the choice
/// of side in each pair.
pub fn brute_force_families(n: usize) -> BTreeSet<BTreeSet<u32>> {
    let full = (1u32 << n) - 1;
    // one representative per pair: the mask not containing element n
    let reps: Vec<u32> = (0..1u32 << (n - 1)).collect();
    let mut out = BTreeSet::new();
    for choice in 0..1u64 << reps.len() {
        let mut short = vec![false; 1 << n];
        for (k, &r) in reps.iter().enumerate() {
            let pick = if choice >> k & 1 == 1 { r } else { full ^ r };
            short[pick as usize] = true;
        }
        let singletons = (0..n).all(|i| short[1 << i]);
        let monotone = (0..=full).all(|m| !short[m as usize] || (0..n).all(|i| short[(m & !(1 << i)) as usize]));
        if singletons && monotone {
            out.insert((0..=full).filter(|&m| short[m as usize]).collect());
        }
    }
    out
}

/// Short sets of a random generic length vector followed by a random walk
/// of proper flips.
pub fn random_game<R: Rng>(rng: &mut R, n: usize, steps: usize) -> Quasilinkage {
    let g = loop {
        let mut l: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=3 * n as i64)).collect();
        // odd total keeps the vector generic
        if l.iter().sum::<i64>() % 2 == 0 {
            l[0] += 1;
        }
        let g = LengthVector::from_integers(&l).unwrap().short_sets().unwrap();
        if g.is_proper() {
            break g;
        }
    };
    let mut g = g;
    for _ in 0..steps {
        let flips: Vec<Subset> = g.proper_flips().collect();
        match flips.choose(rng) {
            Some(&t) => g = g.flip(t).unwrap(),
            None => break,
        }
    }
    g
}

/// Random cyclic order of `[n]` starting at 1.
pub fn random_vertex<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut rest: Vec<usize> = (2..=n).collect();
    rest.shuffle(rng);
    std::iter::once(1).chain(rest).collect()
}

/// All cyclic orders of `[n]` starting at 1.
pub fn all_vertices(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for k in 0..rest.len() {
            let e = rest.remove(k);
            prefix.push(e);
            go(prefix, rest, out);
            prefix.pop();
            rest.insert(k, e);
        }
    }
    let mut out = Vec::new();
    go(&mut vec![1], &mut (2..=n).collect(), &mut out);
    out
}

/// Rank of an integer matrix over GF(p), given as sparse columns of
/// `(row, value)`. Standard column reduction by lowest nonzero row.
pub fn rank_mod_p(columns: &[Vec<(usize, i64)>], p: i64) -> usize {
    use std::collections::HashMap;
    let inv = |a: i64| (1..p).find(|b| a * b % p == 1).unwrap();
    let mut pivots: HashMap<usize, Vec<(usize, i64)>> = HashMap::new();
    let mut rank = 0;
    for col in columns {
        let mut c: std::collections::BTreeMap<usize, i64> =
            col.iter().map(|&(r, v)| (r, v.rem_euclid(p))).filter(|&(_, v)| v != 0).collect();
        while let Some((&low, &v)) = c.iter().next_back() {
            match pivots.get(&low) {
                Some(pc) => {
                    let pv = pc.iter().find(|&&(r, _)| r == low).unwrap().1;
                    let factor = v * inv(pv) % p;
                    for &(r, x) in pc {
                        let e = c.entry(r).or_insert(0);
                        *e = (*e - factor * x).rem_euclid(p);
                        if *e == 0 {
                            c.remove(&r);
                        }
                    }
                }
                None => {
                    pivots.insert(low, c.into_iter().collect());
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}
