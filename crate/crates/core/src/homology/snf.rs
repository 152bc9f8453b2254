//! Rank and invariant factors of sparse integer matrices.
//!
//! Unit pivots are eliminated first on a sparse representation (a unit pivot
//! splits off a `1` in the Smith form and leaves an integral Schur
//! complement). Whatever survives is handed to a dense Smith normal form over
//! arbitrary-precision integers. The sparse phase runs on `i64` with checked
//! arithmetic and restarts on `BigInt` if anything overflows.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A sparse integer matrix given by its nonzero entries.
#[derive(Debug, Clone, Default)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(u32, u32, i64)>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: Vec::new() }
    }

    pub fn push(&mut self, row: usize, col: usize, value: i64) {
        if value != 0 {
            self.entries.push((row as u32, col as u32, value));
        }
    }
}

/// Rank and the invariant factors greater than one.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Reduction {
    pub rank: usize,
    pub torsion: Vec<BigUint>,
}

trait Coeff: Clone + PartialEq {
    fn from_i64(v: i64) -> Self;
    fn vanishes(&self) -> bool;
    fn is_unit(&self) -> bool;
    /// `self - f * v`
    fn sub_mul(&self, f: &Self, v: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Coeff for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn vanishes(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn sub_mul(&self, f: &Self, v: &Self) -> Option<Self> {
        self.checked_sub(f.checked_mul(*v)?)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coeff for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn sub_mul(&self, f: &Self, v: &Self) -> Option<Self> {
        Some(self - f * v)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

struct Overflow;

struct Sparse<T> {
    rows: Vec<BTreeMap<u32, T>>,
    cols: Vec<BTreeSet<u32>>,
}

impl<T: Coeff> Sparse<T> {
    fn from(m: &SparseMatrix) -> Self {
        let mut rows = vec![BTreeMap::new(); m.rows];
        let mut cols = vec![BTreeSet::new(); m.cols];
        for &(r, c, v) in &m.entries {
            rows[r as usize].insert(c, T::from_i64(v));
            cols[c as usize].insert(r);
        }
        Sparse { rows, cols }
    }

    fn pivot(&mut self, r: u32, c: u32) -> Result<(), Overflow> {
        let prow = std::mem::take(&mut self.rows[r as usize]);
        for &j in prow.keys() {
            self.cols[j as usize].remove(&r);
        }
        let p = prow[&c].clone();
        let others: Vec<u32> = self.cols[c as usize].iter().copied().collect();
        for i in others {
            let a = self.rows[i as usize][&c].clone();
            // p is ±1, so a / p = a * p
            let f = if p == T::from_i64(1) { a } else { a.neg().ok_or(Overflow)? };
            let row = &mut self.rows[i as usize];
            for (&j, v) in &prow {
                let cur = row.get(&j).cloned().unwrap_or_else(|| T::from_i64(0));
                let new = cur.sub_mul(&f, v).ok_or(Overflow)?;
                if new.vanishes() {
                    row.remove(&j);
                    self.cols[j as usize].remove(&i);
                } else {
                    row.insert(j, new);
                    self.cols[j as usize].insert(i);
                }
            }
        }
        debug_assert!(self.cols[c as usize].is_empty());
        Ok(())
    }

    fn eliminate_units(&mut self) -> Result<usize, Overflow> {
        let mut rank = 0;
        loop {
            let mut progress = false;
            for c in 0..self.cols.len() as u32 {
                let best = self.cols[c as usize]
                    .iter()
                    .copied()
                    .filter(|&r| self.rows[r as usize][&c].is_unit())
                    .min_by_key(|&r| self.rows[r as usize].len());
                if let Some(r) = best {
                    self.pivot(r, c)?;
                    rank += 1;
                    progress = true;
                }
            }
            if !progress {
                return Ok(rank);
            }
        }
    }

    fn remainder(&self) -> Vec<Vec<BigInt>> {
        let live_cols: Vec<u32> = (0..self.cols.len() as u32).filter(|&c| !self.cols[c as usize].is_empty()).collect();
        let pos: BTreeMap<u32, usize> = live_cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        self.rows
            .iter()
            .filter(|r| !r.is_empty())
            .map(|r| {
                let mut dense = vec![BigInt::zero(); live_cols.len()];
                for (c, v) in r {
                    dense[pos[c]] = v.to_big();
                }
                dense
            })
            .collect()
    }
}

fn reduce_with<T: Coeff>(m: &SparseMatrix) -> Result<Reduction, Overflow> {
    let mut s = Sparse::<T>::from(m);
    let rank = s.eliminate_units()?;
    let rest = s.remainder();
    let factors = invariant_factors(rest);
    Ok(Reduction { rank: rank + factors.len(), torsion: factors.into_iter().filter(|f| !f.is_one()).collect() })
}

/// Rank and torsion coefficients of an integer matrix.
pub fn reduce(m: &SparseMatrix) -> Reduction {
    match reduce_with::<i64>(m) {
        Ok(r) => r,
        Err(Overflow) => reduce_with::<BigInt>(m).unwrap_or_else(|_| unreachable!()),
    }
}

/// Nonzero invariant factors (absolute values, each dividing the next) of
/// a dense integer matrix.
pub fn invariant_factors(mut a: Vec<Vec<BigInt>>) -> Vec<BigUint> {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_abs_entry(&a, t..m, t..n) else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    let (head, tail) = a.split_at_mut(i);
                    for j in t..n {
                        let d = &q * &head[t][j];
                        tail[0][j] -= d;
                    }
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        let d = &q * &row[t];
                        row[j] -= d;
                    }
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                let cand = (t + 1..m)
                    .map(|i| (i, t))
                    .chain((t + 1..n).map(|j| (t, j)))
                    .filter(|&(i, j)| !a[i][j].is_zero())
                    .min_by_key(|&(i, j)| a[i][j].magnitude().clone());
                if let Some((i, j)) = cand {
                    a.swap(t, i);
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                }
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    let (head, tail) = a.split_at_mut(i);
                    for j in t..n {
                        head[t][j] += &tail[0][j];
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].magnitude().clone());
    }
    diag
}

fn min_abs_entry(
    a: &[Vec<BigInt>],
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if a[i][j].is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(rows: &[&[i64]]) -> SparseMatrix {
        let mut m = SparseMatrix::new(rows.len(), rows.first().map_or(0, |r| r.len()));
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                m.push(i, j, v);
            }
        }
        m
    }

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn diagonal_torsion() {
        let r = reduce(&dense(&[&[2, 0], &[0, 3]]));
        assert_eq!(r, Reduction { rank: 2, torsion: big(&[6]) });
        let r = reduce(&dense(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(r.rank, 3);
        assert_eq!(r.torsion, big(&[2, 6, 12]));
    }

    #[test]
    fn projective_plane_boundary() {
        // the 2-cell of RP^2 attached along twice the 1-cell
        let r = reduce(&dense(&[&[2]]));
        assert_eq!(r.torsion, big(&[2]));
    }

    #[test]
    fn unit_elimination_matches_dense() {
        let m = dense(&[&[1, 1, 0, 0], &[-1, 0, 1, 0], &[0, -1, -1, 2], &[0, 0, 0, 4]]);
        let r = reduce(&m);
        let rows: Vec<Vec<BigInt>> = vec![vec![1, 1, 0, 0], vec![-1, 0, 1, 0], vec![0, -1, -1, 2], vec![0, 0, 0, 4]]
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect();
        let f = invariant_factors(rows);
        assert_eq!(r.rank, f.len());
        let t: Vec<BigUint> = f.into_iter().filter(|x| !x.is_one()).collect();
        assert_eq!(r.torsion, t);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let huge = i64::MAX / 2;
        let m = dense(&[&[1, huge, huge], &[1, -huge, huge], &[0, 0, 3]]);
        let r = reduce(&m);
        assert_eq!(r.rank, 3);
    }

    #[test]
    fn zero_and_empty() {
        assert_eq!(reduce(&SparseMatrix::new(3, 4)), Reduction::default());
        assert_eq!(reduce(&SparseMatrix::new(0, 0)), Reduction::default());
    }
}
