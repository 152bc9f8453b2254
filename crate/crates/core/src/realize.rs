//! Length vectors and weighted realizability of quasilinkages.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::games::Quasilinkage;
use crate::lp::{LinearProgram, LpOutcome, Relation, Q};
use crate::subset::{Subset, MAX_N};

/// Positive exact rational lengths `(l_1, ..., l_n)`.
#[derive(Clone, PartialEq, Eq)]
pub struct LengthVector(Vec<BigRational>);

impl LengthVector {
    pub fn new(lengths: Vec<BigRational>) -> Result<Self> {
        if lengths.is_empty() || lengths.len() > MAX_N {
            return Err(Error::Parse(format!("need between 1 and {MAX_N} lengths")));
        }
        if lengths.iter().any(|l| !l.is_positive()) {
            return Err(Error::NonPositiveLength);
        }
        Ok(LengthVector(lengths))
    }

    pub fn from_integers(lengths: &[i64]) -> Result<Self> {
        Self::new(lengths.iter().map(|&l| BigRational::from_integer(l.into())).collect())
    }

    /// Comma-separated `p/q` or integer entries, e.g. `11/10,11/10,1`.
    pub fn parse_csv(text: &str) -> Result<Self> {
        let parsed = text.split(',').map(|t| parse_rational(t.trim())).collect::<Result<Vec<_>>>()?;
        Self::new(parsed)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn lengths(&self) -> &[BigRational] {
        &self.0
    }

    pub fn total(&self) -> BigRational {
        self.0.iter().fold(BigRational::zero(), |a, b| a + b)
    }

    /// Integer numerators over the common denominator.
    fn scaled(&self) -> Vec<BigInt> {
        let lcm = self.0.iter().fold(BigInt::one(), |acc, l| acc.lcm(l.denom()));
        self.0.iter().map(|l| l.numer() * (&lcm / l.denom())).collect()
    }

    /// `2 * sum(S) - total` for every mask `S`.
    fn signed_excess(&self) -> Vec<BigInt> {
        let w = self.scaled();
        let n = w.len();
        let total: BigInt = w.iter().sum();
        let mut sums = vec![BigInt::zero(); 1 << n];
        for bits in 1..(1usize << n) {
            let low = bits.trailing_zeros() as usize;
            sums[bits] = &sums[bits & (bits - 1)] + &w[low];
        }
        sums.into_iter().map(|s| 2 * s - &total).collect()
    }

    /// A subset with exactly half the total length, if one exists.
    pub fn genericity_witness(&self) -> Option<Subset> {
        self.signed_excess().iter().position(|e| e.is_zero()).map(|bits| Subset(bits as u32))
    }

    pub fn is_generic(&self) -> bool {
        self.genericity_witness().is_none()
    }

    /// `S` short iff its length is below the length of its complement.
    pub fn short_sets(&self) -> Result<Quasilinkage> {
        let excess = self.signed_excess();
        if let Some(bits) = excess.iter().position(|e| e.is_zero()) {
            return Err(Error::NotGeneric(Subset(bits as u32)));
        }
        Quasilinkage::from_predicate(self.n(), |s| excess[s.0 as usize].is_negative()).map_err(Error::from)
    }

    /// 1-based index of the longest entry, smallest index on ties.
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, l) in self.0.iter().enumerate() {
            if *l > self.0[best] {
                best = i;
            }
        }
        best + 1
    }

    /// All 1-based indices attaining the maximum.
    pub fn argmax_all(&self) -> Vec<usize> {
        let max = &self.0[self.argmax() - 1];
        (0..self.n()).filter(|&i| self.0[i] == *max).map(|i| i + 1).collect()
    }

    /// Smallest positive integer vector proportional to this one.
    pub fn to_primitive_integers(&self) -> LengthVector {
        let w = self.scaled();
        let g = w.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        LengthVector(w.into_iter().map(|x| BigRational::from_integer(x / &g)).collect())
    }

    /// Rescale to total 1.
    pub fn normalized(&self) -> LengthVector {
        let t = self.total();
        LengthVector(self.0.iter().map(|l| l / &t).collect())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(|l| l.to_string()).collect()
    }
}

impl fmt::Debug for LengthVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("not a rational: {text:?}"));
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

/// One strict inequality of the realizability system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RealizabilityRow {
    /// `l_i > 0`
    Positive(usize),
    /// `sum_{j ∉ M} l_j - sum_{j ∈ M} l_j > 0` for a maximal short `M`
    Short(Subset),
}

impl RealizabilityRow {
    fn coefficients(&self, n: usize) -> Vec<i64> {
        match *self {
            RealizabilityRow::Positive(i) => (1..=n).map(|j| (j == i) as i64).collect(),
            RealizabilityRow::Short(m) => (1..=n).map(|j| if m.contains(j) { -1 } else { 1 }).collect(),
        }
    }
}

/// Nonnegative, not-all-zero multipliers whose combination of the strict
/// inequalities is identically zero, so no length vector satisfies them all.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub rows: Vec<(RealizabilityRow, BigRational)>,
}

impl Certificate {
    /// Recheck the Farkas identity against the game.
    pub fn verify(&self, game: &Quasilinkage) -> bool {
        let n = game.n();
        if self.rows.iter().any(|(_, y)| y.is_negative()) || self.rows.iter().all(|(_, y)| y.is_zero()) {
            return false;
        }
        let rows_ok = self.rows.iter().all(|(r, _)| match *r {
            RealizabilityRow::Positive(i) => (1..=n).contains(&i),
            RealizabilityRow::Short(m) => game.is_short(m),
        });
        if !rows_ok {
            return false;
        }
        let mut combo = vec![BigRational::zero(); n];
        for (row, y) in &self.rows {
            for (j, c) in row.coefficients(n).into_iter().enumerate() {
                combo[j] += y * BigRational::from_integer(c.into());
            }
        }
        combo.iter().all(Zero::is_zero)
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|(r, y)| match *r {
                RealizabilityRow::Positive(i) => {
                    json!({ "constraint": "positive", "element": i, "weight": y.to_string() })
                }
                RealizabilityRow::Short(m) => {
                    json!({ "constraint": "short", "set": m.to_vec(), "weight": y.to_string() })
                }
            })
            .collect();
        Value::Array(rows)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RealizationResult {
    Real(LengthVector),
    Imaginary(Certificate),
}

impl RealizationResult {
    pub fn is_real(&self) -> bool {
        matches!(self, RealizationResult::Real(_))
    }

    pub fn lengths(&self) -> Option<&LengthVector> {
        match self {
            RealizationResult::Real(l) => Some(l),
            RealizationResult::Imaginary(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            RealizationResult::Imaginary(c) => Some(c),
            RealizationResult::Real(_) => None,
        }
    }
}

fn q(v: i64) -> Q {
    Q::from_integer(v.into())
}

/// Maximize the slack `δ` in `l_i ≥ δ`, `sum_M l ≤ 1/2 - δ` (maximal short
/// `M`), `sum l = 1`. Returns `(δ*, l*)`.
pub fn max_slack(game: &Quasilinkage) -> (BigRational, Vec<BigRational>) {
    let n = game.n();
    let mut lp = LinearProgram::new(n + 1);
    lp.objective[n] = q(1);
    lp.free[n] = true;
    for i in 0..n {
        let mut row = vec![q(0); n + 1];
        row[i] = q(-1);
        row[n] = q(1);
        lp.add(row, Relation::Le, q(0));
    }
    for &m in game.maximal_short() {
        let mut row: Vec<Q> = (1..=n).map(|j| q(m.contains(j) as i64)).collect();
        row.push(q(1));
        lp.add(row, Relation::Le, Q::new(1.into(), 2.into()));
    }
    let mut ones = vec![q(1); n];
    ones.push(q(0));
    lp.add(ones, Relation::Eq, q(1));
    match lp.solve() {
        LpOutcome::Optimal { mut x, value } => {
            x.truncate(n);
            (value, x)
        }
        other => unreachable!("slack LP is feasible and bounded: {other:?}"),
    }
}

/// Solve the Farkas system for the strict realizability inequalities.
pub fn farkas_certificate(game: &Quasilinkage) -> Option<Certificate> {
    let n = game.n();
    let mut rows: Vec<RealizabilityRow> = (1..=n).map(RealizabilityRow::Positive).collect();
    rows.extend(game.maximal_short().iter().map(|&m| RealizabilityRow::Short(m)));
    let k = rows.len();
    let coeffs: Vec<Vec<i64>> = rows.iter().map(|r| r.coefficients(n)).collect();
    let mut lp = LinearProgram::new(k);
    for j in 0..n {
        lp.add(coeffs.iter().map(|c| q(c[j])).collect(), Relation::Eq, q(0));
    }
    lp.add(vec![q(1); k], Relation::Eq, q(1));
    match lp.solve() {
        LpOutcome::Optimal { x, .. } => {
            let lcm = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            let ints: Vec<BigInt> = x.iter().map(|v| v.numer() * (&lcm / v.denom())).collect();
            let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
            let rows = rows
                .into_iter()
                .zip(ints)
                .filter(|(_, v)| !v.is_zero())
                .map(|(r, v)| (r, BigRational::from_integer(v / &g)))
                .collect();
            Some(Certificate { rows })
        }
        LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => unreachable!("feasibility LP has zero objective"),
    }
}

/// Decide whether `game` is the short-set family of a generic length vector.
pub fn realize(game: &Quasilinkage) -> Result<RealizationResult> {
    let (delta, l) = max_slack(game);
    if delta.is_positive() {
        let lengths = LengthVector::new(l)?.to_primitive_integers();
        let back = lengths.short_sets()?;
        if back != *game {
            return Err(Error::Postcondition(format!("realizing vector {lengths:?} gives a different game")));
        }
        return Ok(RealizationResult::Real(lengths));
    }
    let cert = farkas_certificate(game).ok_or_else(|| {
        Error::Postcondition("slack LP has no positive optimum but no Farkas certificate exists".into())
    })?;
    if !cert.verify(game) {
        return Err(Error::Postcondition("Farkas certificate fails verification".into()));
    }
    Ok(RealizationResult::Imaginary(cert))
}

/// Check that `order` is a permutation of `[n]` (1-based).
pub fn check_cyclic_order(n: usize, order: &[usize]) -> Result<()> {
    let mut seen = 0u32;
    for &e in order {
        if e == 0 || e > n || seen & (1 << (e - 1)) != 0 {
            return Err(Error::BadVertex(format!("{order:?}")));
        }
        seen |= 1 << (e - 1);
    }
    if order.len() != n {
        return Err(Error::BadVertex(format!("{order:?}")));
    }
    Ok(())
}

/// Cyclic segment of `order` starting at position `start` with `len` elements.
pub fn segment(order: &[usize], start: usize, len: usize) -> Subset {
    let n = order.len();
    (0..len).fold(Subset::EMPTY, |acc, k| acc.with(order[(start + k) % n]))
}

/// For each separator position `s` (the line read from `order[s]` onwards),
/// the element whose adjunction first makes the growing segment long.
pub fn separator_targets(game: &Quasilinkage, order: &[usize]) -> Result<Vec<usize>> {
    let n = game.n();
    check_cyclic_order(n, order)?;
    Ok((0..n)
        .map(|s| {
            let mut seg = Subset::EMPTY;
            for k in 0..n {
                let e = order[(s + k) % n];
                seg = seg.with(e);
                if game.is_long(seg) {
                    return e;
                }
            }
            unreachable!("[n] is long in a constant-sum game")
        })
        .collect())
}

/// Length vector adapted to a vertex: `l_j = 1 + #{s : q(s) = j}`.
///
/// Postconditions checked here: the total is `2n`, and every cyclic segment
/// of `order` is short in `game` iff its length is below `n`.
pub fn vertex_length_vector(game: &Quasilinkage, order: &[usize]) -> Result<LengthVector> {
    let n = game.n();
    let targets = separator_targets(game, order)?;
    let mut l = vec![1i64; n];
    for &j in &targets {
        l[j - 1] += 1;
    }
    let total: i64 = l.iter().sum();
    if total != 2 * n as i64 {
        return Err(Error::Postcondition(format!("vertex lengths sum to {total}, expected {}", 2 * n)));
    }
    for start in 0..n {
        for len in 1..n {
            let seg = segment(order, start, len);
            let sum: i64 = seg.elements().map(|e| l[e - 1]).sum();
            if game.is_short(seg) != (sum < n as i64) {
                return Err(Error::Postcondition(format!(
                    "segment {seg} has length {sum} but is {} in the game",
                    if game.is_short(seg) { "short" } else { "long" }
                )));
            }
        }
    }
    LengthVector::from_integers(&l)
}

/// `lengths` is generic and its short sets are exactly `game`.
pub fn realizes(lengths: &LengthVector, game: &Quasilinkage) -> bool {
    lengths.n() == game.n() && lengths.short_sets().is_ok_and(|g| g == *game)
}

/// Every proper cyclic segment of `order`, one per (start, length) pair.
pub fn all_segments(order: &[usize]) -> impl Iterator<Item = Subset> + '_ {
    let n = order.len();
    (0..n).flat_map(move |s| (1..n).map(move |len| segment(order, s, len)))
}
