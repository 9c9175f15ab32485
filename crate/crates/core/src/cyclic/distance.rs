//! Minimum-distance engines.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::kernel::Packer;
use super::macwilliams::{macwilliams_transform, WeightEnumerator};
use super::CyclicCode;
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg::Matrix;

/// Work limit used when the caller has no opinion.
pub const DEFAULT_BUDGET: u128 = 1 << 30;

/// Largest side enumerated by the automatic method choice.
pub const AUTO_ENUM_LIMIT: u128 = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceMethod {
    Auto,
    MessageEnum,
    LowWeight,
    MacWilliams,
}

impl std::str::FromStr for DistanceMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(DistanceMethod::Auto),
            "message-enum" => Ok(DistanceMethod::MessageEnum),
            "low-weight" => Ok(DistanceMethod::LowWeight),
            "macwilliams" => Ok(DistanceMethod::MacWilliams),
            other => Err(Error::Parse(format!("unknown distance method {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    MessageEnum,
    LowWeight,
    #[serde(rename = "macwilliams")]
    MacWilliams,
    BoundOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceReport {
    pub lower: usize,
    pub exact: Option<usize>,
    pub method: Engine,
    pub work: u128,
}

fn pow_u128(base: u64, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Weight distribution of the row space of `rows` (a `k x n` full-rank matrix).
///
/// Walks the GF(p)-span of `rows[i] * alpha^j`, `j < e`, so every step is a
/// single vector addition. The top digits are split across threads and the
/// per-range histograms summed, so the result does not depend on scheduling.
pub(crate) fn enumerate_row_space(rows: &Matrix) -> Result<Vec<u64>> {
    let field = rows.field().clone();
    let n = rows.cols();
    let packer = Packer::new(&field, n)?;
    let gens = gf_p_generators(&field, rows, &packer);
    let p = field.p() as u64;
    let digits = gens.len();
    let mut split = 0;
    while split < digits && (p as u128).pow(split as u32 + 1) <= 4096 && split < digits.saturating_sub(4) {
        split += 1;
    }
    let low = digits - split;
    let tasks = (p as usize).pow(split as u32);
    let merged = (0..tasks)
        .into_par_iter()
        .map(|t| {
            let mut acc = vec![0u64; packer.words()];
            let mut rem = t;
            for g in &gens[low..] {
                for _ in 0..rem % p as usize {
                    packer.add_assign(&mut acc, g);
                }
                rem /= p as usize;
            }
            let mut hist = vec![0u64; n + 1];
            walk(&packer, &gens[..low], p, &mut acc, |v| hist[packer.weight(v)] += 1);
            hist
        })
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(merged)
}

fn gf_p_generators(field: &Field, rows: &Matrix, packer: &Packer) -> Vec<Vec<u64>> {
    let mut gens = Vec::new();
    for i in 0..rows.rows() {
        let mut scalar: Elem = 1;
        for _ in 0..field.k() {
            let v: Vec<Elem> = rows.row(i).iter().map(|&a| field.mul(a, scalar)).collect();
            gens.push(packer.pack(&v));
            scalar = field.mul(scalar, field.generator());
        }
    }
    gens
}

/// Visits `acc + span(gens)` over GF(p), one addition per step.
fn walk(packer: &Packer, gens: &[Vec<u64>], p: u64, acc: &mut [u64], mut visit: impl FnMut(&[u64])) {
    visit(acc);
    if gens.is_empty() {
        return;
    }
    if p == 2 {
        let total: u64 = 1 << gens.len();
        for i in 1..total {
            packer.add_assign(acc, &gens[i.trailing_zeros() as usize]);
            visit(acc);
        }
        return;
    }
    let mut digit = vec![0u64; gens.len()];
    'outer: loop {
        let mut pos = 0;
        loop {
            packer.add_assign(acc, &gens[pos]);
            digit[pos] += 1;
            if digit[pos] < p {
                break;
            }
            digit[pos] = 0;
            pos += 1;
            if pos == gens.len() {
                break 'outer;
            }
        }
        visit(acc);
    }
}

/// Outcome of one low-weight level.
#[derive(Clone, Debug, Default)]
struct LevelResult {
    count: u64,
    witness: Option<Vec<(usize, Elem)>>,
    work: u128,
}

impl LevelResult {
    fn merge(mut self, other: LevelResult) -> LevelResult {
        self.count += other.count;
        self.work += other.work;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
        self
    }
}

/// Exhaustive search for codewords of a given weight through a check matrix.
///
/// Codewords are normalized to contain position 0 with value 1, which is
/// no loss for cyclic codes. Positions after 0 are chosen in increasing
/// order; the last one is solved by a table lookup on the syndrome.
pub(crate) struct LowWeightSearch {
    field: std::sync::Arc<Field>,
    n: usize,
    packer: Packer,
    /// `a * column_i` for every position and nonzero scalar, indexed `i * (Q-1) + (a-1)`.
    scaled: Vec<Vec<u64>>,
    /// syndrome `s` -> positions `j` and values `v` with `s + v * column_j = 0`.
    solve: HashMap<Vec<u64>, Vec<(usize, Elem)>>,
}

impl LowWeightSearch {
    /// `check` has rows spanning the Euclidean dual of the code.
    pub(crate) fn new(check: &Matrix) -> Result<Self> {
        let field = check.field().clone();
        let n = check.cols();
        let r = check.rows();
        let packer = Packer::new(&field, r)?;
        let q = field.size() as Elem;
        let mut scaled = Vec::with_capacity(n * (q as usize - 1));
        let mut solve: HashMap<Vec<u64>, Vec<(usize, Elem)>> = HashMap::new();
        for i in 0..n {
            let col: Vec<Elem> = (0..r).map(|row| check.get(row, i)).collect();
            for a in 1..q {
                let v: Vec<Elem> = col.iter().map(|&c| field.mul(c, a)).collect();
                let packed = packer.pack(&v);
                solve.entry(packed.clone()).or_default().push((i, field.neg(a)));
                scaled.push(packed);
            }
        }
        Ok(LowWeightSearch { field, n, packer, scaled, solve })
    }

    fn q1(&self) -> usize {
        self.field.size() as usize - 1
    }

    /// Candidate count of a level: free positions after 0, free values, one lookup each.
    pub(crate) fn level_cost(&self, w: usize) -> u128 {
        if w <= 1 {
            return 1;
        }
        binom(self.n - 1, w - 2).saturating_mul(pow_u128(self.q1() as u64, w - 2))
    }

    fn level(&self, w: usize) -> LevelResult {
        let col0 = &self.scaled[0];
        if w == 1 {
            let hit = Packer::is_zero(col0);
            return LevelResult { count: hit as u64, witness: hit.then(|| vec![(0, 1)]), work: 1 };
        }
        if w == 2 {
            let mut res = LevelResult { work: 1, ..Default::default() };
            self.finish(col0, 0, &[(0, 1)], &mut res);
            return res;
        }
        (1..self.n)
            .into_par_iter()
            .map(|i| {
                let mut res = LevelResult::default();
                let mut chosen = vec![(0usize, 1 as Elem)];
                let mut stack = vec![vec![0u64; self.packer.words()]; w - 1];
                for a in 1..=self.q1() {
                    stack[0].copy_from_slice(col0);
                    self.packer.add_assign(&mut stack[0], &self.scaled[i * self.q1() + a - 1]);
                    chosen.push((i, a as Elem));
                    self.descend(&mut stack, i, w - 3, &mut chosen, &mut res);
                    chosen.pop();
                }
                res
            })
            .collect::<Vec<_>>()
            .into_iter()
            .fold(LevelResult::default(), LevelResult::merge)
    }

    /// `stack[0]` holds the current syndrome; deeper entries are scratch.
    fn descend(&self, stack: &mut [Vec<u64>], last: usize, left: usize, chosen: &mut Vec<(usize, Elem)>, res: &mut LevelResult) {
        if left == 0 {
            res.work += 1;
            self.finish(&stack[0], last, chosen, res);
            return;
        }
        let (cur, rest) = stack.split_first_mut().expect("stack depth matches the level");
        // Leave room for `left` more positions after this one plus the solved one.
        for i in last + 1..self.n - left {
            for a in 1..=self.q1() {
                rest[0].copy_from_slice(cur);
                self.packer.add_assign(&mut rest[0], &self.scaled[i * self.q1() + a - 1]);
                chosen.push((i, a as Elem));
                self.descend(rest, i, left - 1, chosen, res);
                chosen.pop();
            }
        }
    }

    fn finish(&self, s: &[u64], last: usize, chosen: &[(usize, Elem)], res: &mut LevelResult) {
        if let Some(hits) = self.solve.get(s) {
            for &(j, v) in hits {
                if j > last {
                    res.count += 1;
                    if res.witness.is_none() {
                        let mut w = chosen.to_vec();
                        w.push((j, v));
                        res.witness = Some(w);
                    }
                }
            }
        }
    }

    fn to_word(&self, support: &[(usize, Elem)]) -> Vec<Elem> {
        let mut v = vec![0; self.n];
        for &(i, a) in support {
            v[i] = a;
        }
        v
    }
}

/// Result of a low-weight run.
#[derive(Clone, Debug)]
pub struct LowWeightOutcome {
    /// Every weight below this was exhausted without finding a codeword.
    pub exhausted_below: usize,
    pub distance: Option<usize>,
    /// Number of codewords of weight `distance` with position 0 equal to 1.
    pub normalized_count: u64,
    pub witness: Option<Vec<Elem>>,
    pub work: u128,
    /// Cost of the weight level the budget stopped at; 0 once `distance` is known.
    pub next_cost: u128,
}

pub(crate) fn low_weight(code: &CyclicCode, budget: u128) -> Result<LowWeightOutcome> {
    let search = LowWeightSearch::new(&code.euclidean_check_matrix()?)?;
    let mut work: u128 = 0;
    for w in 1..=code.n() {
        let cost = search.level_cost(w);
        if work.saturating_add(cost) > budget {
            return Ok(LowWeightOutcome { exhausted_below: w, distance: None, normalized_count: 0, witness: None, work, next_cost: cost });
        }
        let res = search.level(w);
        work += res.work;
        if res.count > 0 {
            return Ok(LowWeightOutcome {
                exhausted_below: w,
                distance: Some(w),
                normalized_count: res.count,
                witness: res.witness.map(|s| search.to_word(&s)),
                work,
                next_cost: 0,
            });
        }
    }
    Err(Error::Internal("nonzero cyclic code without codewords".into()))
}

impl CyclicCode {
    /// Weight distribution by enumerating all `Q^k` codewords.
    pub fn weight_enumerator(&self, budget: u128) -> Result<WeightEnumerator> {
        let needed = pow_u128(self.field().size(), self.k());
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        if self.k() == 0 {
            let mut counts = vec![0u64; self.n() + 1];
            counts[0] = 1;
            return Ok(WeightEnumerator::from_counts(&counts));
        }
        Ok(WeightEnumerator::from_counts(&enumerate_row_space(&self.generator_matrix()?)?))
    }

    /// Weight distribution through the enumerator of the Hermitian dual.
    pub fn weight_enumerator_via_dual(&self, budget: u128) -> Result<WeightEnumerator> {
        let dual = self.hermitian_dual()?.weight_enumerator(budget)?;
        macwilliams_transform(&dual, self.n(), self.field().size(), self.k())
    }

    /// Codewords of minimum weight, normalized as in the low-weight search.
    pub fn low_weight_search(&self, budget: u128) -> Result<LowWeightOutcome> {
        if self.k() == 0 {
            return Err(Error::DegenerateCode);
        }
        low_weight(self, budget)
    }

    pub fn min_distance(&self, method: DistanceMethod, budget: u128) -> Result<DistanceReport> {
        let lower = self.bch_lower_bound();
        let bound_only = |work| DistanceReport { lower, exact: None, method: Engine::BoundOnly, work };
        if self.k() == 0 {
            return Ok(bound_only(0));
        }
        let q = self.field().size();
        let msg = pow_u128(q, self.k());
        let dual = pow_u128(q, self.n() - self.k());
        let method = match method {
            DistanceMethod::Auto if msg <= AUTO_ENUM_LIMIT && msg <= budget => DistanceMethod::MessageEnum,
            DistanceMethod::Auto if dual <= AUTO_ENUM_LIMIT && dual <= budget => DistanceMethod::MacWilliams,
            DistanceMethod::Auto => {
                let out = low_weight(self, budget)?;
                return Ok(match out.distance {
                    Some(d) => DistanceReport { lower, exact: Some(d), method: Engine::LowWeight, work: out.work },
                    None => bound_only(out.work),
                });
            }
            m => m,
        };
        let report = match method {
            DistanceMethod::MessageEnum => {
                let we = self.weight_enumerator(budget)?;
                DistanceReport { lower, exact: we.min_distance(), method: Engine::MessageEnum, work: msg }
            }
            DistanceMethod::MacWilliams => {
                let we = self.weight_enumerator_via_dual(budget)?;
                DistanceReport { lower, exact: we.min_distance(), method: Engine::MacWilliams, work: dual }
            }
            DistanceMethod::LowWeight => {
                let out = low_weight(self, budget)?;
                let Some(d) = out.distance else {
                    return Err(Error::BudgetExceeded { needed: out.work.saturating_add(out.next_cost), budget });
                };
                DistanceReport { lower, exact: Some(d), method: Engine::LowWeight, work: out.work }
            }
            DistanceMethod::Auto => unreachable!(),
        };
        if let Some(d) = report.exact {
            if d < lower {
                return Err(Error::Internal(format!("distance {d} below the BCH bound {lower}")));
            }
        }
        Ok(report)
    }
}
