//! Q-cyclotomic cosets modulo n and the index sets built from them.
//!
//! The closed-form intersection sizes in [`j_intersection_size_formula`] use
//! integer arithmetic only and share nothing with [`j_sets`], so each can be
//! checked against the other.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Multiplicative order of `base` modulo `n` (1 for `n = 1`).
pub fn multiplicative_order(base: u64, n: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be positive".into()));
    }
    if n == 1 {
        return Ok(1);
    }
    if gcd(base % n, n) != 1 {
        return Err(Error::NotCoprime { n, base });
    }
    let b = base % n;
    let mut acc = b;
    let mut m = 1u32;
    while acc != 1 {
        acc = ((acc as u128 * b as u128) % n as u128) as u64;
        m += 1;
    }
    Ok(m)
}

#[derive(Clone, Debug)]
pub struct CosetTable {
    n: usize,
    base: u64,
    m: u32,
    leaders: Vec<usize>,
    leader_of: Vec<u32>,
    members: Vec<Vec<usize>>,
    /// Index into `leaders` for each leader; `u32::MAX` elsewhere.
    rank: Vec<u32>,
}

impl CosetTable {
    pub fn new(n: usize, base: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange("n must be positive".into()));
        }
        let m = multiplicative_order(base, n as u64)?;
        let b = (base % n as u64) as u128;
        let mut leader_of = vec![u32::MAX; n];
        let mut rank = vec![u32::MAX; n];
        let mut leaders = Vec::new();
        let mut members = Vec::new();
        for s in 0..n {
            if leader_of[s] != u32::MAX {
                continue;
            }
            let mut orbit = Vec::new();
            let mut x = s;
            loop {
                orbit.push(x);
                leader_of[x] = s as u32;
                x = ((x as u128 * b) % n as u128) as usize;
                if x == s {
                    break;
                }
            }
            orbit.sort_unstable();
            rank[s] = leaders.len() as u32;
            leaders.push(s);
            members.push(orbit);
        }
        Ok(CosetTable { n, base, m, leaders, leader_of, members, rank })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    /// `ord_n(Q)`.
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn leaders(&self) -> &[usize] {
        &self.leaders
    }

    pub fn num_cosets(&self) -> usize {
        self.leaders.len()
    }

    /// Normalizes any integer residue into `[0, n)`.
    pub fn reduce(&self, s: i128) -> usize {
        s.rem_euclid(self.n as i128) as usize
    }

    pub fn leader_of(&self, s: usize) -> usize {
        self.leader_of[s % self.n] as usize
    }

    pub fn is_leader(&self, s: usize) -> bool {
        self.leader_of(s) == s % self.n
    }

    /// Sorted members of the coset containing `s`.
    pub fn coset(&self, s: usize) -> &[usize] {
        &self.members[self.rank[self.leader_of(s)] as usize]
    }

    pub fn coset_size(&self, s: usize) -> usize {
        self.coset(s).len()
    }

    /// Position of the coset of `s` in [`CosetTable::leaders`].
    pub fn coset_index(&self, s: usize) -> usize {
        self.rank[self.leader_of(s)] as usize
    }

    /// `(leader, members)` pairs in leader order.
    pub fn cosets(&self) -> impl Iterator<Item = (usize, &[usize])> {
        self.leaders.iter().copied().zip(self.members.iter().map(|v| v.as_slice()))
    }

    /// Union of the cosets containing each of `indices` (taken mod n).
    pub fn union_of<I: IntoIterator<Item = i128>>(&self, indices: I) -> DefiningSet {
        let mut seen = vec![false; self.num_cosets()];
        let mut elems = BTreeSet::new();
        for i in indices {
            let r = self.coset_index(self.reduce(i));
            if !seen[r] {
                seen[r] = true;
                elems.extend(self.members[r].iter().copied());
            }
        }
        DefiningSet { n: self.n, elems }
    }
}

/// A subset of `Z_n`, normally a union of cosets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DefiningSet {
    n: usize,
    elems: BTreeSet<usize>,
}

impl DefiningSet {
    pub fn empty(n: usize) -> Self {
        DefiningSet { n, elems: BTreeSet::new() }
    }

    pub fn full(n: usize) -> Self {
        DefiningSet { n, elems: (0..n).collect() }
    }

    /// Takes any residues; they are reduced mod `n`.
    pub fn from_elems<I: IntoIterator<Item = usize>>(n: usize, elems: I) -> Self {
        DefiningSet { n, elems: elems.into_iter().map(|e| e % n).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, s: usize) -> bool {
        self.elems.contains(&(s % self.n))
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.elems.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// `{factor * s mod n}`; `factor` may be negative.
    pub fn scaled(&self, factor: i128) -> DefiningSet {
        let n = self.n as i128;
        DefiningSet {
            n: self.n,
            elems: self.elems.iter().map(|&s| (s as i128 * factor).rem_euclid(n) as usize).collect(),
        }
    }

    pub fn is_closed_under(&self, base: u64) -> bool {
        self.scaled(base as i128) == *self
    }

    pub fn union(&self, other: &DefiningSet) -> DefiningSet {
        DefiningSet { n: self.n, elems: self.elems.union(&other.elems).copied().collect() }
    }

    pub fn intersection(&self, other: &DefiningSet) -> DefiningSet {
        DefiningSet { n: self.n, elems: self.elems.intersection(&other.elems).copied().collect() }
    }

    pub fn complement(&self) -> DefiningSet {
        DefiningSet { n: self.n, elems: (0..self.n).filter(|s| !self.elems.contains(s)).collect() }
    }

    /// Leaders of the cosets making up this set.
    pub fn leaders(&self, table: &CosetTable) -> Vec<usize> {
        self.iter().filter(|&s| table.is_leader(s)).collect()
    }
}

/// Leader status of `s` together with what the small-leader lemma predicts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeaderCheck {
    pub is_leader: bool,
    pub coset_size: usize,
    /// `None` when `s` lies outside the lemma's window.
    pub prediction: Option<LemmaPrediction>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaPrediction {
    /// `None` when `Q | s`: the lemma is silent about leadership then.
    pub is_leader: Option<bool>,
    pub coset_size: usize,
}

/// Window `1..=hi` of the small-leader lemma, if `n` satisfies
/// `Q^floor(m/2) < n <= Q^m - 1`.
pub fn leader_window(n: u64, base: u64) -> Result<Option<u64>> {
    let m = multiplicative_order(base, n)?;
    let full = (base as u128).pow(m) - 1;
    let low = (base as u128).pow(m / 2);
    if !(low < n as u128 && n as u128 <= full) {
        return Ok(None);
    }
    let hi = n as u128 * (base as u128).pow(m.div_ceil(2)) / full;
    Ok(Some(hi as u64))
}

pub fn is_leader_in_range(table: &CosetTable, s: usize) -> Result<LeaderCheck> {
    let window = leader_window(table.n() as u64, table.base())?;
    let prediction = match window {
        Some(hi) if s >= 1 && s as u64 <= hi => Some(LemmaPrediction {
            is_leader: (s as u64 % table.base() != 0).then_some(true),
            coset_size: table.m() as usize,
        }),
        _ => None,
    };
    Ok(LeaderCheck { is_leader: table.is_leader(s), coset_size: table.coset_size(s), prediction })
}

fn check_third_m(m: u32) -> Result<()> {
    if m < 2 || (m % 2 == 1 && m < 5) || m > 15 {
        return Err(Error::UnsupportedM(m));
    }
    Ok(())
}

/// Non-leaders `i` in `[1, 2^m]` with `4 ∤ i` for `n = (4^m - 1)/3`, found by scanning the coset table.
pub fn leader_exceptions_third(m: u32) -> Result<Vec<usize>> {
    check_third_m(m)?;
    let n = ((1usize << (2 * m)) - 1) / 3;
    let table = CosetTable::new(n, 4)?;
    Ok((1..=1usize << m).filter(|i| i % 4 != 0 && !table.is_leader(*i)).collect())
}

/// The exceptions the lemmas claim: `(2^(m+1)+1)/3` for even `m`;
/// `(2^(m+1)+2)/3` and `(2^(m+1)+2^(m-1)+1)/3` for odd `m >= 5`.
pub fn claimed_leader_exceptions_third(m: u32) -> Result<Vec<usize>> {
    check_third_m(m)?;
    let t = 1usize << (m + 1);
    Ok(if m % 2 == 0 {
        vec![(t + 1) / 3]
    } else {
        vec![(t + 2) / 3, (t + (1usize << (m - 1)) + 1) / 3]
    })
}

/// `J+ = U C_{base+i}` and `J- = U C_{base-q i}` for `1 <= i <= delta-1`.
pub fn j_sets(table: &CosetTable, base: usize, q: u64, delta: usize) -> Result<(DefiningSet, DefiningSet)> {
    if delta < 2 || delta > table.n().max(2) {
        return Err(Error::OutOfRange(format!("delta = {delta} outside [2, n]")));
    }
    let b = base as i128;
    let plus = table.union_of((1..delta as i128).map(|i| b + i));
    let minus = table.union_of((1..delta as i128).map(|i| b - q as i128 * i));
    Ok((plus, minus))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntersectionKind {
    /// `n = Q^m - 1`, offset `n/e`.
    Primitive,
    /// `n = (4^m - 1)/3`, `m` even.
    ThirdEven,
    /// `n = (4^m - 1)/3`, `m` odd.
    ThirdOdd,
}

/// Closed form for `|J+ ∩ J-|`.
pub fn j_intersection_size_formula(kind: IntersectionKind, q: u64, m: u32, delta: u64) -> Result<u64> {
    let out = |msg: String| Err(Error::OutOfRange(msg));
    let mm = m as u64;
    match kind {
        IntersectionKind::Primitive => {
            if m < 2 {
                return out(format!("m = {m} < 2"));
            }
            let big_q = q * q;
            let cap = big_q.pow(m.div_ceil(2)) + 1;
            if delta < 2 || delta > cap {
                return out(format!("delta = {delta} outside [2, {cap}]"));
            }
            if m % 2 == 0 {
                return Ok(0);
            }
            let qm = q.pow(m);
            if delta <= qm - 1 {
                return Ok(0);
            }
            if delta == q * qm || delta == q * qm + 1 {
                return Ok(q * q * mm);
            }
            for u in 1..q {
                if u * qm <= delta && delta <= (u + 1) * (qm - 1) {
                    return Ok(u * u * mm);
                }
                let first = (u + 1) * (qm - 1) + 1;
                if delta >= first && delta < first + u {
                    let v = delta - first;
                    return Ok((u * u + 2 * v + 1) * mm);
                }
            }
            out(format!("delta = {delta} not covered"))
        }
        IntersectionKind::ThirdEven => {
            if q != 2 || m < 2 || m % 2 != 0 {
                return out(format!("needs q = 2 and even m >= 2, got q = {q}, m = {m}"));
            }
            let t = 1u64 << (m + 1);
            if delta < 2 || delta > 1 << m {
                return out(format!("delta = {delta} outside [2, 2^m]"));
            }
            if delta <= (t - 2) / 3 {
                Ok(0)
            } else if delta <= (t + (1 << (m - 1)) - 1) / 3 {
                Ok(2 * mm)
            } else if m < 4 {
                // At m = 2 the thresholds collide and 4m exceeds n.
                out(format!("4m case is invalid at m = {m}"))
            } else {
                Ok(4 * mm)
            }
        }
        IntersectionKind::ThirdOdd => {
            if q != 2 || m < 5 || m % 2 != 1 {
                return out(format!("needs q = 2 and odd m >= 5, got q = {q}, m = {m}"));
            }
            let t = 1u64 << (m + 1);
            if delta < 2 || delta > 1 << m {
                return out(format!("delta = {delta} outside [2, 2^m]"));
            }
            if delta <= (t - 1) / 3 {
                Ok(0)
            } else if delta < 1 << m {
                Ok(2 * mm)
            } else {
                Ok(3 * mm)
            }
        }
    }
}
