//! The three code families, their closed-form dimensions, and the
//! enumeration of all Hermitian LCD cyclic codes of a length.
//!
//! Every report carries two dimensions: `k_formula` from integer
//! arithmetic alone and `k_actual = n - |S|` from coset unions.

use std::sync::Arc;

use serde::Serialize;

use crate::cosets::{gcd, multiplicative_order, DefiningSet};
use crate::cyclic::{CyclicCode, DistanceMethod, DistanceReport};
use crate::error::{Error, Result};
use crate::poly::{factor_split, prime_power, BigFieldContext, FactorSplit, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Hop,
    PrimitiveG1,
    QuaternaryG2,
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hop" => Ok(Family::Hop),
            "g1" | "primitive-g1" => Ok(Family::PrimitiveG1),
            "g2" | "quaternary-g2" => Ok(Family::QuaternaryG2),
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyParams {
    pub family: Family,
    pub q: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    pub delta: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct ConstructionReport {
    pub params: FamilyParams,
    pub code: CyclicCode,
    /// Absent where the dimension theorem's hypotheses do not cover the parameters.
    pub k_formula: Option<i64>,
    pub k_actual: usize,
    pub d_bound_formula: usize,
    pub d_bound_actual: usize,
    pub hlcd: bool,
    pub d_exact: Option<usize>,
    pub distance: Option<DistanceReport>,
}

impl ConstructionReport {
    fn new(params: FamilyParams, code: CyclicCode, k_formula: Option<i64>, d_bound_formula: usize) -> Result<Self> {
        Ok(ConstructionReport {
            params,
            k_actual: code.k(),
            d_bound_actual: code.bch_lower_bound(),
            hlcd: code.is_hermitian_lcd()?,
            code,
            k_formula,
            d_bound_formula,
            d_exact: None,
            distance: None,
        })
    }

    pub fn n(&self) -> usize {
        self.code.n()
    }

    pub fn k_mismatch(&self) -> bool {
        self.k_formula.is_some_and(|k| k != self.k_actual as i64)
    }

    pub fn degenerate(&self) -> bool {
        self.code.is_degenerate()
    }

    pub fn with_distance(mut self, method: DistanceMethod, budget: u128) -> Result<Self> {
        let report = self.code.min_distance(method, budget)?;
        self.d_exact = report.exact;
        self.distance = Some(report);
        Ok(self)
    }
}

/// `lcm(m_b, m_{b+1}, ..., m_{b+delta-2})`.
pub fn bch_generator(ctx: &BigFieldContext, delta: usize, b: usize) -> Result<Poly> {
    let n = ctx.n();
    if delta < 2 || delta > n {
        return Err(Error::OutOfRange(format!("delta = {delta} outside [2, {n}]")));
    }
    let mut g = Poly::one(ctx.small().clone());
    for i in 0..delta - 1 {
        g = g.lcm(&ctx.minimal_polynomial((b + i) % n)?);
    }
    Ok(g)
}

/// Length `2^(2t+1) + 1` over GF(4), generator `g_(n, 4, 0)`.
pub fn construct_hop(t: u32) -> Result<ConstructionReport> {
    // The splitting field is GF(4^(2t+1)); t = 7 is the last that fits in 32 bits.
    if t > 7 {
        return Err(Error::OutOfRange(format!("t = {t} > 7")));
    }
    let n = (1usize << (2 * t + 1)) + 1;
    let ctx = BigFieldContext::for_q(2, n)?;
    let code = if t == 0 {
        // n = 3 < delta: the three cosets already exhaust Z_3.
        let set = ctx.table().union_of([0, 1, 2]);
        CyclicCode::from_defining_set(ctx, &set)?
    } else {
        let g = bch_generator(&ctx, 4, 0)?;
        CyclicCode::from_generator(ctx, g)?
    };
    let k_formula = (1i64 << (2 * t + 1)) - 4 * t as i64 - 2;
    let params = FamilyParams { family: Family::Hop, q: 2, t: Some(t), m: None, delta: 4, e: None, b: Some(0) };
    ConstructionReport::new(params, code, Some(k_formula), 6)
}

/// Length `Q^m - 1`, defining set `U (C_{n^+i} U C_{n^-qi}) U C_{n^}` with `n^ = n/e`.
pub fn construct_g1(q: u64, m: u32, delta: usize, e: u64) -> Result<ConstructionReport> {
    prime_power(q)?;
    if m < 2 {
        return Err(Error::OutOfRange(format!("m = {m} < 2")));
    }
    if e == 0 || (q + 1) % e != 0 {
        return Err(Error::OutOfRange(format!("e = {e} does not divide q + 1 = {}", q + 1)));
    }
    let big_q = q * q;
    let cap = big_q.checked_pow(m.div_ceil(2)).map(|c| c + 1).unwrap_or(u64::MAX);
    if delta < 2 || delta as u64 > cap {
        return Err(Error::OutOfRange(format!("delta = {delta} outside [2, {cap}]")));
    }
    let size = (big_q as u128).checked_pow(m).unwrap_or(u128::MAX);
    if size > crate::gf::TABLE_LIMIT as u128 {
        return Err(Error::FieldTooLarge { size });
    }
    let n = size as usize - 1;
    let ctx = BigFieldContext::for_q(q, n)?;
    let table = ctx.table();
    let nh = n / e as usize;
    let qi = q as i128;
    let mut elems: Vec<i128> = vec![nh as i128];
    for i in 1..delta as i128 {
        let plus = nh as i128 + i;
        let minus = nh as i128 - qi * i;
        if table.reduce(-qi * plus) != table.reduce(minus)
            || table.reduce(-qi * minus) != table.reduce(big_q as i128 * plus)
        {
            return Err(Error::Internal(format!("defining-set identities fail at i = {i}")));
        }
        elems.push(plus);
        elems.push(minus);
    }
    let set = table.union_of(elems);
    let code = CyclicCode::from_defining_set(ctx.clone(), &set)?;
    let params = FamilyParams { family: Family::PrimitiveG1, q, t: None, m: Some(m), delta, e: Some(e), b: Some(nh + 1) };
    let d = delta + 1 + (delta - 1) / q as usize;
    ConstructionReport::new(params, code, g1_dimension(q, m, delta as u64), d)
}

/// Length `(4^m - 1)/3` over GF(4), defining set `U (C_i U C_{n-2i}) U C_0`.
pub fn construct_g2(m: u32, delta: usize) -> Result<ConstructionReport> {
    if !(2..=16).contains(&m) {
        return Err(Error::OutOfRange(format!("m = {m} outside [2, 16]")));
    }
    if delta < 2 || delta > 1 << m {
        return Err(Error::OutOfRange(format!("delta = {delta} outside [2, {}]", 1u64 << m)));
    }
    let n = ((1usize << (2 * m)) - 1) / 3;
    let ctx = BigFieldContext::for_q(2, n)?;
    let mut elems: Vec<i128> = vec![0];
    for i in 1..delta as i128 {
        elems.push(i);
        elems.push(n as i128 - 2 * i);
    }
    let set = ctx.table().union_of(elems);
    let code = CyclicCode::from_defining_set(ctx.clone(), &set)?;
    let params = FamilyParams { family: Family::QuaternaryG2, q: 2, t: None, m: Some(m), delta, e: None, b: Some(1) };
    let d = delta + 1 + (delta - 1) / 2;
    ConstructionReport::new(params, code, g2_dimension(m, delta as u64), d)
}

/// Dimension of the length `Q^m - 1` family; integer arithmetic only.
pub fn g1_dimension(q: u64, m: u32, delta: u64) -> Option<i64> {
    let big_q = (q * q) as i64;
    let (qi, mi, d) = (q as i64, m as i64, delta as i64);
    let base = big_q.checked_pow(m)? - 2 - 2 * (d - 1 - (d - 1) / big_q) * mi;
    if m % 2 == 0 {
        return Some(base);
    }
    let qm = qi.pow(m);
    if (2..=qm - 1).contains(&d) {
        return Some(base);
    }
    if d == qi * qm || d == qi * qm + 1 {
        return Some(base + qi * qi * mi);
    }
    for u in 1..qi {
        if (u * qm..=(u + 1) * (qm - 1)).contains(&d) {
            return Some(base + u * u * mi);
        }
        let v = d - (u + 1) * (qm - 1) - 1;
        if (0..u).contains(&v) {
            return Some(base + (u * u + 2 * v + 1) * mi);
        }
    }
    None
}

/// Dimension of the length `(4^m - 1)/3` family; `None` for odd `m < 5`.
pub fn g2_dimension(m: u32, delta: u64) -> Option<i64> {
    let n = ((1i64 << (2 * m)) - 1) / 3;
    let (mi, d) = (m as i64, delta as i64);
    let two_m1 = 1i64 << (m + 1);
    let two_mm1 = 1i64 << (m - 1);
    let fl = (d - 1) / 4;
    let k = |c: i64| n - 2 * (d - fl - c) * mi - 1;
    if d < 2 || d > 1 << m {
        return None;
    }
    if m % 2 == 0 {
        let t1 = (two_m1 - 2) / 3;
        let t2 = (two_m1 + 1) / 3;
        let t3 = (two_m1 + two_mm1 - 1) / 3;
        return Some(if d <= t1 {
            k(1)
        } else if d == t2 {
            k(2)
        } else if d <= t3 {
            k(3)
        } else {
            k(4)
        });
    }
    if m < 5 {
        return None;
    }
    let t1 = (two_m1 - 1) / 3;
    let t2 = (two_m1 + 2) / 3;
    let t3 = (two_m1 + two_mm1 + 1) / 3;
    Some(if d <= t1 {
        k(1)
    } else if d == t2 {
        k(2)
    } else if d <= t3 {
        k(3)
    } else if d < 1 << m {
        k(4)
    } else {
        // The coefficient 9/2 enters doubled: 2(d - fl - 9/2) = 2(d - fl) - 9.
        n - (2 * (d - fl) - 9) * mi - 1
    })
}

/// Whether `-1` is an odd power of `q` modulo `n`.
pub fn all_hlcd_length_predicate(n: u64, q: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::OutOfRange("n = 0".into()));
    }
    if gcd(n, q) != 1 {
        return Err(Error::NotCoprime { n, base: q });
    }
    let ord = multiplicative_order(q, n)? as u64;
    let target = (n - 1) % n;
    let q2 = (q as u128 * q as u128 % n as u128) as u64;
    let mut pw = q % n;
    let mut j = 1;
    while j < 2 * ord {
        if pw == target {
            return Ok(true);
        }
        pw = (pw as u128 * q2 as u128 % n as u128) as u64;
        j += 2;
    }
    Ok(false)
}

/// Upper limit on `u + v` for [`enumerate_hlcd`].
pub const MAX_HLCD_FACTORS: usize = 24;

/// Every Hermitian LCD cyclic code of a length: one per choice of the
/// self-conjugate factors and of the conjugate pairs.
pub struct HlcdCodes {
    ctx: Arc<BigFieldContext>,
    split: FactorSplit,
    units: Vec<(Poly, Vec<i128>)>,
    next: u64,
}

impl HlcdCodes {
    /// `2^(u+v)`.
    pub fn total(&self) -> u64 {
        1 << self.units.len()
    }

    pub fn split(&self) -> &FactorSplit {
        &self.split
    }
}

impl Iterator for HlcdCodes {
    type Item = Result<CyclicCode>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.next >= self.total() {
            return None;
        }
        let mask = self.next;
        self.next += 1;
        let mut g = Poly::one(self.ctx.small().clone());
        let mut leaders = Vec::new();
        for (i, (poly, ls)) in self.units.iter().enumerate() {
            if mask >> i & 1 == 1 {
                g = g.mul(poly);
                leaders.extend_from_slice(ls);
            }
        }
        let set: DefiningSet = self.ctx.table().union_of(leaders);
        Some(CyclicCode::from_parts(self.ctx.clone(), g, set))
    }
}

pub fn enumerate_hlcd(ctx: Arc<BigFieldContext>) -> Result<HlcdCodes> {
    let split = factor_split(&ctx)?;
    if split.u() + split.v() > MAX_HLCD_FACTORS {
        return Err(Error::TooManyFactors(split.u() + split.v()));
    }
    let mut units: Vec<(Poly, Vec<i128>)> =
        split.self_conjugate.iter().map(|f| (f.poly.clone(), vec![f.leader as i128])).collect();
    for (a, b) in &split.paired {
        units.push((a.poly.mul(&b.poly), vec![a.leader as i128, b.leader as i128]));
    }
    Ok(HlcdCodes { ctx, split, units, next: 0 })
}
