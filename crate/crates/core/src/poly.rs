//! Polynomials over GF(Q) and the factorization of `x^n - 1`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::cosets::{CosetTable, DefiningSet};
use crate::error::{Error, Result};
use crate::gf::{Elem, Field, SubfieldEmbedding};

/// Dense polynomial, constant term first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: Arc<Field>,
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(field: Arc<Field>, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: Arc<Field>) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: Arc<Field>) -> Self {
        Poly { field, coeffs: vec![1] }
    }

    /// `x - a`.
    pub fn linear(field: Arc<Field>, a: Elem) -> Self {
        let c = field.neg(a);
        Poly::new(field, vec![c, 1])
    }

    pub fn x_n_minus_1(field: Arc<Field>, n: usize) -> Self {
        let mut c = vec![0; n + 1];
        c[0] = field.neg(1);
        c[n] = 1;
        Poly::new(field, c)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    fn same(&self, other: &Poly) {
        assert!(self.field.same_as(&other.field), "polynomials over different fields");
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.same(other);
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let c = (0..len).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Poly::new(f.clone(), c)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        let c = self.coeffs.iter().map(|&a| self.field.neg(a)).collect();
        Poly::new(self.field.clone(), c)
    }

    pub fn scale(&self, s: Elem) -> Poly {
        let c = self.coeffs.iter().map(|&a| self.field.mul(a, s)).collect();
        Poly::new(self.field.clone(), c)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.same(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field.clone());
        }
        let f = &self.field;
        let mut c = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Poly::new(f.clone(), c)
    }

    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.same(divisor);
        let f = &self.field;
        let Some(dd) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        let inv_lead = f.inv(divisor.lead())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(f.clone()), self.clone()));
        }
        let mut quot = vec![0; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = f.mul(rem[i], inv_lead);
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            let nc = f.neg(c);
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = f.add(rem[idx], f.mul(nc, d));
            }
        }
        Ok((Poly::new(f.clone(), quot), Poly::new(f.clone(), rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Divides by the leading coefficient; the zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        match self.field.inv(self.lead()) {
            Ok(inv) => self.scale(inv),
            Err(_) => self.clone(),
        }
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field.clone());
        }
        let g = self.gcd(other);
        let (q, _) = self.mul(other).divmod(&g).expect("gcd is nonzero");
        q.monic()
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| {
                // i * a as repeated addition; i mod p suffices.
                let times = (i as u64 % f.p() as u64) as usize;
                (0..times).fold(0, |acc, _| f.add(acc, a))
            })
            .collect();
        Poly::new(f.clone(), c)
    }

    /// `f0^{-1} x^t f(1/x)`; monic whenever defined.
    pub fn reciprocal(&self) -> Result<Poly> {
        let f0 = self.coeff(0);
        if f0 == 0 {
            return Err(Error::ZeroConstantTerm);
        }
        let inv = self.field.inv(f0)?;
        let c = self.coeffs.iter().rev().map(|&a| self.field.mul(a, inv)).collect();
        Ok(Poly::new(self.field.clone(), c))
    }

    /// Coefficient-wise `a -> a^q`.
    pub fn conjugate(&self) -> Result<Poly> {
        let c = self.coeffs.iter().map(|&a| self.field.conj(a)).collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(self.field.clone(), c))
    }

    /// The conjugate-reciprocal `conj(f)*`.
    pub fn conj_reciprocal(&self) -> Result<Poly> {
        self.conjugate()?.reciprocal()
    }

    pub fn product<'a, I: IntoIterator<Item = &'a Poly>>(field: Arc<Field>, polys: I) -> Poly {
        polys.into_iter().fold(Poly::one(field), |acc, p| acc.mul(p))
    }
}

/// Table-size threshold for the splitting field; above it arithmetic is table-free.
pub const SPLITTING_TABLE_THRESHOLD: u64 = 1 << 20;

/// GF(Q), the splitting field GF(Q^m) of `x^n - 1`, the embedding between
/// them, the coset table for `(n, Q)` and the powers of
/// `beta = alpha^((Q^m-1)/n)`.
pub struct BigFieldContext {
    small: Arc<Field>,
    n: usize,
    table: CosetTable,
    embedding: SubfieldEmbedding,
    beta_pows: Vec<Elem>,
}

impl std::fmt::Debug for BigFieldContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BigFieldContext(n = {}, {:?} in {:?})", self.n, self.small, self.embedding.big())
    }
}

impl BigFieldContext {
    pub fn new(small: Arc<Field>, n: usize) -> Result<Arc<Self>> {
        let table = CosetTable::new(n, small.size())?;
        let big_k = small.k() as u64 * table.m() as u64;
        if big_k > 32 {
            return Err(Error::FieldTooLarge { size: (small.p() as u128).saturating_pow(big_k as u32) });
        }
        let big = Field::auto(small.p(), big_k as u32, SPLITTING_TABLE_THRESHOLD)?;
        let embedding = SubfieldEmbedding::new(small.clone(), big.clone())?;
        let beta = big.pow(big.generator(), (big.size() - 1) / n as u64);
        let mut beta_pows = Vec::with_capacity(n);
        let mut cur = 1;
        for _ in 0..n {
            beta_pows.push(cur);
            cur = big.mul(cur, beta);
        }
        Ok(Arc::new(BigFieldContext { small, n, table, embedding, beta_pows }))
    }

    /// Context over GF(q^2) for a prime power `q`.
    pub fn for_q(q: u64, n: usize) -> Result<Arc<Self>> {
        let (p, a) = prime_power(q)?;
        Self::new(Field::new(p as u32, 2 * a)?, n)
    }

    pub fn small(&self) -> &Arc<Field> {
        &self.small
    }

    pub fn big(&self) -> &Arc<Field> {
        self.embedding.big()
    }

    pub fn embedding(&self) -> &SubfieldEmbedding {
        &self.embedding
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &CosetTable {
        &self.table
    }

    pub fn m(&self) -> u32 {
        self.table.m()
    }

    /// `q` with `Q = q^2`.
    pub fn q(&self) -> Result<u64> {
        self.small
            .sqrt_size()
            .ok_or(Error::NoConjugationDefined { p: self.small.p(), k: self.small.k() })
    }

    pub fn beta_pow(&self, i: usize) -> Elem {
        self.beta_pows[i % self.n]
    }

    pub fn x_n_minus_1(&self) -> Poly {
        Poly::x_n_minus_1(self.small.clone(), self.n)
    }

    /// `prod_{i in C_s} (x - beta^i)`, projected back into GF(Q).
    pub fn minimal_polynomial(&self, s: usize) -> Result<Poly> {
        let big = self.big();
        let mut acc: Vec<Elem> = vec![1];
        for &i in self.table.coset(s) {
            let root = big.neg(self.beta_pow(i));
            let mut next = vec![0; acc.len() + 1];
            for (j, &a) in acc.iter().enumerate() {
                next[j + 1] = big.add(next[j + 1], a);
                next[j] = big.add(next[j], big.mul(a, root));
            }
            acc = next;
        }
        let coeffs = acc
            .into_iter()
            .map(|c| self.embedding.project(c).map_err(|_| Error::ProjectionFailure))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(self.small.clone(), coeffs))
    }

    /// `g(beta^i)` in the splitting field.
    pub fn eval_at_root(&self, g: &Poly, i: usize) -> Elem {
        let big = self.big();
        let x = self.beta_pow(i);
        g.coeffs().iter().rev().fold(0, |acc, &c| big.add(big.mul(acc, x), self.embedding.embed(c)))
    }

    /// `{i : g(beta^i) = 0}`, testing one representative per coset.
    pub fn defining_set_of(&self, g: &Poly) -> DefiningSet {
        let roots = self.table.leaders().iter().copied().filter(|&s| self.eval_at_root(g, s) == 0);
        self.table.union_of(roots.map(|s| s as i128))
    }

    /// `prod m_s` over the leaders of a coset-closed set.
    pub fn generator_of(&self, set: &DefiningSet) -> Result<Poly> {
        if set.n() != self.n || !set.is_closed_under(self.small.size()) {
            return Err(Error::NotCosetClosed);
        }
        let mut g = Poly::one(self.small.clone());
        for s in set.leaders(&self.table) {
            g = g.mul(&self.minimal_polynomial(s)?);
        }
        Ok(g)
    }
}

/// Splits a prime power `q = p^a`.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::OutOfRange(format!("q = {q} is not a prime power")));
    }
    let p = (2..=q).find(|d| q % d == 0).expect("q >= 2 has a divisor");
    let (mut r, mut a) = (q, 0);
    while r % p == 0 {
        r /= p;
        a += 1;
    }
    if r != 1 {
        return Err(Error::OutOfRange(format!("q = {q} is not a prime power")));
    }
    Ok((p, a))
}

/// One irreducible factor `m_s` of `x^n - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub leader: usize,
    pub poly: Poly,
}

/// `x^n - 1 = e_1 ... e_u (f_1 conj(f_1)*) ... (f_v conj(f_v)*)`.
#[derive(Clone, Debug)]
pub struct FactorSplit {
    pub self_conjugate: Vec<Factor>,
    /// `(f_j, conj(f_j)*)`, with the smaller leader first.
    pub paired: Vec<(Factor, Factor)>,
}

impl FactorSplit {
    pub fn u(&self) -> usize {
        self.self_conjugate.len()
    }

    pub fn v(&self) -> usize {
        self.paired.len()
    }

    /// Product of every listed factor.
    pub fn product(&self, field: Arc<Field>) -> Poly {
        let all = self
            .self_conjugate
            .iter()
            .map(|f| &f.poly)
            .chain(self.paired.iter().flat_map(|(a, b)| [&a.poly, &b.poly]));
        Poly::product(field, all)
    }
}

/// Classifies each `m_s` by whether `conj(m_s)* = m_s`, by polynomial comparison.
pub fn factor_split(ctx: &BigFieldContext) -> Result<FactorSplit> {
    let factors = ctx
        .table()
        .leaders()
        .iter()
        .map(|&s| Ok(Factor { leader: s, poly: ctx.minimal_polynomial(s)? }))
        .collect::<Result<Vec<_>>>()?;
    let by_coeffs: HashMap<&[Elem], usize> = factors.iter().map(|f| (f.poly.coeffs(), f.leader)).collect();
    let index: HashMap<usize, usize> = factors.iter().enumerate().map(|(i, f)| (f.leader, i)).collect();
    let mut self_conjugate = Vec::new();
    let mut paired = Vec::new();
    for f in &factors {
        let partner = f.poly.conj_reciprocal()?;
        let t = *by_coeffs
            .get(partner.coeffs())
            .ok_or_else(|| Error::Internal(format!("conjugate-reciprocal of m_{} is not a factor", f.leader)))?;
        if t == f.leader {
            self_conjugate.push(f.clone());
        } else if f.leader < t {
            paired.push((f.clone(), factors[index[&t]].clone()));
        }
    }
    Ok(FactorSplit { self_conjugate, paired })
}
