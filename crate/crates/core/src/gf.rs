//! Finite fields GF(p^k) in polynomial basis.
//!
//! An element is a `u32` whose base-`p` digits are its coordinates in the
//! basis `1, x, ..., x^(k-1)`, constant term least significant. The modulus
//! is always the lexicographically smallest monic primitive polynomial of
//! degree `k` (coefficients compared from the top down), so two fields with
//! the same `(p, k)` agree element for element.
//!
//! Fields up to [`TABLE_LIMIT`] elements carry exp/log tables. Larger
//! fields, needed only as splitting fields for minimal polynomials, can be
//! built table-free with [`Field::untabled`].

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};

pub type Elem = u32;

/// Largest field that gets exp/log tables.
pub const TABLE_LIMIT: u64 = 1 << 26;

struct Tables {
    exp: Vec<Elem>,
    log: Vec<u32>,
}

pub struct Field {
    p: u32,
    k: u32,
    size: u64,
    /// `k + 1` coefficients, constant term first, monic.
    modulus: Vec<u32>,
    tables: Option<Tables>,
    add_table: Option<Vec<Elem>>,
}

impl std::fmt::Debug for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({}^{})", self.p, self.k)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k
    }
}

impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors by trial division.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn checked_size(p: u32, k: u32) -> Result<u64> {
    let mut size: u128 = 1;
    for _ in 0..k {
        size *= p as u128;
        if size > u32::MAX as u128 {
            return Err(Error::FieldTooLarge { size: (p as u128).pow(k) });
        }
    }
    Ok(size as u64)
}

/// Base-`p` arithmetic on encodings, independent of any table.
struct Digits {
    p: u32,
    k: u32,
}

impl Digits {
    fn split(&self, mut a: u64) -> Vec<u32> {
        let mut d = vec![0u32; self.k as usize];
        for slot in d.iter_mut() {
            *slot = (a % self.p as u64) as u32;
            a /= self.p as u64;
        }
        d
    }

    fn join(&self, d: &[u32]) -> u64 {
        d.iter().rev().fold(0u64, |acc, &x| acc * self.p as u64 + x as u64)
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        let (da, db) = (self.split(a), self.split(b));
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.join(&s)
    }

    /// Product of two residues modulo the monic `modulus`.
    fn mulmod(&self, a: u64, b: u64, modulus: &[u32]) -> u64 {
        let k = self.k as usize;
        if self.p == 2 {
            let mut prod: u64 = 0;
            for i in 0..k {
                if (b >> i) & 1 == 1 {
                    prod ^= a << i;
                }
            }
            let mask = self.join(modulus); // includes x^k
            for deg in (k..2 * k).rev() {
                if (prod >> deg) & 1 == 1 {
                    prod ^= mask << (deg - k);
                }
            }
            return prod;
        }
        let p = self.p as u64;
        let (da, db) = (self.split(a), self.split(b));
        let mut prod = vec![0u64; 2 * k];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for deg in (k..2 * k).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            for (i, &m) in modulus.iter().enumerate() {
                let idx = deg - k + i;
                prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
            }
        }
        let low: Vec<u32> = prod[..k].iter().map(|&x| x as u32).collect();
        self.join(&low)
    }

    fn powmod(&self, base: u64, mut e: u64, modulus: &[u32]) -> u64 {
        let mut acc = 1u64;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(acc, b, modulus);
            }
            b = self.mulmod(b, b, modulus);
            e >>= 1;
        }
        acc
    }

    /// Residue of `x` modulo the monic degree-`k` modulus.
    fn x_residue(&self, modulus: &[u32]) -> u64 {
        if self.k == 1 {
            ((self.p - modulus[0]) % self.p) as u64
        } else {
            self.p as u64
        }
    }

    /// Candidate moduli in canonical order: monic, nonzero constant term,
    /// remaining coefficients ascending with the high degree most significant.
    fn candidates(&self, size: u64) -> impl Iterator<Item = Vec<u32>> + '_ {
        (0..size).filter_map(move |low| {
            let mut m = self.split(low);
            if m[0] == 0 {
                return None;
            }
            m.push(1);
            Some(m)
        })
    }
}

impl Field {
    /// Builds GF(p^k) with exp/log tables.
    pub fn new(p: u32, k: u32) -> Result<Arc<Field>> {
        Self::validate(p, k)?;
        let size = checked_size(p, k)?;
        if size > TABLE_LIMIT {
            return Err(Error::FieldTooLarge { size: size as u128 });
        }
        let dg = Digits { p, k };
        let modulus = Self::canonical_modulus(&dg, size)?;
        let tables = Self::try_tables(&dg, size, &modulus)
            .ok_or_else(|| Error::Internal("order test and table walk disagree".into()))?;
        Ok(Arc::new(Self::assemble(p, k, size, modulus, Some(tables))))
    }

    /// Builds GF(p^k) without tables, for sizes up to `u32::MAX`.
    pub fn untabled(p: u32, k: u32) -> Result<Arc<Field>> {
        Self::validate(p, k)?;
        let size = checked_size(p, k)?;
        let dg = Digits { p, k };
        let modulus = Self::canonical_modulus(&dg, size)?;
        Ok(Arc::new(Self::assemble(p, k, size, modulus, None)))
    }

    /// First candidate in which `x` has order `size - 1`.
    fn canonical_modulus(dg: &Digits, size: u64) -> Result<Vec<u32>> {
        let order = size - 1;
        let factors = prime_factors(order);
        for modulus in dg.candidates(size) {
            if order == 1 {
                // GF(2): x + 1 is the only candidate.
                return Ok(modulus);
            }
            let x = dg.x_residue(&modulus);
            if dg.powmod(x, order, &modulus) == 1
                && factors.iter().all(|&r| dg.powmod(x, order / r, &modulus) != 1)
            {
                return Ok(modulus);
            }
        }
        Err(Error::NoPrimitivePolynomial { p: dg.p, k: dg.k })
    }

    /// Tabled when small enough, table-free otherwise.
    pub fn auto(p: u32, k: u32, table_threshold: u64) -> Result<Arc<Field>> {
        let size = checked_size(p, k)?;
        if size <= table_threshold.min(TABLE_LIMIT) {
            Self::new(p, k)
        } else {
            Self::untabled(p, k)
        }
    }

    fn validate(p: u32, k: u32) -> Result<()> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if k == 0 {
            return Err(Error::OutOfRange("extension degree must be at least 1".into()));
        }
        Ok(())
    }

    fn try_tables(dg: &Digits, size: u64, modulus: &[u32]) -> Option<Tables> {
        let order = (size - 1) as usize;
        let x = dg.x_residue(modulus);
        let mut exp = Vec::with_capacity(order);
        let mut cur = 1u64;
        for i in 0..order {
            if i > 0 && cur == 1 {
                return None;
            }
            exp.push(cur as Elem);
            cur = dg.mulmod(cur, x, modulus);
        }
        if cur != 1 {
            return None;
        }
        let mut log = vec![0u32; size as usize];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        Some(Tables { exp, log })
    }

    fn assemble(p: u32, k: u32, size: u64, modulus: Vec<u32>, tables: Option<Tables>) -> Field {
        let mut field = Field { p, k, size, modulus, tables, add_table: None };
        if p != 2 && size <= 256 {
            let dg = Digits { p, k };
            let n = size as usize;
            let mut t = vec![0 as Elem; n * n];
            for a in 0..n {
                for b in 0..n {
                    t[a * n + b] = dg.add(a as u64, b as u64) as Elem;
                }
            }
            field.add_table = Some(t);
        }
        field
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Number of elements, `p^k`.
    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    /// The residue of the indeterminate; generates the multiplicative group.
    pub fn generator(&self) -> Elem {
        self.digits().x_residue(&self.modulus) as Elem
    }

    /// `q` for a field of size `q^2`; `None` when `k` is odd.
    pub fn sqrt_size(&self) -> Option<u64> {
        (self.k % 2 == 0).then(|| (self.p as u64).pow(self.k / 2))
    }

    fn digits(&self) -> Digits {
        Digits { p: self.p, k: self.k }
    }

    pub fn contains(&self, a: Elem) -> bool {
        (a as u64) < self.size
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.size as Elem
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            a ^ b
        } else if let Some(t) = &self.add_table {
            t[a as usize * self.size as usize + b as usize]
        } else {
            self.digits().add(a as u64, b as u64) as Elem
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 || a == 0 {
            return a;
        }
        let dg = self.digits();
        let d: Vec<u32> = dg.split(a as u64).iter().map(|&x| (self.p - x) % self.p).collect();
        dg.join(&d) as Elem
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.tables {
            Some(t) => {
                let s = t.log[a as usize] as u64 + t.log[b as usize] as u64;
                t.exp[(s % (self.size - 1)) as usize]
            }
            None => self.digits().mulmod(a as u64, b as u64, &self.modulus) as Elem,
        }
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        match &self.tables {
            Some(t) => {
                let order = self.size - 1;
                let l = (t.log[a as usize] as u128 * (e % order) as u128) % order as u128;
                t.exp[l as usize]
            }
            None => self.digits().powmod(a as u64, e, &self.modulus) as Elem,
        }
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.tables {
            Some(t) => {
                let order = self.size - 1;
                t.exp[((order - t.log[a as usize] as u64) % order) as usize]
            }
            None => self.pow(a, self.size - 2),
        })
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^(p^j)`.
    pub fn frobenius(&self, a: Elem, j: u32) -> Elem {
        self.pow(a, (self.p as u64).pow(j % self.k))
    }

    /// `a^q` on GF(q^2).
    pub fn conj(&self, a: Elem) -> Result<Elem> {
        if self.k % 2 != 0 {
            return Err(Error::NoConjugationDefined { p: self.p, k: self.k });
        }
        Ok(self.frobenius(a, self.k / 2))
    }

    /// `generator^i`.
    pub fn exp(&self, i: u64) -> Elem {
        match &self.tables {
            Some(t) => t.exp[(i % (self.size - 1)) as usize],
            None => self.pow(self.generator(), i),
        }
    }

    /// Discrete logarithm to the base [`Field::generator`]; tabled fields only.
    pub fn log(&self, a: Elem) -> Option<u64> {
        if a == 0 {
            return None;
        }
        self.tables.as_ref().map(|t| t.log[a as usize] as u64)
    }

    pub fn same_as(&self, other: &Field) -> bool {
        self == other
    }
}

/// The canonical embedding GF(Q) into GF(Q^m).
///
/// The small generator maps to `alpha^(j (Q^m - 1)/(Q - 1))` for the least
/// `j` coprime to `Q - 1` making the image a root of the small field's
/// modulus, which is what makes the map a homomorphism.
pub struct SubfieldEmbedding {
    small: Arc<Field>,
    big: Arc<Field>,
    image: Vec<Elem>,
    preimage: HashMap<Elem, Elem>,
    exponent: u64,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl SubfieldEmbedding {
    pub fn new(small: Arc<Field>, big: Arc<Field>) -> Result<Self> {
        if small.p != big.p || big.k % small.k != 0 {
            return Err(Error::FieldMismatch);
        }
        if !small.has_tables() {
            return Err(Error::FieldTooLarge { size: small.size as u128 });
        }
        let q_small = small.size;
        let stride = (big.size - 1) / (q_small - 1);
        let alpha = big.generator();
        let mut chosen = None;
        for j in 1..q_small.max(2) {
            if gcd(j, q_small - 1) != 1 {
                continue;
            }
            let gamma = big.pow(alpha, j * stride);
            // Prime-field coefficients share their encoding in both fields.
            let mut acc: Elem = 0;
            for &c in small.modulus.iter().rev() {
                acc = big.add(big.mul(acc, gamma), c);
            }
            if acc == 0 {
                chosen = Some((j, gamma));
                break;
            }
        }
        let (j, gamma) = chosen.ok_or_else(|| Error::Internal("no root of the subfield modulus".into()))?;
        let mut image = vec![0 as Elem; q_small as usize];
        let mut cur: Elem = 1;
        for l in 0..q_small - 1 {
            image[small.exp(l) as usize] = cur;
            cur = big.mul(cur, gamma);
        }
        let preimage = image.iter().enumerate().map(|(a, &b)| (b, a as Elem)).collect();
        Ok(SubfieldEmbedding { small, big, image, preimage, exponent: j * stride })
    }

    pub fn small(&self) -> &Arc<Field> {
        &self.small
    }

    pub fn big(&self) -> &Arc<Field> {
        &self.big
    }

    /// Power of the big generator that the small generator maps to.
    pub fn generator_exponent(&self) -> u64 {
        self.exponent
    }

    pub fn embed(&self, a: Elem) -> Elem {
        self.image[a as usize]
    }

    pub fn project(&self, b: Elem) -> Result<Elem> {
        self.preimage.get(&b).copied().ok_or(Error::NotInSubfield)
    }
}
