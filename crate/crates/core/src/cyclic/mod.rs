//! Cyclic codes `<g(x)>` of length `n` over GF(Q).

mod distance;
pub(crate) mod kernel;
mod macwilliams;

use std::sync::Arc;

pub use distance::{DistanceMethod, DistanceReport, Engine, LowWeightOutcome, AUTO_ENUM_LIMIT, DEFAULT_BUDGET};
pub use macwilliams::{macwilliams_transform, WeightEnumerator};

use crate::cosets::DefiningSet;
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg::Matrix;
use crate::poly::{BigFieldContext, Poly};

#[derive(Clone)]
pub struct CyclicCode {
    ctx: Arc<BigFieldContext>,
    gen: Poly,
    check: Poly,
    defining_set: DefiningSet,
}

impl std::fmt::Debug for CyclicCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CyclicCode[{}, {}] g = {:?}", self.n(), self.k(), self.gen.coeffs())
    }
}

impl CyclicCode {
    /// `g` must be monic and divide `x^n - 1`.
    pub fn from_generator(ctx: Arc<BigFieldContext>, g: Poly) -> Result<Self> {
        if !g.field().same_as(ctx.small()) {
            return Err(Error::FieldMismatch);
        }
        if g.is_zero() || !g.is_monic() {
            return Err(Error::NotADivisor);
        }
        let (check, rem) = ctx.x_n_minus_1().divmod(&g)?;
        if !rem.is_zero() {
            return Err(Error::NotADivisor);
        }
        let defining_set = ctx.defining_set_of(&g);
        if Some(defining_set.len()) != g.degree() {
            return Err(Error::Internal("defining set size differs from generator degree".into()));
        }
        Ok(CyclicCode { ctx, gen: g, check, defining_set })
    }

    /// `g = prod m_s` over the leaders of `set`.
    pub fn from_defining_set(ctx: Arc<BigFieldContext>, set: &DefiningSet) -> Result<Self> {
        let gen = ctx.generator_of(set)?;
        Self::from_parts(ctx, gen, set.clone())
    }

    /// Trusted constructor for a generator whose defining set is already known.
    pub(crate) fn from_parts(ctx: Arc<BigFieldContext>, gen: Poly, defining_set: DefiningSet) -> Result<Self> {
        let (check, rem) = ctx.x_n_minus_1().divmod(&gen)?;
        if !rem.is_zero() {
            return Err(Error::NotADivisor);
        }
        Ok(CyclicCode { ctx, gen, check, defining_set })
    }

    pub fn full_space(ctx: Arc<BigFieldContext>) -> Self {
        let n = ctx.n();
        Self::from_parts(ctx.clone(), Poly::one(ctx.small().clone()), DefiningSet::empty(n)).expect("1 divides x^n - 1")
    }

    pub fn zero_code(ctx: Arc<BigFieldContext>) -> Self {
        let n = ctx.n();
        Self::from_parts(ctx.clone(), ctx.x_n_minus_1(), DefiningSet::full(n)).expect("x^n - 1 divides itself")
    }

    pub fn context(&self) -> &Arc<BigFieldContext> {
        &self.ctx
    }

    pub fn field(&self) -> &Arc<Field> {
        self.ctx.small()
    }

    pub fn n(&self) -> usize {
        self.ctx.n()
    }

    pub fn k(&self) -> usize {
        self.n() - self.gen.degree().expect("generator is nonzero")
    }

    pub fn generator(&self) -> &Poly {
        &self.gen
    }

    /// `h = (x^n - 1) / g`.
    pub fn check_polynomial(&self) -> &Poly {
        &self.check
    }

    pub fn defining_set(&self) -> &DefiningSet {
        &self.defining_set
    }

    pub fn is_degenerate(&self) -> bool {
        self.k() == 0 || self.k() == self.n()
    }

    /// `g = conj(g)*`.
    pub fn lcd_by_polynomial(&self) -> Result<bool> {
        Ok(self.gen.conj_reciprocal()? == self.gen)
    }

    /// `S = -qS (mod n)`.
    pub fn lcd_by_defining_set(&self) -> Result<bool> {
        let q = self.ctx.q()?;
        Ok(self.defining_set.scaled(-(q as i128)) == self.defining_set)
    }

    /// Both criteria; they must agree.
    pub fn is_hermitian_lcd(&self) -> Result<bool> {
        let by_poly = self.lcd_by_polynomial()?;
        if by_poly != self.lcd_by_defining_set()? {
            return Err(Error::CriterionMismatch);
        }
        Ok(by_poly)
    }

    /// Generator `conj(h)*` and defining set `Z_n \ (-qS)`.
    pub fn hermitian_dual(&self) -> Result<CyclicCode> {
        let q = self.ctx.q()?;
        let gen = self.check.conj_reciprocal()?;
        let set = self.defining_set.scaled(-(q as i128)).complement();
        Self::from_parts(self.ctx.clone(), gen, set)
    }

    fn shift_matrix(&self, g: &Poly, rows: usize) -> Result<Matrix> {
        let n = self.n();
        let mut data = vec![0 as Elem; rows * n];
        for i in 0..rows {
            for (j, &c) in g.coeffs().iter().enumerate() {
                data[i * n + i + j] = c;
            }
        }
        Matrix::new(self.field().clone(), rows, n, data)
    }

    /// `k x n`, row `i` = coefficients of `x^i g(x)`.
    pub fn generator_matrix(&self) -> Result<Matrix> {
        if self.k() == 0 {
            return Err(Error::DegenerateCode);
        }
        self.shift_matrix(&self.gen, self.k())
    }

    /// `(n-k) x n`, rows are the shifts of the Hermitian dual's generator.
    pub fn check_matrix(&self) -> Result<Matrix> {
        if self.k() == self.n() {
            return Err(Error::DegenerateCode);
        }
        let dual = self.hermitian_dual()?;
        self.shift_matrix(dual.generator(), self.n() - self.k())
    }

    /// Rows span the Euclidean dual: `c` is a codeword iff `c . row = 0` for every row.
    pub(crate) fn euclidean_check_matrix(&self) -> Result<Matrix> {
        let n = self.n();
        if self.k() == n {
            return Ok(Matrix::zeros(self.field().clone(), 0, n));
        }
        let h = self.check_matrix()?;
        let f = self.field();
        let data = h.data().iter().map(|&a| f.conj(a)).collect::<Result<Vec<_>>>()?;
        Matrix::new(f.clone(), h.rows(), n, data)
    }

    /// `c(x) mod g(x) = 0`.
    pub fn contains(&self, word: &[Elem]) -> Result<bool> {
        if word.len() != self.n() {
            return Err(Error::DimensionMismatch(format!("word of length {} for n = {}", word.len(), self.n())));
        }
        let c = Poly::new(self.field().clone(), word.to_vec());
        Ok(c.rem(&self.gen)?.is_zero())
    }

    /// Longest run of cyclically consecutive residues in S, plus one.
    pub fn bch_lower_bound(&self) -> usize {
        bch_bound_of(&self.defining_set)
    }
}

pub fn bch_bound_of(set: &DefiningSet) -> usize {
    let n = set.n();
    if set.len() == n {
        return n + 1;
    }
    // Start scanning just after a gap so wrapped runs are seen whole.
    let start = (0..n).find(|&i| !set.contains(i)).expect("set is not full");
    let (mut best, mut run) = (0, 0);
    for off in 1..=n {
        if set.contains((start + off) % n) {
            run += 1;
            best = best.max(run);
        } else {
            run = 0;
        }
    }
    best + 1
}

/// Every divisor of `x^n - 1`, one per subset of cosets.
pub struct Divisors {
    ctx: Arc<BigFieldContext>,
    leaders: Vec<usize>,
    factors: Vec<Poly>,
    next: u64,
}

impl Divisors {
    pub fn new(ctx: Arc<BigFieldContext>) -> Result<Self> {
        let leaders = ctx.table().leaders().to_vec();
        if leaders.len() > 30 {
            return Err(Error::TooManyFactors(leaders.len()));
        }
        let factors = leaders.iter().map(|&s| ctx.minimal_polynomial(s)).collect::<Result<Vec<_>>>()?;
        Ok(Divisors { ctx, leaders, factors, next: 0 })
    }

    pub fn total(&self) -> u64 {
        1 << self.leaders.len()
    }
}

impl Iterator for Divisors {
    type Item = Result<CyclicCode>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.next >= 1 << self.leaders.len() {
            return None;
        }
        let mask = self.next;
        self.next += 1;
        let mut g = Poly::one(self.ctx.small().clone());
        let mut chosen = Vec::new();
        for (i, f) in self.factors.iter().enumerate() {
            if mask >> i & 1 == 1 {
                g = g.mul(f);
                chosen.push(self.leaders[i] as i128);
            }
        }
        let set = self.ctx.table().union_of(chosen);
        Some(CyclicCode::from_parts(self.ctx.clone(), g, set))
    }
}
