//! Orthogonal direct sum masking over a Hermitian LCD cyclic code.
//!
//! A sensitive word `x` and a mask `y` are stored as `z = xG + yH`, where
//! `G` generates the code and `H` its Hermitian dual. A fault `e` on `z` is
//! caught by recomputing `y` from `z + e`; it goes unnoticed exactly when
//! `e` is a codeword.

use std::ops::RangeInclusive;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclic::kernel::Packer;
use crate::cyclic::CyclicCode;
use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::linalg::Matrix;

pub struct OdsmInstance {
    code: CyclicCode,
    g: Matrix,
    h: Matrix,
    /// `G^dagger (G G^dagger)^{-1}`, `n x k`.
    to_x: Matrix,
    /// `H^dagger (H H^dagger)^{-1}`, `n x (n-k)`.
    to_y: Matrix,
    h_dagger: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaultCheck {
    pub detected: bool,
    pub recovered_y: Vec<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub weight: usize,
    pub total: u64,
    pub detected: u64,
    pub undetected: u64,
    pub exhaustive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    /// Some weight was sampled because its fault count exceeded the budget.
    pub sampled: bool,
}

impl SweepReport {
    pub fn total(&self) -> u64 {
        self.rows.iter().map(|r| r.total).sum()
    }

    pub fn undetected(&self) -> u64 {
        self.rows.iter().map(|r| r.undetected).sum()
    }
}

impl OdsmInstance {
    pub fn setup(code: CyclicCode) -> Result<Self> {
        if code.is_degenerate() {
            return Err(Error::DegenerateCode);
        }
        if !code.is_hermitian_lcd()? {
            return Err(Error::NotHermitianLcd);
        }
        let g = code.generator_matrix()?;
        let h = code.check_matrix()?;
        let g_dagger = g.conj_transpose()?;
        let h_dagger = h.conj_transpose()?;
        if !g.mul(&h_dagger)?.is_zero() {
            return Err(Error::Internal("G H^dagger is not zero".into()));
        }
        let inv_gg = g.mul(&g_dagger)?.inverse().map_err(|_| Error::NotHermitianLcd)?;
        let inv_hh = h.mul(&h_dagger)?.inverse().map_err(|_| Error::NotHermitianLcd)?;
        if g.vstack(&h)?.rank() != code.n() {
            return Err(Error::Internal("G and H do not span the full space".into()));
        }
        let to_x = g_dagger.mul(&inv_gg)?;
        let to_y = h_dagger.mul(&inv_hh)?;
        Ok(OdsmInstance { code, g, h, to_x, to_y, h_dagger })
    }

    pub fn code(&self) -> &CyclicCode {
        &self.code
    }

    pub fn n(&self) -> usize {
        self.code.n()
    }

    pub fn k(&self) -> usize {
        self.code.k()
    }

    pub fn g(&self) -> &Matrix {
        &self.g
    }

    pub fn h(&self) -> &Matrix {
        &self.h
    }

    /// `z = xG + yH`.
    pub fn mask(&self, x: &[Elem], y: &[Elem]) -> Result<Vec<Elem>> {
        let f = self.code.field();
        if x.iter().chain(y).any(|&a| !f.contains(a)) {
            return Err(Error::OutOfRange("symbol outside the field".into()));
        }
        let a = self.g.left_mul_vec(x)?;
        let b = self.h.left_mul_vec(y)?;
        Ok(a.iter().zip(&b).map(|(&u, &v)| f.add(u, v)).collect())
    }

    /// Mask drawn from a seeded generator.
    pub fn random_mask(&self, seed: u64) -> Vec<Elem> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = self.code.field().size() as Elem;
        (0..self.n() - self.k()).map(|_| rng.random_range(0..q)).collect()
    }

    pub fn recover_x(&self, z: &[Elem]) -> Result<Vec<Elem>> {
        self.to_x.left_mul_vec(z)
    }

    pub fn recover_y(&self, z: &[Elem]) -> Result<Vec<Elem>> {
        self.to_y.left_mul_vec(z)
    }

    /// Compares the mask recovered from `z + epsilon` against `y_expected`.
    pub fn inject_and_check(&self, z: &[Elem], epsilon: &[Elem], y_expected: &[Elem]) -> Result<FaultCheck> {
        if z.len() != self.n() || epsilon.len() != self.n() || y_expected.len() != self.n() - self.k() {
            return Err(Error::DimensionMismatch("state, fault and mask lengths".into()));
        }
        let f = self.code.field();
        let faulty: Vec<Elem> = z.iter().zip(epsilon).map(|(&a, &b)| f.add(a, b)).collect();
        let recovered_y = self.recover_y(&faulty)?;
        let detected = recovered_y != y_expected;
        if detected != self.syndrome_detects(epsilon)? {
            return Err(Error::Internal("mask comparison and syndrome check disagree".into()));
        }
        Ok(FaultCheck { detected, recovered_y })
    }

    /// `epsilon H^dagger != 0`, i.e. the fault leaves the code.
    pub fn syndrome_detects(&self, epsilon: &[Elem]) -> Result<bool> {
        Ok(self.h_dagger.left_mul_vec(epsilon)?.iter().any(|&a| a != 0))
    }

    fn fault_map(&self) -> Result<FaultMap> {
        FaultMap::new(&self.to_y)
    }

    /// Per-weight detection counts for `weights`.
    ///
    /// A weight is swept exhaustively while its fault count fits the
    /// remaining budget, otherwise `samples` seeded faults are drawn. An
    /// undetected fault of weight below `distance` is an error.
    pub fn detection_sweep(
        &self,
        weights: RangeInclusive<usize>,
        distance: usize,
        budget: u128,
        samples: u64,
        seed: u64,
    ) -> Result<SweepReport> {
        let map = self.fault_map()?;
        let q1 = self.code.field().size() - 1;
        let mut remaining = budget;
        let mut rows = Vec::new();
        let mut sampled = false;
        for w in weights {
            if w == 0 || w > self.n() {
                return Err(Error::OutOfRange(format!("fault weight {w} outside [1, {}]", self.n())));
            }
            let count = binom(self.n(), w).saturating_mul((q1 as u128).saturating_pow(w as u32));
            let row = if count <= remaining {
                remaining -= count;
                let undetected = map.exhaustive(w);
                SweepRow { weight: w, total: count as u64, detected: count as u64 - undetected, undetected, exhaustive: true }
            } else {
                sampled = true;
                let undetected = map.sampled(w..=w, samples, seed ^ w as u64)?;
                SweepRow { weight: w, total: samples, detected: samples - undetected, undetected, exhaustive: false }
            };
            if row.undetected > 0 && w < distance {
                return Err(Error::DetectionGuaranteeViolated { weight: w, distance });
            }
            rows.push(row);
        }
        Ok(SweepReport { rows, sampled })
    }

    /// `count` seeded faults with weights cycling through `weights`; returns
    /// the number that went undetected. Each fault is checked both through
    /// the recovered mask and through the syndrome.
    pub fn sample_faults(&self, weights: RangeInclusive<usize>, count: u64, seed: u64) -> Result<u64> {
        if *weights.start() == 0 || *weights.end() > self.n() {
            return Err(Error::OutOfRange("fault weights".into()));
        }
        self.fault_map()?.sampled(weights, count, seed)
    }
}

fn binom(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// Rows of `H^dagger (H H^dagger)^{-1}` scaled by every nonzero symbol, so
/// the change of the recovered mask under a fault is a sum of table rows.
struct FaultMap {
    n: usize,
    q1: usize,
    packer: Packer,
    scaled: Vec<Vec<u64>>,
}

/// Faults per parallel sampling chunk; fixed so results do not depend on thread count.
const SAMPLE_CHUNK: u64 = 1 << 14;

impl FaultMap {
    fn new(to_y: &Matrix) -> Result<Self> {
        let field = to_y.field();
        let (n, r) = (to_y.rows(), to_y.cols());
        let packer = Packer::new(field, r)?;
        let q1 = field.size() as usize - 1;
        let mut scaled = Vec::with_capacity(n * q1);
        for i in 0..n {
            for a in 1..=q1 as Elem {
                let row: Vec<Elem> = to_y.row(i).iter().map(|&b| field.mul(a, b)).collect();
                scaled.push(packer.pack(&row));
            }
        }
        Ok(FaultMap { n, q1, packer, scaled })
    }

    fn row(&self, i: usize, a: usize) -> &[u64] {
        &self.scaled[i * self.q1 + a - 1]
    }

    /// Undetected faults among all faults of weight `w`.
    fn exhaustive(&self, w: usize) -> u64 {
        (0..self.n)
            .into_par_iter()
            .map(|i| {
                let mut stack = vec![vec![0u64; self.packer.words()]; w];
                let mut undetected = 0;
                for a in 1..=self.q1 {
                    stack[0].fill(0);
                    self.packer.add_assign(&mut stack[0], self.row(i, a));
                    self.descend(&mut stack, i, w - 1, &mut undetected);
                }
                undetected
            })
            .sum()
    }

    fn descend(&self, stack: &mut [Vec<u64>], last: usize, left: usize, undetected: &mut u64) {
        if left == 0 {
            *undetected += Packer::is_zero(&stack[0]) as u64;
            return;
        }
        let (cur, rest) = stack.split_first_mut().expect("stack depth matches the weight");
        for i in last + 1..=self.n - left {
            for a in 1..=self.q1 {
                rest[0].copy_from_slice(cur);
                self.packer.add_assign(&mut rest[0], self.row(i, a));
                self.descend(rest, i, left - 1, undetected);
            }
        }
    }

    fn sampled(&self, weights: RangeInclusive<usize>, count: u64, seed: u64) -> Result<u64> {
        let (lo, span) = (*weights.start(), weights.end() - weights.start() + 1);
        let chunks = count.div_ceil(SAMPLE_CHUNK);
        Ok((0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(c);
                let mut acc = vec![0u64; self.packer.words()];
                let mut undetected = 0;
                let end = ((c + 1) * SAMPLE_CHUNK).min(count);
                for idx in c * SAMPLE_CHUNK..end {
                    let w = lo + (idx % span as u64) as usize;
                    acc.fill(0);
                    for i in index::sample(&mut rng, self.n, w) {
                        let a = rng.random_range(1..=self.q1);
                        self.packer.add_assign(&mut acc, self.row(i, a));
                    }
                    undetected += Packer::is_zero(&acc) as u64;
                }
                undetected
            })
            .sum())
    }
}
