use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `counts[w]` = number of codewords of Hamming weight `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightEnumerator {
    pub counts: Vec<BigUint>,
}

impl WeightEnumerator {
    pub fn from_counts(counts: &[u64]) -> Self {
        WeightEnumerator { counts: counts.iter().map(|&c| BigUint::from(c)).collect() }
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Smallest positive weight with a nonzero count.
    pub fn min_distance(&self) -> Option<usize> {
        self.counts.iter().enumerate().skip(1).find(|(_, c)| !c.is_zero()).map(|(w, _)| w)
    }
}

/// Enumerator of the code whose dual has enumerator `dual`.
///
/// `A_w = |D|^{-1} sum_j B_j K_w(j)` with the Krawtchouk values read off
/// `(1 + (Q-1)z)^(n-j) (1 - z)^j`. `k` is the dimension of the result.
pub fn macwilliams_transform(dual: &WeightEnumerator, n: usize, q: u64, k: usize) -> Result<WeightEnumerator> {
    if dual.counts.len() > n + 1 || dual.counts.first().is_none_or(|c| !c.is_one()) {
        return Err(Error::InconsistentEnumerator);
    }
    let dual_size = dual.total();
    let qq = BigUint::from(q);
    if dual_size != qq.pow((n - k) as u32) {
        return Err(Error::InconsistentEnumerator);
    }
    let mut acc = vec![BigInt::zero(); n + 1];
    for (j, b) in dual.counts.iter().enumerate() {
        if b.is_zero() {
            continue;
        }
        let b = BigInt::from(b.clone());
        for (w, kw) in krawtchouk_column(n, q, j).into_iter().enumerate() {
            acc[w] += &b * kw;
        }
    }
    let divisor = BigInt::from(dual_size);
    let mut counts = Vec::with_capacity(n + 1);
    for a in acc {
        if a.sign() == Sign::Minus || !(&a % &divisor).is_zero() {
            return Err(Error::InconsistentEnumerator);
        }
        counts.push((a / &divisor).to_biguint().expect("nonnegative"));
    }
    let out = WeightEnumerator { counts };
    if out.total() != qq.pow(k as u32) {
        return Err(Error::InconsistentEnumerator);
    }
    Ok(out)
}

/// `K_w(j)` for all `w` at fixed `j`.
fn krawtchouk_column(n: usize, q: u64, j: usize) -> Vec<BigInt> {
    let mut poly = vec![BigInt::zero(); n + 1];
    // (1 + (Q-1)z)^(n-j)
    let qm1 = BigInt::from(q - 1);
    let mut binom = BigInt::one();
    let mut pw = BigInt::one();
    for (s, slot) in poly.iter_mut().enumerate().take(n - j + 1) {
        *slot = &binom * &pw;
        binom = binom * BigInt::from(n - j - s) / BigInt::from(s + 1);
        pw *= &qm1;
    }
    // times (1 - z)^j
    for deg in (n - j)..n {
        for i in (1..=deg + 1).rev() {
            let prev = poly[i - 1].clone();
            poly[i] -= prev;
        }
    }
    poly
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn zero_code_dual_is_full_space() {
        let (n, q) = (6usize, 4u64);
        let zero = WeightEnumerator::from_counts(&[1]);
        let mut dual_counts = vec![0u64; n + 1];
        dual_counts[0] = 1;
        let full = macwilliams_transform(&WeightEnumerator::from_counts(&dual_counts), n, q, n).unwrap();
        for w in 0..=n {
            assert_eq!(full.counts[w], BigUint::from(binom(n as u64, w as u64) * 3u64.pow(w as u32)));
        }
        // A bare [1] is accepted as a short vector.
        assert_eq!(macwilliams_transform(&zero, n, q, n).unwrap(), full);
    }

    #[test]
    fn inconsistent_input_rejected() {
        // Wrong total, then a non-integral and a negative transform.
        let bad = WeightEnumerator::from_counts(&[1, 1, 0, 0]);
        assert_eq!(macwilliams_transform(&bad, 3, 4, 2), Err(Error::InconsistentEnumerator));
        let bad = WeightEnumerator::from_counts(&[1, 0, 2, 1]);
        assert_eq!(macwilliams_transform(&bad, 3, 2, 1), Err(Error::InconsistentEnumerator));
        let bad = WeightEnumerator::from_counts(&[1, 0, 1, 2]);
        assert_eq!(macwilliams_transform(&bad, 3, 2, 1), Err(Error::InconsistentEnumerator));
    }

    #[test]
    fn repetition_code_binary() {
        // Binary [3,1] repetition code {000, 111}; dual is the even-weight code.
        let rep = WeightEnumerator::from_counts(&[1, 0, 0, 1]);
        let even = macwilliams_transform(&rep, 3, 2, 2).unwrap();
        assert_eq!(even, WeightEnumerator::from_counts(&[1, 0, 3, 0]));
        assert_eq!(macwilliams_transform(&even, 3, 2, 1).unwrap(), rep);
    }
}
