//! Packed vectors over GF(Q) for the enumeration loops.
//!
//! Characteristic 2 packs each element into an `e`-bit lane so addition is
//! XOR. Odd characteristic stores one element per byte and adds through a
//! lookup table, which limits it to Q <= 256.

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

#[derive(Clone, Debug)]
enum Repr {
    Binary { bits: u32, per_word: usize, low_bits: u64 },
    Bytes { q: usize, add: Vec<u8> },
}

#[derive(Clone, Debug)]
pub(crate) struct Packer {
    repr: Repr,
    len: usize,
    words: usize,
}

impl Packer {
    pub(crate) fn new(field: &Field, len: usize) -> Result<Self> {
        let repr = if field.p() == 2 {
            let bits = field.k();
            let per_word = (64 / bits) as usize;
            let mut low_bits = 0u64;
            for i in 0..per_word {
                low_bits |= 1 << (i as u32 * bits);
            }
            Repr::Binary { bits, per_word, low_bits }
        } else {
            if field.size() > 256 {
                return Err(Error::OutOfRange(format!("{field:?} is too large for the enumeration kernels")));
            }
            let q = field.size() as usize;
            let mut add = vec![0u8; q * q];
            for a in 0..q {
                for b in 0..q {
                    add[a * q + b] = field.add(a as Elem, b as Elem) as u8;
                }
            }
            Repr::Bytes { q, add }
        };
        let per_word = match &repr {
            Repr::Binary { per_word, .. } => *per_word,
            Repr::Bytes { .. } => 8,
        };
        Ok(Packer { repr, len, words: len.div_ceil(per_word) })
    }

    pub(crate) fn words(&self) -> usize {
        self.words
    }

    pub(crate) fn pack(&self, v: &[Elem]) -> Vec<u64> {
        debug_assert_eq!(v.len(), self.len);
        let mut out = vec![0u64; self.words];
        match &self.repr {
            Repr::Binary { bits, per_word, .. } => {
                for (i, &a) in v.iter().enumerate() {
                    out[i / per_word] |= (a as u64) << ((i % per_word) as u32 * bits);
                }
            }
            Repr::Bytes { .. } => {
                for (i, &a) in v.iter().enumerate() {
                    out[i / 8] |= (a as u64) << ((i % 8) * 8);
                }
            }
        }
        out
    }

    #[cfg_attr(not(test), allow(dead_code))]
    pub(crate) fn unpack(&self, w: &[u64]) -> Vec<Elem> {
        let (bits, per_word) = match &self.repr {
            Repr::Binary { bits, per_word, .. } => (*bits, *per_word),
            Repr::Bytes { .. } => (8, 8),
        };
        let mask = if bits == 32 { u32::MAX as u64 } else { (1u64 << bits) - 1 };
        (0..self.len)
            .map(|i| ((w[i / per_word] >> ((i % per_word) as u32 * bits)) & mask) as Elem)
            .collect()
    }

    #[inline]
    pub(crate) fn add_assign(&self, acc: &mut [u64], v: &[u64]) {
        match &self.repr {
            Repr::Binary { .. } => {
                for (a, b) in acc.iter_mut().zip(v) {
                    *a ^= b;
                }
            }
            Repr::Bytes { q, add } => {
                for (a, b) in acc.iter_mut().zip(v) {
                    let (x, y) = (a.to_le_bytes(), b.to_le_bytes());
                    let mut z = [0u8; 8];
                    for i in 0..8 {
                        z[i] = add[x[i] as usize * q + y[i] as usize];
                    }
                    *a = u64::from_le_bytes(z);
                }
            }
        }
    }

    #[inline]
    pub(crate) fn weight(&self, v: &[u64]) -> usize {
        match &self.repr {
            Repr::Binary { bits, low_bits, .. } => v
                .iter()
                .map(|&x| {
                    let mut m = x;
                    for b in 1..*bits {
                        m |= x >> b;
                    }
                    (m & low_bits).count_ones() as usize
                })
                .sum(),
            Repr::Bytes { .. } => v
                .iter()
                .map(|&x| x.to_le_bytes().iter().filter(|&&b| b != 0).count())
                .sum(),
        }
    }

    #[inline]
    pub(crate) fn is_zero(v: &[u64]) -> bool {
        v.iter().all(|&x| x == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn packed_ops_match_field(pk in prop::sample::select(vec![(2u32, 2u32), (2, 3), (2, 6), (3, 2), (5, 2)]),
                                  len in 1usize..80, seed in any::<u64>()) {
            let f = Field::new(pk.0, pk.1).unwrap();
            let s = f.size();
            let mut x = seed;
            let mut next = || { x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); ((x >> 33) % s) as Elem };
            let a: Vec<Elem> = (0..len).map(|_| next()).collect();
            let b: Vec<Elem> = (0..len).map(|_| next()).collect();
            let pkr = Packer::new(&f, len).unwrap();
            let mut pa = pkr.pack(&a);
            prop_assert_eq!(pkr.unpack(&pa), a.clone());
            prop_assert_eq!(pkr.weight(&pa), a.iter().filter(|&&e| e != 0).count());
            pkr.add_assign(&mut pa, &pkr.pack(&b));
            let sum: Vec<Elem> = a.iter().zip(&b).map(|(&u, &v)| f.add(u, v)).collect();
            prop_assert_eq!(pkr.unpack(&pa), sum.clone());
            prop_assert_eq!(pkr.weight(&pa), sum.iter().filter(|&&e| e != 0).count());
        }
    }
}
