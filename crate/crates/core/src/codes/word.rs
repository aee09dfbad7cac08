use std::fmt;

use crate::error::{Error, Result};

/// Length of the shortest prefix of `xs` whose repetition gives `xs`.
///
/// Only divisors of `xs.len()` are candidates: a period that does not divide
/// the length would not describe the same infinite repetition.
pub fn primitive_period<T: PartialEq>(xs: &[T]) -> usize {
    let n = xs.len();
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .find(|&d| (d..n).all(|k| xs[k] == xs[k - d]))
        .unwrap_or(n)
}

/// A periodic binary sequence `b(k) = w[k mod |w|]`, stored as its primitive
/// root so that equal sequences have identical storage.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicWord {
    bits: Vec<bool>,
}

impl CyclicWord {
    pub fn new(mut bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::Empty("cyclic word"));
        }
        let p = primitive_period(&bits);
        bits.truncate(p);
        Ok(CyclicWord { bits })
    }

    /// Builds a word from a string of `0` and `1` characters.
    pub fn from_bits(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .enumerate()
            .map(|(pos, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse {
                    pos,
                    msg: format!("expected bit, found {c:?}"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(bits)
    }

    pub fn constant(bit: bool) -> Self {
        CyclicWord { bits: vec![bit] }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bit_at(&self, k: usize) -> bool {
        self.bits[k % self.bits.len()]
    }

    /// `Some(b)` when the word denotes the constant sequence `b`.
    pub fn as_constant(&self) -> Option<bool> {
        (self.bits.len() == 1).then(|| self.bits[0])
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclicWord({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> CyclicWord {
        CyclicWord::from_bits(s).unwrap()
    }

    #[test]
    fn canonical_form_is_primitive_root() {
        assert_eq!(w("1010").to_string(), "10");
        assert_eq!(w("10"), w("1010"));
        assert_ne!(w("10"), w("01"));
        assert_eq!(w("111").to_string(), "1");
        assert_eq!(w("100100").to_string(), "100");
        assert_eq!(w("1001").to_string(), "1001");
    }

    #[test]
    fn empty_word_rejected() {
        assert_eq!(CyclicWord::new(vec![]), Err(Error::Empty("cyclic word")));
        assert!(CyclicWord::from_bits("").is_err());
        assert!(CyclicWord::from_bits("102").is_err());
    }

    #[test]
    fn canonicalization_idempotent_and_minimal() {
        // every word of length <= 10
        for len in 1..=10usize {
            for mask in 0u32..(1 << len) {
                let bits: Vec<bool> = (0..len).map(|k| mask >> k & 1 == 1).collect();
                let c = CyclicWord::new(bits.clone()).unwrap();
                assert_eq!(CyclicWord::new(c.bits().to_vec()).unwrap(), c);
                for k in 0..3 * len {
                    assert_eq!(c.bit_at(k), bits[k % len]);
                }
                let p = c.len();
                for d in (1..p).filter(|d| p.is_multiple_of(*d)) {
                    assert!((0..p).any(|k| c.bits()[k] != c.bits()[k % d]));
                }
            }
        }
    }

    #[test]
    fn primitive_period_of_lists() {
        assert_eq!(primitive_period(&[1, 2, 1, 2, 1, 2]), 2);
        assert_eq!(primitive_period(&[1, 2, 1]), 3);
        assert_eq!(primitive_period(&["a"]), 1);
    }
}
