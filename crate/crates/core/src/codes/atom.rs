use std::fmt;

use num_integer::Integer;

use super::word::CyclicWord;
use crate::error::{Error, Result};

/// A rational number in lowest terms with positive denominator.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Rational {
    num: i64,
    den: i64,
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = -num;
            den = -den;
        }
        Ok(Rational { num, den })
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }
}

/// A point of the real line, up to equality.
///
/// Only equality of reals is ever used, so atoms are structured terms rather
/// than numbers. `Tag` is the injection of `R x {0, 1}` into `R`, and `Word`
/// embeds a periodic binary sequence. The derived order (variant first, then
/// fields) is a strict total order consistent with equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Rational(Rational),
    Tag(bool, Box<Atom>),
    Word(CyclicWord),
}

impl Atom {
    pub fn rational(num: i64, den: i64) -> Result<Self> {
        Rational::new(num, den).map(Atom::Rational)
    }

    pub fn int(n: i64) -> Self {
        Atom::Rational(Rational { num: n, den: 1 })
    }

    pub fn tag(bit: bool, inner: Atom) -> Self {
        Atom::Tag(bit, Box::new(inner))
    }

    pub fn word(word: CyclicWord) -> Self {
        Atom::Word(word)
    }

    /// Self-delimiting bit serialization: no codeword is a proper prefix of
    /// another.
    pub fn prefix_code(&self) -> Vec<bool> {
        let mut out = Vec::new();
        self.write_prefix_code(&mut out);
        out
    }

    fn write_prefix_code(&self, out: &mut Vec<bool>) {
        match self {
            Atom::Rational(r) => {
                out.extend([false, false]);
                let zz = ((r.num << 1) ^ (r.num >> 63)) as u64;
                write_gamma(u128::from(zz) + 1, out);
                write_gamma(r.den as u128, out);
            }
            Atom::Tag(bit, inner) => {
                out.extend([false, true, *bit]);
                inner.write_prefix_code(out);
            }
            Atom::Word(w) => {
                out.extend([true, false]);
                write_gamma(w.len() as u128, out);
                out.extend_from_slice(w.bits());
            }
        }
    }

    /// Reads one codeword produced by [`Atom::prefix_code`] from `bits`.
    pub fn decode_prefix_code(bits: &mut impl Iterator<Item = bool>) -> Result<Atom> {
        let mut next = || {
            bits.next().ok_or(Error::Parse {
                pos: 0,
                msg: "truncated atom code".into(),
            })
        };
        let hi = next()?;
        let lo = next()?;
        match (hi, lo) {
            (false, false) => {
                let zz = read_gamma(&mut next)? - 1;
                let zz = u64::try_from(zz).map_err(|_| overflow())?;
                let num = ((zz >> 1) as i64) ^ -((zz & 1) as i64);
                let den = i64::try_from(read_gamma(&mut next)?).map_err(|_| overflow())?;
                Atom::rational(num, den)
            }
            (false, true) => {
                let bit = next()?;
                Ok(Atom::tag(bit, Atom::decode_prefix_code(bits)?))
            }
            (true, false) => {
                let len = read_gamma(&mut next)? as usize;
                let word = (0..len).map(|_| next()).collect::<Result<Vec<_>>>()?;
                Ok(Atom::Word(CyclicWord::new(word)?))
            }
            (true, true) => Err(Error::Parse {
                pos: 0,
                msg: "unknown atom variant in code".into(),
            }),
        }
    }
}

fn overflow() -> Error {
    Error::Parse {
        pos: 0,
        msg: "integer overflow in atom code".into(),
    }
}

// Elias gamma code for n >= 1.
fn write_gamma(n: u128, out: &mut Vec<bool>) {
    debug_assert!(n >= 1);
    let width = 128 - n.leading_zeros() as usize;
    out.extend(std::iter::repeat_n(false, width - 1));
    out.extend((0..width).rev().map(|k| n >> k & 1 == 1));
}

fn read_gamma(next: &mut impl FnMut() -> Result<bool>) -> Result<u128> {
    let mut zeros = 0;
    while !next()? {
        zeros += 1;
        if zeros > 127 {
            return Err(overflow());
        }
    }
    let mut n: u128 = 1;
    for _ in 0..zeros {
        n = n << 1 | u128::from(next()?);
    }
    Ok(n)
}

/// The injection `R x {0, 1} -> R`.
pub fn iota(a: Atom, bit: bool) -> Atom {
    Atom::tag(bit, a)
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Rational(r) => write!(f, "(rat {} {})", r.num, r.den),
            Atom::Tag(bit, inner) => write!(f, "(tag {} {inner})", u8::from(*bit)),
            Atom::Word(w) => write!(f, "(word {w})"),
        }
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Atom {
        Atom::rational(n, d).unwrap()
    }

    #[test]
    fn rationals_are_normalized() {
        assert_eq!(rat(2, 4), rat(1, 2));
        assert_eq!(rat(-3, -6), rat(1, 2));
        assert_eq!(rat(3, -6), rat(-1, 2));
        assert_eq!(rat(0, -7), rat(0, 1));
        assert_eq!(Atom::rational(1, 0), Err(Error::ZeroDenominator));
    }

    #[test]
    fn tags_and_words() {
        assert_ne!(Atom::tag(false, rat(1, 1)), Atom::tag(true, rat(1, 1)));
        assert_eq!(iota(rat(1, 1), false), Atom::tag(false, rat(1, 1)));
        let a = Atom::word(CyclicWord::from_bits("1010").unwrap());
        let b = Atom::word(CyclicWord::from_bits("10").unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn prefix_code_round_trip() {
        let atoms = [
            rat(3, 2),
            rat(0, 1),
            rat(i64::MIN, 1),
            rat(i64::MAX, i64::MAX - 1),
            Atom::tag(true, Atom::tag(false, rat(-5, 7))),
            Atom::word(CyclicWord::from_bits("0110").unwrap()),
        ];
        for a in atoms {
            let code = a.prefix_code();
            let mut it = code.iter().copied();
            assert_eq!(Atom::decode_prefix_code(&mut it).unwrap(), a);
            assert!(it.next().is_none());
        }
    }

    #[test]
    fn display() {
        assert_eq!(rat(-1, 2).to_string(), "(rat -1 2)");
        assert_eq!(Atom::tag(true, rat(1, 1)).to_string(), "(tag 1 (rat 1 1))");
    }
}
