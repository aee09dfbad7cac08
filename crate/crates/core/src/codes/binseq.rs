use num_integer::Integer;

use super::atom::Atom;
use super::pairing::cantor_pair;
use super::seq::{AtomSeqCode, AtomSet, CyclicList, ZCode};
use super::word::{primitive_period, CyclicWord};
use crate::error::{Error, Result};

/// Default search bound for comparing a periodic word against a pullback.
pub const DEFAULT_N_CMP: usize = 4096;

/// A code for a point `y` of `(2^N)^N`.
pub type YSeqCode = CyclicList<BinSeqCode>;

/// A code for a binary sequence.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum BinSeqCode {
    CycW(CyclicWord),
    Pullback(Pullback),
}

/// `b(k) = 1` iff `x(k)` lies in `set`, for `x = PairMerge(base)`.
///
/// Only reachable through [`BinSeqCode::pullback`], which keeps `set` a
/// proper nonempty subset of the base's range.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Pullback {
    base: ZCode,
    set: AtomSet,
}

impl Pullback {
    pub fn base(&self) -> &ZCode {
        &self.base
    }

    pub fn set(&self) -> &AtomSet {
        &self.set
    }

    pub fn bit_at(&self, k: usize) -> bool {
        let (i, j) = super::pairing::cantor_unpair(k);
        self.set.contains(self.base.at(i).at(j))
    }

    /// Complete canonical form of the denoted sequence.
    ///
    /// `b(e(i, j)) = r(i mod s)(j)` where row `r(i)` marks the members of
    /// `set` along `z(i)`. Since `e` is a bijection, two pullbacks denote the
    /// same sequence iff their row sequences agree, so the list of primitive
    /// row words reduced to its own primitive period is canonical.
    pub fn pattern(&self) -> Vec<CyclicWord> {
        let mut rows: Vec<CyclicWord> = self
            .base
            .iter()
            .map(|row| {
                CyclicWord::new(row.iter().map(|a| self.set.contains(a)).collect())
                    .expect("zcode rows are nonempty")
            })
            .collect();
        let p = primitive_period(&rows);
        rows.truncate(p);
        rows
    }
}

impl BinSeqCode {
    pub fn word(w: CyclicWord) -> Self {
        BinSeqCode::CycW(w)
    }

    pub fn constant(bit: bool) -> Self {
        BinSeqCode::CycW(CyclicWord::constant(bit))
    }

    /// The characteristic sequence of `set` along `base`, normalized.
    ///
    /// A cyclic base yields a word of the base's period; a pullback that is
    /// all ones or all zeros becomes the constant word.
    pub fn pullback(base: &AtomSeqCode, set: &AtomSet) -> Self {
        match base {
            AtomSeqCode::Cyclic(c) => BinSeqCode::CycW(
                CyclicWord::new(c.iter().map(|a| set.contains(a)).collect())
                    .expect("cyclic codes are nonempty"),
            ),
            AtomSeqCode::PairMerge(z) => {
                let range = base.range_set();
                let set = set.intersection(&range);
                if set.is_empty() {
                    BinSeqCode::constant(false)
                } else if set.len() == range.len() {
                    BinSeqCode::constant(true)
                } else {
                    BinSeqCode::Pullback(Pullback {
                        base: z.clone(),
                        set,
                    })
                }
            }
        }
    }

    pub fn bit_at(&self, k: usize) -> bool {
        match self {
            BinSeqCode::CycW(w) => w.bit_at(k),
            BinSeqCode::Pullback(p) => p.bit_at(k),
        }
    }

    pub fn as_word(&self) -> Option<&CyclicWord> {
        match self {
            BinSeqCode::CycW(w) => Some(w),
            BinSeqCode::Pullback(_) => None,
        }
    }
}

/// Decides pointwise equality of two binary sequence codes.
///
/// Word against word and pullback against pullback are exact. A periodic word
/// against a non-constant pullback is refuted by searching `k < n_cmp`; if no
/// disagreement turns up the result is [`Error::IncomparableCodes`].
pub fn binseq_eq(u: &BinSeqCode, v: &BinSeqCode, n_cmp: usize) -> Result<bool> {
    match (u, v) {
        (BinSeqCode::CycW(a), BinSeqCode::CycW(b)) => Ok(a == b),
        (BinSeqCode::Pullback(p), BinSeqCode::Pullback(q)) => Ok(pullbacks_agree(p, q)),
        (BinSeqCode::CycW(w), BinSeqCode::Pullback(p))
        | (BinSeqCode::Pullback(p), BinSeqCode::CycW(w)) => {
            // A normalized pullback is never constant.
            if w.as_constant().is_some() {
                return Ok(false);
            }
            if (0..n_cmp).any(|k| w.bit_at(k) != p.bit_at(k)) {
                Ok(false)
            } else {
                Err(Error::IncomparableCodes {
                    left: u.to_string(),
                    right: v.to_string(),
                    bound: n_cmp as u64,
                })
            }
        }
    }
}

// Both bits at e(i, j) depend only on (i mod s, i mod s', j mod p, j mod p'),
// so the grid i < lcm(s, s'), j < lcm(p_i, p'_i) covers every case.
fn pullbacks_agree(p: &Pullback, q: &Pullback) -> bool {
    let rows = p.base.period().lcm(&q.base.period());
    (0..rows).all(|i| {
        let (r, r2) = (p.base.at(i), q.base.at(i));
        let cols = r.period().lcm(&r2.period());
        (0..cols).all(|j| p.bit_at(cantor_pair(i, j)) == q.bit_at(cantor_pair(i, j)))
    })
}

/// Injects atoms into periodic binary sequences: `a -> (1 c(a))^w` where `c`
/// is the prefix-free code of [`Atom::prefix_code`].
///
/// If two images were equal, both words would be powers of one primitive
/// root, making one codeword a prefix of the other.
pub fn atom_to_binseq(a: &Atom) -> BinSeqCode {
    let mut bits = vec![true];
    bits.extend(a.prefix_code());
    BinSeqCode::CycW(CyclicWord::new(bits).expect("nonempty"))
}

/// Left inverse of [`atom_to_binseq`] on word codes.
pub fn binseq_to_atom(b: &BinSeqCode) -> Result<Atom> {
    let w = b
        .as_word()
        .ok_or_else(|| Error::StructuralMismatch("expected a word code".into()))?;
    if !w.bit_at(0) {
        return Err(Error::StructuralMismatch(
            "missing leading marker bit".into(),
        ));
    }
    // the codeword is finite, so reading it off the periodic expansion
    // terminates
    let mut bits = (1..).map(|k| w.bit_at(k));
    Atom::decode_prefix_code(&mut bits)
}
