//! Complete invariants for `F`, `E`, `G` and the second jump, and the
//! brute-force class counter.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::codes::{
    binseq_eq, Atom, AtomSeqCode, AtomSet, BinSeqCode, CyclicList, CyclicWord, YSeqCode, ZCode,
};
use crate::error::{Error, Result};
use crate::relations::{carves, p_membership, PPoint};

/// A finite set of atom sets, sorted by the [`AtomSet`] order and
/// duplicate-free.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SetOfAtomSets {
    elements: Vec<AtomSet>,
}

impl SetOfAtomSets {
    pub fn elements(&self) -> &[AtomSet] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, s: &AtomSet) -> bool {
        self.elements.binary_search(s).is_ok()
    }

    /// The union of all members.
    pub fn flatten(&self) -> AtomSet {
        self.elements
            .iter()
            .flat_map(|s| s.iter().cloned())
            .collect()
    }
}

impl FromIterator<AtomSet> for SetOfAtomSets {
    fn from_iter<I: IntoIterator<Item = AtomSet>>(iter: I) -> Self {
        let mut elements: Vec<AtomSet> = iter.into_iter().collect();
        elements.sort_unstable();
        elements.dedup();
        SetOfAtomSets { elements }
    }
}

impl fmt::Debug for SetOfAtomSets {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.elements).finish()
    }
}

impl fmt::Display for SetOfAtomSets {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(sets")?;
        for s in &self.elements {
            write!(f, " {s}")?;
        }
        f.write_str(")")
    }
}

pub fn f_invariant(x: &AtomSeqCode) -> AtomSet {
    x.range_set()
}

/// `{A_n : n in N}`; the entry list already lists every `A_n`.
pub fn e_invariant(p: &PPoint) -> SetOfAtomSets {
    carves(p).into_iter().collect()
}

/// `{ran z(i) : i in N}`.
pub fn fs2_invariant(z: &ZCode) -> SetOfAtomSets {
    z.iter().map(|row| row.iter().cloned().collect()).collect()
}

/// Canonical representative of a binary sequence class.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum GClass {
    Word(CyclicWord),
    /// Row pattern of a pullback, see [`crate::codes::Pullback::pattern`].
    Pattern(Vec<CyclicWord>),
}

/// The set of `=2N`-classes of the entries of `y`.
///
/// Word-against-pullback pairs inside `y` must be refutable within `n_cmp`;
/// otherwise the error is propagated.
pub fn g_invariant(y: &YSeqCode, n_cmp: usize) -> Result<BTreeSet<GClass>> {
    let entries = y.entries();
    for (i, u) in entries.iter().enumerate() {
        for v in &entries[i + 1..] {
            if matches!(
                (u, v),
                (BinSeqCode::CycW(_), BinSeqCode::Pullback(_))
                    | (BinSeqCode::Pullback(_), BinSeqCode::CycW(_))
            ) {
                binseq_eq(u, v, n_cmp)?;
            }
        }
    }
    Ok(entries
        .iter()
        .map(|b| match b {
            BinSeqCode::CycW(w) => GClass::Word(w.clone()),
            BinSeqCode::Pullback(p) => GClass::Pattern(p.pattern()),
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    F,
    E,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::F => "F",
            Level::E => "E",
        })
    }
}

/// Default cap on enumeration steps for [`count_classes`].
pub const DEFAULT_COUNT_CAP: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCount {
    pub level: Level,
    pub n: usize,
    pub max_period: usize,
    pub count: u64,
}

impl ClassCount {
    /// `2^n - 1` nonempty subsets for `F`; `2^(2^n - 1) - 1` nonempty
    /// families of nonempty subsets for `E`.
    pub fn closed_form(&self) -> u128 {
        let subsets = (1u128 << self.n) - 1;
        match self.level {
            Level::F => subsets,
            Level::E => (1u128 << subsets) - 1,
        }
    }

    pub fn matches(&self) -> bool {
        u128::from(self.count) == self.closed_form()
    }
}

/// The atom universe `{0, .., n - 1}` used for counting.
pub fn counting_universe(n: usize) -> Vec<Atom> {
    (0..n as i64).map(Atom::int).collect()
}

/// Every cyclic code over `universe` with period at most `max_period`.
pub fn cyclic_codes(universe: &[Atom], max_period: usize) -> Vec<AtomSeqCode> {
    let n = universe.len();
    let mut out = Vec::new();
    for len in 1..=max_period {
        let mut digits = vec![0usize; len];
        loop {
            let entries = digits.iter().map(|&d| universe[d].clone()).collect();
            out.push(AtomSeqCode::Cyclic(
                CyclicList::new(entries).expect("len >= 1"),
            ));
            // odometer increment
            let mut pos = len;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < n {
                    break;
                }
                digits[pos] = 0;
            }
            if digits.iter().all(|&d| d == 0) {
                break;
            }
        }
    }
    out
}

/// Every distinct periodic binary sequence with period at most `max_period`.
pub fn cyclic_words(max_period: usize) -> Vec<CyclicWord> {
    let words: BTreeSet<CyclicWord> = (1..=max_period)
        .flat_map(|len| {
            (0u64..1 << len).map(move |mask| {
                CyclicWord::new((0..len).map(|k| mask >> k & 1 == 1).collect()).expect("len >= 1")
            })
        })
        .collect();
    words.into_iter().collect()
}

fn count_steps(level: Level, n: usize, max_period: usize) -> u64 {
    let nn = n as u64;
    let xs = (1..=max_period as u32).fold(0u64, |acc, l| acc.saturating_add(nn.saturating_pow(l)));
    match level {
        Level::F => xs,
        Level::E => {
            let words = 1u64.checked_shl(max_period as u32 + 1).unwrap_or(u64::MAX);
            let families = 1u64
                .checked_shl((1u32 << n.min(31)) - 1)
                .unwrap_or(u64::MAX);
            xs.saturating_mul(words.saturating_add(families))
        }
    }
}

/// Counts `F`- or `E`-classes among codes over an `n`-atom universe with
/// periods at most `max_period`.
///
/// For `E`, a `y` list is determined up to `E` by the set of its carved
/// sets, so lists are enumerated as sets of words, and words carving the same
/// set on a given `x` are interchangeable. Every candidate is still validated
/// as a point of `P` before its invariant is recorded.
pub fn count_classes(level: Level, n: usize, max_period: usize) -> Result<ClassCount> {
    count_classes_capped(level, n, max_period, DEFAULT_COUNT_CAP)
}

pub fn count_classes_capped(
    level: Level,
    n: usize,
    max_period: usize,
    cap: u64,
) -> Result<ClassCount> {
    if n == 0 {
        return Err(Error::Config("atom universe must be nonempty".into()));
    }
    if max_period < n {
        return Err(Error::Config(format!(
            "max period {max_period} is below universe size {n}"
        )));
    }
    let needed = count_steps(level, n, max_period);
    if needed > cap {
        return Err(Error::ResourceLimit { needed, cap });
    }
    let universe = counting_universe(n);
    let xs = cyclic_codes(&universe, max_period);
    let count = match level {
        Level::F => xs.iter().map(f_invariant).collect::<BTreeSet<_>>().len(),
        Level::E => {
            let words = cyclic_words(max_period);
            xs.par_iter()
                .map(|x| e_classes_over(x, &words))
                .reduce(BTreeSet::new, |mut a, b| {
                    a.extend(b);
                    a
                })
                .len()
        }
    };
    Ok(ClassCount {
        level,
        n,
        max_period,
        count: count as u64,
    })
}

fn e_classes_over(x: &AtomSeqCode, words: &[CyclicWord]) -> BTreeSet<SetOfAtomSets> {
    // One representative word per achievable carve. Pairing a word with the
    // all-ones word isolates clauses (2) and (3) for that word.
    let ones = BinSeqCode::constant(true);
    let mut reps: Vec<(AtomSet, BinSeqCode)> = Vec::new();
    for w in words {
        let entry = BinSeqCode::word(w.clone());
        let y = CyclicList::new(vec![entry.clone(), ones.clone()]).expect("nonempty");
        if let Ok(p) = p_membership(x.clone(), y) {
            let a = crate::relations::carve(&p, 0);
            if !reps.iter().any(|(b, _)| *b == a) {
                reps.push((a, entry));
            }
        }
    }
    let mut out = BTreeSet::new();
    for mask in 1u64..1 << reps.len() {
        let entries = reps
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, (_, e))| e.clone())
            .collect();
        let y = CyclicList::new(entries).expect("mask is nonzero");
        if let Ok(p) = p_membership(x.clone(), y) {
            out.insert(e_invariant(&p));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::parse_yseq;

    #[test]
    fn display_point_invariant() {
        let p = crate::codes::parse_ppoint(
            "(p (cyc (rat 1 1) (rat 2 1) (rat 3 1) (rat 4 1)) (ylist (cw 0011) (cw 1110) (cw 0101)))",
        )
        .unwrap();
        let inv = e_invariant(&p);
        let s = |xs: &[i64]| xs.iter().map(|&n| Atom::int(n)).collect::<AtomSet>();
        assert_eq!(
            inv,
            [s(&[3, 4]), s(&[1, 2, 3]), s(&[2, 4])]
                .into_iter()
                .collect()
        );
        assert_eq!(inv.flatten(), p.x().range_set());
    }

    #[test]
    fn g_invariants() {
        let y = parse_yseq("(ylist (cw 1010) (cw 10))").unwrap();
        assert_eq!(
            g_invariant(&y, 64).unwrap(),
            [GClass::Word(CyclicWord::from_bits("10").unwrap())].into()
        );
        let y = parse_yseq("(ylist (cw 10) (cw 01))").unwrap();
        assert_eq!(g_invariant(&y, 64).unwrap().len(), 2);
    }

    #[test]
    fn enumeration_sizes() {
        let u = counting_universe(2);
        assert_eq!(cyclic_codes(&u, 3).len(), 2 + 4 + 8);
        // primitive words: 2, 2, 6, 12
        assert_eq!(cyclic_words(4).len(), 22);
    }

    #[test]
    fn small_counts() {
        for (level, n, expected) in [
            (Level::F, 1, 1),
            (Level::F, 2, 3),
            (Level::E, 1, 1),
            (Level::E, 2, 7),
        ] {
            let c = count_classes(level, n, n).unwrap();
            assert_eq!(c.count, expected);
            assert!(c.matches());
        }
    }

    #[test]
    fn count_preconditions() {
        assert!(matches!(
            count_classes(Level::F, 0, 3),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            count_classes(Level::E, 3, 2),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            count_classes_capped(Level::E, 3, 3, 10),
            Err(Error::ResourceLimit { cap: 10, .. })
        ));
    }
}
