use std::cmp::Ordering;
use std::fmt;

use super::atom::Atom;
use super::pairing::{cantor_pair, cantor_unpair};
use crate::error::{Error, Result};

/// A nonempty finite list denoting the sequence `s(n) = entries[n mod len]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CyclicList<T> {
    entries: Vec<T>,
}

impl<T> CyclicList<T> {
    pub fn new(entries: Vec<T>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Empty("cyclic list"));
        }
        Ok(CyclicList { entries })
    }

    pub fn singleton(entry: T) -> Self {
        CyclicList {
            entries: vec![entry],
        }
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<T> {
        self.entries
    }

    pub fn period(&self) -> usize {
        self.entries.len()
    }

    pub fn at(&self, n: usize) -> &T {
        &self.entries[n % self.entries.len()]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.entries.iter()
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> CyclicList<U> {
        CyclicList {
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map<U, E>(&self, f: impl FnMut(&T) -> Result<U, E>) -> Result<CyclicList<U>, E> {
        Ok(CyclicList {
            entries: self.entries.iter().map(f).collect::<Result<_, E>>()?,
        })
    }
}

/// A code for a point of `R^N` with a finite, explicit period.
pub type AtomCycle = CyclicList<Atom>;

/// A code for a point of `(R^N)^N`: a cyclic list of cyclic atom sequences.
pub type ZCode = CyclicList<AtomCycle>;

/// A finite set of atoms, kept sorted and duplicate-free.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct AtomSet {
    elements: Vec<Atom>,
}

impl AtomSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn elements(&self) -> &[Atom] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, a: &Atom) -> bool {
        self.elements.binary_search(a).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Atom> {
        self.elements.iter()
    }

    pub fn intersection(&self, other: &AtomSet) -> AtomSet {
        self.iter().filter(|a| other.contains(a)).cloned().collect()
    }

    pub fn union(&self, other: &AtomSet) -> AtomSet {
        self.iter().chain(other.iter()).cloned().collect()
    }

    pub fn is_subset(&self, other: &AtomSet) -> bool {
        self.iter().all(|a| other.contains(a))
    }
}

impl FromIterator<Atom> for AtomSet {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> Self {
        let mut elements: Vec<Atom> = iter.into_iter().collect();
        elements.sort_unstable();
        elements.dedup();
        AtomSet { elements }
    }
}

/// Cardinality first, then lexicographic on the sorted elements.
impl Ord for AtomSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.elements.cmp(&other.elements))
    }
}

impl PartialOrd for AtomSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(set")?;
        for a in &self.elements {
            write!(f, " {a}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.elements).finish()
    }
}

/// A code for a point `x` of `R^N`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum AtomSeqCode {
    /// `x(n) = entries[n mod len]`.
    Cyclic(AtomCycle),
    /// `x(e(i, j)) = z(i)(j)` under the Cantor pairing `e`.
    PairMerge(ZCode),
}

impl AtomSeqCode {
    pub fn cyclic(entries: Vec<Atom>) -> Result<Self> {
        CyclicList::new(entries).map(AtomSeqCode::Cyclic)
    }

    pub fn value_at(&self, n: usize) -> &Atom {
        match self {
            AtomSeqCode::Cyclic(c) => c.at(n),
            AtomSeqCode::PairMerge(z) => {
                let (i, j) = cantor_unpair(n);
                z.at(i).at(j)
            }
        }
    }

    /// An index `B` with `{x(n) : n in N} = {x(n) : n < B}`.
    ///
    /// For `PairMerge`, every `x(e(i, j))` equals `x(e(i mod s, j mod p_i))`,
    /// so the largest pairing over the finite grid bounds the search.
    pub fn saturation_bound(&self) -> usize {
        match self {
            AtomSeqCode::Cyclic(c) => c.period(),
            AtomSeqCode::PairMerge(z) => {
                1 + z
                    .iter()
                    .enumerate()
                    .flat_map(|(i, row)| (0..row.period()).map(move |j| cantor_pair(i, j)))
                    .max()
                    .expect("zcode rows are nonempty")
            }
        }
    }

    /// The set enumerated by `x`.
    pub fn range_set(&self) -> AtomSet {
        match self {
            AtomSeqCode::Cyclic(c) => c.iter().cloned().collect(),
            AtomSeqCode::PairMerge(z) => z.iter().flat_map(|row| row.iter().cloned()).collect(),
        }
    }

    pub fn as_cyclic(&self) -> Option<&AtomCycle> {
        match self {
            AtomSeqCode::Cyclic(c) => Some(c),
            AtomSeqCode::PairMerge(_) => None,
        }
    }
}
