//! Equivalence relations on codes: the jump, products, `F`, `G`, `E` and
//! membership in `P`.
//!
//! Every quantifier over `N` in the definitions is replaced by a finite bound
//! that is sufficient for periodic codes; each bound is justified where it is
//! used.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use crate::codes::{
    binseq_eq, AtomCycle, AtomSeqCode, AtomSet, BinSeqCode, CyclicList, CyclicWord, YSeqCode,
};
use crate::error::{Error, Result};
use crate::invariants::e_invariant;

type Decide<T> = dyn Fn(&T, &T) -> Result<bool> + Send + Sync;
type Domain<T> = dyn Fn(&T) -> bool + Send + Sync;

/// A named, decidable equivalence relation on codes of type `T`, optionally
/// restricted to a domain.
pub struct EqRel<T> {
    name: String,
    decide: Arc<Decide<T>>,
    domain: Option<Arc<Domain<T>>>,
}

impl<T> Clone for EqRel<T> {
    fn clone(&self) -> Self {
        EqRel {
            name: self.name.clone(),
            decide: Arc::clone(&self.decide),
            domain: self.domain.clone(),
        }
    }
}

impl<T> fmt::Debug for EqRel<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EqRel").field("name", &self.name).finish()
    }
}

impl<T> EqRel<T> {
    pub fn new(
        name: impl Into<String>,
        decide: impl Fn(&T, &T) -> Result<bool> + Send + Sync + 'static,
    ) -> Self {
        EqRel {
            name: name.into(),
            decide: Arc::new(decide),
            domain: None,
        }
    }

    pub fn with_domain(mut self, domain: impl Fn(&T) -> bool + Send + Sync + 'static) -> Self {
        self.domain = Some(Arc::new(domain));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn in_domain(&self, a: &T) -> bool {
        self.domain.as_ref().is_none_or(|d| d(a))
    }

    pub fn relates(&self, a: &T, b: &T) -> Result<bool> {
        if !self.in_domain(a) || !self.in_domain(b) {
            return Err(Error::DomainViolation(format!(
                "argument outside the domain of {}",
                self.name
            )));
        }
        (self.decide)(a, b)
    }
}

/// The Friedman-Stanley jump `E+` on cyclic sequences of `E`-codes.
///
/// `x E+ y` iff every `x(n)` is `E`-related to some `y(m)` and vice versa.
/// Both sequences only take the values in their entry lists, so `n` and `m`
/// range over those lists.
pub fn jump<T: 'static>(e: EqRel<T>) -> EqRel<CyclicList<T>> {
    let name = format!("({})+", e.name);
    EqRel::new(name, move |x: &CyclicList<T>, y: &CyclicList<T>| {
        let covered = |from: &CyclicList<T>, to: &CyclicList<T>| -> Result<bool> {
            for a in from.iter() {
                let mut hit = false;
                for b in to.iter() {
                    if e.relates(a, b)? {
                        hit = true;
                        break;
                    }
                }
                if !hit {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        Ok(covered(x, y)? && covered(y, x)?)
    })
}

/// The pointwise product `E1 x E2`.
pub fn product<A: 'static, B: 'static>(e1: EqRel<A>, e2: EqRel<B>) -> EqRel<(A, B)> {
    let name = format!("{} x {}", e1.name, e2.name);
    EqRel::new(name, move |p: &(A, B), q: &(A, B)| {
        Ok(e1.relates(&p.0, &q.0)? && e2.relates(&p.1, &q.1)?)
    })
}

/// Equality of reals.
pub fn atom_equality() -> EqRel<crate::codes::Atom> {
    EqRel::new("=R", |a, b| Ok(crate::codes::atom_eq(a, b)))
}

/// Equality of binary sequences, with the mixed-comparison bound `n_cmp`.
pub fn binseq_equality(n_cmp: usize) -> EqRel<BinSeqCode> {
    EqRel::new("=2N", move |u, v| binseq_eq(u, v, n_cmp))
}

/// `x F x'` iff `x` and `x'` enumerate the same set.
pub fn rel_f(x: &AtomSeqCode, x2: &AtomSeqCode) -> bool {
    x.range_set() == x2.range_set()
}

pub fn f_relation() -> EqRel<AtomSeqCode> {
    EqRel::new("F", |x, y| Ok(rel_f(x, y)))
}

/// `F` restricted to cyclic codes.
pub fn f_cyclic_relation() -> EqRel<AtomCycle> {
    EqRel::new("F", |x: &AtomCycle, y: &AtomCycle| {
        let rx: AtomSet = x.iter().cloned().collect();
        let ry: AtomSet = y.iter().cloned().collect();
        Ok(rx == ry)
    })
}

/// `G`, the jump of equality on `2^N`.
pub fn g_relation(n_cmp: usize) -> EqRel<YSeqCode> {
    let mut g = jump(binseq_equality(n_cmp));
    g.name = "G".into();
    g
}

pub fn rel_g(y: &YSeqCode, y2: &YSeqCode, n_cmp: usize) -> Result<bool> {
    g_relation(n_cmp).relates(y, y2)
}

/// Which defining clause of `P` failed, with witness indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClauseViolation {
    /// `x(m)` lies in no carved set.
    Uncovered { m: usize },
    /// `A_k` is empty.
    EmptyCarve { k: usize },
    /// `x(l1) = x(l2)` but `y(k)(l1) != y(k)(l2)`.
    Inconsistent { k: usize, l1: usize, l2: usize },
}

impl ClauseViolation {
    pub fn clause(&self) -> u8 {
        match self {
            ClauseViolation::Uncovered { .. } => 1,
            ClauseViolation::EmptyCarve { .. } => 2,
            ClauseViolation::Inconsistent { .. } => 3,
        }
    }
}

impl fmt::Display for ClauseViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClauseViolation::Uncovered { m } => write!(f, "x({m}) is in no carved set"),
            ClauseViolation::EmptyCarve { k } => write!(f, "A_{k} is empty"),
            ClauseViolation::Inconsistent { k, l1, l2 } => {
                write!(f, "x({l1}) = x({l2}) but y({k}) differs there")
            }
        }
    }
}

/// A validated point of `P`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PPoint {
    x: AtomSeqCode,
    y: YSeqCode,
}

impl PPoint {
    pub fn x(&self) -> &AtomSeqCode {
        &self.x
    }

    pub fn y(&self) -> &YSeqCode {
        &self.y
    }
}

impl fmt::Display for PPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p {} {})", self.x, self.y)
    }
}

/// `{x(m) : b(m) = 1}` for an unvalidated pair.
///
/// Allowed combinations: a cyclic `x` with a word, where both coordinates
/// are periodic with period `lcm(|x|, |w|)`; a pair-merge `x` with a pullback
/// over the same base; a pair-merge `x` with a constant word.
pub fn carve_entry(x: &AtomSeqCode, entry: &BinSeqCode) -> Result<AtomSet> {
    match (x, entry) {
        (AtomSeqCode::Cyclic(c), BinSeqCode::CycW(w)) => {
            let l = c.period().lcm(&w.len());
            Ok((0..l)
                .filter(|&m| w.bit_at(m))
                .map(|m| c.at(m).clone())
                .collect())
        }
        (AtomSeqCode::PairMerge(z), BinSeqCode::Pullback(p)) if p.base() == z => {
            Ok(p.set().clone())
        }
        (AtomSeqCode::PairMerge(_), BinSeqCode::CycW(w)) if w.as_constant().is_some() => {
            Ok(if w.bit_at(0) {
                x.range_set()
            } else {
                AtomSet::new()
            })
        }
        _ => Err(Error::StructuralMismatch(format!(
            "cannot carve {x} with {entry}"
        ))),
    }
}

/// `A_n = {x(m) : y(n)(m) = 1}`; indices past the entry list wrap around.
pub fn carve(p: &PPoint, n: usize) -> AtomSet {
    carve_entry(&p.x, p.y.at(n)).expect("validated points are carvable")
}

/// Every carved set of `p`, in entry order.
pub fn carves(p: &PPoint) -> Vec<AtomSet> {
    (0..p.y.period()).map(|n| carve(p, n)).collect()
}

// Both sequences are periodic with period lcm(|x|, |w|), so a conflict
// anywhere shows up below it.
fn clause3_witness(x: &AtomCycle, w: &CyclicWord) -> Option<(usize, usize)> {
    let l = x.period().lcm(&w.len());
    let mut first = HashMap::new();
    for m in 0..l {
        let (l1, bit) = *first.entry(x.at(m)).or_insert((m, w.bit_at(m)));
        if bit != w.bit_at(m) {
            return Some((l1, m));
        }
    }
    None
}

/// Validates `(x, y)` against the three clauses defining `P`.
pub fn p_membership(x: AtomSeqCode, y: YSeqCode) -> Result<PPoint> {
    let mut union = AtomSet::new();
    for (k, entry) in y.iter().enumerate() {
        if let (AtomSeqCode::Cyclic(c), BinSeqCode::CycW(w)) = (&x, entry) {
            if let Some((l1, l2)) = clause3_witness(c, w) {
                return Err(Error::Clause(ClauseViolation::Inconsistent { k, l1, l2 }));
            }
        }
        // pullbacks over x itself satisfy clause (3) by construction
        let a = carve_entry(&x, entry)?;
        if a.is_empty() {
            return Err(Error::Clause(ClauseViolation::EmptyCarve { k }));
        }
        union = union.union(&a);
    }
    if let Some(m) = (0..x.saturation_bound()).find(|&m| !union.contains(x.value_at(m))) {
        return Err(Error::Clause(ClauseViolation::Uncovered { m }));
    }
    Ok(PPoint { x, y })
}

/// `(x, y) E (x', y')` iff both carve the same family of sets.
pub fn rel_e(p: &PPoint, q: &PPoint) -> bool {
    e_invariant(p) == e_invariant(q)
}

pub fn e_relation() -> EqRel<PPoint> {
    EqRel::new("E", |p, q| Ok(rel_e(p, q)))
}

/// `E` restricted to points whose first coordinate is `F`-related to `x0`.
pub fn restrict_to_fiber(x0: AtomSeqCode) -> EqRel<PPoint> {
    let name = format!("E|{x0}");
    let range = x0.range_set();
    EqRel::new(name, |p, q| Ok(rel_e(p, q))).with_domain(move |p: &PPoint| p.x.range_set() == range)
}
