//! Executable reductions between the relations, and a checker for the
//! defining property `a E b <=> f(a) F f(b)`.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::codes::{
    iota, Atom, AtomCycle, AtomSeqCode, AtomSet, BinSeqCode, CyclicList, CyclicWord, YSeqCode,
    ZCode,
};
use crate::error::{Error, Result};
use crate::relations::{
    atom_equality, e_relation, f_cyclic_relation, f_relation, g_relation, jump, p_membership,
    product, restrict_to_fiber, EqRel, PPoint,
};

/// One-line text for a code, used in violation reports.
pub trait Render {
    fn render(&self) -> String;
}

macro_rules! render_via_display {
    ($($t:ty),*) => {
        $(impl Render for $t {
            fn render(&self) -> String {
                self.to_string()
            }
        })*
    };
}

render_via_display!(
    Atom,
    AtomSeqCode,
    AtomCycle,
    ZCode,
    YSeqCode,
    BinSeqCode,
    PPoint
);

impl<A: Render, B: Render> Render for (A, B) {
    fn render(&self) -> String {
        format!("<{}, {}>", self.0.render(), self.1.render())
    }
}

type MapFn<S, T> = dyn Fn(&S) -> Result<T> + Send + Sync;

/// A map claimed to reduce `source` to `target`. The claim is checked, not
/// assumed; see [`check_reduction`].
pub struct ReductionRecord<S, T> {
    name: String,
    source: EqRel<S>,
    target: EqRel<T>,
    map: Arc<MapFn<S, T>>,
}

impl<S, T> Clone for ReductionRecord<S, T> {
    fn clone(&self) -> Self {
        ReductionRecord {
            name: self.name.clone(),
            source: self.source.clone(),
            target: self.target.clone(),
            map: Arc::clone(&self.map),
        }
    }
}

impl<S, T> fmt::Debug for ReductionRecord<S, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ReductionRecord({}: {} -> {})",
            self.name,
            self.source.name(),
            self.target.name()
        )
    }
}

impl<S: 'static, T: 'static> ReductionRecord<S, T> {
    pub fn new(
        name: impl Into<String>,
        source: EqRel<S>,
        target: EqRel<T>,
        map: impl Fn(&S) -> Result<T> + Send + Sync + 'static,
    ) -> Self {
        ReductionRecord {
            name: name.into(),
            source,
            target,
            map: Arc::new(map),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &EqRel<S> {
        &self.source
    }

    pub fn target(&self) -> &EqRel<T> {
        &self.target
    }

    pub fn apply(&self, s: &S) -> Result<T> {
        (self.map)(s)
    }

    /// Replaces the map, keeping name and relations. Used for mutation tests.
    pub fn with_map(self, map: impl Fn(&S) -> Result<T> + Send + Sync + 'static) -> Self {
        ReductionRecord {
            map: Arc::new(map),
            ..self
        }
    }
}

/// The identity reduction of `e` to itself.
pub fn identity<T: Clone + 'static>(e: EqRel<T>) -> ReductionRecord<T, T> {
    let name = format!("id[{}]", e.name());
    ReductionRecord::new(name, e.clone(), e, |t: &T| Ok(t.clone()))
}

/// `r2 . r1`, defined when `r1` lands in the relation `r2` starts from.
pub fn compose<S: 'static, T: 'static, U: 'static>(
    r1: ReductionRecord<S, T>,
    r2: ReductionRecord<T, U>,
) -> Result<ReductionRecord<S, U>> {
    if r1.target.name() != r2.source.name() {
        return Err(Error::TypeMismatch {
            expected: r2.source.name().to_string(),
            found: r1.target.name().to_string(),
        });
    }
    let name = format!("{} . {}", r2.name, r1.name);
    let (m1, m2) = (r1.map, r2.map);
    Ok(ReductionRecord::new(
        name,
        r1.source,
        r2.target,
        move |s: &S| m2(&m1(s)?),
    ))
}

/// The coordinatewise product of two reductions.
pub fn product_record<A: 'static, B: 'static, C: 'static, D: 'static>(
    r1: ReductionRecord<A, C>,
    r2: ReductionRecord<B, D>,
) -> ReductionRecord<(A, B), (C, D)> {
    let name = format!("{} x {}", r1.name, r2.name);
    let (m1, m2) = (r1.map, r2.map);
    ReductionRecord::new(
        name,
        product(r1.source, r2.source),
        product(r1.target, r2.target),
        move |(a, b): &(A, B)| Ok((m1(a)?, m2(b)?)),
    )
}

/// The sorted cyclic enumeration of a nonempty set: a canonical member of
/// its `F`-class.
pub fn canonical_basepoint(set: &AtomSet) -> Result<AtomCycle> {
    CyclicList::new(set.elements().to_vec())
}

/// `x -> canonical_basepoint(ran x)`, reducing `F` on all sequence codes to
/// `F` on cyclic ones.
pub fn canonical_cyclic_record() -> ReductionRecord<AtomSeqCode, AtomCycle> {
    ReductionRecord::new(
        "canonical",
        f_relation(),
        f_cyclic_relation(),
        |x: &AtomSeqCode| canonical_basepoint(&x.range_set()),
    )
}

/// `f(x, y)(n)(k) = y(n)(k')` for any `k'` with `x(k') = x0(k)`.
///
/// Clause (3) makes the bit independent of the chosen `k'`, so the first
/// witness below the saturation bound of `x` is used.
pub fn fiber_map(x0: &AtomCycle, p: &PPoint) -> Result<YSeqCode> {
    let x = p.x();
    let bound = x.saturation_bound();
    let witnesses = x0
        .iter()
        .enumerate()
        .map(|(k, target)| {
            (0..bound)
                .find(|&k2| x.value_at(k2) == target)
                .ok_or(Error::NoWitness { k })
        })
        .collect::<Result<Vec<_>>>()?;
    p.y().try_map(|entry| {
        let bits = witnesses.iter().map(|&k2| entry.bit_at(k2)).collect();
        Ok(BinSeqCode::word(CyclicWord::new(bits)?))
    })
}

/// Reduction of `E` on the fiber over `x0` to `G`.
pub fn fiber_reduction(x0: AtomCycle, n_cmp: usize) -> ReductionRecord<PPoint, YSeqCode> {
    let source = restrict_to_fiber(AtomSeqCode::Cyclic(x0.clone()));
    let domain = source.clone();
    ReductionRecord::new(
        format!("fiber[{x0}]"),
        source,
        g_relation(n_cmp),
        move |p: &PPoint| {
            if !domain.in_domain(p) {
                return Err(Error::DomainViolation(format!(
                    "{} is not F-related to {x0}",
                    p.x()
                )));
            }
            fiber_map(&x0, p)
        },
    )
}

/// `z -> (x, y)` with `x(e(i, j)) = z(i)(j)` and `y(n)` carving `ran z(n)`
/// out of `x`.
pub fn embed_fs2(z: &ZCode) -> Result<PPoint> {
    let x = AtomSeqCode::PairMerge(z.clone());
    let y = z.map(|row| {
        let range: AtomSet = row.iter().cloned().collect();
        BinSeqCode::pullback(&x, &range)
    });
    p_membership(x, y)
}

pub fn embed_fs2_record() -> ReductionRecord<ZCode, PPoint> {
    ReductionRecord::new(
        "embed-fs2",
        jump(jump(atom_equality())),
        e_relation(),
        embed_fs2,
    )
}

/// `out(2n) = iota(x(n), 0)`, `out(2n + 1) = iota(y(n), 1)`, with period
/// `2 lcm(|x|, |y|)`.
pub fn pair_interleave(x: &AtomCycle, y: &AtomCycle) -> AtomCycle {
    let l = x.period().lcm(&y.period());
    let entries = (0..l)
        .flat_map(|n| [iota(x.at(n).clone(), false), iota(y.at(n).clone(), true)])
        .collect();
    CyclicList::new(entries).expect("lcm >= 1")
}

pub fn interleave_record() -> ReductionRecord<(AtomCycle, AtomCycle), AtomCycle> {
    ReductionRecord::new(
        "interleave",
        product(f_cyclic_relation(), f_cyclic_relation()),
        f_cyclic_relation(),
        |(x, y): &(AtomCycle, AtomCycle)| Ok(pair_interleave(x, y)),
    )
}

/// `y -> (WordAtom(y(0)), WordAtom(y(1)), ...)`, defined when every entry is
/// a periodic word.
pub fn g_to_f(y: &YSeqCode) -> Result<AtomCycle> {
    y.try_map(|entry| match entry {
        BinSeqCode::CycW(w) => Ok(Atom::word(w.clone())),
        BinSeqCode::Pullback(_) => Err(Error::DomainViolation(format!(
            "{entry} is not a periodic word"
        ))),
    })
}

pub fn g_to_f_record(n_cmp: usize) -> ReductionRecord<YSeqCode, AtomCycle> {
    ReductionRecord::new("g-to-f", g_relation(n_cmp), f_cyclic_relation(), g_to_f)
}

/// `a -> (a, a, a, ...)`, reducing `e` to its jump.
pub fn const_jump_embedding<T: Clone + 'static>(e: EqRel<T>) -> ReductionRecord<T, CyclicList<T>> {
    let name = format!("const[{}]", e.name());
    ReductionRecord::new(name, e.clone(), jump(e), |a: &T| {
        Ok(CyclicList::singleton(a.clone()))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

/// A checked pair whose verdicts disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub index: usize,
    pub left: String,
    pub right: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub checked: usize,
    pub violations: Vec<Violation>,
    pub status: Status,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(name: impl Into<String>, checked: usize, violations: Vec<Violation>) -> Self {
        let status = if violations.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        VerificationReport {
            name: name.into(),
            checked,
            violations,
            status,
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// Adds a violation that is not tied to a checked pair.
    pub fn fail_with(mut self, violation: Violation) -> Self {
        self.violations.push(violation);
        self.status = Status::Fail;
        self
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "[{}] {}: checked={} violations={}\n",
            self.status,
            self.name,
            self.checked,
            self.violations.len()
        );
        for note in &self.notes {
            out.push_str(&format!("  note: {note}\n"));
        }
        for v in &self.violations {
            out.push_str(&format!(
                "  violation #{}: source={} target={}\n    left:  {}\n    right: {}\n",
                v.index, v.source, v.target, v.left, v.right
            ));
        }
        out
    }
}

fn verdict(r: &Result<bool>) -> String {
    match r {
        Ok(true) => "related".into(),
        Ok(false) => "unrelated".into(),
        Err(e) => format!("error({e})"),
    }
}

/// Checks one pair; `None` when both verdicts are defined and agree.
pub fn check_pair<S: Render + 'static, T: 'static>(
    r: &ReductionRecord<S, T>,
    index: usize,
    a: &S,
    b: &S,
) -> Option<Violation> {
    let source = r.source.relates(a, b);
    let target = r
        .apply(a)
        .and_then(|fa| r.apply(b).map(|fb| (fa, fb)))
        .and_then(|(fa, fb)| r.target.relates(&fa, &fb));
    match (&source, &target) {
        (Ok(s), Ok(t)) if s == t => None,
        _ => Some(Violation {
            index,
            left: a.render(),
            right: b.render(),
            source: verdict(&source),
            target: verdict(&target),
        }),
    }
}

/// Verifies `a E b <=> f(a) F f(b)` on every pair. Pairs are evaluated in
/// parallel; violations are reported in input order.
pub fn check_reduction<S, T>(r: &ReductionRecord<S, T>, pairs: &[(S, S)]) -> VerificationReport
where
    S: Render + Sync + 'static,
    T: 'static,
{
    let violations: Vec<Violation> = pairs
        .par_iter()
        .enumerate()
        .filter_map(|(i, (a, b))| check_pair(r, i, a, b))
        .collect();
    VerificationReport::new(r.name.clone(), pairs.len(), violations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{parse_ppoint, parse_yseq, parse_zcode, DEFAULT_N_CMP};
    use crate::invariants::{e_invariant, fs2_invariant};
    use crate::relations::{binseq_equality, carve, rel_e};

    fn a(n: i64) -> Atom {
        Atom::int(n)
    }

    fn cyc(xs: &[i64]) -> AtomCycle {
        CyclicList::new(xs.iter().map(|&n| a(n)).collect()).unwrap()
    }

    #[test]
    fn fiber_map_hand_example() {
        // r1 = 1, r2 = 2
        let p = parse_ppoint("(p (cyc (rat 2 1) (rat 1 1)) (ylist (cw 10) (cw 1)))").unwrap();
        let out = fiber_map(&cyc(&[1, 2]), &p).unwrap();
        assert_eq!(out, parse_yseq("(ylist (cw 01) (cw 1))").unwrap());
        assert_eq!(carve(&p, 0), [a(2)].into_iter().collect());
    }

    #[test]
    fn fiber_map_is_identity_at_basepoint() {
        let p = parse_ppoint(
            "(p (cyc (rat 1 1) (rat 2 1) (rat 1 1)) (ylist (cw 101) (cw 010) (cw 1)))",
        )
        .unwrap();
        let x0 = p.x().as_cyclic().unwrap().clone();
        let out = fiber_map(&x0, &p).unwrap();
        for (u, v) in out.iter().zip(p.y().iter()) {
            assert!(crate::codes::binseq_eq(u, v, DEFAULT_N_CMP).unwrap());
        }
    }

    #[test]
    fn fiber_reduction_domain_and_witness() {
        let p = parse_ppoint("(p (cyc (rat 1 1)) (ylist (cw 1)))").unwrap();
        assert_eq!(fiber_map(&cyc(&[1, 2]), &p), Err(Error::NoWitness { k: 1 }));
        let r = fiber_reduction(cyc(&[1, 2]), DEFAULT_N_CMP);
        assert!(matches!(r.apply(&p), Err(Error::DomainViolation(_))));
    }

    #[test]
    fn fs2_embedding() {
        let z = parse_zcode("(zlist (cyc (rat 1 1)) (cyc (rat 1 1) (rat 2 1)))").unwrap();
        let p = embed_fs2(&z).unwrap();
        assert_eq!(e_invariant(&p), fs2_invariant(&z));
        let z2 = parse_zcode("(zlist (cyc (rat 2 1) (rat 1 1)) (cyc (rat 1 1)) (cyc (rat 1 1)))")
            .unwrap();
        assert!(rel_e(&p, &embed_fs2(&z2).unwrap()));
        let za = parse_zcode("(zlist (cyc (rat 1 1)))").unwrap();
        let zb = parse_zcode("(zlist (cyc (rat 2 1)))").unwrap();
        assert!(!rel_e(&embed_fs2(&za).unwrap(), &embed_fs2(&zb).unwrap()));
    }

    #[test]
    fn interleave_examples() {
        let out = pair_interleave(&cyc(&[1]), &cyc(&[2]));
        assert_eq!(out.entries(), &[iota(a(1), false), iota(a(2), true)]);
        let out = pair_interleave(&cyc(&[1]), &cyc(&[2, 3]));
        assert_eq!(
            out.entries(),
            &[
                iota(a(1), false),
                iota(a(2), true),
                iota(a(1), false),
                iota(a(3), true)
            ]
        );
    }

    #[test]
    fn g_to_f_examples() {
        let y = parse_yseq("(ylist (cw 1010) (cw 10))").unwrap();
        let w = Atom::word(CyclicWord::from_bits("10").unwrap());
        assert_eq!(g_to_f(&y).unwrap().entries(), &[w.clone(), w]);
        let r = g_to_f_record(DEFAULT_N_CMP);
        let one = parse_yseq("(ylist (cw 1))").unwrap();
        let zero = parse_yseq("(ylist (cw 0))").unwrap();
        assert!(check_pair(&r, 0, &one, &zero).is_none());
        assert!(!r
            .target()
            .relates(&r.apply(&one).unwrap(), &r.apply(&zero).unwrap())
            .unwrap());
    }

    #[test]
    fn const_jump() {
        let r = const_jump_embedding(atom_equality());
        assert_eq!(r.apply(&a(1)).unwrap(), cyc(&[1]));
        let pairs = vec![(a(1), a(1)), (a(1), a(2))];
        assert!(check_reduction(&r, &pairs).passed());
        assert_eq!(r.target().name(), "(=R)+");
    }

    #[test]
    fn composition() {
        let r = compose(embed_fs2_record(), identity(e_relation())).unwrap();
        let z = parse_zcode("(zlist (cyc (rat 1 1)) (cyc (rat 2 1)))").unwrap();
        assert_eq!(r.apply(&z).unwrap(), embed_fs2(&z).unwrap());
        assert_eq!(r.source().name(), "((=R)+)+");
        let fiber = crate::relations::restrict_to_fiber(AtomSeqCode::Cyclic(cyc(&[1])));
        let bad = compose(embed_fs2_record(), identity(fiber));
        assert!(matches!(bad, Err(Error::TypeMismatch { .. })));
        let chain = compose(const_jump_embedding(binseq_equality(8)), g_to_f_record(8));
        assert!(matches!(chain, Err(Error::TypeMismatch { .. })));
    }

    #[test]
    fn mutation_is_caught() {
        let r = g_to_f_record(DEFAULT_N_CMP).with_map(|y: &YSeqCode| {
            let mut out = g_to_f(y)?.into_entries();
            // flip the first bit of the first word
            if let Atom::Word(w) = &out[0] {
                let mut bits = w.bits().to_vec();
                bits[0] = !bits[0];
                out[0] = Atom::word(CyclicWord::new(bits)?);
            }
            CyclicList::new(out)
        });
        let y1 = parse_yseq("(ylist (cw 10) (cw 1))").unwrap();
        let y2 = parse_yseq("(ylist (cw 1) (cw 10) (cw 1010))").unwrap();
        let report = check_reduction(&r, &[(y1, y2)]);
        assert_eq!(report.violations.len(), 1);
        assert!(!report.passed());
    }

    #[test]
    fn empty_check_passes() {
        let r = interleave_record();
        let report = check_reduction(&r, &[]);
        assert!(report.passed());
        assert_eq!(report.checked, 0);
    }
}
