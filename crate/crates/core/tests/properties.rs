//! Property tests for the invariants each module promises.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use proptest::prelude::*;

use borelcode::codes::{
    atom_to_binseq, binseq_eq, binseq_to_atom, cantor_pair, Atom, AtomCycle, AtomSeqCode, AtomSet,
    BinSeqCode, CyclicList, CyclicWord, YSeqCode, ZCode,
};
use borelcode::invariants::{
    counting_universe, cyclic_codes, e_invariant, f_invariant, fs2_invariant, g_invariant,
    SetOfAtomSets,
};
use borelcode::reductions::{fiber_map, pair_interleave};
use borelcode::relations::{
    atom_equality, carve, carve_entry, jump, p_membership, rel_e, rel_f, rel_g, EqRel, PPoint,
};
use borelcode::Error;

const N_CMP: usize = 4096;

fn small_atom() -> impl Strategy<Value = Atom> {
    prop_oneof![
        4 => (0i64..4).prop_map(Atom::int),
        1 => (any::<bool>(), 0i64..2).prop_map(|(b, n)| Atom::tag(b, Atom::int(n))),
    ]
}

fn any_atom() -> impl Strategy<Value = Atom> {
    let leaf = prop_oneof![
        ((-50i64..50), (1i64..20)).prop_map(|(n, d)| Atom::rational(n, d).unwrap()),
        word().prop_map(Atom::word),
    ];
    leaf.prop_recursive(3, 8, 1, |inner| {
        (any::<bool>(), inner).prop_map(|(b, a)| Atom::tag(b, a))
    })
}

fn word() -> impl Strategy<Value = CyclicWord> {
    prop::collection::vec(any::<bool>(), 1..=8).prop_map(|b| CyclicWord::new(b).unwrap())
}

fn cycle(max_len: usize) -> impl Strategy<Value = AtomCycle> {
    prop::collection::vec(small_atom(), 1..=max_len).prop_map(|v| CyclicList::new(v).unwrap())
}

fn zcode() -> impl Strategy<Value = ZCode> {
    prop::collection::vec(cycle(4), 1..=4).prop_map(|v| CyclicList::new(v).unwrap())
}

fn aseq() -> impl Strategy<Value = AtomSeqCode> {
    prop_oneof![
        cycle(6).prop_map(AtomSeqCode::Cyclic),
        zcode().prop_map(AtomSeqCode::PairMerge),
    ]
}

fn atom_set() -> impl Strategy<Value = AtomSet> {
    prop::collection::vec(small_atom(), 0..5).prop_map(|v| v.into_iter().collect())
}

fn pullback() -> impl Strategy<Value = BinSeqCode> {
    (zcode(), atom_set()).prop_map(|(z, s)| BinSeqCode::pullback(&AtomSeqCode::PairMerge(z), &s))
}

/// Pullbacks that did not normalize to a word.
fn strict_pullback() -> impl Strategy<Value = BinSeqCode> {
    pullback().prop_filter("normalized to a word", |b| {
        matches!(b, BinSeqCode::Pullback(_))
    })
}

/// A valid point: a cyclic `x` and words drawn from subsets of its range.
fn cyclic_point() -> impl Strategy<Value = PPoint> {
    (
        cycle(5),
        prop::collection::vec(prop::collection::vec(any::<bool>(), 4), 1..=4),
    )
        .prop_filter_map("not a point of P", |(x, masks)| {
            let range: Vec<Atom> = AtomSet::from_iter(x.iter().cloned()).elements().to_vec();
            let entries: Vec<BinSeqCode> = masks
                .iter()
                .map(|m| {
                    let set: AtomSet = range
                        .iter()
                        .zip(m.iter().cycle())
                        .filter(|(_, &b)| b)
                        .map(|(a, _)| a.clone())
                        .collect();
                    BinSeqCode::pullback(&AtomSeqCode::Cyclic(x.clone()), &set)
                })
                .collect();
            p_membership(AtomSeqCode::Cyclic(x), CyclicList::new(entries).ok()?).ok()
        })
}

/// Carved sets read off by scanning bits, bypassing `carve`.
fn brute_carves(p: &PPoint) -> Vec<AtomSet> {
    let bound = p.x().saturation_bound() * 16;
    p.y()
        .iter()
        .map(|b| {
            (0..bound)
                .filter(|&m| b.bit_at(m))
                .map(|m| p.x().value_at(m).clone())
                .collect()
        })
        .collect()
}

/// `forall n exists m (A_n = A'_m)` and back.
fn brute_e(p: &PPoint, q: &PPoint) -> bool {
    let (a, b) = (brute_carves(p), brute_carves(q));
    a.iter().all(|s| b.contains(s)) && b.iter().all(|s| a.contains(s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn values_past_the_bound_stay_in_range(x in aseq()) {
        let range = x.range_set();
        let bound = x.saturation_bound();
        for n in 0..10 * bound {
            prop_assert!(range.contains(x.value_at(n)));
        }
    }

    #[test]
    fn atom_order_is_strict_total(a in any_atom(), b in any_atom(), c in any_atom()) {
        let ab = a.cmp(&b);
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        prop_assert_eq!(ab.reverse(), b.cmp(&a));
        if a < b && b < c {
            prop_assert!(a < c);
        }
    }

    #[test]
    fn atom_to_binseq_is_injective(a in any_atom(), b in any_atom()) {
        let (u, v) = (atom_to_binseq(&a), atom_to_binseq(&b));
        prop_assert_eq!(binseq_eq(&u, &v, N_CMP).unwrap(), a == b);
        prop_assert_eq!(binseq_to_atom(&u).unwrap(), a);
    }

    #[test]
    fn word_equality_is_an_equivalence(u in word(), v in word(), w in word()) {
        let (u, v, w) = (BinSeqCode::word(u), BinSeqCode::word(v), BinSeqCode::word(w));
        check_equivalence(&u, &v, &w)?;
    }

    #[test]
    fn pullback_equality_is_an_equivalence(
        u in strict_pullback(),
        v in strict_pullback(),
        w in strict_pullback(),
    ) {
        check_equivalence(&u, &v, &w)?;
    }

    #[test]
    fn pullback_equality_matches_canonical_pattern(u in pullback(), v in pullback()) {
        if let (BinSeqCode::Pullback(p), BinSeqCode::Pullback(q)) = (&u, &v) {
            prop_assert_eq!(binseq_eq(&u, &v, N_CMP).unwrap(), p.pattern() == q.pattern());
        }
    }

    #[test]
    fn pullback_equality_matches_bit_scan(u in pullback(), v in pullback()) {
        if let (BinSeqCode::Pullback(_), BinSeqCode::Pullback(_)) = (&u, &v) {
            // the grid for these sizes lies well inside e(12, 12)
            let scan = (0..cantor_pair(12, 12)).all(|k| u.bit_at(k) == v.bit_at(k));
            prop_assert_eq!(binseq_eq(&u, &v, N_CMP).unwrap(), scan);
        }
    }

    #[test]
    fn clause3_agrees_with_naive_scan(x in cycle(5), w in word()) {
        let xs = AtomSeqCode::Cyclic(x.clone());
        let y = CyclicList::new(vec![BinSeqCode::word(w.clone()), BinSeqCode::constant(true)]).unwrap();
        let l = x.period() * w.len();
        let mut naive = true;
        for l1 in 0..10 * l {
            for l2 in 0..10 * l {
                if x.at(l1) == x.at(l2) && w.bit_at(l1) != w.bit_at(l2) {
                    naive = false;
                }
            }
        }
        let checked = match p_membership(xs, y) {
            Ok(_) => true,
            Err(Error::Clause(v)) if v.clause() == 3 => false,
            Err(Error::Clause(v)) => {
                // all-zero carve; clause (3) decides nothing there
                prop_assert_eq!(v.clause(), 2);
                naive
            }
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert_eq!(checked, naive);
    }

    #[test]
    fn jump_matches_partition_oracle(
        labels in prop::collection::vec(0usize..3, 6),
        xs in prop::collection::vec(0usize..6, 1..=4),
        ys in prop::collection::vec(0usize..6, 1..=4),
    ) {
        // an arbitrary equivalence on {0..5}: same label
        let l2 = labels.clone();
        let e: EqRel<usize> = EqRel::new("L", move |a: &usize, b: &usize| Ok(l2[*a] == l2[*b]));
        let classes = |v: &[usize]| v.iter().map(|&i| labels[i]).collect::<BTreeSet<_>>();
        let got = jump(e)
            .relates(&CyclicList::new(xs.clone()).unwrap(), &CyclicList::new(ys.clone()).unwrap())
            .unwrap();
        prop_assert_eq!(got, classes(&xs) == classes(&ys));
    }

    #[test]
    fn f_matches_forall_exists(x in cycle(5), y in cycle(5)) {
        let jumped = jump(atom_equality()).relates(&x, &y).unwrap();
        let (xs, ys) = (AtomSeqCode::Cyclic(x), AtomSeqCode::Cyclic(y));
        prop_assert_eq!(rel_f(&xs, &ys), jumped);
        prop_assert_eq!(f_invariant(&xs) == f_invariant(&ys), jumped);
    }

    #[test]
    fn g_invariant_matches_rel_g(
        a in prop::collection::vec(word(), 1..=4),
        b in prop::collection::vec(word(), 1..=4),
    ) {
        let y1: YSeqCode = CyclicList::new(a.into_iter().map(BinSeqCode::word).collect()).unwrap();
        let y2: YSeqCode = CyclicList::new(b.into_iter().map(BinSeqCode::word).collect()).unwrap();
        prop_assert_eq!(
            g_invariant(&y1, N_CMP).unwrap() == g_invariant(&y2, N_CMP).unwrap(),
            rel_g(&y1, &y2, N_CMP).unwrap()
        );
    }

    #[test]
    fn g_invariant_matches_rel_g_on_pullbacks(
        a in prop::collection::vec(strict_pullback(), 1..=3),
        b in prop::collection::vec(strict_pullback(), 1..=3),
    ) {
        let y1: YSeqCode = CyclicList::new(a).unwrap();
        let y2: YSeqCode = CyclicList::new(b).unwrap();
        prop_assert_eq!(
            g_invariant(&y1, N_CMP).unwrap() == g_invariant(&y2, N_CMP).unwrap(),
            rel_g(&y1, &y2, N_CMP).unwrap()
        );
    }

    #[test]
    fn e_matches_brute_force_carving(p in cyclic_point(), q in cyclic_point()) {
        prop_assert_eq!(rel_e(&p, &q), brute_e(&p, &q));
        prop_assert_eq!(SetOfAtomSets::from_iter(brute_carves(&p)), e_invariant(&p));
    }

    #[test]
    fn carved_sets_cover_the_range(p in cyclic_point()) {
        prop_assert_eq!(e_invariant(&p).flatten(), p.x().range_set());
    }

    #[test]
    fn invariants_ignore_entry_order(p in cyclic_point(), z in zcode(), shift in 0usize..4) {
        let mut entries = p.y().entries().to_vec();
        let len = entries.len();
        entries.rotate_left(shift % len);
        let first = entries[0].clone();
        entries.push(first);
        let q = p_membership(p.x().clone(), CyclicList::new(entries).unwrap()).unwrap();
        prop_assert_eq!(e_invariant(&p), e_invariant(&q));

        let mut rows = z.entries().to_vec();
        rows.reverse();
        prop_assert_eq!(fs2_invariant(&z), fs2_invariant(&CyclicList::new(rows).unwrap()));
    }

    #[test]
    fn fiber_map_is_identity_at_x(p in cyclic_point()) {
        let x0 = p.x().as_cyclic().unwrap().clone();
        let out = fiber_map(&x0, &p).unwrap();
        for (u, v) in out.iter().zip(p.y().iter()) {
            prop_assert!(binseq_eq(u, v, N_CMP).unwrap());
        }
    }

    #[test]
    fn interleave_range_splits_by_tag(x in cycle(4), y in cycle(4)) {
        let out = pair_interleave(&x, &y);
        let range: AtomSet = out.iter().cloned().collect();
        let expected: AtomSet = x
            .iter()
            .map(|a| Atom::tag(false, a.clone()))
            .chain(y.iter().map(|a| Atom::tag(true, a.clone())))
            .collect();
        prop_assert_eq!(range, expected);
    }
}

fn check_equivalence(u: &BinSeqCode, v: &BinSeqCode, w: &BinSeqCode) -> Result<(), TestCaseError> {
    let eq = |a, b| binseq_eq(a, b, N_CMP).unwrap();
    prop_assert!(eq(u, u));
    prop_assert_eq!(eq(u, v), eq(v, u));
    if eq(u, v) && eq(v, w) {
        prop_assert!(eq(u, w));
    }
    Ok(())
}

#[test]
fn f_invariant_is_complete_on_small_universes() {
    for n in 1..=3 {
        let codes = cyclic_codes(&counting_universe(n), 3);
        let fj = jump(atom_equality());
        for x in &codes {
            for y in &codes {
                let (cx, cy) = (x.as_cyclic().unwrap(), y.as_cyclic().unwrap());
                assert_eq!(
                    f_invariant(x) == f_invariant(y),
                    fj.relates(cx, cy).unwrap()
                );
            }
        }
    }
}

#[test]
fn e_invariant_is_complete_on_small_universes() {
    // every point over {0, 1} with words of length <= 2 and up to 3 entries
    let words: Vec<BinSeqCode> = ["0", "1", "01", "10"]
        .iter()
        .map(|s| BinSeqCode::word(CyclicWord::from_bits(s).unwrap()))
        .collect();
    let mut points = Vec::new();
    for x in cyclic_codes(&counting_universe(2), 2) {
        for len in 1..=3 {
            for idx in 0..words.len().pow(len) {
                let entries = (0..len)
                    .map(|k| words[idx / words.len().pow(k) % words.len()].clone())
                    .collect();
                if let Ok(p) = p_membership(x.clone(), CyclicList::new(entries).unwrap()) {
                    points.push(p);
                }
            }
        }
    }
    assert!(points.len() > 50);
    for p in &points {
        for q in &points {
            assert_eq!(rel_e(p, q), brute_e(p, q));
        }
    }
    let classes: BTreeSet<SetOfAtomSets> = points.iter().map(e_invariant).collect();
    assert_eq!(classes.len(), 7);
}

#[test]
fn raw_carve_rejects_foreign_bases() {
    let x = AtomSeqCode::cyclic(vec![Atom::int(0)]).unwrap();
    let z: ZCode = CyclicList::new(vec![
        CyclicList::new(vec![Atom::int(0), Atom::int(1)]).unwrap()
    ])
    .unwrap();
    let pb = BinSeqCode::pullback(
        &AtomSeqCode::PairMerge(z),
        &[Atom::int(0)].into_iter().collect(),
    );
    assert!(matches!(
        carve_entry(&x, &pb),
        Err(Error::StructuralMismatch(_))
    ));
    let p = p_membership(x, CyclicList::singleton(BinSeqCode::constant(true))).unwrap();
    assert_eq!(carve(&p, 7).len(), 1);
}
