//! Seedable generators for codes and points of `P`.
//!
//! Points are built forward from the data they should encode: an atom
//! universe, a family of nonempty subsets covering it, and an enumeration.
//! The family is the ground truth for `E`, independent of carving.
//!
//! Randomness comes from ChaCha8 keyed by `(seed, campaign salt)`, with the
//! case index selecting the stream, so each case can be generated on its own
//! and in any order.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codes::{
    atom_to_binseq, Atom, AtomCycle, AtomSeqCode, AtomSet, BinSeqCode, CyclicList, CyclicWord,
    YSeqCode, ZCode, DEFAULT_N_CMP,
};
use crate::error::{Error, Result};
use crate::invariants::SetOfAtomSets;
use crate::relations::{p_membership, PPoint};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzConfig {
    pub seed: u64,
    pub cases: usize,
    pub atom_universe: usize,
    pub max_period: usize,
    pub max_entries: usize,
    pub n_cmp: usize,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            seed: 0,
            cases: 1000,
            atom_universe: 4,
            max_period: 6,
            max_entries: 5,
            n_cmp: DEFAULT_N_CMP,
        }
    }
}

impl FuzzConfig {
    /// `cases` may be zero; every other count must be positive.
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("atom-universe", self.atom_universe),
            ("max-period", self.max_period),
            ("max-entries", self.max_entries),
            ("n-cmp", self.n_cmp),
        ] {
            if v == 0 {
                return Err(Error::Config(format!("{name} must be positive")));
            }
        }
        Ok(())
    }

    pub fn universe(&self) -> Vec<Atom> {
        (0..self.atom_universe).map(universe_atom).collect()
    }
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

/// Stream `case` of the generator keyed by `seed` and `salt`.
pub fn case_rng(seed: u64, salt: &str, case: usize) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&fnv1a(salt).to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(case as u64);
    rng
}

/// The `k`-th atom of the generator universe. Variants rotate through
/// integers, non-integer rationals, tags and words so every atom kind shows
/// up; all are pairwise distinct.
pub fn universe_atom(k: usize) -> Atom {
    let r = (k / 4) as i64;
    match k % 4 {
        0 => Atom::int(r),
        1 => Atom::rational(-3 * r - 1, 3).expect("nonzero denominator"),
        2 => Atom::tag(r % 2 == 1, Atom::int(r)),
        _ => Atom::word(
            atom_to_binseq(&Atom::int(r))
                .as_word()
                .expect("word code")
                .clone(),
        ),
    }
}

pub fn random_subset(rng: &mut impl Rng, universe: &[Atom]) -> AtomSet {
    loop {
        let s: AtomSet = universe
            .iter()
            .filter(|_| rng.gen_bool(0.5))
            .cloned()
            .collect();
        if !s.is_empty() {
            return s;
        }
    }
}

/// A list of at most `max_entries` nonempty subsets whose union is the
/// whole universe (repetitions allowed).
pub fn random_family(rng: &mut impl Rng, universe: &[Atom], max_entries: usize) -> Vec<AtomSet> {
    let k = rng.gen_range(1..=max_entries);
    let mut family: Vec<AtomSet> = (0..k).map(|_| random_subset(rng, universe)).collect();
    for a in universe {
        if !family.iter().any(|s| s.contains(a)) {
            let i = rng.gen_range(0..family.len());
            family[i] = family[i].union(&std::iter::once(a.clone()).collect());
        }
    }
    family
}

/// The same family reordered, with some members repeated.
pub fn shuffled_family(rng: &mut impl Rng, family: &[AtomSet]) -> Vec<AtomSet> {
    let mut out = family.to_vec();
    for _ in 0..rng.gen_range(0..=2) {
        let i = rng.gen_range(0..family.len());
        out.push(family[i].clone());
    }
    out.shuffle(rng);
    out
}

/// A list enumerating exactly `set`, with random repetitions, of length
/// between `|set|` and `max(|set|, max_len)`.
pub fn enumeration(rng: &mut impl Rng, set: &AtomSet, max_len: usize) -> Vec<Atom> {
    let mut out = set.elements().to_vec();
    let len = rng.gen_range(out.len()..=out.len().max(max_len));
    while out.len() < len {
        let a = set.elements()[rng.gen_range(0..set.len())].clone();
        out.push(a);
    }
    out.shuffle(rng);
    out
}

pub fn random_cycle(rng: &mut impl Rng, universe: &[Atom], max_len: usize) -> AtomCycle {
    let len = rng.gen_range(1..=max_len);
    let entries = (0..len)
        .map(|_| universe[rng.gen_range(0..universe.len())].clone())
        .collect();
    CyclicList::new(entries).expect("len >= 1")
}

/// Another enumeration of the same set as `c`.
pub fn reenumerate(rng: &mut impl Rng, c: &AtomCycle, max_len: usize) -> AtomCycle {
    let set: AtomSet = c.iter().cloned().collect();
    CyclicList::new(enumeration(rng, &set, max_len)).expect("nonempty set")
}

/// Realizes `family` over a cyclic enumeration of `universe` using explicit
/// words, sometimes written as a power of the primitive word.
pub fn realize_cyclic(
    rng: &mut impl Rng,
    universe: &AtomSet,
    family: &[AtomSet],
    max_period: usize,
) -> Result<PPoint> {
    let x = CyclicList::new(enumeration(rng, universe, max_period))?;
    let entries = family
        .iter()
        .map(|a| {
            let reps = rng.gen_range(1..=2);
            let bits: Vec<bool> = (0..reps)
                .flat_map(|_| x.iter().map(|e| a.contains(e)))
                .collect();
            Ok(BinSeqCode::word(CyclicWord::new(bits)?))
        })
        .collect::<Result<Vec<_>>>()?;
    p_membership(AtomSeqCode::Cyclic(x), CyclicList::new(entries)?)
}

/// Rows of random enumerations whose union is `universe`.
pub fn covering_zcode(
    rng: &mut impl Rng,
    universe: &AtomSet,
    max_rows: usize,
    max_period: usize,
) -> ZCode {
    let atoms = universe.elements();
    let rows = rng.gen_range(1..=max_rows);
    let mut z: Vec<Vec<Atom>> = (0..rows)
        .map(|_| {
            let len = rng.gen_range(1..=max_period);
            (0..len)
                .map(|_| atoms[rng.gen_range(0..atoms.len())].clone())
                .collect()
        })
        .collect();
    for a in atoms {
        if !z.iter().any(|row| row.contains(a)) {
            let i = rng.gen_range(0..z.len());
            let j = rng.gen_range(0..=z[i].len());
            z[i].insert(j, a.clone());
        }
    }
    CyclicList::new(
        z.into_iter()
            .map(|row| CyclicList::new(row).expect("rows are nonempty"))
            .collect(),
    )
    .expect("rows >= 1")
}

/// Realizes `family` over a pair-merge enumeration using pullbacks.
pub fn realize_pairmerge(
    rng: &mut impl Rng,
    universe: &AtomSet,
    family: &[AtomSet],
    cfg: &FuzzConfig,
) -> Result<PPoint> {
    let x = AtomSeqCode::PairMerge(covering_zcode(
        rng,
        universe,
        cfg.max_entries,
        cfg.max_period,
    ));
    let entries = family.iter().map(|a| BinSeqCode::pullback(&x, a)).collect();
    p_membership(x, CyclicList::new(entries)?)
}

pub fn realize(
    rng: &mut impl Rng,
    universe: &AtomSet,
    family: &[AtomSet],
    cfg: &FuzzConfig,
) -> Result<PPoint> {
    if rng.gen_bool(0.5) {
        realize_cyclic(rng, universe, family, cfg.max_period)
    } else {
        realize_pairmerge(rng, universe, family, cfg)
    }
}

/// A point together with the family it was built from.
#[derive(Clone, Debug)]
pub struct GeneratedPoint {
    pub point: PPoint,
    pub family: SetOfAtomSets,
}

pub fn random_range(rng: &mut impl Rng, cfg: &FuzzConfig) -> AtomSet {
    random_subset(rng, &cfg.universe())
}

/// A point with a cyclic first coordinate.
pub fn cyclic_point(rng: &mut impl Rng, cfg: &FuzzConfig) -> Result<GeneratedPoint> {
    let u = random_range(rng, cfg);
    let family = random_family(rng, u.elements(), cfg.max_entries);
    let point = realize_cyclic(rng, &u, &family, cfg.max_period)?;
    Ok(GeneratedPoint {
        point,
        family: family.into_iter().collect(),
    })
}

pub fn any_point(rng: &mut impl Rng, cfg: &FuzzConfig) -> Result<GeneratedPoint> {
    let u = random_range(rng, cfg);
    let family = random_family(rng, u.elements(), cfg.max_entries);
    let point = realize(rng, &u, &family, cfg)?;
    Ok(GeneratedPoint {
        point,
        family: family.into_iter().collect(),
    })
}

/// Two points in the fiber over `basepoint`. About half of the cases reuse
/// the first family, reshuffled, for the second point.
#[derive(Clone, Debug)]
pub struct FiberCase {
    pub basepoint: AtomCycle,
    pub p: GeneratedPoint,
    pub q: GeneratedPoint,
}

impl FiberCase {
    /// Ground truth for `E`, from the generating families.
    pub fn related(&self) -> bool {
        self.p.family == self.q.family
    }
}

pub fn fiber_case(rng: &mut impl Rng, cfg: &FuzzConfig) -> Result<FiberCase> {
    let u = random_range(rng, cfg);
    let basepoint = CyclicList::new(enumeration(rng, &u, cfg.max_period))?;
    let f1 = random_family(rng, u.elements(), cfg.max_entries);
    let f2 = if rng.gen_bool(0.5) {
        shuffled_family(rng, &f1)
    } else {
        random_family(rng, u.elements(), cfg.max_entries)
    };
    let p = realize(rng, &u, &f1, cfg)?;
    let q = realize(rng, &u, &f2, cfg)?;
    Ok(FiberCase {
        basepoint,
        p: GeneratedPoint {
            point: p,
            family: f1.into_iter().collect(),
        },
        q: GeneratedPoint {
            point: q,
            family: f2.into_iter().collect(),
        },
    })
}

pub fn random_zcode(rng: &mut impl Rng, cfg: &FuzzConfig) -> ZCode {
    let u = cfg.universe();
    let rows = rng.gen_range(1..=cfg.max_entries);
    CyclicList::new(
        (0..rows)
            .map(|_| random_cycle(rng, &u, cfg.max_period))
            .collect(),
    )
    .expect("rows >= 1")
}

/// Pairs of second-jump codes; half the time the second is the first with
/// rows permuted, repeated and re-enumerated.
pub fn zcode_pair(rng: &mut impl Rng, cfg: &FuzzConfig) -> (ZCode, ZCode) {
    let z = random_zcode(rng, cfg);
    let z2 = if rng.gen_bool(0.5) {
        let mut rows: Vec<AtomCycle> = z
            .iter()
            .map(|row| reenumerate(rng, row, cfg.max_period))
            .collect();
        for _ in 0..rng.gen_range(0..=2) {
            let i = rng.gen_range(0..z.period());
            rows.push(reenumerate(rng, z.at(i), cfg.max_period));
        }
        rows.shuffle(rng);
        CyclicList::new(rows).expect("nonempty")
    } else {
        random_zcode(rng, cfg)
    };
    (z, z2)
}

/// Two cycles, the second sometimes a re-enumeration of the first.
pub fn cycle_pair(rng: &mut impl Rng, cfg: &FuzzConfig) -> (AtomCycle, AtomCycle) {
    let u = cfg.universe();
    let a = random_cycle(rng, &u, cfg.max_period);
    let b = if rng.gen_bool(0.5) {
        reenumerate(rng, &a, cfg.max_period)
    } else {
        random_cycle(rng, &u, cfg.max_period)
    };
    (a, b)
}

pub fn random_word(rng: &mut impl Rng, max_len: usize) -> CyclicWord {
    let len = rng.gen_range(1..=max_len);
    CyclicWord::new((0..len).map(|_| rng.gen_bool(0.5)).collect()).expect("len >= 1")
}

/// A `y` list of explicit words.
pub fn random_word_list(rng: &mut impl Rng, cfg: &FuzzConfig) -> YSeqCode {
    let k = rng.gen_range(1..=cfg.max_entries);
    CyclicList::new(
        (0..k)
            .map(|_| BinSeqCode::word(random_word(rng, cfg.max_period)))
            .collect(),
    )
    .expect("k >= 1")
}

/// Pairs of word lists; half the time the second lists the same words
/// in another order, with repeats.
pub fn word_list_pair(rng: &mut impl Rng, cfg: &FuzzConfig) -> (YSeqCode, YSeqCode) {
    let y = random_word_list(rng, cfg);
    let y2 = if rng.gen_bool(0.5) {
        let mut entries = y.entries().to_vec();
        for _ in 0..rng.gen_range(0..=2) {
            entries.push(y.at(rng.gen_range(0..y.period())).clone());
        }
        entries.shuffle(rng);
        CyclicList::new(entries).expect("nonempty")
    } else {
        random_word_list(rng, cfg)
    };
    (y, y2)
}

pub fn random_aseq(rng: &mut impl Rng, cfg: &FuzzConfig) -> AtomSeqCode {
    if rng.gen_bool(0.5) {
        AtomSeqCode::Cyclic(random_cycle(rng, &cfg.universe(), cfg.max_period))
    } else {
        AtomSeqCode::PairMerge(random_zcode(rng, cfg))
    }
}

/// A sequence code `F`-related to `x` about half the time.
pub fn aseq_pair(rng: &mut impl Rng, cfg: &FuzzConfig) -> (AtomSeqCode, AtomSeqCode) {
    let x = random_aseq(rng, cfg);
    let x2 = if rng.gen_bool(0.5) {
        let range = x.range_set();
        if rng.gen_bool(0.5) {
            AtomSeqCode::Cyclic(
                CyclicList::new(enumeration(rng, &range, cfg.max_period)).expect("nonempty"),
            )
        } else {
            AtomSeqCode::PairMerge(covering_zcode(rng, &range, cfg.max_entries, cfg.max_period))
        }
    } else {
        random_aseq(rng, cfg)
    };
    (x, x2)
}

/// An arbitrary atom, not restricted to the universe.
pub fn random_atom(rng: &mut impl Rng, depth: usize) -> Atom {
    match rng.gen_range(0..if depth == 0 { 2 } else { 3 }) {
        0 => Atom::rational(rng.gen_range(-1000..=1000), rng.gen_range(1..=1000))
            .expect("positive denominator"),
        1 => Atom::word(random_word(rng, 8)),
        _ => Atom::tag(rng.gen_bool(0.5), random_atom(rng, depth - 1)),
    }
}
