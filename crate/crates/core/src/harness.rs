//! Property campaigns behind `verify`, the chain report, and the class-count
//! table.
//!
//! Every campaign draws case `i` from its own RNG stream, evaluates cases in
//! parallel, and assembles results in case order, so output depends only on
//! the configuration.

use std::fmt;
use std::str::FromStr;

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::codes::{binseq_eq, Atom, AtomCycle, AtomSeqCode, AtomSet, YSeqCode, ZCode};
use crate::error::{Error, Result};
use crate::gen::{self, case_rng, FuzzConfig};
use crate::invariants::{count_classes, e_invariant, fs2_invariant, ClassCount, Level};
use crate::reductions::{
    canonical_cyclic_record, check_pair, check_reduction, compose, const_jump_embedding, embed_fs2,
    embed_fs2_record, fiber_reduction, g_to_f_record, interleave_record, pair_interleave,
    product_record, Render, Status, VerificationReport, Violation,
};
use crate::relations::{atom_equality, carve, carves, f_relation, jump, rel_e, rel_f, PPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Claim,
    Star,
    Remark,
    Embed,
    Interleave,
    GToF,
    ConstJump,
}

impl Target {
    pub const ALL: [Target; 7] = [
        Target::Claim,
        Target::Star,
        Target::Remark,
        Target::Embed,
        Target::Interleave,
        Target::GToF,
        Target::ConstJump,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::Claim => "claim",
            Target::Star => "star",
            Target::Remark => "remark",
            Target::Embed => "embed",
            Target::Interleave => "interleave",
            Target::GToF => "gtof",
            Target::ConstJump => "constjump",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Target::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown verify target {s:?}")))
    }
}

fn per_case<T: Send>(
    cfg: &FuzzConfig,
    salt: &str,
    f: impl Fn(&mut ChaCha8Rng) -> T + Sync,
) -> Vec<T> {
    (0..cfg.cases)
        .into_par_iter()
        .map(|i| f(&mut case_rng(cfg.seed, salt, i)))
        .collect()
}

fn violation(
    index: usize,
    left: String,
    right: String,
    source: String,
    target: String,
) -> Violation {
    Violation {
        index,
        left,
        right,
        source,
        target,
    }
}

fn generator_failure(index: usize, e: &Error) -> Violation {
    violation(
        index,
        String::new(),
        String::new(),
        "generated".into(),
        format!("error({e})"),
    )
}

/// Runs the campaign for `target`.
pub fn verify(target: Target, cfg: &FuzzConfig) -> Result<Vec<VerificationReport>> {
    cfg.validate()?;
    Ok(match target {
        Target::Claim => vec![fiber_identity(cfg), fiber_claim(cfg)],
        Target::Star => vec![star(cfg)],
        Target::Remark => vec![remark(cfg)],
        Target::Embed => embedding(cfg),
        Target::Interleave => interleaving(cfg),
        Target::GToF => vec![g_to_f_campaign(cfg)],
        Target::ConstJump => const_jump_campaign(cfg),
    })
}

/// The fiber map at the basepoint `x0 = x` returns `y` entry by entry.
pub fn fiber_identity(cfg: &FuzzConfig) -> VerificationReport {
    let results = per_case(cfg, "fiber-identity", |rng| {
        let gp = gen::cyclic_point(rng, cfg)?;
        let x0 = gp.point.x().as_cyclic().expect("cyclic point").clone();
        let out = fiber_reduction(x0, cfg.n_cmp).apply(&gp.point)?;
        let same = out.period() == gp.point.y().period()
            && out
                .iter()
                .zip(gp.point.y().iter())
                .map(|(u, v)| binseq_eq(u, v, cfg.n_cmp))
                .collect::<Result<Vec<bool>>>()?
                .into_iter()
                .all(|b| b);
        Ok::<_, Error>((gp.point, out, same))
    });
    let violations = results
        .into_iter()
        .enumerate()
        .filter_map(|(i, r)| match r {
            Ok((_, _, true)) => None,
            Ok((p, out, false)) => Some(violation(
                i,
                p.render(),
                out.render(),
                "y".into(),
                "f(x, y) differs from y".into(),
            )),
            Err(e) => Some(generator_failure(i, &e)),
        })
        .collect();
    VerificationReport::new("fiber-identity", cfg.cases, violations)
}

/// The fiber map reduces `E` on the fiber to `G`, checked against the
/// generating families.
pub fn fiber_claim(cfg: &FuzzConfig) -> VerificationReport {
    let results = per_case(cfg, "fiber-pairs", |rng| {
        let case = gen::fiber_case(rng, cfg)?;
        let r = fiber_reduction(case.basepoint.clone(), cfg.n_cmp);
        Ok::<_, Error>((case.related(), check_reduction_truth(&r, &case)))
    });
    let mut related = 0;
    let mut violations = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok((truth, v)) => {
                related += usize::from(truth);
                violations.extend(v.into_iter().map(|mut v| {
                    v.index = i;
                    v
                }));
            }
            Err(e) => violations.push(generator_failure(i, &e)),
        }
    }
    VerificationReport::new("fiber-reduction", cfg.cases, violations).note(format!(
        "E-related pairs: {related}, E-unrelated pairs: {}",
        cfg.cases - related
    ))
}

fn check_reduction_truth(
    r: &crate::reductions::ReductionRecord<PPoint, YSeqCode>,
    case: &gen::FiberCase,
) -> Vec<Violation> {
    let (p, q) = (&case.p.point, &case.q.point);
    let mut out: Vec<Violation> = check_pair(r, 0, p, q).into_iter().collect();
    let decided = rel_e(p, q);
    if decided != case.related() {
        out.push(violation(
            0,
            p.render(),
            q.render(),
            format!("generated families equal: {}", case.related()),
            format!("E decided: {decided}"),
        ));
    }
    out
}

/// `A_n = A'_m <=> f(p)(n) = f(q)(m)` for all listed `n`, `m`.
pub fn star(cfg: &FuzzConfig) -> VerificationReport {
    let results = per_case(cfg, "fiber-pairs", |rng| {
        let case = gen::fiber_case(rng, cfg)?;
        let r = fiber_reduction(case.basepoint.clone(), cfg.n_cmp);
        let (p, q) = (&case.p.point, &case.q.point);
        let (fp, fq) = (r.apply(p)?, r.apply(q)?);
        let mut bad = Vec::new();
        let mut comparisons = 0usize;
        for n in 0..p.y().period() {
            for m in 0..q.y().period() {
                comparisons += 1;
                let sets = carve(p, n) == carve(q, m);
                let codes = binseq_eq(fp.at(n), fq.at(m), cfg.n_cmp)?;
                if sets != codes {
                    bad.push((n, m, sets, codes));
                }
            }
        }
        Ok::<_, Error>((p.render(), q.render(), comparisons, bad))
    });
    let mut comparisons = 0;
    let mut violations = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok((pl, ql, c, bad)) => {
                comparisons += c;
                for (n, m, sets, codes) in bad {
                    violations.push(violation(
                        i,
                        pl.clone(),
                        ql.clone(),
                        format!("A_{n} = A'_{m}: {sets}"),
                        format!("f(p)({n}) = f(q)({m}): {codes}"),
                    ));
                }
            }
            Err(e) => violations.push(generator_failure(i, &e)),
        }
    }
    VerificationReport::new("star", cfg.cases, violations)
        .note(format!("index pairs compared: {comparisons}"))
}

/// `E` refines `F` on first coordinates, carved sets cover the range, and
/// the converse fails on some sampled pair.
pub fn remark(cfg: &FuzzConfig) -> VerificationReport {
    let results = per_case(cfg, "remark", |rng| {
        let case = gen::fiber_case(rng, cfg)?;
        let other = gen::any_point(rng, cfg)?;
        Ok::<_, Error>((case.p.point, case.q.point, other.point))
    });
    let mut violations = Vec::new();
    let mut witness: Option<(PPoint, PPoint)> = None;
    let mut e_related = 0;
    for (i, r) in results.into_iter().enumerate() {
        let (p, q, other) = match r {
            Ok(t) => t,
            Err(e) => {
                violations.push(generator_failure(i, &e));
                continue;
            }
        };
        for pt in [&p, &q, &other] {
            let union: AtomSet = carves(pt)
                .iter()
                .fold(AtomSet::new(), |acc, a| acc.union(a));
            if union != pt.x().range_set() {
                violations.push(violation(
                    i,
                    pt.render(),
                    String::new(),
                    "union of carved sets".into(),
                    "differs from the range of x".into(),
                ));
            }
        }
        for (a, b) in [(&p, &q), (&p, &other)] {
            let (e, f) = (rel_e(a, b), rel_f(a.x(), b.x()));
            e_related += usize::from(e);
            if e && !f {
                violations.push(violation(
                    i,
                    a.render(),
                    b.render(),
                    "E: related".into(),
                    "F: unrelated".into(),
                ));
            }
            if f && !e && witness.is_none() {
                witness = Some((a.clone(), b.clone()));
            }
        }
    }
    let mut report = VerificationReport::new("remark", cfg.cases, violations)
        .note(format!("E-related pairs among samples: {e_related}"));
    match witness {
        Some((a, b)) => {
            report = report.note(format!(
                "converse fails: F-related, E-unrelated: {a} vs {b}"
            ));
        }
        None if cfg.cases > 0 => {
            report = report.fail_with(violation(
                0,
                String::new(),
                String::new(),
                "expected an F-related, E-unrelated pair".into(),
                "none found".into(),
            ));
        }
        None => {}
    }
    report
}

/// Second-jump codes reduce to `E` via the embedding, and the embedding
/// carries the second-jump invariant to the `E` invariant.
pub fn embedding(cfg: &FuzzConfig) -> Vec<VerificationReport> {
    let pairs: Vec<(ZCode, ZCode)> = per_case(cfg, "embed", |rng| gen::zcode_pair(rng, cfg));
    let fs2 = jump(jump(atom_equality()));
    let related = pairs
        .iter()
        .filter(|(a, b)| fs2.relates(a, b).unwrap_or(false))
        .count();
    let reduction = check_reduction(&embed_fs2_record(), &pairs).note(format!(
        "related pairs: {related}, unrelated pairs: {}",
        pairs.len() - related
    ));
    let violations = pairs
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, (a, b))| {
            [a, b].into_iter().filter_map(move |z| match embed_fs2(z) {
                Ok(p) if e_invariant(&p) == fs2_invariant(z) => None,
                Ok(p) => Some(violation(
                    i,
                    z.render(),
                    p.render(),
                    fs2_invariant(z).to_string(),
                    e_invariant(&p).to_string(),
                )),
                Err(e) => Some(violation(
                    i,
                    z.render(),
                    String::new(),
                    "a point of P".into(),
                    format!("error({e})"),
                )),
            })
        })
        .collect();
    let invariant = VerificationReport::new("fs2-invariant", 2 * pairs.len(), violations);
    vec![reduction, invariant]
}

type CyclePair = (AtomCycle, AtomCycle);

fn interleave_pairs(cfg: &FuzzConfig) -> Vec<(CyclePair, CyclePair)> {
    per_case(cfg, "interleave", |rng| {
        let (x, x2) = gen::cycle_pair(rng, cfg);
        let (y, y2) = gen::cycle_pair(rng, cfg);
        ((x, y), (x2, y2))
    })
}

// The range of the interleaving splits by tag bit into the two input ranges.
fn untag(out: &AtomCycle) -> Option<(AtomSet, AtomSet)> {
    let mut sides = (Vec::new(), Vec::new());
    for a in out.iter() {
        match a {
            Atom::Tag(false, inner) => sides.0.push((**inner).clone()),
            Atom::Tag(true, inner) => sides.1.push((**inner).clone()),
            _ => return None,
        }
    }
    Some((sides.0.into_iter().collect(), sides.1.into_iter().collect()))
}

pub fn interleaving(cfg: &FuzzConfig) -> Vec<VerificationReport> {
    let pairs = interleave_pairs(cfg);
    let reduction = check_reduction(&interleave_record(), &pairs);
    let violations = pairs
        .iter()
        .enumerate()
        .flat_map(|(i, (a, b))| [(i, a), (i, b)])
        .filter_map(|(i, (x, y))| {
            let out = pair_interleave(x, y);
            let expected = (x.iter().cloned().collect(), y.iter().cloned().collect());
            (untag(&out) != Some(expected)).then(|| {
                violation(
                    i,
                    (x.clone(), y.clone()).render(),
                    out.render(),
                    "tag 0 part = ran x, tag 1 part = ran y".into(),
                    "mismatch".into(),
                )
            })
        })
        .collect();
    let tags = VerificationReport::new("tag-injectivity", 2 * pairs.len(), violations);
    vec![reduction, tags]
}

pub fn g_to_f_campaign(cfg: &FuzzConfig) -> VerificationReport {
    let pairs = per_case(cfg, "gtof", |rng| gen::word_list_pair(rng, cfg));
    check_reduction(&g_to_f_record(cfg.n_cmp), &pairs)
}

pub fn const_jump_campaign(cfg: &FuzzConfig) -> Vec<VerificationReport> {
    let atoms = per_case(cfg, "constjump-atoms", |rng| {
        use rand::Rng;
        let u = cfg.atom_universe;
        (
            gen::universe_atom(rng.gen_range(0..u)),
            gen::universe_atom(rng.gen_range(0..u)),
        )
    });
    let seqs = per_case(cfg, "constjump-seqs", |rng| gen::aseq_pair(rng, cfg));
    vec![
        check_reduction(&const_jump_embedding(atom_equality()), &atoms),
        check_reduction(&const_jump_embedding(f_relation()), &seqs),
    ]
}

/// One row of the class-count table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthRow {
    pub level: String,
    pub n: usize,
    pub max_period: usize,
    pub count: u64,
    pub closed_form: String,
    #[serde(rename = "match")]
    pub matches: bool,
}

impl From<&ClassCount> for GrowthRow {
    fn from(c: &ClassCount) -> Self {
        GrowthRow {
            level: c.level.to_string(),
            n: c.n,
            max_period: c.max_period,
            count: c.count,
            closed_form: c.closed_form().to_string(),
            matches: c.matches(),
        }
    }
}

/// `F` and `E` class counts for `n` atoms.
pub fn count_rows(n: usize, max_period: usize) -> Result<Vec<GrowthRow>> {
    [Level::F, Level::E]
        .into_iter()
        .map(|level| count_classes(level, n, max_period).map(|c| GrowthRow::from(&c)))
        .collect()
}

pub fn growth_table_text(rows: &[GrowthRow]) -> String {
    let mut out = format!(
        "{:<6} {:>3} {:>8} {:>12}  {}\n",
        "level", "n", "count", "closed-form", "match"
    );
    for r in rows {
        out.push_str(&format!(
            "{:<6} {:>3} {:>8} {:>12}  {}\n",
            r.level,
            r.n,
            r.count,
            r.closed_form,
            if r.matches { "yes" } else { "no" }
        ));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LinkStatus {
    Verified,
    Violated,
    Hypothetical,
}

#[derive(Clone, Debug, Serialize)]
pub struct LinkReport {
    pub name: String,
    pub claim: String,
    pub status: LinkStatus,
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl LinkReport {
    fn from_reports(name: &str, claim: &str, reports: Vec<VerificationReport>) -> Self {
        let checked = reports.iter().map(|r| r.checked).sum();
        let violations: Vec<Violation> = reports.into_iter().flat_map(|r| r.violations).collect();
        LinkReport {
            name: name.into(),
            claim: claim.into(),
            status: if violations.is_empty() {
                LinkStatus::Verified
            } else {
                LinkStatus::Violated
            },
            checked,
            violations,
        }
    }

    fn hypothetical(name: &str, claim: &str) -> Self {
        LinkReport {
            name: name.into(),
            claim: claim.into(),
            status: LinkStatus::Hypothetical,
            checked: 0,
            violations: Vec::new(),
        }
    }
}

pub const CHAIN_VERIFIED: &str = "counterexample structure verified";
pub const CHAIN_VIOLATED: &str = "violations found";

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub name: String,
    pub checked: usize,
    pub violations: Vec<Violation>,
    pub status: String,
    pub premises: Vec<VerificationReport>,
    pub links: Vec<LinkReport>,
    pub growth: Vec<GrowthRow>,
}

impl ChainReport {
    pub fn verified(&self) -> bool {
        self.status == CHAIN_VERIFIED
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from(
            "chain: ((=R)+)+ <=B E <=B F x G <=B (=R)+ x (=R)+ <=B (=R)+\n\npremises:\n",
        );
        for p in &self.premises {
            out.push_str(&p.to_text());
        }
        out.push_str("\nlinks:\n");
        for l in &self.links {
            match l.status {
                LinkStatus::Hypothetical => out.push_str(&format!(
                    "  {:<12} {:<28} HYPOTHETICAL (assumed for contradiction; no map exists to check)\n",
                    l.name, l.claim
                )),
                s => {
                    out.push_str(&format!(
                        "  {:<12} {:<28} {:<12} checked={} violations={}\n",
                        l.name,
                        l.claim,
                        if s == LinkStatus::Verified { "verified" } else { "VIOLATED" },
                        l.checked,
                        l.violations.len()
                    ));
                    for v in &l.violations {
                        out.push_str(&format!(
                            "    violation #{}: source={} target={}\n      left:  {}\n      right: {}\n",
                            v.index, v.source, v.target, v.left, v.right
                        ));
                    }
                }
            }
        }
        out.push_str("\ngrowth of class counts over an n-atom universe:\n");
        out.push_str(&growth_table_text(&self.growth));
        out.push_str(
            "\nIf E <=B F x G held, composing the links would give ((=R)+)+ <=B (=R)+,\n\
             contradicting the strictness of the jump (illustrated above, not proven).\n",
        );
        out.push_str(&format!("status: {}\n", self.status));
        out
    }
}

/// Options for [`chain_report`].
#[derive(Clone, Debug, Default)]
pub struct ChainOptions {
    /// Replaces the interleaving map by a broken one, to exercise failure
    /// reporting.
    pub corrupt: bool,
}

/// Verifies every implemented link of the chain and the premises it rests on,
/// all on sampled pairs.
pub fn chain_report(cfg: &FuzzConfig, opts: &ChainOptions) -> Result<ChainReport> {
    cfg.validate()?;
    let premises = vec![remark(cfg), fiber_claim(cfg)];

    let mut interleave = interleave_record();
    if opts.corrupt {
        interleave = interleave.with_map(|(x, _): &CyclePair| Ok(pair_interleave(x, x)));
    }

    let fxg_pairs: Vec<((AtomSeqCode, YSeqCode), (AtomSeqCode, YSeqCode))> =
        per_case(cfg, "chain-fxg", |rng| {
            let (x, x2) = gen::aseq_pair(rng, cfg);
            let (y, y2) = gen::word_list_pair(rng, cfg);
            ((x, y), (x2, y2))
        });
    let fxg_to_fxf = product_record(canonical_cyclic_record(), g_to_f_record(cfg.n_cmp));
    let composite = compose(fxg_to_fxf.clone(), interleave.clone())?;

    let links = vec![
        LinkReport::from_reports("fs2-to-e", "((=R)+)+ <=B E", embedding(cfg)),
        LinkReport::hypothetical("e-to-fxg", "E <=B F x G"),
        LinkReport::from_reports(
            "fxg-to-fxf",
            "F x G <=B (=R)+ x (=R)+",
            vec![check_reduction(&fxg_to_fxf, &fxg_pairs)],
        ),
        LinkReport::from_reports(
            "fxf-to-f",
            "(=R)+ x (=R)+ <=B (=R)+",
            vec![check_reduction(&interleave, &interleave_pairs(cfg))],
        ),
        LinkReport::from_reports(
            "fxg-to-f",
            "F x G <=B (=R)+ (composite)",
            vec![check_reduction(&composite, &fxg_pairs)],
        ),
    ];

    let mut growth = Vec::new();
    for n in 1..=3 {
        growth.extend(count_rows(n, cfg.max_period.max(n))?);
    }

    let premises_ok = premises.iter().all(|p| p.status == Status::Pass);
    let links_ok = links.iter().all(|l| l.status != LinkStatus::Violated);
    let growth_ok = growth.iter().all(|g| g.matches);
    let violations: Vec<Violation> = premises
        .iter()
        .flat_map(|p| p.violations.iter().cloned())
        .chain(links.iter().flat_map(|l| l.violations.iter().cloned()))
        .collect();
    let checked = premises.iter().map(|p| p.checked).sum::<usize>()
        + links.iter().map(|l| l.checked).sum::<usize>();
    Ok(ChainReport {
        name: "chain".into(),
        checked,
        violations,
        status: if premises_ok && links_ok && growth_ok {
            CHAIN_VERIFIED.into()
        } else {
            CHAIN_VIOLATED.into()
        },
        premises,
        links,
        growth,
    })
}
