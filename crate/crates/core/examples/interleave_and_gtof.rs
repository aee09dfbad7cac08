//! The maps F x F -> F and G -> F on cyclic codes.
//!
//!     cargo run --example interleave_and_gtof

use borelcode::codes::{parse_yseq, Atom, AtomCycle, CyclicList};
use borelcode::gen::FuzzConfig;
use borelcode::harness::{g_to_f_campaign, interleaving};
use borelcode::reductions::{g_to_f, pair_interleave};

fn main() -> borelcode::Result<()> {
    let x: AtomCycle = CyclicList::new(vec![Atom::int(1), Atom::int(2)])?;
    let y: AtomCycle = CyclicList::new(vec![Atom::int(5), Atom::int(6), Atom::int(7)])?;
    println!("interleave {x} {y}\n  = {}", pair_interleave(&x, &y));

    let ys = parse_yseq("(ylist (cw 01) (cw 1) (cw 0101))")?;
    println!("g_to_f {ys}\n  = {}", g_to_f(&ys)?);
    let pb =
        parse_yseq("(ylist (pull (pairmerge (zlist (cyc (rat 1 1) (rat 2 1)))) (set (rat 1 1))))")?;
    println!("g_to_f on a pullback: {}", g_to_f(&pb).unwrap_err());

    let cfg = FuzzConfig {
        cases: 300,
        ..FuzzConfig::default()
    };
    for r in interleaving(&cfg) {
        println!("{}", r.to_text());
    }
    println!("{}", g_to_f_campaign(&cfg).to_text());
    Ok(())
}
