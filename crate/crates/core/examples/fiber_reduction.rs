//! Reducing E restricted to a fiber to G, checked on random pairs.
//!
//!     cargo run --example fiber_reduction -- [seed] [cases]

use borelcode::codes::{parse_aseq, parse_ppoint};
use borelcode::gen::FuzzConfig;
use borelcode::harness::{fiber_claim, fiber_identity};
use borelcode::reductions::fiber_map;

fn main() -> borelcode::Result<()> {
    let mut args = std::env::args().skip(1);
    let seed = args.next().map_or(0, |s| s.parse().expect("seed"));
    let cases = args.next().map_or(300, |s| s.parse().expect("cases"));
    let cfg = FuzzConfig {
        seed,
        cases,
        ..FuzzConfig::default()
    };

    let p = parse_ppoint("(p (cyc (rat 1 1) (rat 2 1) (rat 3 1)) (ylist (cw 110) (cw 011)))")?;
    let x0 = parse_aseq("(cyc (rat 3 1) (rat 1 1) (rat 2 1) (rat 2 1))")?;
    println!("{p}\n  maps to {}", fiber_map(x0.as_cyclic().unwrap(), &p)?);

    println!("{}", fiber_identity(&cfg).to_text());
    println!("{}", fiber_claim(&cfg).to_text());
    Ok(())
}
