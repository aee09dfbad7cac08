//! Embedding the second jump of =R into E.
//!
//!     cargo run --example fs2_embedding

use borelcode::codes::parse_zcode;
use borelcode::gen::FuzzConfig;
use borelcode::harness::embedding;
use borelcode::invariants::{e_invariant, fs2_invariant};
use borelcode::reductions::embed_fs2;

fn main() -> borelcode::Result<()> {
    let z = parse_zcode(
        "(zlist (cyc (rat 1 1) (rat 2 1)) (cyc (rat 2 1)) (cyc (rat 2 1) (rat 1 1) (rat 1 1)))",
    )?;
    let p = embed_fs2(&z)?;
    println!("{z}\n  -> {p}");
    println!(
        "  fs2 invariant {}\n  E invariant   {}",
        fs2_invariant(&z),
        e_invariant(&p)
    );

    for r in embedding(&FuzzConfig {
        cases: 300,
        ..FuzzConfig::default()
    }) {
        println!("{}", r.to_text());
    }
    Ok(())
}
