//! Parse, canonicalize and print every kind of code.
//!
//!     cargo run --example codes_and_serialization

use borelcode::codes::{
    atom_to_binseq, binseq_eq, binseq_to_atom, iota, parse_code, parse_zcode, Atom, AtomSeqCode,
    BinSeqCode, DEFAULT_N_CMP,
};

fn main() -> borelcode::Result<()> {
    let inputs = [
        "(rat 6 4)",
        "(tag 1 (word 0110))",
        "(cyc (rat 1 1) (rat 2 1) (rat 1 1) (rat 2 1))",
        "(pairmerge (zlist (cyc (rat 1 1) (rat 2 1)) (cyc (rat 3 1))))",
        "(cw 101101)",
        "(pull (pairmerge (zlist (cyc (rat 1 1) (rat 2 1)) (cyc (rat 3 1)))) (set (rat 1 1) (rat 3 1)))",
        "(pull (pairmerge (zlist (cyc (rat 1 1)) (cyc (rat 2 1)))) (set (rat 1 1) (rat 2 1)))",
        "(ylist (cw 01) (cw 0101))",
    ];
    for src in inputs {
        let code = parse_code(src)?;
        println!("{src:<58} => {code}");
    }

    // atoms survive the trip through {0,1}^N
    let a = iota(Atom::rational(-7, 3)?, true);
    let b = atom_to_binseq(&a);
    println!("\n{a} encodes as {b}");
    assert_eq!(binseq_to_atom(&b)?, a);

    // a word is compared against a pullback only up to a bound
    let x = AtomSeqCode::PairMerge(parse_zcode(
        "(zlist (cyc (rat 1 1) (rat 2 1)) (cyc (rat 3 1)))",
    )?);
    let pull = BinSeqCode::pullback(&x, &[Atom::int(1)].into_iter().collect());
    match binseq_eq(&pull, &BinSeqCode::constant(false), DEFAULT_N_CMP) {
        Ok(eq) => println!("pullback = (cw 0): {eq}"),
        Err(e) => println!("{e}"),
    }

    match parse_code("(cyc (rat 1 1) (rat 1 0))") {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
