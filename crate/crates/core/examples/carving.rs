//! Membership in P and the sets carved from x by y.
//!
//!     cargo run --example carving

use borelcode::codes::parse_ppoint;
use borelcode::invariants::e_invariant;
use borelcode::relations::{carves, rel_e};

fn main() {
    let p = parse_ppoint(
        "(p (cyc (rat 1 1) (rat 2 1) (rat 3 1) (rat 4 1)) (ylist (cw 0011) (cw 1110) (cw 0101)))",
    )
    .unwrap();
    println!("{p}");
    for (n, set) in carves(&p).iter().enumerate() {
        println!("  A_{n} = {set}");
    }
    println!("  invariant {}", e_invariant(&p));

    // same family, different x enumeration and y order
    let q = parse_ppoint(
        "(p (cyc (rat 4 1) (rat 3 1) (rat 2 1) (rat 1 1)) (ylist (cw 1010) (cw 1100) (cw 0111)))",
    )
    .unwrap();
    println!("{q}\n  E-related to p: {}", rel_e(&p, &q));

    for bad in [
        "(p (cyc (rat 1 1) (rat 2 1)) (ylist (cw 10) (cw 0)))",
        "(p (cyc (rat 1 1) (rat 2 1) (rat 3 1)) (ylist (cw 10)))",
        "(p (cyc (rat 1 1) (rat 2 1) (rat 1 1) (rat 2 1)) (ylist (cw 1000)))",
    ] {
        println!("{bad}\n  {}", parse_ppoint(bad).unwrap_err());
    }
}
