//! The full chain of reductions, with one link taken as hypothesis.
//!
//!     cargo run --release --example chain_report

use borelcode::gen::FuzzConfig;
use borelcode::harness::{chain_report, ChainOptions};

fn main() -> borelcode::Result<()> {
    let cfg = FuzzConfig {
        cases: 500,
        max_period: 4,
        ..FuzzConfig::default()
    };
    let report = chain_report(&cfg, &ChainOptions::default())?;
    print!("{}", report.to_text());

    let broken = chain_report(&cfg, &ChainOptions { corrupt: true })?;
    println!(
        "\nwith a broken interleave map: verified = {}",
        broken.verified()
    );
    Ok(())
}
