//! Counting F and E classes over an n-atom universe.
//!
//!     cargo run --release --example class_counts -- [n] [max_period]

use borelcode::harness::{count_rows, growth_table_text};

fn main() {
    let mut args = std::env::args().skip(1);
    let n = args.next().map_or(3, |s| s.parse().expect("n"));
    let max_period = args.next().map_or(n, |s| s.parse().expect("max_period"));
    let mut rows = Vec::new();
    for k in 1..=n {
        match count_rows(k, max_period.max(k)) {
            Ok(r) => rows.extend(r),
            Err(e) => {
                eprintln!("n={k}: {e}");
                break;
            }
        }
    }
    print!("{}", growth_table_text(&rows));
}
