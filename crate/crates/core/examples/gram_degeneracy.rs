//! Gram determinants of the q-Virasoro module vanish exactly at the
//! degenerate momenta α^+_{rs} with rs at most the level.
//!
//! Run with `cargo run --release --example gram_degeneracy`.

use qwn::cli::{cmd_gram, GramMomentum};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let level = 2;
    let cases = [
        GramMomentum::Degenerate { r: 1, s: 1 },
        GramMomentum::Degenerate { r: 1, s: 2 },
        GramMomentum::Degenerate { r: 2, s: 1 },
        GramMomentum::Degenerate { r: 1, s: 3 },
        GramMomentum::Generic { seed: 7 },
    ];
    for m in &cases {
        let (report, table) = cmd_gram(m, level)?;
        print!("{table}");
        assert!(report.passed);
    }
    Ok(())
}
