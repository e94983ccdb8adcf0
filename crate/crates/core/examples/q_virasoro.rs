//! The quadratic relation of the q-deformed Virasoro algebra (N = 2) on a
//! small window of modes, with q and t kept symbolic.
//!
//! Run with `cargo run --release --example q_virasoro`.

use qwn::relations::{default_momentum, printed_rhs, verify_relation_with, window_level, QuantumW};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let level = 2;
    let bound = 2;
    let top = window_level(level, bound, bound);
    let w = QuantumW::new(2, default_momentum(2), top)?;
    let rhs = printed_rhs(2, 1, 1)?;
    for n in -bound..=bound {
        for m in -bound..=bound {
            let r = verify_relation_with(&w, 1, 1, &rhs, n, m, level);
            println!("n={n:+} m={m:+}: {}", if r.passed { "ok" } else { "FAIL" });
            assert!(r.passed);
        }
    }
    Ok(())
}
