//! The three quadratic relations of q-W_3, each on the mode pair given on
//! the command line (default `0 0`), through Fock level 1.
//!
//! Run with `cargo run --release --example q_w3 -- 1 -1`.

use qwn::relations::{default_momentum, printed_rhs, verify_relation_with, window_level, QuantumW};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<i64> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let (n, m) = match args.as_slice() {
        [] => (0, 0),
        [n, m] => (*n, *m),
        _ => return Err("expected two mode numbers".into()),
    };
    let level = 1;
    let w = QuantumW::new(3, default_momentum(3), window_level(level, n, m))?;
    for (i, j) in [(1, 1), (1, 2), (2, 2)] {
        let r = verify_relation_with(&w, i, j, &printed_rhs(3, i, j)?, n, m, level);
        println!("W^{i} W^{j} at n={n} m={m}: {}", if r.passed { "ok" } else { "FAIL" });
        assert!(r.passed);
    }
    Ok(())
}
