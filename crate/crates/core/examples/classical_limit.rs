//! The q → 1 limit with q = e^{ħ'/b}, t = e^{ħ' b}: the q-Miura identity,
//! expanded in ħ' on the classical Fock module, reproduces the classical
//! Miura transformation at order N.
//!
//! Run with `cargo run --release --example classical_limit`.

use qwn::climit::{dtilde, substituted_commutator, quantum_commutator_series, verify_appendix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // d̃ fixes how the quantum bosons sit inside the classical ones.
    println!("d̃ for N=2, n=1: {}", dtilde(2, 1, 4)?.to_json());
    for n in 1..=2 {
        let a = substituted_commutator(3, 1, 2, n, 4)?;
        let b = quantum_commutator_series(3, 1, 2, n, 4)?;
        assert_eq!(a, b);
    }
    println!("[h^1_n, h^2_-n] rebuilt from d̃ agrees through ħ'^4");

    for rank in 2..=3 {
        let report = verify_appendix(rank, rank + 1, 1)?;
        for c in &report.checks {
            println!("N={rank} {:<40} K={:+} level {}: {}", c.name, c.k, c.level, if c.passed { "ok" } else { "FAIL" });
        }
        assert!(report.passed());
    }
    Ok(())
}
