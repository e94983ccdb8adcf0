//! Mode matrices of the q-deformed currents between graded Fock slices, and
//! their invariance under the involutions θ, ω and ω′.
//!
//! Run with `cargo run --release --example dump_modes`.

use qwn::cli::cmd_dump_modes;
use qwn::currents::{involution_invariant, Involution};
use qwn::fock::Mode;
use qwn::relations::default_momentum;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // W^1_{-1}: level 0 to level 1 of the rank-3 module.
    let report = cmd_dump_modes(3, Mode::Quantum, 1, -1, 0)?;
    println!("{}", serde_json::to_string_pretty(&report.json)?);

    let gamma = default_momentum(3);
    for which in [Involution::Theta, Involution::Omega, Involution::OmegaPrime] {
        for (i, k) in [(1, 0), (1, -1), (2, 1)] {
            assert!(involution_invariant(which, 3, &gamma, i, k, 1)?, "{which:?} W^{i}_{k}");
        }
        println!("{which:?}: W^i mode matrices invariant through level 1");
    }
    Ok(())
}
