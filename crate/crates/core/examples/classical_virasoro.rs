//! The classical Miura currents: L = -W̄² closes into a Virasoro algebra with
//! central charge N - 1 - 12 α₀² ρ², checked mode by mode.
//!
//! Run with `cargo run --release --example classical_virasoro`.

use qwn::currents::central_charge;
use qwn::relations::verify_classical_virasoro;

fn main() {
    for rank in 2..=4 {
        println!("N={rank}: c = {}", central_charge(rank));
        for n in -2..=2i64 {
            for m in -2..=2i64 {
                assert!(verify_classical_virasoro(rank, n, m, 2), "N={rank} n={n} m={m}");
            }
        }
        println!("  [L_n, L_m] verified for |n|,|m| <= 2 through level 2");
    }
}
