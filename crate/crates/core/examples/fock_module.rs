//! Root bosons of type A_{N-1}, the constrained fundamental bosons, and the
//! graded Fock module with its contravariant form.
//!
//! Run with `cargo run --example fock_module`.

use qwn::fock::{
    basis_at_level, fock_dimension, fundamental_commutator, shapovalov, BosonAlgebra, FockState, Mode, Oscillators,
    WeightVector,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rank = 3;
    let q = BosonAlgebra::quantum(rank);
    for n in 1..=2 {
        println!("[α^1_{n}, α^1_-{n}] = {}", q.commutator(1, 1, n)?);
        println!("[α^1_{n}, α^2_-{n}] = {}", q.commutator(1, 2, n)?);
        println!("[h^1_{n}, h^2_-{n}] = {}", fundamental_commutator(Mode::Quantum, rank, 1, 2, n));
    }

    for level in 0..=4 {
        assert_eq!(basis_at_level(rank, level).len(), fock_dimension(rank, level));
        println!("level {level}: {} states", fock_dimension(rank, level));
    }

    // ⟨γ|α^1_1 α^1_-1|γ⟩ is the commutator itself.
    let osc = Oscillators::from_algebra(BosonAlgebra::quantum(rank));
    let v = FockState::monomial(WeightVector::zero(rank), vec![(1, 1)]);
    let norm = shapovalov(&osc, &v, &v);
    assert_eq!(norm, q.commutator(1, 1, 1)?);
    println!("|α^1_-1|0⟩|² = {norm}");
    Ok(())
}
