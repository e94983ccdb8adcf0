//! At t = q^β with integer β the screening-current integral is a constant
//! term. It reproduces the kernel vector up to one scalar.
//!
//! Run with `cargo run --release --example integral_representation`.

use qwn::fock::Mode;
use qwn::singular::{integral_singular_vector, singular_kernel, specialize_vector, vector_ratio, RSData};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (r, s) in [(1, 1), (1, 2), (2, 1)] {
        let data = RSData::plus(vec![r], vec![s])?;
        let kernel = singular_kernel(Mode::Quantum, &data, 1)?;
        for beta in 1..=2 {
            let integral = integral_singular_vector(&data, beta)?;
            let solved = specialize_vector(&kernel[0].terms, beta)?;
            let ratio = vector_ratio(&integral.terms, &solved).ok_or("not proportional")?;
            println!("r={r} s={s} β={beta}: integral / kernel = {ratio}");
        }
    }
    Ok(())
}
