//! The singular vector of the q-deformed module at α^+_{rs}, mapped to a
//! symmetric function, is proportional to a Macdonald polynomial.
//!
//! Run with `cargo run --release --example singular_macdonald -- 2,1 1,1`
//! for `r = (2,1)`, `s = (1,1)`; the default is `r = 1`, `s = 2`.

use qwn::fock::Mode;
use qwn::singular::{compare_with_oracle, partition_from_rs, singular_kernel, RSData, Sign};

fn parse(s: &str) -> Result<Vec<usize>, std::num::ParseIntError> {
    s.split(',').map(str::parse).collect()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (r, s) = match args.as_slice() {
        [] => (vec![1], vec![2]),
        [r, s] => (parse(r)?, parse(s)?),
        _ => return Err("expected r and s as comma-separated lists".into()),
    };
    let data = RSData::plus(r, s)?;
    let lambda = partition_from_rs(&data);
    println!("N={} level {} partition {:?}", data.rank(), data.level(), lambda.parts());

    let kernel = singular_kernel(Mode::Quantum, &data, 1)?;
    println!("kernel dimension {}", kernel.len());
    for v in &kernel {
        let c = compare_with_oracle(Mode::Quantum, Sign::Plus, v, &lambda)?;
        println!("image / P_λ = {}", c.ratio.as_ref().map_or("none".into(), |x| x.to_string()));
        assert!(c.passed);
    }
    Ok(())
}
