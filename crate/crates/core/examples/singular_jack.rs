//! The classical chain: singular vectors of the W_N Fock module at α^±_{rs}
//! map to Jack polynomials with symbolic β, and the minus sign is the ω′
//! image of the plus sign.
//!
//! Run with `cargo run --release --example singular_jack`.

use qwn::fock::Mode;
use qwn::singular::{compare_with_oracle, partition_from_rs, singular_kernel, RSData, Sign};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (r, s) in [(vec![1], vec![1]), (vec![1], vec![2]), (vec![2], vec![1]), (vec![2, 1], vec![1, 1])] {
        for sign in [Sign::Plus, Sign::Minus] {
            let data = RSData::new(sign, r.clone(), s.clone())?;
            let lambda = partition_from_rs(&data);
            let kernel = singular_kernel(Mode::Classical, &data, 1)?;
            let ok = kernel
                .iter()
                .map(|v| compare_with_oracle(Mode::Classical, sign, v, &lambda).map(|c| c.passed))
                .collect::<Result<Vec<_>, _>>()?;
            println!("{} r={r:?} s={s:?}: λ={:?} kernel {} matches {ok:?}", sign.name(), lambda.parts(), kernel.len());
            assert!(!ok.is_empty() && ok.iter().all(|&b| b));
        }
    }
    Ok(())
}
