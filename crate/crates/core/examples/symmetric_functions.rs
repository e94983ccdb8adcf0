//! Macdonald, Schur and Jack polynomials in the monomial basis.
//!
//! Run with `cargo run --example symmetric_functions`.

use qwn::coeff::RatFunc;
use qwn::symfun::{jack_j, macdonald_p, partitions, schur, to_monomial, Partition};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lam = Partition::new(vec![2, 1]);
    let p = macdonald_p(&lam)?;
    println!("P_(2,1)(q,t) = {}", p.to_json());

    // At t = q the Macdonald polynomial collapses to the Schur function.
    let at_q_eq_t = p.map_coeffs(|c| c.specialize_beta(1))?;
    assert!(at_q_eq_t == to_monomial(&schur(&lam)));
    println!("P_(2,1)(q,q) = s_(2,1)");

    // Jack polynomials are monic in m_λ with symbolic beta = b^2.
    for mu in partitions(3) {
        println!("J_{:?}(beta) = {}", mu.parts(), jack_j(&mu)?.to_json());
    }
    let j2 = jack_j(&Partition::new(vec![2]))?;
    let two_beta = RatFunc::b_pow(2).mul_int(2);
    let expected = two_beta.div(&RatFunc::one().add(&RatFunc::b_pow(2)))?;
    assert_eq!(j2.coeff(&Partition::new(vec![1, 1])), expected);
    Ok(())
}
