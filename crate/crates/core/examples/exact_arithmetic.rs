//! Rational functions in `s = q^{1/2}`, `u = t^{1/2}`, `b = sqrt(beta)` and
//! truncated series over them.
//!
//! Run with `cargo run --example exact_arithmetic`.

use qwn::coeff::{parse_ratfunc, RatFunc, Series};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // (q-1)/(s-1) cancels to s+1: equal values share one canonical form.
    let x = parse_ratfunc("(q-1)/(s-1)")?;
    println!("(q-1)/(s-1) = {x}");
    assert_eq!(x, parse_ratfunc("s+1")?);

    // The q-Virasoro prefactor (q^{1/2}-q^{-1/2})(t^{1/2}-t^{-1/2})/(p^{1/2}-p^{-1/2}).
    let c = RatFunc::q_half(1)
        .sub(&RatFunc::q_half(-1))
        .mul(&RatFunc::t_half(1).sub(&RatFunc::t_half(-1)))
        .div(&RatFunc::p_half(1).sub(&RatFunc::p_half(-1)))?;
    println!("prefactor = {c}");

    // t = q^beta with beta = 2 turns u into s^2.
    println!("prefactor at t = q^2: {}", c.specialize_beta(2)?);

    // exp(log(1 + b x)) round-trips through order 5.
    let f = Series::new(vec![RatFunc::one(), RatFunc::b_pow(1)], 5);
    let back = f.log()?.exp()?;
    println!("exp(log(1 + b x)) = {:?}", back.to_strings());
    assert_eq!(back.sub(&f).valuation(), None);
    Ok(())
}
