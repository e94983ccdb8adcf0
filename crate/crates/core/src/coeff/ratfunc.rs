//! Rational functions in `s = q^{1/2}`, `u = t^{1/2}` and `b = sqrt(beta)`.
//!
//! Canonical form: `num / den` with `den` an ordinary integer polynomial
//! free of monomial factors and with positive leading coefficient, `num` an
//! integer Laurent polynomial, the two coprime and with coprime integer
//! contents. Equal values therefore have identical representations.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::gcd::gcd;
use super::int::Int;
use super::poly::{mono_string, Mono, Poly, NVARS, VAR_NAMES};
use super::CoeffError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

/// Element of Q(s, u); the same type as [`RatFunc`], named for intent.
pub type RatFuncQT = RatFunc;
/// Element of Q(b); the same type as [`RatFunc`], named for intent.
pub type RatFuncB = RatFunc;

pub const S: usize = 0;
pub const U: usize = 1;
pub const B: usize = 2;

/// Splits `p` as `m * p0` with `p0` ordinary and monomial-free.
fn split_mono(p: &Poly) -> (Mono, Poly) {
    let m = p.min_mono();
    (m, p.mul_mono(m.inv()))
}

/// Gcd of a Laurent numerator with an ordinary monomial-free denominator.
fn gcd_nd(n: &Poly, d: &Poly) -> Poly {
    if d.is_constant() {
        let c = n.content().gcd(&d.constant_value().unwrap());
        return Poly::constant(c);
    }
    let (_, n0) = split_mono(n);
    gcd(&n0, d)
}

fn div_laurent(n: &Poly, g: &Poly) -> Poly {
    if g.is_one() {
        return n.clone();
    }
    if let Some(c) = g.constant_value() {
        return n.div_int(&c);
    }
    let (m, n0) = split_mono(n);
    n0.div_exact(g).expect("gcd divides numerator").mul_mono(m)
}

fn div_ord(d: &Poly, g: &Poly) -> Poly {
    if g.is_one() {
        return d.clone();
    }
    if let Some(c) = g.constant_value() {
        return d.div_int(&c);
    }
    d.div_exact(g).expect("gcd divides denominator")
}

impl RatFunc {
    pub fn zero() -> RatFunc {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> RatFunc {
        RatFunc { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_int(v: i64) -> RatFunc {
        RatFunc { num: Poly::from(v), den: Poly::one() }
    }

    pub fn from_rat(r: &BigRational) -> RatFunc {
        RatFunc { num: Poly::from(r.numer().clone()), den: Poly::from(r.denom().clone()) }
    }

    pub fn from_frac(n: i64, d: i64) -> RatFunc {
        RatFunc::from_rat(&BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        RatFunc { num: p, den: Poly::one() }
    }

    /// The Laurent monomial `s^es u^eu b^eb`.
    pub fn mono(es: i32, eu: i32, eb: i32) -> RatFunc {
        RatFunc::from_poly(Poly::monomial(Mono::new([es, eu, eb]), Int::ONE))
    }

    pub fn var(i: usize) -> RatFunc {
        RatFunc::from_poly(Poly::var(i))
    }

    /// `q^{k/2} = s^k`.
    pub fn q_half(k: i32) -> RatFunc {
        RatFunc::mono(k, 0, 0)
    }

    /// `t^{k/2} = u^k`.
    pub fn t_half(k: i32) -> RatFunc {
        RatFunc::mono(0, k, 0)
    }

    /// `p^{k/2} = s^k u^{-k}`.
    pub fn p_half(k: i32) -> RatFunc {
        RatFunc::mono(k, -k, 0)
    }

    /// `b^k`, with `beta = b^2`.
    pub fn b_pow(k: i32) -> RatFunc {
        RatFunc::mono(0, 0, k)
    }

    pub fn new(num: Poly, den: Poly) -> Result<RatFunc, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let (md, d0) = split_mono(&den);
        let n0 = num.mul_mono(md.inv());
        let g = gcd_nd(&n0, &d0);
        let mut n = div_laurent(&n0, &g);
        let mut d = div_ord(&d0, &g);
        if d.lc().is_negative() {
            n = n.neg();
            d = d.neg();
        }
        Ok(RatFunc { num: n, den: d })
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Rational constant value, if the function is constant.
    pub fn as_rat(&self) -> Option<BigRational> {
        let n = self.num.constant_value()?;
        let d = self.den.constant_value()?;
        Some(BigRational::new(n.to_big(), d.to_big()))
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.num.uses_var(v) || self.den.uses_var(v)
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc { num: self.num.add(&o.num), den: Poly::one() };
        }
        if self.den == o.den {
            let n = self.num.add(&o.num);
            if n.is_zero() {
                return RatFunc::zero();
            }
            let g = gcd_nd(&n, &self.den);
            return self.finish(div_laurent(&n, &g), div_ord(&self.den, &g));
        }
        let g = gcd(&self.den, &o.den);
        let b1 = div_ord(&self.den, &g);
        let d1 = div_ord(&o.den, &g);
        let n = self.num.mul(&d1).add(&o.num.mul(&b1));
        if n.is_zero() {
            return RatFunc::zero();
        }
        let g2 = if g.is_one() { g } else { gcd_nd(&n, &g) };
        let n = div_laurent(&n, &g2);
        let den = b1.mul(&div_ord(&o.den, &g2));
        self.finish(n, den)
    }

    fn finish(&self, n: Poly, d: Poly) -> RatFunc {
        if d.lc().is_negative() {
            RatFunc { num: n.neg(), den: d.neg() }
        } else {
            RatFunc { num: n, den: d }
        }
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc { num: self.num.mul(&o.num), den: Poly::one() };
        }
        let g1 = gcd_nd(&self.num, &o.den);
        let g2 = gcd_nd(&o.num, &self.den);
        let n = div_laurent(&self.num, &g1).mul(&div_laurent(&o.num, &g2));
        let d = div_ord(&self.den, &g2).mul(&div_ord(&o.den, &g1));
        self.finish(n, d)
    }

    /// `Σ a_k b_k` with one normalization per distinct reduced denominator
    /// instead of one per term.
    pub fn sum_products<'a>(terms: impl IntoIterator<Item = (&'a RatFunc, &'a RatFunc)>) -> RatFunc {
        let mut groups: HashMap<Poly, Poly> = HashMap::new();
        let mut poly = Poly::zero();
        for (a, b) in terms {
            let x = a.mul(b);
            if x.is_zero() {
                continue;
            }
            if x.den.is_one() {
                poly = poly.add(&x.num);
                continue;
            }
            match groups.get_mut(&x.den) {
                Some(n) => *n = n.add(&x.num),
                None => {
                    groups.insert(x.den, x.num);
                }
            }
        }
        let mut acc = RatFunc::from_poly(poly);
        for (d, n) in groups {
            if !n.is_zero() {
                acc = acc.add(&RatFunc::new(n, d).expect("nonzero denominator"));
            }
        }
        acc
    }

    pub fn mul_int(&self, c: i64) -> RatFunc {
        self.mul(&RatFunc::from_int(c))
    }

    pub fn inv(&self) -> Result<RatFunc, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        let (m, n0) = split_mono(&self.num);
        let r = RatFunc { num: self.den.mul_mono(m.inv()), den: n0 };
        Ok(r.finish(r.num.clone(), r.den.clone()))
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc, CoeffError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, k: i32) -> RatFunc {
        if k < 0 {
            return self.inv().expect("negative power of zero").pow(-k);
        }
        if self.num.is_monomial() && self.den.is_one() {
            let (m, c) = &self.num.terms()[0];
            return RatFunc::from_poly(Poly::monomial(m.pow(k), c.pow(k as u32)));
        }
        RatFunc { num: self.num.pow(k as u32), den: self.den.pow(k as u32) }
    }

    /// Substitutes monomials for monomials via a map on exponent vectors.
    pub fn map_monos(&self, f: impl Fn([i32; NVARS]) -> [i32; NVARS] + Copy) -> Result<RatFunc, CoeffError> {
        RatFunc::new(self.num.map_monos(f), self.den.map_monos(f))
    }

    /// Replaces `t` by `q^beta`, i.e. `u -> s^beta`.
    pub fn specialize_beta(&self, beta: u32) -> Result<RatFunc, CoeffError> {
        let b = beta as i32;
        let f = move |e: [i32; NVARS]| [e[0] + b * e[1], 0, e[2]];
        let den = self.den.map_monos(f);
        if den.is_zero() {
            return Err(CoeffError::SpecializationPole);
        }
        RatFunc::new(self.num.map_monos(f), den)
    }

    /// Evaluates at a rational point; `None` at a pole.
    pub fn eval(&self, pt: &[BigRational; NVARS]) -> Option<BigRational> {
        let d = self.den.eval_rat(pt);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_rat(pt) / d)
    }

    /// Canonical string; negative exponents are cleared into the
    /// denominator, e.g. `(s^2-u^2)/(s*u)`.
    pub fn to_canonical_string(&self) -> String {
        self.to_string_with(&VAR_NAMES)
    }

    pub fn to_string_with(&self, names: &[&str; NVARS]) -> String {
        let lo = self.num.min_mono();
        let e = lo.exps();
        let shift = Mono::new([(-e[0]).max(0), (-e[1]).max(0), (-e[2]).max(0)]);
        let num = self.num.mul_mono(shift);
        if shift.is_one() && self.den.is_one() {
            return num.to_string_with(names);
        }
        let ns = num.to_string_with(names);
        let ns = if num.len() > 1 { format!("({ns})") } else { ns };
        let ds = if self.den.is_one() {
            mono_string(shift, names)
        } else if shift.is_one() {
            self.den.to_string_with(names)
        } else {
            self.den.mul_mono(shift).to_string_with(names)
        };
        let den = self.den.mul_mono(shift);
        let simple = den.len() == 1 && {
            let (m, c) = &den.terms()[0];
            m.is_one() || (c.is_one() && m.exps().iter().filter(|&&x| x != 0).count() == 1)
        };
        if simple {
            format!("{ns}/{ds}")
        } else {
            format!("{ns}/({ds})")
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Default for RatFunc {
    fn default() -> RatFunc {
        RatFunc::zero()
    }
}

impl From<i64> for RatFunc {
    fn from(v: i64) -> RatFunc {
        RatFunc::from_int(v)
    }
}

/// Evaluation point helper for tests and sanity checks.
pub fn rat_point(vals: [(i64, i64); NVARS]) -> [BigRational; NVARS] {
    vals.map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}



#[cfg(test)]
mod tests {
    use super::*;

    fn s() -> RatFunc {
        RatFunc::var(S)
    }
    fn u() -> RatFunc {
        RatFunc::var(U)
    }

    #[test]
    fn normalize_examples() {
        let n = s().mul(&s()).sub(&u().mul(&u()));
        let d = s().sub(&u());
        assert_eq!(n.div(&d).unwrap(), s().add(&u()));
        let su = s().mul(&u());
        assert!(su.div(&su).unwrap().is_one());
        assert!(matches!(RatFunc::new(Poly::one(), Poly::zero()), Err(CoeffError::DivisionByZero)));
    }

    #[test]
    fn canonical_strings() {
        let x = s().mul(&s()).sub(&u().mul(&u())).div(&s().mul(&u())).unwrap();
        assert_eq!(x.to_string(), "(s^2-u^2)/(s*u)");
        assert_eq!(RatFunc::from_frac(3, 6).to_string(), "1/2");
        assert_eq!(RatFunc::one().div(&s()).unwrap().to_string(), "1/s");
        let y = RatFunc::one().div(&s().add(&RatFunc::one())).unwrap();
        assert_eq!(y.to_string(), "1/(s+1)");
    }

    #[test]
    fn specialization() {
        let q = RatFunc::mono(2, 0, 0);
        let t = RatFunc::mono(0, 2, 0);
        let one = RatFunc::one();
        let x = one.sub(&t).div(&one.sub(&q)).unwrap();
        assert!(x.specialize_beta(1).unwrap().is_one());
        assert_eq!(x.specialize_beta(2).unwrap(), one.add(&q));
        let bad = one.div(&s().sub(&u())).unwrap();
        assert!(matches!(bad.specialize_beta(1), Err(CoeffError::SpecializationPole)));
    }
}
