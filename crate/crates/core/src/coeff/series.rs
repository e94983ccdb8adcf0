//! Truncated power series with rational-function coefficients.
//!
//! A series knows the order `T` through which its coefficients are exact.
//! `EXACT` marks a finite polynomial that is exact at every order; mixing
//! two orders keeps the smaller one.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::ratfunc::{RatFunc, B, S, U};
use super::CoeffError;

pub const EXACT: usize = usize::MAX;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Series {
    coeffs: Vec<RatFunc>,
    order: usize,
}

/// Series in `hbar'` over Q(b).
pub type HbarSeries = Series;
/// Series in an expansion variable `x` over Q(s, u).
pub type XSeries = Series;

impl Series {
    /// Coefficients `c_0..c_T`; anything beyond `order` is dropped.
    pub fn new(mut coeffs: Vec<RatFunc>, order: usize) -> Series {
        if order != EXACT && coeffs.len() > order + 1 {
            coeffs.truncate(order + 1);
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Series { coeffs, order }
    }

    pub fn exact(coeffs: Vec<RatFunc>) -> Series {
        Series::new(coeffs, EXACT)
    }

    pub fn zero() -> Series {
        Series::exact(Vec::new())
    }

    pub fn one() -> Series {
        Series::constant(RatFunc::one())
    }

    pub fn constant(c: RatFunc) -> Series {
        Series::exact(vec![c])
    }

    /// The expansion variable itself.
    pub fn var() -> Series {
        Series::exact(vec![RatFunc::zero(), RatFunc::one()])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order == EXACT
    }

    /// Same coefficients, truncated to `order` (never raises the order).
    pub fn truncate(&self, order: usize) -> Series {
        Series::new(self.coeffs.clone(), order.min(self.order))
    }

    pub fn coeff(&self, k: usize) -> RatFunc {
        assert!(k <= self.order, "coefficient {k} beyond truncation order {}", self.order);
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn neg(&self) -> Series {
        Series { coeffs: self.coeffs.iter().map(|c| c.neg()).collect(), order: self.order }
    }

    pub fn add(&self, o: &Series) -> Series {
        let order = self.order.min(o.order);
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            if order != EXACT && k > order {
                break;
            }
            let a = self.coeffs.get(k);
            let b = o.coeffs.get(k);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => RatFunc::zero(),
            });
        }
        Series::new(out, order)
    }

    pub fn sub(&self, o: &Series) -> Series {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Series) -> Series {
        let order = self.order.min(o.order);
        if self.is_zero() || o.is_zero() {
            return Series::new(Vec::new(), order);
        }
        let mut n = self.coeffs.len() + o.coeffs.len() - 1;
        if order != EXACT {
            n = n.min(order + 1);
        }
        let mut out = vec![RatFunc::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Series::new(out, order)
    }

    pub fn scale(&self, c: &RatFunc) -> Series {
        Series::new(self.coeffs.iter().map(|x| x.mul(c)).collect(), self.order)
    }

    /// Multiplies by `x^k`; the known order grows by `k`.
    pub fn shift(&self, k: usize) -> Series {
        let mut c = vec![RatFunc::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        let order = if self.order == EXACT { EXACT } else { self.order + k };
        Series::new(c, order)
    }

    fn need_finite(&self) -> Result<usize, CoeffError> {
        if self.order == EXACT {
            Err(CoeffError::Series("transcendental operation on an exact series needs a truncation order".into()))
        } else {
            Ok(self.order)
        }
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inv(&self) -> Result<Series, CoeffError> {
        let a0 = self.coeffs.first().cloned().unwrap_or_default();
        if a0.is_zero() {
            return Err(CoeffError::Series("inverse of a series with zero constant term".into()));
        }
        if self.coeffs.len() == 1 {
            return Ok(Series::new(vec![a0.inv()?], self.order));
        }
        let t = self.need_finite()?;
        let i0 = a0.inv()?;
        let mut b: Vec<RatFunc> = vec![i0.clone()];
        for k in 1..=t {
            let mut acc = RatFunc::zero();
            for j in 1..=k.min(self.coeffs.len() - 1) {
                acc = acc.add(&self.coeffs[j].mul(&b[k - j]));
            }
            b.push(acc.mul(&i0).neg());
        }
        Ok(Series::new(b, t))
    }

    /// `exp(a)` for `a` with zero constant term.
    pub fn exp(&self) -> Result<Series, CoeffError> {
        if self.coeffs.first().is_some_and(|c| !c.is_zero()) {
            return Err(CoeffError::Series("exp needs a series with zero constant term".into()));
        }
        if self.is_zero() {
            return Ok(Series::new(vec![RatFunc::one()], self.order));
        }
        let t = self.need_finite()?;
        // b' = a' b, so k b_k = sum_{j=1..k} j a_j b_{k-j}.
        let mut b = vec![RatFunc::one()];
        for k in 1..=t {
            let mut acc = RatFunc::zero();
            for j in 1..=k.min(self.coeffs.len() - 1) {
                if !self.coeffs[j].is_zero() {
                    acc = acc.add(&self.coeffs[j].mul(&b[k - j]).mul_int(j as i64));
                }
            }
            b.push(acc.mul(&RatFunc::from_frac(1, k as i64)));
        }
        Ok(Series::new(b, t))
    }

    /// `log(a)` for `a` with constant term 1.
    pub fn log(&self) -> Result<Series, CoeffError> {
        if !self.coeffs.first().is_some_and(|c| c.is_one()) {
            return Err(CoeffError::Series("log needs a series with constant term 1".into()));
        }
        if self.coeffs.len() == 1 {
            return Ok(Series::new(Vec::new(), self.order));
        }
        let t = self.need_finite()?;
        // a' = a l', so k l_k = k a_k - sum_{j=1..k-1} j l_j a_{k-j}.
        let mut l = vec![RatFunc::zero()];
        for k in 1..=t {
            let mut acc = self.coeff_or_zero(k).mul_int(k as i64);
            for j in 1..k {
                acc = acc.sub(&l[j].mul(&self.coeff_or_zero(k - j)).mul_int(j as i64));
            }
            l.push(acc.mul(&RatFunc::from_frac(1, k as i64)));
        }
        Ok(Series::new(l, t))
    }

    /// Square root with constant term 1 (the positive branch).
    pub fn sqrt(&self) -> Result<Series, CoeffError> {
        if !self.coeffs.first().is_some_and(|c| c.is_one()) {
            return Err(CoeffError::Series("sqrt needs a series with constant term 1".into()));
        }
        if self.coeffs.len() == 1 {
            return Ok(Series::new(vec![RatFunc::one()], self.order));
        }
        let t = self.need_finite()?;
        let half = RatFunc::from_frac(1, 2);
        let mut r = vec![RatFunc::one()];
        for k in 1..=t {
            let mut acc = self.coeff_or_zero(k);
            for i in 1..k {
                acc = acc.sub(&r[i].mul(&r[k - i]));
            }
            r.push(acc.mul(&half));
        }
        Ok(Series::new(r, t))
    }

    fn coeff_or_zero(&self, k: usize) -> RatFunc {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Applies a coefficient map (e.g. a specialization).
    pub fn map_coeffs(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Series {
        Series::new(self.coeffs.iter().map(f).collect(), self.order)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_canonical_string()).collect()
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*h")?,
                _ => write!(f, "({c})*h^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        if self.order != EXACT {
            write!(f, " + O(h^{})", self.order + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The weight `w` with `s^i u^j = exp(hbar' w)`: `q = e^{hbar'/b}` and
/// `t = e^{hbar' b}` give `w = i/(2b) + j b/2`.
fn hbar_weight(i: i32, j: i32) -> RatFunc {
    RatFunc::from_frac(i as i64, 2).mul(&RatFunc::b_pow(-1)).add(&RatFunc::from_frac(j as i64, 2).mul(&RatFunc::b_pow(1)))
}

fn poly_to_hbar(p: &super::poly::Poly, order: usize) -> Vec<RatFunc> {
    let mut out = vec![RatFunc::zero(); order + 1];
    for (m, c) in p.terms() {
        let e = m.exps();
        let base = RatFunc::from_rat(&BigRational::from_integer(c.to_big())).mul(&RatFunc::b_pow(e[B]));
        let w = hbar_weight(e[S], e[U]);
        let mut term = base;
        for (k, slot) in out.iter_mut().enumerate() {
            if k > 0 {
                term = term.mul(&w).mul(&RatFunc::from_rat(&BigRational::new(BigInt::from(1), BigInt::from(k))));
            }
            if term.is_zero() {
                break;
            }
            *slot = slot.add(&term);
        }
    }
    out
}

/// Expands a function of `s, u, b` as a series in `hbar'` through `order`.
pub fn to_hbar(f: &RatFunc, order: usize) -> Result<HbarSeries, CoeffError> {
    if f.is_zero() {
        return Ok(Series::new(Vec::new(), order));
    }
    // Find the valuation of the denominator at hbar' = 0.
    let mut v = 0;
    let mut probe = 4;
    loop {
        let d = poly_to_hbar(f.den(), probe);
        if let Some(k) = d.iter().position(|c| !c.is_zero()) {
            v = v.max(k);
            break;
        }
        probe *= 2;
        if probe > 256 {
            return Err(CoeffError::Series("denominator vanishes to high order at hbar'=0".into()));
        }
    }
    let n = poly_to_hbar(f.num(), order + v);
    let d = poly_to_hbar(f.den(), order + v);
    if n[..v].iter().any(|c| !c.is_zero()) {
        return Err(CoeffError::Series("pole at hbar'=0".into()));
    }
    let ns = Series::new(n[v..].to_vec(), order);
    let ds = Series::new(d[v..].to_vec(), order);
    Ok(ns.mul(&ds.inv()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(n: i64, d: i64) -> RatFunc {
        RatFunc::from_frac(n, d)
    }

    #[test]
    fn exp_of_x() {
        let x = Series::new(vec![RatFunc::zero(), RatFunc::one()], 3);
        let e = x.exp().unwrap();
        assert_eq!(e, Series::new(vec![rf(1, 1), rf(1, 1), rf(1, 2), rf(1, 6)], 3));
        assert_eq!(e.log().unwrap(), x);
        assert_eq!(Series::new(vec![], 3).exp().unwrap(), Series::new(vec![rf(1, 1)], 3));
        assert!(Series::new(vec![rf(1, 1)], 3).exp().is_err());
    }

    #[test]
    fn sqrt_binomial() {
        let a = Series::new(vec![rf(1, 1), rf(2, 1)], 2);
        let r = a.sqrt().unwrap();
        assert_eq!(r, Series::new(vec![rf(1, 1), rf(1, 1), rf(-1, 2)], 2));
        assert_eq!(r.mul(&r), a);
        assert!(Series::new(vec![rf(2, 1)], 2).sqrt().is_err());
    }

    #[test]
    fn hbar_expansion() {
        // q = s^2 = exp(hbar'/b)
        let q = to_hbar(&RatFunc::q_half(2), 2).unwrap();
        let binv = RatFunc::b_pow(-1);
        assert_eq!(q.coeff(1), binv);
        assert_eq!(q.coeff(2), binv.mul(&binv).mul(&rf(1, 2)));
        // (q - 1)/(t - 1) -> 1/b^2 at leading order
        let one = RatFunc::one();
        let x = RatFunc::q_half(2).sub(&one).div(&RatFunc::t_half(2).sub(&one)).unwrap();
        let xs = to_hbar(&x, 1).unwrap();
        assert_eq!(xs.coeff(0), RatFunc::b_pow(-2));
    }
}
