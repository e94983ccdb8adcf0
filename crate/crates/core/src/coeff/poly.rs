//! Sparse Laurent polynomials in the three adjoined variables `s`, `u`, `b`
//! with integer coefficients.
//!
//! A monomial is packed into a `u64` as four 16-bit fields
//! `[total degree][e_s][e_u][e_b]`, each biased by `OFF`. Integer comparison
//! of the packed words is then graded-lex order with `s > u > b`, and
//! monomial multiplication is a single add.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::int::Int;

pub const NVARS: usize = 3;
pub const VAR_NAMES: [&str; NVARS] = ["s", "u", "b"];

const OFF: u64 = 1 << 15;
const OFFSET_ALL: u64 = OFF << 48 | OFF << 32 | OFF << 16 | OFF;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono(u64);

impl Mono {
    pub const ONE: Mono = Mono(OFFSET_ALL);

    pub fn new(e: [i32; NVARS]) -> Mono {
        let d: i32 = e.iter().sum();
        for &x in e.iter().chain(std::iter::once(&d)) {
            assert!(x.unsigned_abs() < OFF as u32, "exponent out of range");
        }
        let f = |x: i32| (x as i64 + OFF as i64) as u64;
        Mono(f(d) << 48 | f(e[0]) << 32 | f(e[1]) << 16 | f(e[2]))
    }

    pub fn var(i: usize, e: i32) -> Mono {
        let mut v = [0; NVARS];
        v[i] = e;
        Mono::new(v)
    }

    #[inline]
    pub fn exp(self, i: usize) -> i32 {
        let shift = 32 - 16 * i as u64;
        (((self.0 >> shift) & 0xffff) as i64 - OFF as i64) as i32
    }

    pub fn exps(self) -> [i32; NVARS] {
        [self.exp(0), self.exp(1), self.exp(2)]
    }

    pub fn deg(self) -> i32 {
        (((self.0 >> 48) & 0xffff) as i64 - OFF as i64) as i32
    }

    #[inline]
    pub fn mul(self, o: Mono) -> Mono {
        Mono(self.0.wrapping_add(o.0).wrapping_sub(OFFSET_ALL))
    }

    #[inline]
    pub fn div(self, o: Mono) -> Mono {
        Mono(self.0.wrapping_add(OFFSET_ALL).wrapping_sub(o.0))
    }

    pub fn inv(self) -> Mono {
        Mono::ONE.div(self)
    }

    pub fn pow(self, k: i32) -> Mono {
        let e = self.exps();
        Mono::new([e[0] * k, e[1] * k, e[2] * k])
    }

    pub fn is_one(self) -> bool {
        self == Mono::ONE
    }

    /// True when all exponents are non-negative.
    pub fn is_ordinary(self) -> bool {
        self.exps().iter().all(|&e| e >= 0)
    }

    pub fn divides(self, o: Mono) -> bool {
        let (a, b) = (self.exps(), o.exps());
        (0..NVARS).all(|i| a[i] <= b[i])
    }

    pub fn min(self, o: Mono) -> Mono {
        let (a, b) = (self.exps(), o.exps());
        Mono::new([a[0].min(b[0]), a[1].min(b[1]), a[2].min(b[2])])
    }

    pub fn max(self, o: Mono) -> Mono {
        let (a, b) = (self.exps(), o.exps());
        Mono::new([a[0].max(b[0]), a[1].max(b[1]), a[2].max(b[2])])
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps())
    }
}

/// Terms are kept sorted by descending monomial with nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Mono, Int)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Int::ONE)
    }

    pub fn constant(c: Int) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(Mono::ONE, c)] }
        }
    }

    pub fn monomial(m: Mono, c: Int) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn var(i: usize) -> Poly {
        Poly::monomial(Mono::var(i, 1), Int::ONE)
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(mut t: Vec<(Mono, Int)>) -> Poly {
        t.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Mono, Int)> = Vec::with_capacity(t.len());
        for (m, c) in t {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if lc.is_zero() {
                out.pop();
            }
        }
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Mono, Int)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_value(&self) -> Option<Int> {
        match self.terms.len() {
            0 => Some(Int::ZERO),
            1 if self.terms[0].0.is_one() => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    pub fn lm(&self) -> Mono {
        self.terms[0].0
    }

    pub fn lc(&self) -> &Int {
        &self.terms[0].1
    }

    pub fn coeff(&self, m: Mono) -> Int {
        match self.terms.binary_search_by(|t| m.cmp(&t.0)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Int::ZERO,
        }
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect() }
    }

    fn merge(&self, o: &Poly, negate: bool) -> Poly {
        let (a, b) = (&self.terms, &o.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { b[j].1.neg() } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { a[i].1.sub(&b[j].1) } else { a[i].1.add(&b[j].1) };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate { t.1.neg() } else { t.1.clone() };
            out.push((t.0, c));
        }
        Poly { terms: out }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        self.merge(o, false)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        if o.is_zero() {
            return self.clone();
        }
        self.merge(o, true)
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if o.terms.len() == 1 {
            return self.mul_term(o.terms[0].0, &o.terms[0].1);
        }
        if self.terms.len() == 1 {
            return o.mul_term(self.terms[0].0, &self.terms[0].1);
        }
        if let Some(p) = self.mul_dense(o) {
            return p;
        }
        let mut t = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                t.push((ma.mul(*mb), ca.mul(cb)));
            }
        }
        Poly::from_terms(t)
    }

    /// Product accumulated in a dense exponent box, when the box is not much
    /// larger than the number of term products. Products of the polynomials
    /// met here collapse onto few monomials, so only those get sorted.
    fn mul_dense(&self, o: &Poly) -> Option<Poly> {
        let (la, ha) = (self.exp_box(), o.exp_box());
        let mut lo = [0i32; NVARS];
        let mut width = [0usize; NVARS];
        let mut vol = 1usize;
        for v in 0..NVARS {
            lo[v] = la.0[v] + ha.0[v];
            width[v] = (la.1[v] + ha.1[v] - lo[v] + 1) as usize;
            vol = vol.saturating_mul(width[v]);
        }
        if vol > 4 * self.terms.len() * o.terms.len() + 64 {
            return None;
        }
        let index = |e: [i32; NVARS]| {
            let mut k = 0usize;
            for v in 0..NVARS {
                k = k * width[v] + (e[v] - lo[v]) as usize;
            }
            k
        };
        let mut acc = vec![Int::ZERO; vol];
        let mut used = Vec::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m = ma.mul(*mb);
                let k = index(m.exps());
                if acc[k].is_zero() {
                    used.push((m, k));
                }
                acc[k] = acc[k].add(&ca.mul(cb));
            }
        }
        used.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        used.dedup_by_key(|x| x.1);
        Some(Poly {
            terms: used
                .into_iter()
                .filter_map(|(m, k)| {
                    let c = std::mem::replace(&mut acc[k], Int::ZERO);
                    (!c.is_zero()).then_some((m, c))
                })
                .collect(),
        })
    }

    /// Componentwise minimum and maximum exponents.
    fn exp_box(&self) -> ([i32; NVARS], [i32; NVARS]) {
        let mut lo = [i32::MAX; NVARS];
        let mut hi = [i32::MIN; NVARS];
        for (m, _) in &self.terms {
            let e = m.exps();
            for v in 0..NVARS {
                lo[v] = lo[v].min(e[v]);
                hi[v] = hi[v].max(e[v]);
            }
        }
        (lo, hi)
    }

    pub fn mul_term(&self, m: Mono, c: &Int) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(a, x)| (a.mul(m), x.mul(c))).collect() }
    }

    pub fn mul_mono(&self, m: Mono) -> Poly {
        Poly { terms: self.terms.iter().map(|(a, x)| (a.mul(m), x.clone())).collect() }
    }

    pub fn scale(&self, c: &Int) -> Poly {
        self.mul_term(Mono::ONE, c)
    }

    /// Divides every coefficient by `c`, which must divide all of them.
    pub fn div_int(&self, c: &Int) -> Poly {
        if c.is_one() {
            return self.clone();
        }
        Poly { terms: self.terms.iter().map(|(m, x)| (*m, x.div(c))).collect() }
    }

    pub fn pow(&self, mut k: u32) -> Poly {
        let mut base = self.clone();
        let mut r = Poly::one();
        while k > 0 {
            if k & 1 == 1 {
                r = r.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        r
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> Int {
        let mut g = Int::ZERO;
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Componentwise minimum of exponents (the monomial gcd).
    pub fn min_mono(&self) -> Mono {
        let mut it = self.terms.iter();
        let first = it.next().map(|t| t.0).unwrap_or(Mono::ONE);
        it.fold(first, |a, t| a.min(t.0))
    }

    pub fn max_mono(&self) -> Mono {
        let mut it = self.terms.iter();
        let first = it.next().map(|t| t.0).unwrap_or(Mono::ONE);
        it.fold(first, |a, t| a.max(t.0))
    }

    pub fn is_ordinary(&self) -> bool {
        self.terms.iter().all(|t| t.0.is_ordinary())
    }

    pub fn max_abs_coeff(&self) -> Int {
        self.terms.iter().map(|t| t.1.abs()).max().unwrap_or(Int::ZERO)
    }

    pub fn degree_in(&self, v: usize) -> i32 {
        self.terms.iter().map(|t| t.0.exp(v)).max().unwrap_or(0)
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.iter().any(|t| t.0.exp(v) != 0)
    }

    pub fn var_mask(&self) -> [bool; NVARS] {
        let mut m = [false; NVARS];
        for t in &self.terms {
            for (v, slot) in m.iter_mut().enumerate() {
                if t.0.exp(v) != 0 {
                    *slot = true;
                }
            }
        }
        m
    }

    /// Splits into coefficients of powers of variable `v`, sorted by
    /// descending power. Coefficients no longer involve `v`.
    pub fn coeffs_in(&self, v: usize) -> Vec<(i32, Poly)> {
        let mut buckets: Vec<(i32, Vec<(Mono, Int)>)> = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            let rest = m.div(Mono::var(v, e));
            match buckets.iter_mut().find(|b| b.0 == e) {
                Some(b) => b.1.push((rest, c.clone())),
                None => buckets.push((e, vec![(rest, c.clone())])),
            }
        }
        buckets.sort_by(|a, b| b.0.cmp(&a.0));
        buckets.into_iter().map(|(e, t)| (e, Poly::from_terms(t))).collect()
    }

    /// Substitutes an integer for variable `v`.
    pub fn eval_var_int(&self, v: usize, x: &Int) -> Poly {
        let mut t = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.exp(v);
            assert!(e >= 0, "integer substitution into a Laurent exponent");
            t.push((m.div(Mono::var(v, e)), c.mul(&x.pow(e as u32))));
        }
        Poly::from_terms(t)
    }

    /// Applies a linear map to every exponent vector.
    pub fn map_monos(&self, f: impl Fn([i32; NVARS]) -> [i32; NVARS]) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (Mono::new(f(m.exps())), c.clone())).collect())
    }

    pub fn eval_rat(&self, pt: &[BigRational; NVARS]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = BigRational::from_integer(c.to_big());
            for (v, x) in pt.iter().enumerate() {
                let e = m.exp(v);
                if e != 0 {
                    term *= num_traits::pow::Pow::pow(x, e);
                }
            }
            acc += term;
        }
        acc
    }

    /// Evaluation modulo the prime `p`; `pt` entries must be invertible
    /// when negative exponents occur.
    pub fn eval_mod(&self, p: u64, pt: &[u64; NVARS]) -> u64 {
        let mut acc: u64 = 0;
        for (m, c) in &self.terms {
            let mut term = c.mod_u64(p);
            for (v, &x) in pt.iter().enumerate() {
                let e = m.exp(v);
                if e > 0 {
                    term = mulmod(term, powmod(x, e as u64, p), p);
                } else if e < 0 {
                    term = mulmod(term, powmod(invmod(x, p), (-e) as u64, p), p);
                }
            }
            acc = (acc + term) % p;
        }
        acc
    }

    /// Exact quotient `self / d` for ordinary polynomials, or `None` when
    /// `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by zero");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if d.terms.len() == 1 {
            let (m, c) = &d.terms[0];
            let mut t = Vec::with_capacity(self.terms.len());
            for (a, x) in &self.terms {
                if !c.divides(x) {
                    return None;
                }
                let q = a.div(*m);
                if !q.is_ordinary() {
                    return None;
                }
                t.push((q, x.div(c)));
            }
            return Some(Poly { terms: t });
        }
        let (dm, dc) = (d.lm(), d.lc().clone());
        // Exact division forces deg_v(q) = deg_v(self) - deg_v(d) per variable.
        let bound = self.max_mono().div(d.max_mono());
        if !bound.is_ordinary() {
            return None;
        }
        let mut r = self.clone();
        let mut q = Vec::new();
        while !r.is_zero() {
            let (rm, rc) = (r.lm(), r.lc().clone());
            if !dm.divides(rm) || !dc.divides(&rc) {
                return None;
            }
            let tm = rm.div(dm);
            if !tm.divides(bound) {
                return None;
            }
            let tc = rc.div(&dc);
            r = r.sub(&d.mul_term(tm, &tc));
            q.push((tm, tc));
        }
        Some(Poly { terms: q })
    }

    pub fn to_string_with(&self, names: &[&str; NVARS]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push(if neg { '-' } else { '+' });
            }
            let mono = mono_string(*m, names);
            if mono.is_empty() {
                s.push_str(&a.to_string());
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&a.to_string());
                s.push('*');
                s.push_str(&mono);
            }
        }
        s
    }
}

pub(crate) fn mono_string(m: Mono, names: &[&str; NVARS]) -> String {
    let mut parts = Vec::new();
    for (v, name) in names.iter().enumerate() {
        let e = m.exp(v);
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ if e < 0 => parts.push(format!("{name}^({e})")),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&VAR_NAMES))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Poly {
    fn from(v: i64) -> Poly {
        Poly::constant(Int::from(v))
    }
}

impl From<BigInt> for Poly {
    fn from(v: BigInt) -> Poly {
        Poly::constant(Int::from(v))
    }
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

pub(crate) fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}


#[cfg(test)]
mod tests {
    use super::*;

    fn s() -> Poly {
        Poly::var(0)
    }
    fn u() -> Poly {
        Poly::var(1)
    }

    #[test]
    fn mono_order_is_grlex() {
        let a = Mono::new([2, 0, 0]);
        let b = Mono::new([1, 1, 0]);
        let c = Mono::new([0, 0, 3]);
        assert!(c > a && a > b);
        assert_eq!(a.mul(Mono::new([-2, 1, 0])), Mono::new([0, 1, 0]));
        assert_eq!(Mono::new([-3, 4, -1]).exps(), [-3, 4, -1]);
        assert_eq!(Mono::new([-3, 4, -1]).deg(), 0);
    }

    #[test]
    fn arithmetic() {
        let a = s().add(&u());
        let b = s().sub(&u());
        let p = a.mul(&b);
        assert_eq!(p, s().mul(&s()).sub(&u().mul(&u())));
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&s()), None);
        assert_eq!(a.pow(3).div_exact(&a.pow(2)), Some(a.clone()));
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn printing() {
        let p = s().mul(&s()).sub(&u().mul(&u()).scale(&Int::from(3)));
        assert_eq!(p.to_string(), "s^2-3*u^2");
    }
}
