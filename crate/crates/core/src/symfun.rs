//! Partitions, symmetric functions in the power-sum and monomial bases, and
//! the Macdonald/Jack/Schur oracles.
//!
//! Jack convention: the parameter is `beta` (with `alpha_Jack = 1/beta`),
//! the `q -> 1` limit of Macdonald polynomials at `t = q^beta`. Both
//! families are normalized monic in `m_lambda`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::coeff::{CoeffError, RatFunc};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Sorts descending and drops zero parts.
    pub fn new(mut parts: Vec<usize>) -> Partition {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let l = self.0.first().copied().unwrap_or(0);
        Partition((1..=l).map(|i| self.0.iter().filter(|&&x| x >= i).count()).collect())
    }

    /// `(part, multiplicity)` pairs, largest part first.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &x in &self.0 {
            match out.last_mut() {
                Some((p, m)) if *p == x => *m += 1,
                _ => out.push((x, 1)),
            }
        }
        out
    }

    /// Multiset union of parts.
    pub fn union(&self, o: &Partition) -> Partition {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Partition::new(v)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All partitions of `n`, in descending lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            rec(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymError {
    #[error("partitions of unequal weight {0} and {1}")]
    UnequalWeights(usize, usize),
    #[error("pairing degenerate at weight {0}")]
    Degenerate(usize),
    #[error("basis mismatch")]
    BasisMismatch,
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// Dominance order: partial sums of `lambda` never exceed those of `mu`.
pub fn dominance_leq(lambda: &Partition, mu: &Partition) -> Result<bool, SymError> {
    if lambda.weight() != mu.weight() {
        return Err(SymError::UnequalWeights(lambda.weight(), mu.weight()));
    }
    let (mut a, mut b) = (0, 0);
    for i in 0..lambda.len().max(mu.len()) {
        a += lambda.0.get(i).copied().unwrap_or(0);
        b += mu.0.get(i).copied().unwrap_or(0);
        if a > b {
            return Ok(false);
        }
    }
    Ok(true)
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

/// `z_lambda = prod_i i^{m_i} m_i!`.
pub fn z_lambda(lambda: &Partition) -> BigRational {
    let mut z = BigInt::one();
    for (i, m) in lambda.multiplicities() {
        z *= BigInt::from(i).pow(m as u32) * factorial(m);
    }
    BigRational::from_integer(z)
}

/// `<p_lambda, p_mu>_{q,t} = delta z_lambda prod (1-q^{l_i})/(1-t^{l_i})`.
pub fn pairing_macdonald(lambda: &Partition, mu: &Partition) -> RatFunc {
    if lambda != mu {
        return RatFunc::zero();
    }
    let one = RatFunc::one();
    let mut v = RatFunc::from_rat(&z_lambda(lambda));
    for &l in lambda.parts() {
        let l = l as i32;
        let num = one.sub(&RatFunc::q_half(2 * l));
        let den = one.sub(&RatFunc::t_half(2 * l));
        v = v.mul(&num.div(&den).expect("nonzero"));
    }
    v
}

/// `<p_lambda, p_mu>_beta = delta z_lambda beta^{-l(lambda)}`, `beta = b^2`.
pub fn pairing_jack(lambda: &Partition, mu: &Partition) -> RatFunc {
    if lambda != mu {
        return RatFunc::zero();
    }
    RatFunc::from_rat(&z_lambda(lambda)).mul(&RatFunc::b_pow(-2 * lambda.len() as i32))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    Power,
    Monomial,
}

#[derive(Clone, PartialEq, Eq)]
pub struct SymFunc {
    pub basis: Basis,
    terms: BTreeMap<Partition, RatFunc>,
}

impl SymFunc {
    pub fn zero(basis: Basis) -> SymFunc {
        SymFunc { basis, terms: BTreeMap::new() }
    }

    pub fn basis_element(basis: Basis, lambda: Partition) -> SymFunc {
        let mut f = SymFunc::zero(basis);
        f.terms.insert(lambda, RatFunc::one());
        f
    }

    pub fn from_terms(basis: Basis, terms: impl IntoIterator<Item = (Partition, RatFunc)>) -> SymFunc {
        let mut f = SymFunc::zero(basis);
        for (l, c) in terms {
            f.add_term(l, &c);
        }
        f
    }

    pub fn terms(&self) -> &BTreeMap<Partition, RatFunc> {
        &self.terms
    }

    pub fn coeff(&self, l: &Partition) -> RatFunc {
        self.terms.get(l).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, l: Partition, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.get(&l) {
            Some(x) => x.add(c),
            None => c.clone(),
        };
        if v.is_zero() {
            self.terms.remove(&l);
        } else {
            self.terms.insert(l, v);
        }
    }

    pub fn add(&self, o: &SymFunc) -> SymFunc {
        assert_eq!(self.basis, o.basis, "basis mismatch");
        let mut r = self.clone();
        for (l, c) in &o.terms {
            r.add_term(l.clone(), c);
        }
        r
    }

    pub fn sub(&self, o: &SymFunc) -> SymFunc {
        self.add(&o.scale(&RatFunc::from_int(-1)))
    }

    pub fn scale(&self, c: &RatFunc) -> SymFunc {
        if c.is_zero() {
            return SymFunc::zero(self.basis);
        }
        SymFunc { basis: self.basis, terms: self.terms.iter().map(|(l, x)| (l.clone(), x.mul(c))).collect() }
    }

    /// Product in the power-sum basis (`p_lambda p_mu = p_{lambda ∪ mu}`).
    pub fn mul_power(&self, o: &SymFunc) -> SymFunc {
        assert!(self.basis == Basis::Power && o.basis == Basis::Power);
        let mut r = SymFunc::zero(Basis::Power);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                r.add_term(a.union(b), &x.mul(y));
            }
        }
        r
    }

    /// Applies a map to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&RatFunc) -> Result<RatFunc, CoeffError>) -> Result<SymFunc, CoeffError> {
        let mut r = SymFunc::zero(self.basis);
        for (l, c) in &self.terms {
            r.add_term(l.clone(), &f(c)?);
        }
        Ok(r)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .rev()
            .map(|(l, c)| json!({"partition": l.parts(), "coeff": c.to_canonical_string()}))
            .collect();
        let b = match self.basis {
            Basis::Power => "p",
            Basis::Monomial => "m",
        };
        json!({"basis": b, "terms": terms})
    }

    /// Common scalar `r` with `self = r * other`, if one exists.
    pub fn ratio_to(&self, other: &SymFunc) -> Option<RatFunc> {
        if self.basis != other.basis || self.terms.len() != other.terms.len() || other.is_zero() {
            return None;
        }
        let mut ratio: Option<RatFunc> = None;
        for (l, c) in &self.terms {
            let d = other.terms.get(l)?;
            let r = c.div(d).ok()?;
            match &ratio {
                None => ratio = Some(r),
                Some(x) if *x == r => {}
                Some(_) => return None,
            }
        }
        ratio
    }
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.basis {
            Basis::Power => "p",
            Basis::Monomial => "m",
        };
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().rev().map(|(l, c)| format!("({c})*{name}{l}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Coefficient of `m_mu` in `p_lambda`: the number of ways to distribute
/// the parts of `lambda` among the rows of `mu` so that row sums match.
pub fn p_to_m_coeff(lambda: &Partition, mu: &Partition) -> u64 {
    fn rec(parts: &[usize], rest: &mut Vec<usize>) -> u64 {
        let Some((&first, tail)) = parts.split_first() else {
            return rest.iter().all(|&x| x == 0) as u64;
        };
        let mut total = 0;
        for i in 0..rest.len() {
            if rest[i] >= first {
                rest[i] -= first;
                total += rec(tail, rest);
                rest[i] += first;
            }
        }
        total
    }
    if lambda.weight() != mu.weight() {
        return 0;
    }
    rec(lambda.parts(), &mut mu.parts().to_vec())
}

/// Rewrites a power-sum expansion in the monomial basis, dropping `m_mu`
/// with more than `n_vars` parts.
pub fn monomial_expand(f: &SymFunc, n_vars: usize) -> SymFunc {
    assert_eq!(f.basis, Basis::Power);
    let mut r = SymFunc::zero(Basis::Monomial);
    for (l, c) in &f.terms {
        for mu in partitions(l.weight()) {
            if mu.len() > n_vars {
                continue;
            }
            let k = p_to_m_coeff(l, &mu);
            if k != 0 {
                r.add_term(mu, &c.mul(&RatFunc::from_int(k as i64)));
            }
        }
    }
    r
}

/// Rational matrix `A` with `m_mu = sum_lambda A[mu][lambda] p_lambda` at
/// weight `n`, indexed by [`partitions`] order.
fn m_in_p_matrix(n: usize) -> Vec<Vec<BigRational>> {
    let ps = partitions(n);
    let k = ps.len();
    // c[l][m] = coefficient of m_m in p_l; invert c.
    let mut a: Vec<Vec<BigRational>> = ps
        .iter()
        .map(|l| ps.iter().map(|m| BigRational::from_integer(BigInt::from(p_to_m_coeff(l, m)))).collect())
        .collect();
    let mut inv: Vec<Vec<BigRational>> =
        (0..k).map(|i| (0..k).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect()).collect();
    for col in 0..k {
        let piv = (col..k).find(|&r| !a[r][col].is_zero()).expect("p-to-m matrix is invertible");
        a.swap(col, piv);
        inv.swap(col, piv);
        let d = a[col][col].clone();
        for j in 0..k {
            a[col][j] = &a[col][j] / &d;
            inv[col][j] = &inv[col][j] / &d;
        }
        for r in 0..k {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..k {
                    let x = &a[col][j] * &f;
                    a[r][j] = &a[r][j] - x;
                    let y = &inv[col][j] * &f;
                    inv[r][j] = &inv[r][j] - y;
                }
            }
        }
    }
    // inv = c^{-1}: p = c m  =>  m = c^{-1} p, so m_mu = sum_l inv[mu][l] p_l.
    inv
}

/// Converts a monomial-basis function to the power-sum basis.
pub fn to_power(f: &SymFunc) -> SymFunc {
    if f.basis == Basis::Power {
        return f.clone();
    }
    let mut r = SymFunc::zero(Basis::Power);
    let mut by_weight: BTreeMap<usize, Vec<(&Partition, &RatFunc)>> = BTreeMap::new();
    for (l, c) in &f.terms {
        by_weight.entry(l.weight()).or_default().push((l, c));
    }
    for (n, items) in by_weight {
        let ps = partitions(n);
        let inv = m_in_p_matrix(n);
        for (mu, c) in items {
            let i = ps.iter().position(|x| x == mu).unwrap();
            for (j, lam) in ps.iter().enumerate() {
                if !inv[i][j].is_zero() {
                    r.add_term(lam.clone(), &c.mul(&RatFunc::from_rat(&inv[i][j])));
                }
            }
        }
    }
    r
}

/// Converts a power-sum function to the monomial basis in the stable range.
pub fn to_monomial(f: &SymFunc) -> SymFunc {
    match f.basis {
        Basis::Monomial => f.clone(),
        Basis::Power => {
            let n = f.terms.keys().map(|l| l.weight()).max().unwrap_or(0);
            monomial_expand(f, n.max(1))
        }
    }
}

fn inner(f: &SymFunc, g: &SymFunc, pairing: &dyn Fn(&Partition) -> RatFunc) -> RatFunc {
    let mut acc = RatFunc::zero();
    for (l, c) in &f.terms {
        if let Some(d) = g.terms.get(l) {
            acc = acc.add(&c.mul(d).mul(&pairing(l)));
        }
    }
    acc
}

/// Gram–Schmidt over partitions of `n` in increasing lexicographic order
/// (a total order refining dominance). Returns the orthogonal family in the
/// power-sum basis, each monic in its own `m_lambda`.
fn gram_schmidt(n: usize, pairing: &dyn Fn(&Partition) -> RatFunc) -> Result<Vec<(Partition, SymFunc)>, SymError> {
    let mut ps = partitions(n);
    ps.reverse();
    let mut done: Vec<(Partition, SymFunc, RatFunc)> = Vec::new();
    for lam in ps {
        let m = to_power(&SymFunc::basis_element(Basis::Monomial, lam.clone()));
        let mut v = m.clone();
        for (_, pmu, norm) in &done {
            let c = inner(&m, pmu, pairing).div(norm)?;
            if !c.is_zero() {
                v = v.sub(&pmu.scale(&c));
            }
        }
        let norm = inner(&v, &v, pairing);
        if norm.is_zero() {
            return Err(SymError::Degenerate(n));
        }
        done.push((lam, v, norm));
    }
    Ok(done.into_iter().map(|(l, v, _)| (l, v)).collect())
}

fn family(lambda: &Partition, pairing: &dyn Fn(&Partition) -> RatFunc) -> Result<SymFunc, SymError> {
    let n = lambda.weight();
    if n == 0 {
        return Ok(SymFunc::basis_element(Basis::Monomial, Partition::empty()));
    }
    let all = gram_schmidt(n, pairing)?;
    let (_, v) = all.into_iter().find(|(l, _)| l == lambda).expect("partition present");
    Ok(to_monomial(&v))
}

/// Macdonald `P_lambda(x; q, t)` in the monomial basis.
pub fn macdonald_p(lambda: &Partition) -> Result<SymFunc, SymError> {
    family(lambda, &|l| pairing_macdonald(l, l))
}

/// All Macdonald polynomials of weight `n`, in increasing lex order.
pub fn macdonald_all(n: usize) -> Result<Vec<(Partition, SymFunc)>, SymError> {
    Ok(gram_schmidt(n, &|l| pairing_macdonald(l, l))?.into_iter().map(|(l, v)| (l, to_monomial(&v))).collect())
}

/// Jack polynomial with parameter `beta = b^2`, monic in `m_lambda`.
pub fn jack_j(lambda: &Partition) -> Result<SymFunc, SymError> {
    family(lambda, &|l| pairing_jack(l, l))
}

pub fn jack_all(n: usize) -> Result<Vec<(Partition, SymFunc)>, SymError> {
    Ok(gram_schmidt(n, &|l| pairing_jack(l, l))?.into_iter().map(|(l, v)| (l, to_monomial(&v))).collect())
}

/// Complete homogeneous `h_n = sum_{|mu|=n} p_mu / z_mu`.
pub fn complete_h(n: usize) -> SymFunc {
    let mut r = SymFunc::zero(Basis::Power);
    for mu in partitions(n) {
        r.add_term(mu.clone(), &RatFunc::from_rat(&(BigRational::one() / z_lambda(&mu))));
    }
    r
}

/// Schur function via the Jacobi–Trudi determinant, in the monomial basis.
pub fn schur(lambda: &Partition) -> SymFunc {
    let l = lambda.len();
    let h = |k: i64| -> SymFunc {
        if k < 0 {
            SymFunc::zero(Basis::Power)
        } else {
            complete_h(k as usize)
        }
    };
    let mat: Vec<Vec<SymFunc>> = (0..l)
        .map(|i| (0..l).map(|j| h(lambda.parts()[i] as i64 - i as i64 + j as i64)).collect())
        .collect();
    to_monomial(&det_power(&mat))
}

fn det_power(m: &[Vec<SymFunc>]) -> SymFunc {
    let n = m.len();
    if n == 0 {
        return SymFunc::basis_element(Basis::Power, Partition::empty());
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = SymFunc::zero(Basis::Power);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<SymFunc>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = m[0][j].mul_power(&det_power(&minor));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::parse_ratfunc;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn z_values() {
        assert_eq!(z_lambda(&p(&[1])), BigRational::from_integer(1.into()));
        assert_eq!(z_lambda(&p(&[1, 1])), BigRational::from_integer(2.into()));
        assert_eq!(z_lambda(&p(&[3, 1, 1])), BigRational::from_integer(6.into()));
    }

    #[test]
    fn pairings() {
        assert!(pairing_macdonald(&p(&[1]), &p(&[2])).is_zero());
        assert_eq!(pairing_macdonald(&p(&[1]), &p(&[1])), parse_ratfunc("(1-q)/(1-t)").unwrap());
        assert_eq!(pairing_macdonald(&p(&[2]), &p(&[2])), parse_ratfunc("2*(1-q^2)/(1-t^2)").unwrap());
        assert_eq!(pairing_jack(&p(&[1, 1]), &p(&[1, 1])), parse_ratfunc("2/beta^2").unwrap());
        assert!(pairing_jack(&p(&[2]), &p(&[1, 1])).is_zero());
    }

    #[test]
    fn monomial_examples() {
        let p11 = SymFunc::basis_element(Basis::Power, p(&[1, 1]));
        let m = monomial_expand(&p11, 2);
        assert_eq!(m.coeff(&p(&[2])), RatFunc::one());
        assert_eq!(m.coeff(&p(&[1, 1])), RatFunc::from_int(2));
        assert_eq!(to_power(&m), p11);
    }

    #[test]
    fn dominance() {
        assert!(dominance_leq(&p(&[1, 1]), &p(&[2])).unwrap());
        assert!(!dominance_leq(&p(&[2]), &p(&[1, 1])).unwrap());
        assert!(dominance_leq(&p(&[2, 2, 1]), &p(&[3, 1, 1])).unwrap());
        assert!(dominance_leq(&p(&[2]), &p(&[1])).is_err());
    }

    #[test]
    fn weight_two_oracles() {
        let m = macdonald_p(&p(&[2])).unwrap();
        assert_eq!(m.coeff(&p(&[2])), RatFunc::one());
        assert_eq!(m.coeff(&p(&[1, 1])), parse_ratfunc("(1+q)*(1-t)/(1-q*t)").unwrap());
        let j = jack_j(&p(&[2])).unwrap();
        assert_eq!(j.coeff(&p(&[1, 1])), parse_ratfunc("2*beta/(1+beta)").unwrap());
        assert_eq!(macdonald_p(&p(&[1])).unwrap(), SymFunc::basis_element(Basis::Monomial, p(&[1])));
    }

    #[test]
    fn schur_small() {
        let s21 = schur(&p(&[2, 1]));
        assert_eq!(s21.coeff(&p(&[2, 1])), RatFunc::one());
        assert_eq!(s21.coeff(&p(&[1, 1, 1])), RatFunc::from_int(2));
        assert!(s21.coeff(&p(&[3])).is_zero());
    }
}
