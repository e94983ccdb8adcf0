//! Root-boson Heisenberg algebras of type A_{N-1} and their graded Fock
//! modules.
//!
//! States are stored over the N-1 root bosons `α^a_{-n}`; the constrained
//! fundamental bosons `h^i_n` are always expanded through [`h_in_alpha`].

use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use serde_json::{json, Value};

use crate::coeff::{RatFunc, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Classical,
    Quantum,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Classical => "classical",
            Mode::Quantum => "quantum",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FockError {
    #[error("zero mode has no oscillator commutator")]
    ZeroMode,
    #[error("component index {0} out of range for rank {1}")]
    Component(usize, usize),
    #[error("momentum not representable: {0}")]
    Momentum(String),
}

/// Cartan matrix entry `A_{ab}` of A_{N-1}.
pub fn cartan(a: usize, b: usize) -> i64 {
    if a == b {
        2
    } else if a.abs_diff(b) == 1 {
        -1
    } else {
        0
    }
}

/// `(A^{-1})_{ab} = Λ_a·Λ_b = min(a,b)(N - max(a,b))/N`.
pub fn cartan_inv(n: usize, a: usize, b: usize) -> RatFunc {
    let (lo, hi) = (a.min(b) as i64, a.max(b) as i64);
    RatFunc::from_frac(lo * (n as i64 - hi), n as i64)
}

/// `h_i·Λ_a = [i ≤ a] - a/N`.
pub fn h_dot_lambda(n: usize, i: usize, a: usize) -> RatFunc {
    let ind = if i <= a { n as i64 } else { 0 };
    RatFunc::from_frac(ind - a as i64, n as i64)
}

/// A weight `γ = Σ_a γ^a Λ_a`, stored by its fundamental-weight components.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector {
    pub lambda: Vec<RatFunc>,
}

impl WeightVector {
    pub fn zero(n: usize) -> WeightVector {
        WeightVector { lambda: vec![RatFunc::zero(); n - 1] }
    }

    pub fn from_lambda(lambda: Vec<RatFunc>) -> WeightVector {
        WeightVector { lambda }
    }

    pub fn rank(&self) -> usize {
        self.lambda.len() + 1
    }

    /// Fundamental weight `Λ_a`.
    pub fn fundamental(n: usize, a: usize) -> WeightVector {
        let mut w = WeightVector::zero(n);
        w.lambda[a - 1] = RatFunc::one();
        w
    }

    /// Simple root `α^a = Σ_b A_{ab} Λ_b`.
    pub fn root(n: usize, a: usize) -> WeightVector {
        WeightVector { lambda: (1..n).map(|b| RatFunc::from_int(cartan(a, b))).collect() }
    }

    /// `h_i = Λ_i - Λ_{i-1}`.
    pub fn h(n: usize, i: usize) -> WeightVector {
        let mut w = WeightVector::zero(n);
        if i < n {
            w.lambda[i - 1] = RatFunc::one();
        }
        if i > 1 {
            w.lambda[i - 2] = RatFunc::from_int(-1);
        }
        w
    }

    /// Weyl vector `ρ = Σ_a Λ_a`.
    pub fn rho(n: usize) -> WeightVector {
        WeightVector { lambda: vec![RatFunc::one(); n - 1] }
    }

    pub fn add(&self, o: &WeightVector) -> WeightVector {
        WeightVector { lambda: self.lambda.iter().zip(&o.lambda).map(|(x, y)| x.add(y)).collect() }
    }

    pub fn sub(&self, o: &WeightVector) -> WeightVector {
        WeightVector { lambda: self.lambda.iter().zip(&o.lambda).map(|(x, y)| x.sub(y)).collect() }
    }

    pub fn scale(&self, c: &RatFunc) -> WeightVector {
        WeightVector { lambda: self.lambda.iter().map(|x| x.mul(c)).collect() }
    }

    pub fn dot(&self, o: &WeightVector) -> RatFunc {
        let n = self.rank();
        let mut acc = RatFunc::zero();
        for (a, x) in self.lambda.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in o.lambda.iter().enumerate() {
                if !y.is_zero() {
                    acc = acc.add(&x.mul(y).mul(&cartan_inv(n, a + 1, b + 1)));
                }
            }
        }
        acc
    }

    /// `α^a·γ = γ^a`, the eigenvalue of `α^a_0`.
    pub fn alpha_dot(&self, a: usize) -> RatFunc {
        self.lambda[a - 1].clone()
    }

    /// `h_i·γ`, the eigenvalue of `h^i_0`.
    pub fn h_dot(&self, i: usize) -> RatFunc {
        let n = self.rank();
        let mut acc = RatFunc::zero();
        for (a, x) in self.lambda.iter().enumerate() {
            acc = acc.add(&x.mul(&h_dot_lambda(n, i, a + 1)));
        }
        acc
    }

    pub fn to_json(&self) -> Value {
        json!({ "Lambda": self.lambda.iter().map(|x| x.to_canonical_string()).collect::<Vec<_>>() })
    }
}

/// Rank and deformation flag of a root-boson algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BosonAlgebra {
    pub rank: usize,
    pub mode: Mode,
}

impl BosonAlgebra {
    pub fn new(rank: usize, mode: Mode) -> BosonAlgebra {
        assert!(rank >= 2, "rank must be at least 2");
        BosonAlgebra { rank, mode }
    }

    pub fn classical(rank: usize) -> BosonAlgebra {
        BosonAlgebra::new(rank, Mode::Classical)
    }

    pub fn quantum(rank: usize) -> BosonAlgebra {
        BosonAlgebra::new(rank, Mode::Quantum)
    }

    /// `[α^a_n, α^b_{-n}]`.
    pub fn commutator(&self, a: usize, b: usize, n: i64) -> Result<RatFunc, FockError> {
        if n == 0 {
            return Err(FockError::ZeroMode);
        }
        for c in [a, b] {
            if c == 0 || c >= self.rank {
                return Err(FockError::Component(c, self.rank));
            }
        }
        Ok(match self.mode {
            Mode::Classical => RatFunc::from_int(cartan(a, b) * n),
            Mode::Quantum => quantum_root_commutator(a, b, n),
        })
    }
}

/// `(q^{n/2}-q^{-n/2})(t^{n/2}-t^{-n/2})/n`.
pub fn qt_factor(n: i64) -> RatFunc {
    let k = n as i32;
    let sq = RatFunc::q_half(k).sub(&RatFunc::q_half(-k));
    let tu = RatFunc::t_half(k).sub(&RatFunc::t_half(-k));
    sq.mul(&tu).mul(&RatFunc::from_frac(1, n))
}

/// `(p^{nk/2} - p^{-nk/2}) / (p^{n/2} - p^{-n/2})`, a p-integer.
pub fn p_integer(k: i64, n: i64) -> RatFunc {
    let num = RatFunc::p_half((n * k) as i32).sub(&RatFunc::p_half(-(n * k) as i32));
    let den = RatFunc::p_half(n as i32).sub(&RatFunc::p_half(-n as i32));
    num.div(&den).expect("p-integer denominator is nonzero")
}

fn quantum_root_commutator(a: usize, b: usize, n: i64) -> RatFunc {
    let sgn = (b as i64 - a as i64).signum();
    qt_factor(n).mul(&p_integer(cartan(a, b), n)).mul(&RatFunc::p_half((n * sgn) as i32))
}

/// `[h^i_n, h^j_{-n}]` in the fundamental-boson form.
pub fn fundamental_commutator(mode: Mode, rank: usize, i: usize, j: usize, n: i64) -> RatFunc {
    let big_n = rank as i64;
    let delta = if i == j { big_n - 1 } else { -1 };
    match mode {
        Mode::Classical => RatFunc::from_frac(delta * n, big_n),
        Mode::Quantum => {
            // (p^{(n/2)N(δ-1/N)} - inverse)/(p^{nN/2} - p^{-nN/2}) · p^{(n/2)N sgn(j-i)}
            let e = (n * delta) as i32;
            let num = RatFunc::p_half(e).sub(&RatFunc::p_half(-e));
            let nn = (n * big_n) as i32;
            let den = RatFunc::p_half(nn).sub(&RatFunc::p_half(-nn));
            let sgn = (j as i64 - i as i64).signum();
            qt_factor(n)
                .mul(&num.div(&den).expect("nonzero"))
                .mul(&RatFunc::p_half((n * big_n * sgn) as i32))
        }
    }
}

/// Coefficients `M^{ia}(n)` with `h^i_n = Σ_a M^{ia}(n) α^a_n`, solving
/// `h^a_n - h^{a+1}_n = α^a_n` and `Σ_i p^{in} h^i_n = 0` (`p = 1` classically).
pub fn h_in_alpha(mode: Mode, rank: usize, i: usize, n: i64) -> Result<Vec<RatFunc>, FockError> {
    if n == 0 {
        return Err(FockError::ZeroMode);
    }
    if i == 0 || i > rank {
        return Err(FockError::Component(i, rank));
    }
    let pw = |k: i64| match mode {
        Mode::Classical => RatFunc::one(),
        Mode::Quantum => RatFunc::p_half((2 * k * n) as i32),
    };
    let total = (1..=rank as i64).fold(RatFunc::zero(), |acc, k| acc.add(&pw(k)));
    let mut partial = RatFunc::zero();
    let mut out = Vec::with_capacity(rank - 1);
    for a in 1..rank {
        partial = partial.add(&pw(a as i64));
        let mut m = partial.div(&total).expect("nonzero").neg();
        if a >= i {
            m = m.add(&RatFunc::one());
        }
        out.push(m);
    }
    Ok(out)
}

/// Creation monomial `∏ α^{a}_{-n}`, factors sorted by mode descending
/// then component ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(usize, usize)>);

impl Monomial {
    pub fn empty() -> Monomial {
        Monomial(Vec::new())
    }

    /// From `(a, n)` pairs in any order.
    pub fn new(mut ops: Vec<(usize, usize)>) -> Monomial {
        ops.sort_by_key(|&(a, n)| (Reverse(n), a));
        Monomial(ops)
    }

    pub fn ops(&self) -> &[(usize, usize)] {
        &self.0
    }

    pub fn level(&self) -> usize {
        self.0.iter().map(|&(_, n)| n).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Monomial::new(v)
    }

    pub fn with(&self, a: usize, n: usize) -> Monomial {
        let mut v = self.0.clone();
        v.push((a, n));
        Monomial::new(v)
    }

    /// Distinct factors with multiplicities, in stored order.
    pub fn grouped(&self) -> Vec<((usize, usize), usize)> {
        let mut out: Vec<((usize, usize), usize)> = Vec::new();
        for &op in &self.0 {
            match out.last_mut() {
                Some((last, k)) if *last == op => *k += 1,
                _ => out.push((op, 1)),
            }
        }
        out
    }

    /// Removes one copy of `op`; `None` if absent.
    pub fn without(&self, op: (usize, usize)) -> Option<Monomial> {
        let pos = self.0.iter().position(|&x| x == op)?;
        let mut v = self.0.clone();
        v.remove(pos);
        Some(Monomial(v))
    }

    pub fn to_json(&self) -> Value {
        json!(self.0.iter().map(|&(a, n)| [a, n]).collect::<Vec<_>>())
    }
}

/// Sparse vector over creation monomials.
pub type FockVec<S> = BTreeMap<Monomial, S>;

pub fn vec_add_term<S: Scalar>(v: &mut FockVec<S>, m: Monomial, c: &S) {
    if c.is_zero() {
        return;
    }
    match v.get_mut(&m) {
        Some(x) => {
            *x = x.add(c);
            if x.is_zero() {
                v.remove(&m);
            }
        }
        None => {
            v.insert(m, c.clone());
        }
    }
}

pub fn vec_axpy<S: Scalar>(acc: &mut FockVec<S>, c: &S, x: &FockVec<S>) {
    if c.is_zero() {
        return;
    }
    for (m, v) in x {
        vec_add_term(acc, m.clone(), &c.mul(v));
    }
}

/// `Σ c_k x_k`, summing each output coefficient in one pass.
pub fn vec_lincomb<S: Scalar>(parts: &[(S, FockVec<S>)]) -> FockVec<S> {
    let mut terms: BTreeMap<&Monomial, Vec<(&S, &S)>> = BTreeMap::new();
    for (c, x) in parts {
        if c.is_zero() {
            continue;
        }
        for (m, y) in x {
            terms.entry(m).or_default().push((c, y));
        }
    }
    terms
        .into_iter()
        .filter_map(|(m, t)| {
            let c = S::sum_products(t);
            (!c.is_zero()).then(|| (m.clone(), c))
        })
        .collect()
}

pub fn vec_scale<S: Scalar>(x: &FockVec<S>, c: &S) -> FockVec<S> {
    let mut out = FockVec::new();
    vec_axpy(&mut out, c, x);
    out
}

pub fn vec_sub<S: Scalar>(x: &FockVec<S>, y: &FockVec<S>) -> FockVec<S> {
    let mut out = x.clone();
    vec_axpy(&mut out, &S::one().neg(), y);
    out
}

type Bracket<S> = dyn Fn(usize, usize, usize) -> S + Send + Sync;

/// Root-boson oscillators with commutators valued in an arbitrary scalar
/// field; `k(a, b, n) = [α^a_n, α^b_{-n}]` for `n > 0`, memoized.
pub struct Oscillators<S: Scalar> {
    rank: usize,
    bracket: Arc<Bracket<S>>,
    cache: Mutex<HashMap<(usize, usize, usize), S>>,
}

impl<S: Scalar> Oscillators<S> {
    pub fn new(rank: usize, bracket: impl Fn(usize, usize, usize) -> S + Send + Sync + 'static) -> Self {
        Oscillators { rank, bracket: Arc::new(bracket), cache: Mutex::new(HashMap::new()) }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn k(&self, a: usize, b: usize, n: usize) -> S {
        if let Some(v) = self.cache.lock().unwrap().get(&(a, b, n)) {
            return v.clone();
        }
        let v = (self.bracket)(a, b, n);
        self.cache.lock().unwrap().insert((a, b, n), v.clone());
        v
    }

    /// `α^a_n` with `n > 0` applied to a vector.
    pub fn lower(&self, a: usize, n: usize, v: &FockVec<S>) -> FockVec<S> {
        let mut out = FockVec::new();
        for (m, c) in v {
            for ((b, nb), mult) in m.grouped() {
                if nb != n {
                    continue;
                }
                let k = self.k(a, b, n);
                if k.is_zero() {
                    continue;
                }
                let coeff = c.mul(&k).mul(&S::from_int(mult as i64));
                vec_add_term(&mut out, m.without((b, nb)).unwrap(), &coeff);
            }
        }
        out
    }

    /// `α^a_{-n}` with `n > 0` applied to a vector.
    pub fn raise(&self, a: usize, n: usize, v: &FockVec<S>) -> FockVec<S> {
        v.iter().map(|(m, c)| (m.with(a, n), c.clone())).collect()
    }

    /// Pairing `⟨bra|ket⟩` induced by `(α^a_n)† = α^a_{-n}`, `⟨γ|γ⟩ = 1`.
    pub fn pairing(&self, bra: &FockVec<S>, ket: &FockVec<S>) -> S {
        let mut acc = S::zero();
        for (mb, cb) in bra {
            let mut v = FockVec::new();
            for (mk, ck) in ket {
                if mk.level() == mb.level() {
                    v.insert(mk.clone(), ck.clone());
                }
            }
            for &(a, n) in mb.ops() {
                v = self.lower(a, n, &v);
                if v.is_empty() {
                    break;
                }
            }
            if let Some(c) = v.get(&Monomial::empty()) {
                acc = acc.add(&cb.mul(c));
            }
        }
        acc
    }
}

impl Oscillators<RatFunc> {
    pub fn from_algebra(alg: BosonAlgebra) -> Self {
        Oscillators::new(alg.rank, move |a, b, n| alg.commutator(a, b, n as i64).expect("valid indices"))
    }
}

/// A vector in the Fock module `F_γ`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockState<S: Scalar> {
    pub momentum: WeightVector,
    pub terms: FockVec<S>,
}

impl<S: Scalar> FockState<S> {
    pub fn vacuum(momentum: WeightVector) -> Self {
        let mut terms = FockVec::new();
        terms.insert(Monomial::empty(), S::one());
        FockState { momentum, terms }
    }

    pub fn monomial(momentum: WeightVector, ops: Vec<(usize, usize)>) -> Self {
        let mut terms = FockVec::new();
        terms.insert(Monomial::new(ops), S::one());
        FockState { momentum, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Level of the highest term; 0 for the zero vector.
    pub fn level(&self) -> usize {
        self.terms.keys().map(|m| m.level()).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "momentum": self.momentum.to_json(),
            "terms": self.terms.iter().map(|(m, c)| json!({"ops": m.to_json(), "coeff": c.to_text()})).collect::<Vec<_>>(),
        })
    }
}

pub fn act_lowering<S: Scalar>(osc: &Oscillators<S>, a: usize, n: usize, state: &FockState<S>) -> FockState<S> {
    FockState { momentum: state.momentum.clone(), terms: osc.lower(a, n, &state.terms) }
}

/// Pairing of two states; zero across different momenta.
pub fn shapovalov<S: Scalar>(osc: &Oscillators<S>, bra: &FockState<S>, ket: &FockState<S>) -> S {
    if bra.momentum != ket.momentum {
        return S::zero();
    }
    osc.pairing(&bra.terms, &ket.terms)
}

/// All creation monomials of the given level for `rank - 1` components,
/// ordered by partition (largest parts first) then component labels.
pub fn basis_at_level(rank: usize, level: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill_basis(rank - 1, level, level, rank - 1, &mut cur, &mut out);
    out
}

fn fill_basis(
    comps: usize,
    rest: usize,
    max_n: usize,
    max_a: usize,
    cur: &mut Vec<(usize, usize)>,
    out: &mut Vec<Monomial>,
) {
    if rest == 0 {
        out.push(Monomial::new(cur.clone()));
        return;
    }
    for n in (1..=rest.min(max_n)).rev() {
        // within equal modes, components are nondecreasing
        let a_hi = if n == max_n { max_a } else { comps };
        for a in (1..=a_hi).rev() {
            cur.push((a, n));
            fill_basis(comps, rest - n, n, a, cur, out);
            cur.pop();
        }
    }
}

/// Coefficient of `x^level` in `∏_{n≥1} (1 - x^n)^{-(rank-1)}`.
pub fn fock_dimension(rank: usize, level: usize) -> usize {
    let mut c = vec![0usize; level + 1];
    c[0] = 1;
    for _ in 0..rank - 1 {
        for n in 1..=level {
            for k in n..=level {
                c[k] += c[k - n];
            }
        }
    }
    c[level]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::parse_ratfunc;

    fn rf(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    #[test]
    fn quantum_self_commutator_rank2() {
        let alg = BosonAlgebra::quantum(2);
        let k = alg.commutator(1, 1, 1).unwrap();
        assert_eq!(k, rf("(s-1/s)*(u-1/u)*(s/u+u/s)"));
    }

    #[test]
    fn classical_commutator() {
        let alg = BosonAlgebra::classical(3);
        assert_eq!(alg.commutator(1, 2, 3).unwrap(), RatFunc::from_int(-3));
        assert_eq!(alg.commutator(1, 1, 0), Err(FockError::ZeroMode));
    }

    #[test]
    fn quantum_adjacent_commutator() {
        let alg = BosonAlgebra::quantum(3);
        // A_12 = -1: p-integer is -1, twisted by p^{1/2}
        let expect = rf("-(s-1/s)*(u-1/u)*s/u");
        assert_eq!(alg.commutator(1, 2, 1).unwrap(), expect);
        assert_eq!(alg.commutator(2, 1, 1).unwrap(), rf("-(s-1/s)*(u-1/u)*u/s"));
    }

    #[test]
    fn h_in_alpha_rank2() {
        let m = h_in_alpha(Mode::Quantum, 2, 1, 3).unwrap();
        let p3 = RatFunc::p_half(6);
        assert_eq!(m[0], p3.div(&RatFunc::one().add(&p3)).unwrap());
        let c = h_in_alpha(Mode::Classical, 2, 1, 3).unwrap();
        assert_eq!(c[0], RatFunc::from_frac(1, 2));
    }

    #[test]
    fn h_commutators_rebuilt_from_roots() {
        for mode in [Mode::Classical, Mode::Quantum] {
            for rank in 2..=4 {
                let alg = BosonAlgebra::new(rank, mode);
                for n in 1..=3i64 {
                    for i in 1..=rank {
                        for j in 1..=rank {
                            let mi = h_in_alpha(mode, rank, i, n).unwrap();
                            let mj = h_in_alpha(mode, rank, j, -n).unwrap();
                            let mut acc = RatFunc::zero();
                            for a in 1..rank {
                                for b in 1..rank {
                                    let k = alg.commutator(a, b, n).unwrap();
                                    acc = acc.add(&mi[a - 1].mul(&mj[b - 1]).mul(&k));
                                }
                            }
                            assert_eq!(acc, fundamental_commutator(mode, rank, i, j, n), "{mode:?} N={rank} {i},{j} n={n}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn lowering_examples() {
        let osc = Oscillators::from_algebra(BosonAlgebra::quantum(3));
        let g = WeightVector::zero(3);
        let s = FockState::<RatFunc>::monomial(g.clone(), vec![(1, 1)]);
        let r = act_lowering(&osc, 1, 1, &s);
        assert_eq!(r.terms.get(&Monomial::empty()), Some(&osc.k(1, 1, 1)));
        let s2 = FockState::<RatFunc>::monomial(g.clone(), vec![(1, 1), (1, 1)]);
        assert!(act_lowering(&osc, 1, 2, &s2).is_zero());
        let s3 = FockState::<RatFunc>::monomial(g, vec![(1, 1), (2, 1)]);
        let r3 = act_lowering(&osc, 1, 1, &s3);
        assert_eq!(r3.terms.len(), 2);
        assert_eq!(r3.terms[&Monomial::new(vec![(2, 1)])], osc.k(1, 1, 1));
        assert_eq!(r3.terms[&Monomial::new(vec![(1, 1)])], osc.k(1, 2, 1));
    }

    #[test]
    fn basis_counts() {
        assert_eq!(basis_at_level(2, 2).len(), 2);
        assert_eq!(basis_at_level(3, 2).len(), 5);
        assert_eq!(basis_at_level(4, 0), vec![Monomial::empty()]);
        for rank in 2..=4 {
            for level in 0..=6 {
                let b = basis_at_level(rank, level);
                assert_eq!(b.len(), fock_dimension(rank, level));
                let mut sorted = b.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted.len(), b.len());
                assert!(b.iter().all(|m| m.level() == level));
            }
        }
    }

    #[test]
    fn weight_products() {
        let n = 3;
        let h1 = WeightVector::h(n, 1);
        let h2 = WeightVector::h(n, 2);
        assert_eq!(h1.dot(&h1), RatFunc::from_frac(2, 3));
        assert_eq!(h1.dot(&h2), RatFunc::from_frac(-1, 3));
        assert_eq!(WeightVector::root(n, 1).dot(&WeightVector::root(n, 2)), RatFunc::from_int(-1));
        assert_eq!(WeightVector::rho(n).dot(&WeightVector::rho(n)), RatFunc::from_int(2));
        let g = WeightVector::from_lambda(vec![rf("b"), rf("1/b")]);
        assert_eq!(g.h_dot(1), g.dot(&h1));
        assert_eq!(g.h_dot(3), g.dot(&WeightVector::h(n, 3)));
    }

    #[test]
    fn classical_gram_level2_symmetric() {
        let osc = Oscillators::from_algebra(BosonAlgebra::classical(2));
        let basis = basis_at_level(2, 2);
        let g = WeightVector::zero(2);
        let st: Vec<FockState<RatFunc>> =
            basis.iter().map(|m| FockState::monomial(g.clone(), m.ops().to_vec())).collect();
        // [[⟨α_{-2}|α_{-2}⟩, 0], [0, ⟨α_{-1}²|α_{-1}²⟩]] = [[4, 0], [0, 8]]
        assert_eq!(shapovalov(&osc, &st[0], &st[0]), RatFunc::from_int(4));
        assert_eq!(shapovalov(&osc, &st[0], &st[1]), RatFunc::zero());
        assert_eq!(shapovalov(&osc, &st[1], &st[1]), RatFunc::from_int(8));
    }
}
