//! Vertex-operator engine for the q-deformed currents `W^i(z)`, the
//! classical Miura currents `W̄^k(z)`, structure functions and involutions.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::coeff::{RatFunc, Scalar, Series, XSeries};
use crate::fock::{
    basis_at_level, h_in_alpha, p_integer, qt_factor, vec_add_term, vec_axpy, BosonAlgebra, FockError,
    FockVec, Mode, Monomial, Oscillators, WeightVector,
};

/// Normal-ordered exponential
/// `zero · exp(Σ_n c⁻_n·α_{-n} z^n) exp(Σ_n c⁺_n·α_n z^{-n})`,
/// coefficients indexed `[n-1][a-1]` up to a fixed maximal mode.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexFactor<S: Scalar> {
    pub cminus: Vec<Vec<S>>,
    pub cplus: Vec<Vec<S>>,
    pub zero: S,
}

impl<S: Scalar> VertexFactor<S> {
    pub fn identity(rank: usize, max_mode: usize) -> Self {
        let z = vec![vec![S::zero(); rank - 1]; max_mode];
        VertexFactor { cminus: z.clone(), cplus: z, zero: S::one() }
    }

    pub fn max_mode(&self) -> usize {
        self.cminus.len()
    }

    /// `:self other:`, both at the same point.
    pub fn merge(&self, o: &Self) -> Self {
        let add = |x: &Vec<Vec<S>>, y: &Vec<Vec<S>>| -> Vec<Vec<S>> {
            x.iter().zip(y).map(|(r, s)| r.iter().zip(s).map(|(a, b)| a.add(b)).collect()).collect()
        };
        VertexFactor { cminus: add(&self.cminus, &o.cminus), cplus: add(&self.cplus, &o.cplus), zero: self.zero.mul(&o.zero) }
    }

    pub fn scale(&self, c: &S) -> Self {
        VertexFactor { cminus: self.cminus.clone(), cplus: self.cplus.clone(), zero: self.zero.mul(c) }
    }
}

/// A sum of normal-ordered exponentials; all summands preserve momentum.
#[derive(Debug, Clone, PartialEq)]
pub struct CurrentExpr<S: Scalar> {
    pub summands: Vec<VertexFactor<S>>,
}

impl<S: Scalar> CurrentExpr<S> {
    pub fn unit(rank: usize, max_mode: usize) -> Self {
        CurrentExpr { summands: vec![VertexFactor::identity(rank, max_mode)] }
    }
}

/// `q^{b (h_i·γ)}` as a monomial `u^{2c} s^{2d}`, which requires
/// `b (h_i·γ) = c β + d` with half-integers `c`, `d`.
pub fn zero_mode_q(gamma: &WeightVector, i: usize) -> Result<RatFunc, FockError> {
    let e = gamma.h_dot(i).mul(&RatFunc::b_pow(1));
    let bad = || FockError::Momentum(format!("b(h_{i}·γ) = {e} is not c·b^2 + d with half-integer c, d"));
    let den = e.den().constant_value().ok_or_else(bad)?.to_big();
    let mut exps = [0i32; 2];
    for (m, c) in e.num().terms() {
        let es = m.exps();
        let slot = match es {
            [0, 0, 0] => 0,
            [0, 0, 2] => 1,
            _ => return Err(bad()),
        };
        let twice = BigRational::new(c.to_big() * BigInt::from(2), den.clone());
        if !twice.is_integer() {
            return Err(bad());
        }
        exps[slot] = twice.to_integer().to_i32().ok_or_else(bad)?;
    }
    Ok(RatFunc::mono(exps[0], exps[1], 0))
}

/// `Λ_i(p^{x2/2} z)` with momentum eigenvalues taken on `F_γ`.
pub fn lambda_factor(
    rank: usize,
    i: usize,
    x2: i64,
    gamma: &WeightVector,
    max_mode: usize,
) -> Result<VertexFactor<RatFunc>, FockError> {
    let mut f = VertexFactor::identity(rank, max_mode);
    for n in 1..=max_mode as i64 {
        let ann = h_in_alpha(Mode::Quantum, rank, i, n)?;
        let cre = h_in_alpha(Mode::Quantum, rank, i, -n)?;
        // h^i_n (p^x z)^{-n} and h^i_{-n} (p^x z)^n
        let sa = RatFunc::p_half((-x2 * n) as i32);
        let sc = RatFunc::p_half((x2 * n) as i32);
        for a in 0..rank - 1 {
            f.cplus[n as usize - 1][a] = ann[a].mul(&sa);
            f.cminus[n as usize - 1][a] = cre[a].mul(&sc);
        }
    }
    let pz = RatFunc::p_half(rank as i32 + 1 - 2 * i as i32);
    f.zero = zero_mode_q(gamma, i)?.mul(&pz);
    Ok(f)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..=n {
            cur.push(j);
            go(j + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(1, n, k, &mut cur, &mut out);
    out
}

/// `W^i(z) = Σ_{j_1<…<j_i} :Λ_{j_1}(p^{(i-1)/2}z)⋯Λ_{j_i}(p^{-(i-1)/2}z):`;
/// `W^0` is the unit current.
pub fn qmiura_current(
    rank: usize,
    i: usize,
    gamma: &WeightVector,
    max_mode: usize,
) -> Result<CurrentExpr<RatFunc>, FockError> {
    if i == 0 {
        return Ok(CurrentExpr::unit(rank, max_mode));
    }
    let mut summands = Vec::new();
    for js in subsets(rank, i) {
        let mut f = VertexFactor::identity(rank, max_mode);
        for (k, &j) in js.iter().enumerate() {
            let x2 = i as i64 - 1 - 2 * k as i64;
            f = f.merge(&lambda_factor(rank, j, x2, gamma, max_mode)?);
        }
        summands.push(f);
    }
    Ok(CurrentExpr { summands })
}

/// `W^1..W^{N-1}`.
pub fn qmiura_currents(rank: usize, gamma: &WeightVector, max_mode: usize) -> Result<Vec<CurrentExpr<RatFunc>>, FockError> {
    (1..rank).map(|i| qmiura_current(rank, i, gamma, max_mode)).collect()
}

/// `exp(Σ_n [A⁺_n, B⁻_n] x^n)` to order `order`, the scalar produced by
/// normal-ordering `A(z) B(w)` with `x = w/z`.
pub fn contraction(
    osc: &Oscillators<RatFunc>,
    a: &VertexFactor<RatFunc>,
    b: &VertexFactor<RatFunc>,
    order: usize,
) -> XSeries {
    let mut e = vec![RatFunc::zero(); order + 1];
    for (n, slot) in e.iter_mut().enumerate().skip(1) {
        if n > a.max_mode() || n > b.max_mode() {
            break;
        }
        let mut acc = RatFunc::zero();
        for (ia, ca) in a.cplus[n - 1].iter().enumerate() {
            for (ib, cb) in b.cminus[n - 1].iter().enumerate() {
                if !ca.is_zero() && !cb.is_zero() {
                    acc = acc.add(&ca.mul(cb).mul(&osc.k(ia + 1, ib + 1, n)));
                }
            }
        }
        *slot = acc;
    }
    Series::new(e, order).exp().expect("exponent has no constant term")
}

/// `f^{ij}(x)` to order `order`.
pub fn structure_function(rank: usize, i: usize, j: usize, order: usize) -> XSeries {
    let (lo, hi) = (i.min(j) as i64, i.max(j) as i64);
    let big_n = rank as i64;
    let mut e = vec![RatFunc::zero(); order + 1];
    for (n, slot) in e.iter_mut().enumerate().skip(1) {
        let n = n as i64;
        let frac = p_integer(lo, n)
            .mul(&p_integer(big_n - hi, n))
            .div(&p_integer(big_n, n))
            .expect("nonzero");
        // p_integer(N-max)/p_integer(N) = (p^{n(N-max)/2}-…)/(p^{nN/2}-…)
        *slot = qt_factor(n).mul(&frac).neg();
    }
    Series::new(e, order).exp().expect("exponent has no constant term")
}

/// Result of expanding `exp(Σ c⁺·α_n z^{-n})` against a monomial: the
/// removed level, a coefficient and the remaining monomial.
type Contracted<S> = Vec<(usize, S, Monomial)>;

struct PreparedFactor<S: Scalar> {
    sigma: Vec<Vec<S>>,
    eminus: Vec<Vec<(Monomial, S)>>,
    zero: S,
}

impl<S: Scalar> PreparedFactor<S> {
    fn new(osc: &Oscillators<S>, f: &VertexFactor<S>) -> Self {
        let rank = osc.rank();
        let max = f.max_mode();
        let sigma = (1..=max)
            .map(|n| {
                (1..rank)
                    .map(|b| {
                        let mut acc = S::zero();
                        for a in 1..rank {
                            let c = &f.cplus[n - 1][a - 1];
                            if !c.is_zero() {
                                acc = acc.add(&c.mul(&osc.k(a, b, n)));
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        let mut eminus = Vec::with_capacity(max + 1);
        for level in 0..=max {
            let mut row = Vec::new();
            for m in basis_at_level(rank, level) {
                let mut c = S::one();
                for ((a, n), k) in m.grouped() {
                    let base = &f.cminus[n - 1][a - 1];
                    let mut pw = S::one();
                    for _ in 0..k {
                        pw = pw.mul(base);
                    }
                    c = c.mul(&pw).mul(&S::from_frac(1, factorial(k)));
                    if c.is_zero() {
                        break;
                    }
                }
                if !c.is_zero() {
                    row.push((m, c));
                }
            }
            eminus.push(row);
        }
        PreparedFactor { sigma, eminus, zero: f.zero.clone() }
    }

    fn contract(&self, m: &Monomial) -> Contracted<S> {
        let mut acc: Contracted<S> = vec![(0, S::one(), Monomial::empty())];
        for ((b, n), mult) in m.grouped() {
            let sig = &self.sigma[n - 1][b - 1];
            let mut next = Vec::new();
            for (l, c, rem) in &acc {
                // choose j of the mult copies to contract
                let mut sp = S::one();
                for j in 0..=mult {
                    if j > 0 {
                        sp = sp.mul(sig);
                        if sp.is_zero() {
                            break;
                        }
                    }
                    let mut r = rem.clone();
                    for _ in 0..mult - j {
                        r = r.with(b, n);
                    }
                    let cc = c.mul(&sp).mul(&S::from_int(binomial(mult, j)));
                    next.push((l + j * n, cc, r));
                }
            }
            acc = next;
        }
        acc
    }

    fn apply_mode(&self, k: i64, m: &Monomial, out: &mut FockVec<S>) {
        for (l, c, rem) in self.contract(m) {
            let lm = l as i64 - k;
            if lm < 0 {
                continue;
            }
            let row = self
                .eminus
                .get(lm as usize)
                .unwrap_or_else(|| panic!("creation level {lm} exceeds prepared maximum"));
            let cz = c.mul(&self.zero);
            for (e, ce) in row {
                vec_add_term(out, rem.mul(e), &cz.mul(ce));
            }
        }
    }
}

fn factorial(k: usize) -> i64 {
    (1..=k as i64).product()
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1))
}

/// Mode action of a family of currents on a fixed Fock module, with
/// memoized columns. Mode `k` of current `c` is the `z^{-k}` coefficient.
pub struct ModeEngine<S: Scalar> {
    osc: Arc<Oscillators<S>>,
    currents: Vec<Vec<PreparedFactor<S>>>,
    cache: Mutex<HashMap<(usize, i64, Monomial), Arc<FockVec<S>>>>,
}

impl<S: Scalar> ModeEngine<S> {
    pub fn new(osc: Arc<Oscillators<S>>, currents: &[CurrentExpr<S>]) -> Self {
        let currents = currents
            .iter()
            .map(|c| c.summands.iter().map(|f| PreparedFactor::new(&osc, f)).collect())
            .collect();
        ModeEngine { osc, currents, cache: Mutex::new(HashMap::new()) }
    }

    pub fn oscillators(&self) -> &Oscillators<S> {
        &self.osc
    }

    pub fn len(&self) -> usize {
        self.currents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.currents.is_empty()
    }

    fn column(&self, c: usize, k: i64, m: &Monomial) -> Arc<FockVec<S>> {
        let key = (c, k, m.clone());
        if let Some(v) = self.cache.lock().unwrap().get(&key) {
            return v.clone();
        }
        let mut out = FockVec::new();
        if k <= m.level() as i64 {
            for f in &self.currents[c] {
                f.apply_mode(k, m, &mut out);
            }
        }
        let out = Arc::new(out);
        self.cache.lock().unwrap().insert(key, out.clone());
        out
    }

    pub fn apply(&self, c: usize, k: i64, v: &FockVec<S>) -> FockVec<S> {
        let cols: Vec<(&S, Arc<FockVec<S>>)> = v.iter().map(|(m, x)| (x, self.column(c, k, m))).collect();
        combine(&cols)
    }

    pub fn mode_matrix(&self, c: usize, k: i64, level: usize) -> ModeMatrix<S> {
        mode_matrix_with(self.osc.rank(), c, k, level, |m| (*self.column(c, k, m)).clone())
    }
}

/// `Σ x_c col_c`, summing each output coefficient in one pass.
fn combine<S: Scalar>(cols: &[(&S, Arc<FockVec<S>>)]) -> FockVec<S> {
    let mut terms: BTreeMap<&Monomial, Vec<(&S, &S)>> = BTreeMap::new();
    for (x, col) in cols {
        for (m, y) in col.iter() {
            terms.entry(m).or_default().push((*x, y));
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

/// Exact matrix of one current mode between graded slices.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeMatrix<S: Scalar> {
    pub current: usize,
    pub k: i64,
    pub level: usize,
    pub rows: Vec<Monomial>,
    pub cols: Vec<Monomial>,
    pub entries: Vec<Vec<S>>,
}

impl<S: Scalar> ModeMatrix<S> {
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|r| r.iter().all(|x| x.is_zero()))
    }

    pub fn to_json(&self) -> Value {
        let mut e = Vec::new();
        for (r, row) in self.entries.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    e.push(json!([r, c, x.to_text()]));
                }
            }
        }
        json!({
            "i": self.current,
            "k": self.k,
            "level": self.level,
            "rows": self.rows.iter().map(|m| m.to_json()).collect::<Vec<_>>(),
            "cols": self.cols.iter().map(|m| m.to_json()).collect::<Vec<_>>(),
            "entries": e,
        })
    }
}

fn mode_matrix_with<S: Scalar>(
    rank: usize,
    c: usize,
    k: i64,
    level: usize,
    col: impl Fn(&Monomial) -> FockVec<S>,
) -> ModeMatrix<S> {
    let cols = basis_at_level(rank, level);
    let target = level as i64 - k;
    let rows = if target >= 0 { basis_at_level(rank, target as usize) } else { Vec::new() };
    let index: HashMap<&Monomial, usize> = rows.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut entries = vec![vec![S::zero(); cols.len()]; rows.len()];
    for (j, m) in cols.iter().enumerate() {
        for (r, x) in col(m) {
            entries[index[&r]][j] = x;
        }
    }
    ModeMatrix { current: c, k, level, rows, cols, entries }
}

/// Differential polynomial in the fields `∂^m h̄^i(z)` (`m ≥ 1`), as a map
/// from sorted factor lists `(i, m)` to coefficients in Q(b).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DiffPoly {
    pub terms: BTreeMap<Vec<(usize, usize)>, RatFunc>,
}

impl DiffPoly {
    pub fn zero() -> DiffPoly {
        DiffPoly::default()
    }

    pub fn constant(c: RatFunc) -> DiffPoly {
        let mut d = DiffPoly::zero();
        d.add_term(Vec::new(), &c);
        d
    }

    /// `∂^m h̄^i`.
    pub fn field(i: usize, m: usize) -> DiffPoly {
        let mut d = DiffPoly::zero();
        d.add_term(vec![(i, m)], &RatFunc::one());
        d
    }

    /// `∂^m φ^a` with `φ^a = h̄^a - h̄^{a+1}`.
    pub fn root_field(a: usize, m: usize) -> DiffPoly {
        DiffPoly::field(a, m).sub(&DiffPoly::field(a + 1, m))
    }

    pub fn add_term(&mut self, mut f: Vec<(usize, usize)>, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        f.sort();
        let e = self.terms.entry(f).or_insert_with(RatFunc::zero);
        *e = e.add(c);
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, o: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        for (f, c) in &o.terms {
            out.add_term(f.clone(), c);
        }
        out
    }

    pub fn sub(&self, o: &DiffPoly) -> DiffPoly {
        self.add(&o.scale(&RatFunc::from_int(-1)))
    }

    pub fn scale(&self, c: &RatFunc) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (f, x) in &self.terms {
            out.add_term(f.clone(), &x.mul(c));
        }
        out
    }

    pub fn mul(&self, o: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (f, x) in &self.terms {
            for (g, y) in &o.terms {
                let mut h = f.clone();
                h.extend_from_slice(g);
                out.add_term(h, &x.mul(y));
            }
        }
        out
    }

    /// `∂_z` by the Leibniz rule.
    pub fn deriv(&self) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (f, x) in &self.terms {
            for k in 0..f.len() {
                let mut g = f.clone();
                g[k].1 += 1;
                out.add_term(g, x);
            }
        }
        out
    }

    /// Conformal weight of each term (number of derivatives); `None` if mixed.
    pub fn weight(&self) -> Option<usize> {
        let mut w = None;
        for f in self.terms.keys() {
            let v: usize = f.iter().map(|&(_, m)| m).sum();
            match w {
                None => w = Some(v),
                Some(x) if x != v => return None,
                _ => {}
            }
        }
        w
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// `α₀ = b - 1/b`.
pub fn alpha0() -> RatFunc {
    RatFunc::b_pow(1).sub(&RatFunc::b_pow(-1))
}

/// `W̄^0..W̄^N` from `:(α₀∂+∂h̄^1)⋯(α₀∂+∂h̄^N): = Σ_k W̄^k (α₀∂)^{N-k}`.
pub fn classical_miura_currents(rank: usize) -> Vec<DiffPoly> {
    let a0 = alpha0();
    // operator as coefficients of (α₀∂)^k, built from the right
    let mut op: Vec<DiffPoly> = vec![DiffPoly::constant(RatFunc::one())];
    for i in (1..=rank).rev() {
        let x = DiffPoly::field(i, 1);
        let mut next = vec![DiffPoly::zero(); op.len() + 1];
        for (k, f) in op.iter().enumerate() {
            // α₀∂ ∘ F (α₀∂)^k = α₀ (∂F)(α₀∂)^k + F (α₀∂)^{k+1}
            next[k] = next[k].add(&f.deriv().scale(&a0)).add(&x.mul(f));
            next[k + 1] = next[k + 1].add(f);
        }
        op = next;
    }
    (0..=rank).map(|k| op[rank - k].clone()).collect()
}

/// `L = -W̄²`.
pub fn virasoro_current(rank: usize) -> DiffPoly {
    classical_miura_currents(rank)[2].scale(&RatFunc::from_int(-1))
}

/// `½ Σ_i :(∂h̄^i)²: + α₀ Σ_i ((N+1)/2 - i) ∂²h̄^i`.
pub fn virasoro_free_field(rank: usize) -> DiffPoly {
    let mut d = DiffPoly::zero();
    for i in 1..=rank {
        d = d.add(&DiffPoly::field(i, 1).mul(&DiffPoly::field(i, 1)).scale(&RatFunc::from_frac(1, 2)));
        let rho = RatFunc::from_frac(rank as i64 + 1 - 2 * i as i64, 2);
        d = d.add(&DiffPoly::field(i, 2).scale(&rho.mul(&alpha0())));
    }
    d
}

/// Central charge `N - 1 - 12 α₀² ρ²`, `ρ² = N(N²-1)/12`.
pub fn central_charge(rank: usize) -> RatFunc {
    let n = rank as i64;
    let a0 = alpha0();
    RatFunc::from_int(n - 1).sub(&a0.mul(&a0).mul(&RatFunc::from_int(n * (n * n - 1))))
}

/// Mode action of classical differential polynomials on `F̄_γ`, with
/// `F(z) = Σ_K F_K z^{-K-w}` for a current of weight `w`.
pub struct ClassicalEngine {
    rank: usize,
    osc: Oscillators<RatFunc>,
    gamma: WeightVector,
    currents: Vec<DiffPoly>,
    comps: Vec<Vec<RatFunc>>,
    zero: Vec<RatFunc>,
    cache: Mutex<HashMap<(usize, i64, Monomial), Arc<FockVec<RatFunc>>>>,
}

impl ClassicalEngine {
    pub fn new(rank: usize, gamma: WeightVector, currents: Vec<DiffPoly>) -> Self {
        for c in &currents {
            assert!(c.weight().is_some() || c.is_zero(), "current of mixed weight");
        }
        let comps = (1..=rank)
            .map(|i| h_in_alpha(Mode::Classical, rank, i, 1).expect("valid"))
            .collect();
        let zero = (1..=rank).map(|i| gamma.h_dot(i)).collect();
        ClassicalEngine {
            rank,
            osc: Oscillators::from_algebra(BosonAlgebra::classical(rank)),
            gamma,
            currents,
            comps,
            zero,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn momentum(&self) -> &WeightVector {
        &self.gamma
    }

    pub fn oscillators(&self) -> &Oscillators<RatFunc> {
        &self.osc
    }

    /// `h̄^i_n` on a vector.
    fn h_mode(&self, i: usize, n: i64, v: &FockVec<RatFunc>) -> FockVec<RatFunc> {
        if n == 0 {
            let mut out = FockVec::new();
            vec_axpy(&mut out, &self.zero[i - 1], v);
            return out;
        }
        let mut out = FockVec::new();
        for a in 1..self.rank {
            let c = &self.comps[i - 1][a - 1];
            if c.is_zero() {
                continue;
            }
            let w = if n > 0 { self.osc.lower(a, n as usize, v) } else { self.osc.raise(a, (-n) as usize, v) };
            vec_axpy(&mut out, c, &w);
        }
        out
    }

    fn column(&self, c: usize, k: i64, m: &Monomial) -> Arc<FockVec<RatFunc>> {
        let key = (c, k, m.clone());
        if let Some(v) = self.cache.lock().unwrap().get(&key) {
            return v.clone();
        }
        let d = m.level() as i64;
        let mut out = FockVec::new();
        if k <= d {
            let mut start = FockVec::new();
            start.insert(m.clone(), RatFunc::one());
            for (fields, coeff) in &self.currents[c].terms {
                self.term_mode(fields, coeff, k, d, &start, &mut out);
            }
        }
        let out = Arc::new(out);
        self.cache.lock().unwrap().insert(key, out.clone());
        out
    }

    fn term_mode(
        &self,
        fields: &[(usize, usize)],
        coeff: &RatFunc,
        k: i64,
        d: i64,
        start: &FockVec<RatFunc>,
        out: &mut FockVec<RatFunc>,
    ) {
        if fields.is_empty() {
            if k == 0 {
                vec_axpy(out, coeff, start);
            }
            return;
        }
        let r = fields.len();
        let lo = -(d - k);
        let mut modes = vec![lo; r];
        loop {
            let sum: i64 = modes.iter().sum();
            let pos: i64 = modes.iter().filter(|&&x| x > 0).sum();
            if sum == k && pos <= d {
                let mut c = coeff.clone();
                for (j, &(_, m)) in fields.iter().enumerate() {
                    c = c.mul(&RatFunc::from_int(falling(-modes[j] - 1, m - 1)));
                }
                if !c.is_zero() {
                    let mut v = start.clone();
                    let mut order: Vec<usize> = (0..r).collect();
                    // annihilators first, then zero modes, then creators
                    order.sort_by_key(|&j| std::cmp::Reverse(modes[j].signum()));
                    for j in order {
                        v = self.h_mode(fields[j].0, modes[j], &v);
                        if v.is_empty() {
                            break;
                        }
                    }
                    vec_axpy(out, &c, &v);
                }
            }
            let mut j = 0;
            while j < r {
                modes[j] += 1;
                if modes[j] <= d {
                    break;
                }
                modes[j] = lo;
                j += 1;
            }
            if j == r {
                break;
            }
        }
    }

    pub fn apply(&self, c: usize, k: i64, v: &FockVec<RatFunc>) -> FockVec<RatFunc> {
        let mut out = FockVec::new();
        for (m, x) in v {
            vec_axpy(&mut out, x, &self.column(c, k, m));
        }
        out
    }

    pub fn mode_matrix(&self, c: usize, k: i64, level: usize) -> ModeMatrix<RatFunc> {
        mode_matrix_with(self.rank, c, k, level, |m| (*self.column(c, k, m)).clone())
    }
}

/// `x (x-1) ⋯ (x-k+1)`.
fn falling(x: i64, k: usize) -> i64 {
    (0..k as i64).map(|i| x - i).product()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Involution {
    Theta,
    Omega,
    OmegaPrime,
}

impl Involution {
    /// Action on `(s, u, b)`: θ inverts `q, t`; ω swaps them and inverts
    /// `β`; ω′ = θω.
    pub fn on_scalar(self, x: &RatFunc) -> RatFunc {
        let f = match self {
            Involution::Theta => |e: [i32; 3]| [-e[0], -e[1], e[2]],
            Involution::Omega => |e: [i32; 3]| [e[1], e[0], -e[2]],
            Involution::OmegaPrime => |e: [i32; 3]| [-e[1], -e[0], -e[2]],
        };
        x.map_monos(f).expect("monomial substitution keeps a nonzero denominator")
    }

    /// Component relabeling and sign for `α^a_n`, `n ≠ 0`.
    pub fn on_oscillator(self, rank: usize, a: usize) -> (usize, i64) {
        match self {
            Involution::Theta | Involution::Omega => (rank - a, -1),
            Involution::OmegaPrime => (a, 1),
        }
    }

    /// Momentum `γ'` on which the transformed zero modes act as `γ` did.
    pub fn on_momentum(self, gamma: &WeightVector) -> WeightVector {
        let rank = gamma.rank();
        let mut out = WeightVector::zero(rank);
        let eps = match self {
            Involution::Theta => 1,
            Involution::Omega | Involution::OmegaPrime => -1,
        };
        for a in 1..rank {
            let (b, _) = self.on_oscillator(rank, a);
            out.lambda[b - 1] = self.on_scalar(&gamma.lambda[a - 1]).mul_int(eps);
        }
        out
    }

    pub fn on_monomial(self, rank: usize, m: &Monomial) -> (Monomial, i64) {
        let mut sign = 1;
        let ops = m
            .ops()
            .iter()
            .map(|&(a, n)| {
                let (b, s) = self.on_oscillator(rank, a);
                sign *= s;
                (b, n)
            })
            .collect();
        (Monomial::new(ops), sign)
    }
}

/// Checks `τ(M_γ) = M_{τγ}` entrywise under the boson relabeling, for the
/// mode matrix of `W^i_k` from the given level.
pub fn involution_invariant(
    which: Involution,
    rank: usize,
    gamma: &WeightVector,
    i: usize,
    k: i64,
    level: usize,
) -> Result<bool, FockError> {
    let max = level + k.unsigned_abs() as usize;
    let g2 = which.on_momentum(gamma);
    let osc = Arc::new(Oscillators::from_algebra(BosonAlgebra::quantum(rank)));
    let e1 = ModeEngine::new(osc.clone(), &[qmiura_current(rank, i, gamma, max)?]);
    let e2 = ModeEngine::new(osc, &[qmiura_current(rank, i, &g2, max)?]);
    let m1 = e1.mode_matrix(0, k, level);
    let m2 = e2.mode_matrix(0, k, level);
    let ri: HashMap<&Monomial, usize> = m2.rows.iter().enumerate().map(|(j, m)| (m, j)).collect();
    let ci: HashMap<&Monomial, usize> = m2.cols.iter().enumerate().map(|(j, m)| (m, j)).collect();
    for (r, rm) in m1.rows.iter().enumerate() {
        let (rm2, sr) = which.on_monomial(rank, rm);
        for (c, cm) in m1.cols.iter().enumerate() {
            let (cm2, sc) = which.on_monomial(rank, cm);
            let lhs = which.on_scalar(&m1.entries[r][c]);
            let rhs = m2.entries[ri[&rm2]][ci[&cm2]].mul_int(sr * sc);
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::parse_ratfunc;

    fn rf(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    fn quantum_engine(rank: usize, gamma: &WeightVector, max: usize) -> ModeEngine<RatFunc> {
        let osc = Arc::new(Oscillators::from_algebra(BosonAlgebra::quantum(rank)));
        ModeEngine::new(osc, &qmiura_currents(rank, gamma, max).unwrap())
    }

    #[test]
    fn lambda_zero_mode_at_zero_momentum() {
        let f = lambda_factor(2, 1, 0, &WeightVector::zero(2), 2).unwrap();
        assert_eq!(f.zero, RatFunc::p_half(1));
        let m = h_in_alpha(Mode::Quantum, 2, 1, 1).unwrap();
        assert_eq!(f.cplus[0][0], m[0]);
    }

    #[test]
    fn zero_mode_representability() {
        let g = WeightVector::from_lambda(vec![rf("2*b-2/b")]);
        assert_eq!(zero_mode_q(&g, 1).unwrap(), rf("u^2/s^2"));
        assert_eq!(zero_mode_q(&g, 2).unwrap(), rf("s^2/u^2"));
        let bad = WeightVector::from_lambda(vec![rf("b/3")]);
        assert!(zero_mode_q(&bad, 1).is_err());
    }

    #[test]
    fn summand_counts_and_top_current_is_unit() {
        let g = WeightVector::zero(4);
        for i in 1..4 {
            let c = qmiura_current(4, i, &g, 2).unwrap();
            assert_eq!(c.summands.len(), [0, 4, 6, 4][i]);
        }
        let top = qmiura_current(4, 4, &g, 3).unwrap();
        assert_eq!(top.summands.len(), 1);
        assert_eq!(top.summands[0], VertexFactor::identity(4, 3));
    }

    #[test]
    fn grading_kills_high_modes() {
        let g = WeightVector::zero(3);
        let e = quantum_engine(3, &g, 4);
        assert!(e.mode_matrix(0, 3, 2).rows.is_empty());
        let m = e.mode_matrix(1, 2, 2);
        assert_eq!((m.rows.len(), m.cols.len()), (1, 5));
    }

    #[test]
    fn structure_function_values() {
        let f = structure_function(2, 1, 1, 3);
        assert_eq!(f.coeff(0), RatFunc::one());
        assert_eq!(f.coeff(1), rf("-(s-1/s)*(u-1/u)/(s/u+u/s)"));
        for rank in 2..=4 {
            for i in 1..rank {
                for j in 1..rank {
                    let f = structure_function(rank, i, j, 6);
                    assert_eq!(f, structure_function(rank, j, i, 6));
                    assert_eq!(f, structure_function(rank, rank - i, rank - j, 6));
                }
            }
        }
    }

    #[test]
    fn contraction_first_order() {
        let osc = Oscillators::from_algebra(BosonAlgebra::quantum(2));
        let g = WeightVector::zero(2);
        let l1 = lambda_factor(2, 1, 0, &g, 2).unwrap();
        let c = contraction(&osc, &l1, &l1, 1);
        let expect = l1.cplus[0][0].mul(&l1.cminus[0][0]).mul(&osc.k(1, 1, 1));
        assert_eq!(c.coeff(1), expect);
        let id = VertexFactor::identity(2, 2);
        assert_eq!(contraction(&osc, &id, &l1, 3), Series::one().truncate(3));
    }

    #[test]
    fn miura_low_currents() {
        let w = classical_miura_currents(3);
        assert_eq!(w[0], DiffPoly::constant(RatFunc::one()));
        // W̄^1 = Σ ∂h̄^i, zero on the constrained bosons
        let e = ClassicalEngine::new(3, WeightVector::from_lambda(vec![rf("b"), rf("2/b")]), vec![w[1].clone()]);
        for k in -1..=1 {
            assert!(e.mode_matrix(0, k, 2).is_zero());
        }
    }

    #[test]
    fn virasoro_matches_free_field_form() {
        for rank in 2..=4 {
            let g = WeightVector::from_lambda((1..rank).map(|a| rf(&format!("{a}*b-1/b"))).collect());
            let e = ClassicalEngine::new(rank, g, vec![virasoro_current(rank), virasoro_free_field(rank)]);
            for k in -2..=2 {
                for level in 0..=2usize {
                    if level as i64 - k < 0 {
                        continue;
                    }
                    assert_eq!(e.mode_matrix(0, k, level).entries, e.mode_matrix(1, k, level).entries);
                }
            }
        }
    }

    #[test]
    fn l0_on_vacuum() {
        let g = WeightVector::from_lambda(vec![rf("3*b-1/b")]);
        let e = ClassicalEngine::new(2, g.clone(), vec![virasoro_current(2)]);
        let m = e.mode_matrix(0, 0, 0);
        let rho = WeightVector::rho(2);
        let h = g.dot(&g).mul(&RatFunc::from_frac(1, 2)).sub(&alpha0().mul(&rho.dot(&g)));
        assert_eq!(m.entries[0][0], h);
    }

    #[test]
    fn omega_prime_invariance_small() {
        let g = WeightVector::from_lambda(vec![rf("2*b-2/b")]);
        for which in [Involution::Theta, Involution::Omega, Involution::OmegaPrime] {
            for k in -1..=1 {
                assert!(involution_invariant(which, 2, &g, 1, k, 1).unwrap(), "{which:?} k={k}");
            }
        }
    }

    #[test]
    fn involutions_square_to_one() {
        let x = rf("(s^3-u)/(b*s*u^2+1)");
        let g = WeightVector::from_lambda(vec![rf("b"), rf("1/b-2*b")]);
        for w in [Involution::Theta, Involution::Omega, Involution::OmegaPrime] {
            assert_eq!(w.on_scalar(&w.on_scalar(&x)), x);
            assert_eq!(w.on_momentum(&w.on_momentum(&g)), g);
        }
        let composed = Involution::Theta.on_scalar(&Involution::Omega.on_scalar(&x));
        assert_eq!(composed, Involution::OmegaPrime.on_scalar(&x));
    }
}
