//! Mode-level verification of the quadratic relations of the q-deformed
//! W-algebra, the classical Virasoro algebra, and Gram matrices.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde_json::{json, Value};

use crate::coeff::{RatFunc, Scalar, XSeries};
use crate::currents::{
    central_charge, qmiura_currents, structure_function, virasoro_current, ClassicalEngine, ModeEngine,
};
use crate::fock::{
    basis_at_level, vec_add_term, vec_lincomb, vec_axpy, vec_scale, vec_sub, BosonAlgebra, FockError, FockVec, Monomial,
    Oscillators, WeightVector,
};
use crate::linalg::det;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RelError {
    #[error("no printed RHS for this pair: N={0}, (i,j)=({1},{2})")]
    Uncovered(usize, usize, usize),
    #[error(transparent)]
    Fock(#[from] FockError),
}

/// Momentum `Σ_a (-b/2 - a/(2b)) α^a`: off the degenerate locus and with
/// zero modes `q^{b h_i·γ}` that are monomials in `s`, `u`.
pub fn default_momentum(rank: usize) -> WeightVector {
    let mut g = WeightVector::zero(rank);
    for a in 1..rank {
        let c = RatFunc::b_pow(1).mul(&RatFunc::from_frac(-1, 2)).sub(&RatFunc::b_pow(-1).mul(&RatFunc::from_frac(a as i64, 2)));
        g = g.add(&WeightVector::root(rank, a).scale(&c));
    }
    g
}

/// Structure functions are expensive at high order; share them process-wide.
fn shared_structure_function(rank: usize, i: usize, j: usize, order: usize) -> Arc<XSeries> {
    type Table = Mutex<HashMap<(usize, usize, usize), Arc<XSeries>>>;
    static TABLE: OnceLock<Table> = OnceLock::new();
    let table = TABLE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (rank, i.min(j), i.max(j));
    if let Some(f) = table.lock().unwrap().get(&key) {
        if f.order() >= order {
            return f.clone();
        }
    }
    let f = Arc::new(structure_function(rank, key.1, key.2, order));
    table.lock().unwrap().insert(key, f.clone());
    f
}

/// The currents `W^0..W^N` (and zero beyond) acting on one Fock module.
pub struct QuantumW {
    rank: usize,
    gamma: WeightVector,
    max_level: usize,
    engine: ModeEngine<RatFunc>,
    fcache: Mutex<HashMap<(usize, usize), Arc<XSeries>>>,
}

impl QuantumW {
    /// Supports states and intermediate vectors up to `max_level`.
    pub fn new(rank: usize, gamma: WeightVector, max_level: usize) -> Result<Self, FockError> {
        let osc = Arc::new(Oscillators::from_algebra(BosonAlgebra::quantum(rank)));
        let engine = ModeEngine::new(osc, &qmiura_currents(rank, &gamma, max_level.max(1))?);
        Ok(QuantumW { rank, gamma, max_level, engine, fcache: Mutex::new(HashMap::new()) })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn momentum(&self) -> &WeightVector {
        &self.gamma
    }

    pub fn max_level(&self) -> usize {
        self.max_level
    }

    pub fn oscillators(&self) -> &Oscillators<RatFunc> {
        self.engine.oscillators()
    }

    /// `W^i_k v`, with `W^0 = W^N = 1` and `W^i = 0` for `i > N`.
    pub fn apply(&self, i: usize, k: i64, v: &FockVec<RatFunc>) -> FockVec<RatFunc> {
        if i == 0 || i == self.rank {
            return if k == 0 { v.clone() } else { FockVec::new() };
        }
        if i > self.rank {
            return FockVec::new();
        }
        self.engine.apply(i - 1, k, v)
    }

    fn f(&self, i: usize, j: usize) -> Arc<XSeries> {
        let key = (i, j);
        if let Some(f) = self.fcache.lock().unwrap().get(&key) {
            return f.clone();
        }
        let f = shared_structure_function(self.rank, i.min(self.rank), j.min(self.rank), self.max_level);
        self.fcache.lock().unwrap().insert(key, f.clone());
        f
    }

    fn f_coeff(&self, i: usize, j: usize, l: usize) -> RatFunc {
        let f = self.f(i, j);
        assert!(l <= f.order(), "structure function truncated below {l}");
        f.coeff(l)
    }

    /// `Σ_ℓ f^{ij}_ℓ (W^i_{n-ℓ} W^j_{m+ℓ} - W^j_{m-ℓ} W^i_{n+ℓ}) v` for `v`
    /// of level `d`.
    pub fn lhs(&self, i: usize, j: usize, n: i64, m: i64, v: &FockVec<RatFunc>, d: usize) -> FockVec<RatFunc> {
        let d = d as i64;
        let mut parts = Vec::new();
        let top = (d - n.min(m)).max(0);
        for l in 0..=top {
            let f = self.f_coeff(i, j, l as usize);
            if f.is_zero() {
                continue;
            }
            if m + l <= d {
                let x = self.apply(j, m + l, v);
                parts.push((f.clone(), self.apply(i, n - l, &x)));
            }
            if n + l <= d {
                let x = self.apply(i, n + l, v);
                parts.push((f.neg(), self.apply(j, m - l, &x)));
            }
        }
        vec_lincomb(&parts)
    }

    /// Mode `n` of `∘∘W^a(r w) W^b(w)∘∘` on `v` of level `d`, `r = p^{r2/2}`.
    pub fn normal_ordered(&self, a: usize, b: usize, r2: i64, n: i64, v: &FockVec<RatFunc>, d: usize) -> FockVec<RatFunc> {
        let d = d as i64;
        let rpow = |e: i64| RatFunc::p_half((r2 * e) as i32);
        let mut parts = Vec::new();
        let top = (d - n).max(d - 1).max(0);
        for mm in 0..=top {
            let first = if n + mm <= d {
                let x = self.apply(b, n + mm, v);
                self.apply(a, -mm, &x)
            } else {
                FockVec::new()
            };
            let second = if mm < d {
                let x = self.apply(a, mm + 1, v);
                self.apply(b, n - mm - 1, &x)
            } else {
                FockVec::new()
            };
            if first.is_empty() && second.is_empty() {
                continue;
            }
            let mut cf = RatFunc::zero();
            let mut cs = RatFunc::zero();
            for l in 0..=mm {
                let f = self.f_coeff(a, b, l as usize);
                if f.is_zero() {
                    continue;
                }
                cf = cf.add(&f.mul(&rpow(mm - l)));
                cs = cs.add(&f.mul(&rpow(l - mm - 1)));
            }
            parts.push((cf, first));
            parts.push((cs, second));
        }
        vec_lincomb(&parts)
    }

    /// Coefficient of `z^{-n} w^{-m}` of a printed right side on `v`.
    pub fn rhs(&self, terms: &[RhsTerm], n: i64, m: i64, v: &FockVec<RatFunc>, d: usize) -> FockVec<RatFunc> {
        let mut parts = Vec::new();
        let nm = n + m;
        for t in terms {
            let dn = t.delta2 * n;
            match t.kind {
                RhsKind::Unit => {
                    if nm == 0 {
                        parts.push((t.coeff.mul(&RatFunc::p_half(dn as i32)), v.clone()));
                    }
                }
                RhsKind::Single { i, c2 } => {
                    let c = t.coeff.mul(&RatFunc::p_half((dn - c2 * nm) as i32));
                    parts.push((c, self.apply(i, nm, v)));
                }
                RhsKind::Pair { a, b, e1, e2 } => {
                    // on the support z = p^{δ} w: ∘∘W^a(p^{e1+δ-e2} w')W^b(w')∘∘, w' = p^{e2} w
                    let r2 = e1 + t.delta2 - e2;
                    let c = t.coeff.mul(&RatFunc::p_half((dn - e2 * nm) as i32));
                    parts.push((c, self.normal_ordered(a, b, r2, nm, v, d)));
                }
            }
        }
        vec_lincomb(&parts)
    }
}

/// Operator multiplying `δ(p^{delta2/2} w/z)` in a printed right side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhsKind {
    /// the identity
    Unit,
    /// `W^i(p^{c2/2} w)`
    Single { i: usize, c2: i64 },
    /// `∘∘W^a(p^{e1/2} z) W^b(p^{e2/2} w)∘∘`
    Pair { a: usize, b: usize, e1: i64, e2: i64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RhsTerm {
    pub coeff: RatFunc,
    pub delta2: i64,
    pub kind: RhsKind,
}

/// `(1-q)(1-t^{-1})/(1-p) = (q^{1/2}-q^{-1/2})(t^{1/2}-t^{-1/2})/(p^{1/2}-p^{-1/2})`.
pub fn c_qt() -> RatFunc {
    let one = RatFunc::one();
    let q = RatFunc::q_half(2);
    let ti = RatFunc::t_half(-2);
    let p = RatFunc::p_half(2);
    one.sub(&q).mul(&one.sub(&ti)).div(&one.sub(&p)).expect("nonzero")
}

fn one_minus_p(k: i32) -> RatFunc {
    RatFunc::one().sub(&RatFunc::p_half(2 * k))
}

/// Right side of the `W^1`–`W^j` relation, `j ≥ 1`.
pub fn rhs_one_j(rank: usize, j: usize) -> Vec<RhsTerm> {
    let c = c_qt();
    let d = j as i64 + 1;
    vec![
        RhsTerm { coeff: c.neg(), delta2: d, kind: RhsKind::Single { i: j + 1, c2: 1 } },
        RhsTerm { coeff: c, delta2: -d, kind: RhsKind::Single { i: j + 1, c2: -1 } },
    ]
    .into_iter()
    .map(|t| unit_if_trivial(rank, t))
    .collect()
}

/// Right side of the `W^2`–`W^j` relation, `j ≥ 2`.
pub fn rhs_two_j(rank: usize, j: usize) -> Vec<RhsTerm> {
    let c = c_qt();
    let q = RatFunc::q_half(2);
    let ti = RatFunc::t_half(-2);
    let p = RatFunc::p_half(2);
    let one = RatFunc::one();
    let k = one
        .sub(&q.mul(&p))
        .mul(&one.sub(&ti.mul(&p)))
        .div(&one_minus_p(1).mul(&one_minus_p(2)))
        .expect("nonzero");
    let ck = c.mul(&k);
    let c2 = c.mul(&c);
    let jj = j as i64;
    let inv = |x: RatFunc| x.inv().expect("nonzero");
    let terms = vec![
        RhsTerm { coeff: ck.neg(), delta2: jj + 2, kind: RhsKind::Single { i: j + 2, c2: 2 } },
        RhsTerm { coeff: ck.clone(), delta2: -jj - 2, kind: RhsKind::Single { i: j + 2, c2: -2 } },
        RhsTerm { coeff: c.neg(), delta2: jj, kind: RhsKind::Pair { a: 1, b: j + 1, e1: -1, e2: 1 } },
        RhsTerm { coeff: c.clone(), delta2: -jj, kind: RhsKind::Pair { a: 1, b: j + 1, e1: 1, e2: -1 } },
        RhsTerm {
            coeff: c2.mul(&RatFunc::p_half(4)).mul(&inv(one_minus_p(2))),
            delta2: jj,
            kind: RhsKind::Single { i: j + 2, c2: 2 },
        },
        RhsTerm { coeff: c2.mul(&inv(one_minus_p(j as i32))), delta2: jj, kind: RhsKind::Single { i: j + 2, c2: 0 } },
        RhsTerm {
            coeff: c2.mul(&RatFunc::p_half(2 * j as i32)).mul(&inv(one_minus_p(j as i32))).neg(),
            delta2: -jj,
            kind: RhsKind::Single { i: j + 2, c2: 0 },
        },
        RhsTerm { coeff: c2.mul(&inv(one_minus_p(2))).neg(), delta2: -jj, kind: RhsKind::Single { i: j + 2, c2: -2 } },
    ];
    terms.into_iter().map(|t| unit_if_trivial(rank, t)).filter(|t| !is_null(rank, t)).collect()
}

/// The leading `∘∘W^{i-k} W^{j+k}∘∘` tower of the `W^i`–`W^j` relation,
/// `i ≤ j`. Not the full right side in general.
pub fn rhs_main_term(rank: usize, i: usize, j: usize) -> Vec<RhsTerm> {
    let c = c_qt();
    let q = RatFunc::q_half(2);
    let ti = RatFunc::t_half(-2);
    let one = RatFunc::one();
    let mut out = Vec::new();
    let mut prod = RatFunc::one();
    for k in 1..=i.min(rank - j) {
        if k > 1 {
            let l = (k - 1) as i32;
            let pl = RatFunc::p_half(2 * l);
            let num = one.sub(&q.mul(&pl)).mul(&one.sub(&ti.mul(&pl)));
            prod = prod.mul(&num.div(&one_minus_p(l).mul(&one_minus_p(l + 1))).expect("nonzero"));
        }
        let kk = k as i64;
        let d = j as i64 - i as i64 + 2 * kk;
        let coeff = c.mul(&prod);
        out.push(RhsTerm { coeff: coeff.neg(), delta2: d, kind: RhsKind::Pair { a: i - k, b: j + k, e1: -kk, e2: kk } });
        out.push(RhsTerm { coeff, delta2: -d, kind: RhsKind::Pair { a: i - k, b: j + k, e1: kk, e2: -kk } });
    }
    out
}

fn unit_if_trivial(rank: usize, t: RhsTerm) -> RhsTerm {
    match t.kind {
        RhsKind::Single { i, .. } if i == 0 || i == rank => RhsTerm { kind: RhsKind::Unit, ..t },
        _ => t,
    }
}

fn is_null(rank: usize, t: &RhsTerm) -> bool {
    match t.kind {
        RhsKind::Single { i, .. } => i > rank,
        RhsKind::Pair { a, b, .. } => a > rank || b > rank,
        RhsKind::Unit => false,
    }
}

/// The printed right side for `(i, j)`: the appendix forms for `N = 2, 3`,
/// otherwise the general `W^1`–`W^j` and `W^2`–`W^j` forms.
pub fn printed_rhs(rank: usize, i: usize, j: usize) -> Result<Vec<RhsTerm>, RelError> {
    let c = c_qt();
    let unit = |d: i64| {
        vec![
            RhsTerm { coeff: c.neg(), delta2: d, kind: RhsKind::Unit },
            RhsTerm { coeff: c.clone(), delta2: -d, kind: RhsKind::Unit },
        ]
    };
    let single = |d: i64, w: usize| {
        vec![
            RhsTerm { coeff: c.neg(), delta2: d, kind: RhsKind::Single { i: w, c2: 1 } },
            RhsTerm { coeff: c.clone(), delta2: -d, kind: RhsKind::Single { i: w, c2: -1 } },
        ]
    };
    match (rank, i, j) {
        (2, 1, 1) => Ok(unit(2)),
        (3, 1, 1) => Ok(single(2, 2)),
        (3, 2, 2) => Ok(single(2, 1)),
        (3, 1, 2) => Ok(unit(3)),
        (n, 1, j) if n > 3 && (1..n).contains(&j) => Ok(rhs_one_j(n, j)),
        (n, 2, j) if n > 3 && (2..n).contains(&j) => Ok(rhs_two_j(n, j)),
        _ => Err(RelError::Uncovered(rank, i, j)),
    }
}

/// Outcome of checking one relation on one window.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationInstance {
    pub rank: usize,
    pub i: usize,
    pub j: usize,
    pub n: i64,
    pub m: i64,
    pub max_level: usize,
    pub checked_columns: usize,
    pub passed: bool,
    /// `(source level, source monomial, target monomial, residual)`
    pub first_residual: Option<(usize, Monomial, Monomial, String)>,
}

impl RelationInstance {
    pub fn to_json(&self) -> Value {
        json!({
            "rank": self.rank,
            "pair": [self.i, self.j],
            "modes": [self.n, self.m],
            "max_level": self.max_level,
            "checked_columns": self.checked_columns,
            "pass": self.passed,
            "first_residual": self.first_residual.as_ref().map(|(d, src, dst, r)| json!({
                "level": d, "source": src.to_json(), "target": dst.to_json(), "value": r,
            })),
        })
    }
}

/// Checks `lhs = rhs` on every basis vector of levels `0..=level`.
pub fn verify_relation_with(
    w: &QuantumW,
    i: usize,
    j: usize,
    terms: &[RhsTerm],
    n: i64,
    m: i64,
    level: usize,
) -> RelationInstance {
    let mut inst = RelationInstance {
        rank: w.rank,
        i,
        j,
        n,
        m,
        max_level: level,
        checked_columns: 0,
        passed: true,
        first_residual: None,
    };
    for d in 0..=level {
        if (d as i64) - n - m < 0 {
            continue;
        }
        for mono in basis_at_level(w.rank, d) {
            let mut v = FockVec::new();
            vec_add_term(&mut v, mono.clone(), &RatFunc::one());
            let res = vec_sub(&w.lhs(i, j, n, m, &v, d), &w.rhs(terms, n, m, &v, d));
            inst.checked_columns += 1;
            if let Some((tgt, val)) = res.iter().next() {
                inst.passed = false;
                inst.first_residual = Some((d, mono, tgt.clone(), val.to_text()));
                return inst;
            }
        }
    }
    inst
}

/// Intermediate level needed to check modes `(n, m)` from `level`.
pub fn window_level(level: usize, n: i64, m: i64) -> usize {
    level + (n.unsigned_abs() + m.unsigned_abs()) as usize
}

pub fn verify_relation(
    rank: usize,
    i: usize,
    j: usize,
    n: i64,
    m: i64,
    level: usize,
) -> Result<RelationInstance, RelError> {
    let terms = printed_rhs(rank, i, j)?;
    let w = QuantumW::new(rank, default_momentum(rank), window_level(level, n, m))?;
    Ok(verify_relation_with(&w, i, j, &terms, n, m, level))
}

/// `[L_n, L_m] = (n-m) L_{n+m} + (c/12)(n³-n) δ_{n+m,0}` on levels
/// `0..=level` of `F̄_γ`.
pub fn verify_classical_virasoro_on(e: &ClassicalEngine, rank: usize, n: i64, m: i64, level: usize) -> bool {
    let c = central_charge(rank);
    for d in 0..=level {
        if d as i64 - n - m < 0 {
            continue;
        }
        for mono in basis_at_level(rank, d) {
            let mut v = FockVec::new();
            v.insert(mono, RatFunc::one());
            let lm = e.apply(0, m, &v);
            let ln = e.apply(0, n, &v);
            let lhs = vec_sub(&e.apply(0, n, &lm), &e.apply(0, m, &ln));
            let mut rhs = vec_scale(&e.apply(0, n + m, &v), &RatFunc::from_int(n - m));
            if n + m == 0 {
                let k = c.mul(&RatFunc::from_frac(n * n * n - n, 12));
                vec_axpy(&mut rhs, &k, &v);
            }
            if !vec_sub(&lhs, &rhs).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Generic classical momentum `γ^a = a·b - (a+1)/(2b)`.
pub fn classical_momentum(rank: usize) -> WeightVector {
    WeightVector::from_lambda(
        (1..rank)
            .map(|a| RatFunc::b_pow(1).mul_int(a as i64).sub(&RatFunc::b_pow(-1).mul(&RatFunc::from_frac(a as i64 + 1, 2))))
            .collect(),
    )
}

pub fn verify_classical_virasoro(rank: usize, n: i64, m: i64, level: usize) -> bool {
    let e = ClassicalEngine::new(rank, classical_momentum(rank), vec![virasoro_current(rank)]);
    verify_classical_virasoro_on(&e, rank, n, m, level)
}

/// Contravariant form on the W-descendants `W^{i_1}_{-n_1}⋯|γ⟩`, labelled
/// like Fock monomials, with `(W^i_{-n})^† = W^i_n`.
pub fn gram_matrix(w: &QuantumW, level: usize) -> Vec<Vec<RatFunc>> {
    let labels = basis_at_level(w.rank, level);
    let vac = {
        let mut v = FockVec::new();
        v.insert(Monomial::empty(), RatFunc::one());
        v
    };
    let kets: Vec<FockVec<RatFunc>> = labels
        .iter()
        .map(|l| {
            let mut v = vac.clone();
            for &(i, n) in l.ops().iter().rev() {
                v = w.apply(i, -(n as i64), &v);
            }
            v
        })
        .collect();
    labels
        .iter()
        .map(|bra| {
            kets.iter()
                .map(|ket| {
                    let mut v = ket.clone();
                    for &(i, n) in bra.ops() {
                        v = w.apply(i, n as i64, &v);
                    }
                    v.get(&Monomial::empty()).cloned().unwrap_or_else(RatFunc::zero)
                })
                .collect()
        })
        .collect()
}

pub fn gram_determinant(w: &QuantumW, level: usize) -> RatFunc {
    det(&gram_matrix(w, level))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank2_level0_scalar_relation() {
        let inst = verify_relation(2, 1, 1, 1, -1, 0).unwrap();
        assert!(inst.passed, "{inst:?}");
    }

    #[test]
    fn rank2_small_window() {
        for n in -2..=2 {
            for m in -2..=2 {
                let inst = verify_relation(2, 1, 1, n, m, 2).unwrap();
                assert!(inst.passed, "{inst:?}");
            }
        }
    }

    #[test]
    fn rank3_small_window() {
        for (i, j) in [(1, 1), (1, 2), (2, 2)] {
            for (n, m) in [(0, 0), (1, -1), (-1, 1), (1, 0), (0, -1), (2, -1)] {
                let inst = verify_relation(3, i, j, n, m, 1).unwrap();
                assert!(inst.passed, "{inst:?}");
            }
        }
    }

    #[test]
    fn general_forms_agree_with_appendix_forms() {
        let w = QuantumW::new(3, default_momentum(3), 3).unwrap();
        for (n, m) in [(1, -1), (0, 1), (-1, -1)] {
            assert!(verify_relation_with(&w, 1, 1, &rhs_one_j(3, 1), n, m, 1).passed);
            assert!(verify_relation_with(&w, 1, 2, &rhs_one_j(3, 2), n, m, 1).passed);
            assert!(verify_relation_with(&w, 2, 2, &rhs_two_j(3, 2), n, m, 1).passed);
        }
        let w2 = QuantumW::new(2, default_momentum(2), 3).unwrap();
        assert!(verify_relation_with(&w2, 1, 1, &rhs_one_j(2, 1), 1, -1, 1).passed);
    }

    #[test]
    fn main_term_is_full_for_first_current() {
        for (rank, j) in [(3, 1), (3, 2), (4, 2)] {
            let w = QuantumW::new(rank, default_momentum(rank), 3).unwrap();
            for (n, m) in [(1, -1), (0, 1)] {
                assert!(verify_relation_with(&w, 1, j, &rhs_main_term(rank, 1, j), n, m, 1).passed);
            }
        }
    }

    #[test]
    fn rank4_general_forms() {
        for (i, j) in [(1, 1), (1, 3), (2, 2)] {
            for (n, m) in [(1, -1), (0, 0)] {
                let inst = verify_relation(4, i, j, n, m, 1).unwrap();
                assert!(inst.passed, "{inst:?}");
            }
        }
    }

    #[test]
    fn uncovered_pair() {
        assert_eq!(printed_rhs(5, 2, 1).unwrap_err(), RelError::Uncovered(5, 2, 1));
        assert!(printed_rhs(5, 3, 3).is_err());
    }

    #[test]
    fn normal_ordering_with_unit() {
        let w = QuantumW::new(2, default_momentum(2), 3).unwrap();
        for mono in basis_at_level(2, 2) {
            let mut v = FockVec::new();
            v.insert(mono, RatFunc::one());
            for n in -1..=2 {
                assert_eq!(w.normal_ordered(0, 1, 3, n, &v, 2), w.apply(1, n, &v));
            }
        }
    }

    #[test]
    fn classical_virasoro_small() {
        for rank in 2..=3 {
            for n in -2..=2 {
                for m in -2..=2 {
                    assert!(verify_classical_virasoro(rank, n, m, 2), "N={rank} n={n} m={m}");
                }
            }
        }
    }

    #[test]
    fn gram_level_one() {
        let w = QuantumW::new(2, default_momentum(2), 2).unwrap();
        assert_eq!(gram_matrix(&w, 0), vec![vec![RatFunc::one()]]);
        assert!(!gram_determinant(&w, 1).is_zero());
        let a11 = WeightVector::from_lambda(vec![crate::coeff::parse_ratfunc("2*b-2/b").unwrap()]);
        let ws = QuantumW::new(2, a11, 2).unwrap();
        assert!(gram_determinant(&ws, 1).is_zero());
    }
}
