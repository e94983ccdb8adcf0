//! Singular vectors at the momenta `α^±_{rs}`: kernel solving, constant-term
//! evaluation of the screening integrals at integer `β`, and the map to
//! symmetric functions.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::coeff::gcd::gcd;
use crate::coeff::{CoeffError, Poly, RatFunc, Rat, Series};
use crate::currents::{classical_miura_currents, qmiura_currents, ClassicalEngine, Involution, ModeEngine, ModeMatrix, VertexFactor};
use crate::fock::{
    basis_at_level, h_in_alpha, vec_add_term, BosonAlgebra, FockError, FockState, FockVec, Mode, Monomial, Oscillators,
    WeightVector,
};
use crate::linalg::kernel;
use crate::symfun::{jack_j, macdonald_p, monomial_expand, partitions, to_monomial, Basis, Partition, SymError, SymFunc};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SingularError {
    #[error("invalid (r, s) data: {0}")]
    Invalid(String),
    #[error("expansion of {what} is not a polynomial through degree {checked}")]
    Truncation { what: String, checked: usize },
    #[error(transparent)]
    Fock(#[from] FockError),
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn name(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// Labels `(r_a, s_a)` of a degenerate momentum; `r` is strictly decreasing
/// over its nonzero entries, which come first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RSData {
    pub sign: Sign,
    pub r: Vec<usize>,
    pub s: Vec<usize>,
}

impl RSData {
    pub fn new(sign: Sign, r: Vec<usize>, s: Vec<usize>) -> Result<RSData, SingularError> {
        if r.is_empty() || r.len() != s.len() {
            return Err(SingularError::Invalid(format!("r and s need N-1 ≥ 1 entries each, got {} and {}", r.len(), s.len())));
        }
        if s.contains(&0) {
            return Err(SingularError::Invalid("s_a must be positive".into()));
        }
        if r[0] == 0 {
            return Err(SingularError::Invalid("r_1 must be positive".into()));
        }
        for w in r.windows(2) {
            if w[1] != 0 && w[0] <= w[1] || w[0] == 0 && w[1] != 0 {
                return Err(SingularError::Invalid(format!("r must be strictly decreasing, got {r:?}")));
            }
        }
        Ok(RSData { sign, r, s })
    }

    pub fn plus(r: Vec<usize>, s: Vec<usize>) -> Result<RSData, SingularError> {
        RSData::new(Sign::Plus, r, s)
    }

    pub fn rank(&self) -> usize {
        self.r.len() + 1
    }

    /// Fock level `Σ r_a s_a` of the singular vector.
    pub fn level(&self) -> usize {
        self.r.iter().zip(&self.s).map(|(r, s)| r * s).sum()
    }

    pub fn with_sign(&self, sign: Sign) -> RSData {
        RSData { sign, ..self.clone() }
    }

    pub fn to_json(&self) -> Value {
        json!({"sign": self.sign.name(), "r": self.r, "s": self.s})
    }
}

/// `(α^±_{rs}, α̃^±_{rs})`.
pub fn momentum_rs(data: &RSData) -> (WeightVector, WeightVector) {
    let n = data.rank();
    let b = RatFunc::b_pow(1);
    let binv = RatFunc::b_pow(-1);
    let (one, two) = match data.sign {
        Sign::Plus => (b.clone(), binv.neg()),
        Sign::Minus => (binv.neg(), b.clone()),
    };
    let mut alpha = WeightVector::zero(n);
    for a in 1..n {
        let prev = if a == 1 { 0 } else { data.r[a - 2] as i64 };
        let x = 1 + data.r[a - 1] as i64 - prev;
        alpha.lambda[a - 1] = one.mul_int(x).add(&two.mul_int(1 + data.s[a - 1] as i64));
    }
    let mut tilde = alpha.clone();
    for a in 1..n {
        tilde = tilde.sub(&WeightVector::root(n, a).scale(&one.mul_int(data.r[a - 1] as i64)));
    }
    (alpha, tilde)
}

/// `λ` with `λ' = ((r_1)^{s_1}, …, (r_{N-1})^{s_{N-1}})`.
pub fn partition_from_rs(data: &RSData) -> Partition {
    let mut cols = Vec::new();
    for (&r, &s) in data.r.iter().zip(&data.s) {
        cols.extend(std::iter::repeat(r).take(s));
    }
    Partition::new(cols).conjugate()
}

/// Coefficients of the mode matrices of all nontrivial currents.
fn stacked_rows(
    level: usize,
    extra: usize,
    ncur: usize,
    mode_matrix: impl Fn(usize, i64) -> ModeMatrix<RatFunc>,
) -> Vec<Vec<RatFunc>> {
    let mut rows = Vec::new();
    for c in 0..ncur {
        for n in 1..=(level + extra) as i64 {
            rows.extend(mode_matrix(c, n).entries);
        }
    }
    rows
}

/// Basis of the vectors at Fock level `Σ r_a s_a` over `α^±_{rs}` killed by
/// every `W^i_n`, `n ≥ 1`.
pub fn singular_kernel(mode: Mode, data: &RSData, extra_levels: usize) -> Result<Vec<FockState<RatFunc>>, SingularError> {
    let (alpha, _) = momentum_rs(data);
    kernel_at(mode, data.rank(), &alpha, data.level(), extra_levels)
}

/// Joint kernel of the positive current modes on `F_γ` at a given level.
pub fn kernel_at(
    mode: Mode,
    rank: usize,
    gamma: &WeightVector,
    level: usize,
    extra_levels: usize,
) -> Result<Vec<FockState<RatFunc>>, SingularError> {
    let cols = basis_at_level(rank, level);
    let rows = match mode {
        Mode::Quantum => {
            let osc = Arc::new(Oscillators::from_algebra(BosonAlgebra::quantum(rank)));
            let engine = ModeEngine::new(osc, &qmiura_currents(rank, gamma, level.max(1))?);
            stacked_rows(level, extra_levels, rank - 1, |c, n| engine.mode_matrix(c, n, level))
        }
        Mode::Classical => {
            let currents = classical_miura_currents(rank)[2..].to_vec();
            let engine = ClassicalEngine::new(rank, gamma.clone(), currents);
            stacked_rows(level, extra_levels, rank - 1, |c, n| engine.mode_matrix(c, n, level))
        }
    };
    Ok(kernel(&rows, cols.len())
        .into_iter()
        .map(|v| {
            let mut terms = FockVec::new();
            for (m, c) in cols.iter().zip(v) {
                vec_add_term(&mut terms, m.clone(), &c);
            }
            FockState { momentum: gamma.clone(), terms }
        })
        .collect())
}

/// `σ_a(n)`: the image of `α^a_{-n}` is `σ_a(n) p_n`. It is the contraction
/// of `α^a_{-n}` with the coherent state of `h^1_n` weighted by
/// `1/(q^{n/2}-q^{-n/2})` (quantum) or `b/n` (classical); the minus chain
/// uses the `ω′` image of that weight. Classically `ω′` also flips the sign of
/// ħ', which the rescaled bosons absorb, so it acts there as `b -> -1/b`.
pub fn sigma(mode: Mode, sign: Sign, rank: usize, a: usize, n: usize) -> RatFunc {
    let alg = BosonAlgebra::new(rank, mode);
    let m = h_in_alpha(mode, rank, 1, n as i64).expect("valid component");
    let mut k = RatFunc::zero();
    for (b, c) in m.iter().enumerate() {
        if !c.is_zero() {
            k = k.add(&c.mul(&alg.commutator(b + 1, a, n as i64).expect("valid indices")));
        }
    }
    let w = match mode {
        Mode::Quantum => RatFunc::q_half(n as i32).sub(&RatFunc::q_half(-(n as i32))).inv().expect("nonzero"),
        Mode::Classical => RatFunc::b_pow(1).mul(&RatFunc::from_frac(1, n as i64)),
    };
    let w = match (sign, mode) {
        (Sign::Plus, _) => w,
        (Sign::Minus, Mode::Quantum) => Involution::OmegaPrime.on_scalar(&w),
        (Sign::Minus, Mode::Classical) => RatFunc::b_pow(-1).mul(&RatFunc::from_frac(-1, n as i64)),
    };
    k.mul(&w)
}

/// Image of a Fock vector in the power-sum basis.
pub fn to_symfunc(mode: Mode, sign: Sign, rank: usize, v: &FockVec<RatFunc>) -> SymFunc {
    let mut cache: BTreeMap<(usize, usize), RatFunc> = BTreeMap::new();
    let mut out = SymFunc::zero(Basis::Power);
    for (m, c) in v {
        let mut x = c.clone();
        for &(a, n) in m.ops() {
            let s = cache.entry((a, n)).or_insert_with(|| sigma(mode, sign, rank, a, n));
            x = x.mul(s);
            if x.is_zero() {
                break;
            }
        }
        out.add_term(Partition::new(m.ops().iter().map(|&(_, n)| n).collect()), &x);
    }
    out
}

/// Macdonald `P_λ(q,t)` or Jack `J_λ(β)`, transported by `ω′` for the minus
/// chain.
pub fn oracle(mode: Mode, sign: Sign, lambda: &Partition) -> Result<SymFunc, SingularError> {
    let f = match mode {
        Mode::Quantum => macdonald_p(lambda)?,
        Mode::Classical => jack_j(lambda)?,
    };
    Ok(match sign {
        Sign::Plus => f,
        Sign::Minus => f.map_coeffs(|c| Ok(Involution::OmegaPrime.on_scalar(c)))?,
    })
}

#[derive(Debug, Clone)]
pub struct OracleComparison {
    pub passed: bool,
    pub ratio: Option<RatFunc>,
    pub image: SymFunc,
    pub oracle: SymFunc,
    pub diagnostic: Option<String>,
}

impl OracleComparison {
    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed,
            "ratio": self.ratio.as_ref().map(|r| r.to_canonical_string()),
            "image": self.image.to_json(),
            "oracle": self.oracle.to_json(),
            "diagnostic": self.diagnostic,
        })
    }
}

/// Tests `image = ratio · oracle` in the monomial basis.
pub fn proportional(image: SymFunc, oracle: SymFunc) -> OracleComparison {
    if image.is_zero() {
        return OracleComparison { passed: false, ratio: None, image, oracle, diagnostic: Some("zero image".into()) };
    }
    let ratio = image.ratio_to(&oracle);
    let diagnostic = ratio.is_none().then(|| "no common scalar ratio".to_string());
    OracleComparison { passed: ratio.is_some(), ratio, image, oracle, diagnostic }
}

pub fn compare_with_oracle(
    mode: Mode,
    sign: Sign,
    state: &FockState<RatFunc>,
    lambda: &Partition,
) -> Result<OracleComparison, SingularError> {
    let rank = state.momentum.rank();
    let image = to_monomial(&to_symfunc(mode, sign, rank, &state.terms));
    Ok(proportional(image, oracle(mode, sign, lambda)?))
}

/// Oscillator and zero-mode data of `S^a_±(z)`: the exponent is
/// `Σ_n (cplus[n][a] α^a_n z^{-n} + cminus[n][a] α^a_{-n} z^n)`, followed by
/// `e^{shift·Q} z^{zpow · α^a_0}`. No cocycle is attached.
#[derive(Debug, Clone)]
pub struct ScreeningFactor {
    pub a: usize,
    pub sign: Sign,
    pub mode: Mode,
    pub oscillators: VertexFactor<RatFunc>,
    pub momentum_shift: WeightVector,
    pub zpow: RatFunc,
}

/// Coefficient `c_n` of `α^a_{-n} z^n`, `n > 0`, in the exponent of
/// `S^a_±`. Quantum: the printed `∓α^a_m/(ξ^{m/2}-ξ^{-m/2}) z^{-m}` read at
/// `m = -n`, with `ξ = q` or `t`. Classical: `α_± φ^a` with
/// `φ^a ∋ -Σ α^a_m z^{-m}/m`.
pub fn screening_creation(mode: Mode, sign: Sign, n: usize) -> RatFunc {
    let n32 = n as i32;
    match (mode, sign) {
        (Mode::Quantum, Sign::Plus) => RatFunc::q_half(n32).sub(&RatFunc::q_half(-n32)).inv().unwrap(),
        (Mode::Quantum, Sign::Minus) => RatFunc::t_half(n32).sub(&RatFunc::t_half(-n32)).inv().unwrap().neg(),
        (Mode::Classical, Sign::Plus) => RatFunc::b_pow(1).mul(&RatFunc::from_frac(1, n as i64)),
        (Mode::Classical, Sign::Minus) => RatFunc::b_pow(-1).mul(&RatFunc::from_frac(-1, n as i64)),
    }
}

pub fn screening_factor(rank: usize, a: usize, sign: Sign, mode: Mode, max_mode: usize) -> ScreeningFactor {
    let mut f = VertexFactor::identity(rank, max_mode);
    for n in 1..=max_mode {
        let c = screening_creation(mode, sign, n);
        // the annihilation coefficient is odd in n for every case
        f.cminus[n - 1][a - 1] = c.clone();
        f.cplus[n - 1][a - 1] = c.neg();
    }
    let zpow = match sign {
        Sign::Plus => RatFunc::b_pow(1),
        Sign::Minus => RatFunc::b_pow(-1).neg(),
    };
    ScreeningFactor { a, sign, mode, oscillators: f, momentum_shift: WeightVector::root(rank, a).scale(&zpow), zpow }
}

// ---------------------------------------------------------------------------
// Constant-term evaluation
// ---------------------------------------------------------------------------

type Expo = Vec<i32>;
pub type Laurent = BTreeMap<Expo, RatFunc>;

/// The screening variables `x^a_j`, with weights making every infinite
/// expansion increase a height `Σ w_v e_v`.
struct Vars {
    group: Vec<usize>,
    index: Vec<Vec<usize>>,
    weight: Vec<i64>,
}

impl Vars {
    fn new(data: &RSData) -> Vars {
        let big = data.r[0] as i64 + 1;
        let mut group = Vec::new();
        let mut index = Vec::new();
        let mut weight = Vec::new();
        for (a, &r) in data.r.iter().enumerate() {
            let mut ids = Vec::new();
            for j in 0..r {
                ids.push(group.len());
                group.push(a + 1);
                // later groups heavier, earlier members heavier
                weight.push((a as i64 + 1) * big - j as i64);
            }
            index.push(ids);
        }
        Vars { group, index, weight }
    }

    fn len(&self) -> usize {
        self.group.len()
    }

    fn height(&self, e: &[i32]) -> i64 {
        e.iter().zip(&self.weight).map(|(&x, &w)| x as i64 * w).sum()
    }
}

/// A factor `F(x_up/x_down)` given by the exponent series `Σ c_n y^n`.
struct RatioFactor {
    up: usize,
    down: usize,
    exponent: Vec<RatFunc>,
    /// Known to terminate at integer `β`; checked rather than truncated.
    poly: bool,
    what: &'static str,
}

fn exp_series(exponent: &[RatFunc], order: usize) -> Result<Vec<RatFunc>, SingularError> {
    let mut c = vec![RatFunc::zero(); order + 1];
    for (n, x) in exponent.iter().enumerate().take(order + 1) {
        c[n] = x.clone();
    }
    let e = Series::new(c, order).exp()?;
    Ok((0..=order).map(|k| e.coeff(k)).collect())
}

/// Scalar coefficients of the integrand at `t = q^β` (quantum) or in `β`
/// (classical). `coef(n)` is the exponent coefficient of the named piece.
trait Kernel {
    /// Exponent of `Δ` per ordered pair in `x_j/x_i`.
    fn delta(&self, n: usize) -> RatFunc;
    /// Exponent of `π(x, y)` in `x_i y_j`, including the `p^n` of `p x^{a+1}`.
    fn pi_shifted(&self, n: usize) -> RatFunc;
    /// Exponents of `C` in `x_i/x_j` and in `x_j/x_i` for `i < j`, and the
    /// power `β` of the monomial factor; `None` when there is no `C`.
    fn c_parts(&self, n: usize) -> Option<(RatFunc, RatFunc)>;
    fn beta(&self) -> i64;
}

struct QuantumKernel {
    beta: u32,
}

fn qt_ratio(n: usize) -> RatFunc {
    let n = n as i32;
    RatFunc::t_half(n).sub(&RatFunc::t_half(-n)).div(&RatFunc::q_half(n).sub(&RatFunc::q_half(-n))).unwrap()
}

impl QuantumKernel {
    fn spec(&self, x: RatFunc) -> RatFunc {
        x.specialize_beta(self.beta).expect("no pole at t = q^beta")
    }
}

impl Kernel for QuantumKernel {
    fn delta(&self, n: usize) -> RatFunc {
        let n32 = n as i32;
        self.spec(qt_ratio(n).mul(&RatFunc::p_half(-n32)).mul(&RatFunc::from_frac(-1, n as i64)))
    }

    fn pi_shifted(&self, n: usize) -> RatFunc {
        let n32 = n as i32;
        self.spec(qt_ratio(n).mul(&RatFunc::p_half(n32)).mul(&RatFunc::from_frac(1, n as i64)))
    }

    fn c_parts(&self, n: usize) -> Option<(RatFunc, RatFunc)> {
        let n32 = n as i32;
        let r = qt_ratio(n).mul(&RatFunc::from_frac(1, n as i64));
        Some((self.spec(r.mul(&RatFunc::p_half(-n32))), self.spec(r.mul(&RatFunc::p_half(n32)).neg())))
    }

    fn beta(&self) -> i64 {
        self.beta as i64
    }
}

struct ClassicalKernel {
    beta: u32,
}

impl Kernel for ClassicalKernel {
    // (1 - y)^β = exp(-β Σ y^n/n)
    fn delta(&self, n: usize) -> RatFunc {
        RatFunc::from_frac(-(self.beta as i64), n as i64)
    }

    // (1 - y)^{-β}
    fn pi_shifted(&self, n: usize) -> RatFunc {
        RatFunc::from_frac(self.beta as i64, n as i64)
    }

    fn c_parts(&self, _: usize) -> Option<(RatFunc, RatFunc)> {
        None
    }

    fn beta(&self) -> i64 {
        self.beta as i64
    }
}

/// Degree through which a factor that must be a polynomial is checked.
fn poly_check_order(beta: i64) -> usize {
    2 * beta as usize + 2
}

fn mul_pruned(a: &Laurent, b: &Laurent, vars: &Vars, bound: i64) -> Laurent {
    let mut out = Laurent::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Expo = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            if vars.height(&e) > bound {
                continue;
            }
            let c = ca.mul(cb);
            let slot = out.entry(e).or_insert_with(RatFunc::zero);
            *slot = slot.add(&c);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// The scalar part `∏ π(1/x^a, p x^{a+1}) Δ(x^a) C(x^a)`, keeping only the
/// terms that can meet `∏ (x^a_j)^{s_a}` times nonnegative powers.
fn scalar_integrand(data: &RSData, vars: &Vars, k: &dyn Kernel) -> Result<Laurent, SingularError> {
    let nv = vars.len();
    let beta = k.beta();
    let hmax: i64 = (0..nv).map(|v| vars.weight[v] * data.s[vars.group[v] - 1] as i64).sum();
    let mut series: Vec<RatioFactor> = Vec::new();
    let mut monomial: Expo = vec![0; nv];
    for (a, ids) in vars.index.iter().enumerate() {
        let r = ids.len();
        for i in 0..r {
            for j in 0..r {
                if i != j {
                    let exponent = (0..=poly_check_order(beta)).map(|n| if n == 0 { RatFunc::zero() } else { k.delta(n) }).collect();
                    series.push(RatioFactor { up: ids[j], down: ids[i], exponent, poly: true, what: "Delta" });
                }
            }
        }
        if let Some(next) = vars.index.get(a + 1) {
            for &i in ids {
                for &j in next {
                    let order = hmax.max(0) as usize + poly_check_order(beta) * nv * nv;
                    let exponent = (0..=order).map(|n| if n == 0 { RatFunc::zero() } else { k.pi_shifted(n) }).collect();
                    series.push(RatioFactor { up: j, down: i, exponent, poly: false, what: "pi" });
                }
            }
        }
        if k.c_parts(1).is_some() {
            for i in 0..r {
                for j in i + 1..r {
                    let order = hmax.max(0) as usize + poly_check_order(beta) * nv * nv;
                    let lo: Vec<RatFunc> = (0..=order).map(|n| if n == 0 { RatFunc::zero() } else { k.c_parts(n).unwrap().0 }).collect();
                    let hi: Vec<RatFunc> =
                        (0..=poly_check_order(beta)).map(|n| if n == 0 { RatFunc::zero() } else { k.c_parts(n).unwrap().1 }).collect();
                    series.push(RatioFactor { up: ids[i], down: ids[j], exponent: lo, poly: false, what: "C" });
                    series.push(RatioFactor { up: ids[j], down: ids[i], exponent: hi, poly: true, what: "C" });
                }
                monomial[ids[i]] += (r as i32 + 1 - 2 * (i as i32 + 1)) * beta as i32;
            }
        }
    }
    // Expand; factors running against the height must terminate.
    let mut expanded: Vec<(Vec<(usize, RatFunc)>, i64)> = Vec::new();
    for f in &series {
        let step = vars.weight[f.up] - vars.weight[f.down];
        let order = f.exponent.len() - 1;
        let coeffs = exp_series(&f.exponent, order)?;
        let terms: Vec<(usize, RatFunc)> = coeffs.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        if f.poly || step < 0 {
            let top = terms.last().map(|t| t.0).unwrap_or(0);
            if !f.poly || top * 2 > order {
                return Err(SingularError::Truncation { what: f.what.into(), checked: order });
            }
        }
        let low = terms.iter().map(|(d, _)| *d as i64 * step).min().unwrap_or(0);
        expanded.push((terms, low));
    }
    let mono_height = vars.height(&monomial);
    let total_low: i64 = expanded.iter().map(|e| e.1).sum::<i64>() + mono_height;
    // every positive-step series must reach the degree the bound allows
    for (f, (terms, low)) in series.iter().zip(&mut expanded) {
        let step = vars.weight[f.up] - vars.weight[f.down];
        if step > 0 && !f.poly {
            let allowed = (hmax - (total_low - *low)) / step;
            if allowed >= f.exponent.len() as i64 {
                return Err(SingularError::Truncation { what: f.what.into(), checked: f.exponent.len() - 1 });
            }
            terms.retain(|(d, _)| (*d as i64) <= allowed);
        }
    }
    let mut acc: Laurent = Laurent::new();
    acc.insert(monomial, RatFunc::one());
    let mut remaining_low = total_low - mono_height;
    for (f, (terms, low)) in series.iter().zip(&expanded) {
        remaining_low -= low;
        let mut fl = Laurent::new();
        for (d, c) in terms {
            let mut e = vec![0; nv];
            e[f.up] += *d as i32;
            e[f.down] -= *d as i32;
            fl.insert(e, c.clone());
        }
        acc = mul_pruned(&acc, &fl, vars, hmax - remaining_low);
    }
    Ok(acc)
}

/// Terms `x^e` of the oscillator part of one screening current, `|e| = d`,
/// as `(partition of d, coefficient)` with coefficient
/// `∏ c_{μ_i} / ∏ m_i!`.
fn coherent_terms(d: usize, c: &dyn Fn(usize) -> RatFunc) -> Vec<(Partition, RatFunc)> {
    partitions(d)
        .into_iter()
        .map(|mu| {
            let mut x = RatFunc::one();
            for &p in mu.parts() {
                x = x.mul(&c(p));
            }
            for (_, m) in mu.multiplicities() {
                x = x.mul(&RatFunc::from_frac(1, (1..=m as i64).product()));
            }
            (mu, x)
        })
        .collect()
}

/// Collects `Σ_f F_f · G(s - f)` over the terms of the scalar integrand, where
/// `G(e)` is the product over variables of single-variable coefficients.
fn assemble<T: Clone>(
    data: &RSData,
    vars: &Vars,
    f: &Laurent,
    unit: T,
    single: &dyn Fn(usize, usize) -> Vec<(T, RatFunc)>,
    mul: &dyn Fn(&T, &T) -> T,
    mut add: impl FnMut(T, RatFunc),
) {
    for (e, c) in f {
        let need: Option<Vec<usize>> = (0..vars.len())
            .map(|v| {
                let x = data.s[vars.group[v] - 1] as i32 - e[v];
                (x >= 0).then_some(x as usize)
            })
            .collect();
        let Some(need) = need else { continue };
        let mut parts: Vec<(T, RatFunc)> = vec![(unit.clone(), c.clone())];
        for v in 0..vars.len() {
            let opts = single(vars.group[v], need[v]);
            let mut next = Vec::new();
            for (t, x) in &parts {
                for (u, y) in &opts {
                    next.push((mul(t, u), x.mul(y)));
                }
            }
            parts = next;
        }
        for (t, x) in parts {
            add(t, x);
        }
    }
}

fn check_integral_data(data: &RSData, beta: u32) -> Result<(), SingularError> {
    if data.sign != Sign::Plus {
        return Err(SingularError::Invalid("the integral is built from S_+ screenings".into()));
    }
    if beta == 0 {
        return Err(SingularError::Invalid("beta must be a positive integer".into()));
    }
    Ok(())
}

/// `|χ^+_{rs}⟩` at `t = q^β` as the constant term of the screening
/// integrand; coefficients lie in Q(s).
pub fn integral_singular_vector(data: &RSData, beta: u32) -> Result<FockState<RatFunc>, SingularError> {
    check_integral_data(data, beta)?;
    let vars = Vars::new(data);
    let f = scalar_integrand(data, &vars, &QuantumKernel { beta })?;
    let creation = |n: usize| screening_creation(Mode::Quantum, Sign::Plus, n);
    let mut terms = FockVec::new();
    let single = |a: usize, d: usize| -> Vec<(Monomial, RatFunc)> {
        coherent_terms(d, &creation)
            .into_iter()
            .map(|(mu, x)| (Monomial::new(mu.parts().iter().map(|&n| (a, n)).collect()), x))
            .collect()
    };
    assemble(data, &vars, &f, Monomial::empty(), &single, &|a, b| a.mul(b), |m, x| vec_add_term(&mut terms, m, &x));
    let (alpha, _) = momentum_rs(data);
    Ok(FockState { momentum: alpha, terms })
}

fn power_sum_integral(data: &RSData, k: &dyn Kernel, pi_coeff: &dyn Fn(usize) -> RatFunc) -> Result<SymFunc, SingularError> {
    let vars = Vars::new(data);
    let f = scalar_integrand(data, &vars, k)?;
    let mut out = SymFunc::zero(Basis::Power);
    let single = |a: usize, d: usize| -> Vec<(Partition, RatFunc)> {
        // π(x, p x^1) only involves the first group
        if a != 1 {
            return if d == 0 { vec![(Partition::empty(), RatFunc::one())] } else { Vec::new() };
        }
        coherent_terms(d, pi_coeff)
    };
    assemble(data, &vars, &f, Partition::empty(), &single, &|a, b| a.union(b), |l, x| out.add_term(l, &x));
    Ok(out)
}

/// The constant term with `π(x, p x^1)` in place of the oscillators, in the
/// monomial basis of `n_vars` variables, at `t = q^β`.
pub fn integral_macdonald(data: &RSData, beta: u32, n_vars: usize) -> Result<SymFunc, SingularError> {
    check_integral_data(data, beta)?;
    let k = QuantumKernel { beta };
    let pi = |n: usize| k.pi_shifted(n);
    Ok(monomial_expand(&power_sum_integral(data, &k, &pi)?, n_vars))
}

/// Classical analogue with `Δ̄`, `π̄` at integer `β`; coefficients rational.
pub fn integral_jack(data: &RSData, beta: u32, n_vars: usize) -> Result<SymFunc, SingularError> {
    check_integral_data(data, beta)?;
    let k = ClassicalKernel { beta };
    let pi = |n: usize| k.pi_shifted(n);
    Ok(monomial_expand(&power_sum_integral(data, &k, &pi)?, n_vars))
}

/// `b^{2k} -> β^k` on a function of `b` alone.
pub fn specialize_b_squared(x: &RatFunc, beta: u32) -> Result<RatFunc, SingularError> {
    let even = |p: &Poly| p.terms().iter().all(|(m, _)| m.exps()[2] % 2 == 0 && m.exps()[0] == 0 && m.exps()[1] == 0);
    if !even(x.num()) || !even(x.den()) {
        return Err(SingularError::Invalid(format!("{x} is not a function of beta = b^2")));
    }
    let h = x.map_monos(|e| [0, 0, e[2] / 2])?;
    let pt = [Rat::from_integer(1.into()), Rat::from_integer(1.into()), Rat::from_integer((beta as i64).into())];
    let v = h.eval(&pt).ok_or(CoeffError::SpecializationPole)?;
    Ok(RatFunc::from_rat(&v))
}

/// Restricts a monomial-basis function to at most `n_vars` parts.
pub fn restrict_vars(f: &SymFunc, n_vars: usize) -> SymFunc {
    SymFunc::from_terms(f.basis, f.terms().iter().filter(|(l, _)| l.len() <= n_vars).map(|(l, c)| (l.clone(), c.clone())))
}

/// Clears denominators and common factors so that the vector survives the
/// specialization `t = q^β`, then specializes.
pub fn specialize_vector(v: &FockVec<RatFunc>, beta: u32) -> Result<FockVec<RatFunc>, SingularError> {
    let mut den = Poly::one();
    for c in v.values() {
        let g = gcd(&den, c.den());
        den = den.mul(&RatFunc::new(c.den().clone(), g)?.num().clone());
    }
    let nums: Vec<(Monomial, Poly)> =
        v.iter().map(|(m, c)| (m.clone(), c.mul(&RatFunc::from_poly(den.clone())).num().clone())).collect();
    let mut g = Poly::zero();
    for (_, p) in &nums {
        g = gcd(&g, p);
    }
    let mut out = FockVec::new();
    for (m, p) in nums {
        let x = RatFunc::new(p, g.clone())?.specialize_beta(beta)?;
        vec_add_term(&mut out, m, &x);
    }
    Ok(out)
}

/// Scalar `r` with `a = r b`, if the two vectors are proportional.
pub fn vector_ratio(a: &FockVec<RatFunc>, b: &FockVec<RatFunc>) -> Option<RatFunc> {
    if a.is_empty() || a.len() != b.len() {
        return None;
    }
    let mut ratio: Option<RatFunc> = None;
    for (m, x) in a {
        let r = x.div(b.get(m)?).ok()?;
        match &ratio {
            None => ratio = Some(r),
            Some(y) if *y == r => {}
            Some(_) => return None,
        }
    }
    ratio
}

/// `C(x)` for `r` variables at `t = q^β`, through height `depth` above
/// its monomial factor in the grading where `x_i/x_j` (`i < j`) is positive.
pub fn c_function(r: usize, beta: u32, depth: usize) -> Result<Laurent, SingularError> {
    let data = RSData::plus(vec![r], vec![1])?;
    let vars = Vars::new(&data);
    let k = QuantumKernel { beta };
    let check = poly_check_order(beta as i64);
    let mono: Expo = (0..r).map(|i| (r as i32 - 1 - 2 * i as i32) * beta as i32).collect();
    let base = vars.height(&mono);
    let mut acc = Laurent::new();
    acc.insert(mono, RatFunc::one());
    // the polynomial parts lower the height by at most `check` per pair
    let order = depth + check * r * r;
    for i in 0..r {
        for j in i + 1..r {
            let lo: Vec<RatFunc> = (0..=order).map(|n| if n == 0 { RatFunc::zero() } else { k.c_parts(n).unwrap().0 }).collect();
            let hi: Vec<RatFunc> = (0..=check).map(|n| if n == 0 { RatFunc::zero() } else { k.c_parts(n).unwrap().1 }).collect();
            let top = exp_series(&hi, check)?.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
            if top * 2 > check {
                return Err(SingularError::Truncation { what: "C".into(), checked: check });
            }
            for (up, down, ex) in [(i, j, lo), (j, i, hi)] {
                let mut fl = Laurent::new();
                for (d, c) in exp_series(&ex, ex.len() - 1)?.into_iter().enumerate() {
                    if !c.is_zero() {
                        let mut e = vec![0; r];
                        e[up] += d as i32;
                        e[down] -= d as i32;
                        fl.insert(e, c);
                    }
                }
                acc = mul_pruned(&acc, &fl, &vars, base + order as i64);
            }
        }
    }
    acc.retain(|e, _| vars.height(e) - base <= depth as i64);
    Ok(acc)
}

/// `q^{D_{x_i}}` on a Laurent polynomial in `s`-coefficients.
pub fn q_shift(f: &Laurent, i: usize) -> Laurent {
    f.iter().map(|(e, c)| (e.clone(), c.mul(&RatFunc::q_half(2 * e[i])))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rs_validation_and_partitions() {
        assert!(RSData::plus(vec![1, 2], vec![1, 1]).is_err());
        assert!(RSData::plus(vec![0, 0], vec![1, 1]).is_err());
        assert!(RSData::plus(vec![1], vec![0]).is_err());
        assert!(RSData::plus(vec![2, 0], vec![1, 1]).is_ok());
        let p = |r: Vec<usize>, s: Vec<usize>| partition_from_rs(&RSData::plus(r, s).unwrap());
        assert_eq!(p(vec![1], vec![3]), Partition::new(vec![3]));
        assert_eq!(p(vec![2, 1], vec![1, 1]), Partition::new(vec![2, 1]));
        assert_eq!(p(vec![2], vec![1]), Partition::new(vec![1, 1]));
    }

    #[test]
    fn momenta() {
        let d = RSData::plus(vec![1], vec![1]).unwrap();
        let (a, t) = momentum_rs(&d);
        let two = RatFunc::from_int(2);
        assert_eq!(a.lambda[0], two.mul(&RatFunc::b_pow(1)).sub(&two.mul(&RatFunc::b_pow(-1))));
        let d3 = RSData::plus(vec![2, 1], vec![1, 1]).unwrap();
        let (a3, t3) = momentum_rs(&d3);
        let back = (1..3).fold(t3.clone(), |acc, x| {
            acc.add(&WeightVector::root(3, x).scale(&RatFunc::b_pow(1).mul_int(d3.r[x - 1] as i64)))
        });
        assert_eq!(back, a3);
        assert_eq!(t.add(&WeightVector::root(2, 1).scale(&RatFunc::b_pow(1))), a);
        for d in [d, d3] {
            let (ap, _) = momentum_rs(&d);
            let (am, _) = momentum_rs(&d.with_sign(Sign::Minus));
            assert_eq!(Involution::OmegaPrime.on_momentum(&ap), am);
        }
    }

    #[test]
    fn sigma_is_supported_on_first_boson() {
        for mode in [Mode::Quantum, Mode::Classical] {
            for rank in 2..=4 {
                for n in 1..=3 {
                    for a in 2..rank {
                        assert!(sigma(mode, Sign::Plus, rank, a, n).is_zero(), "{mode:?} N={rank} a={a} n={n}");
                    }
                }
            }
        }
        for n in 1..=3usize {
            let n32 = n as i32;
            let want = RatFunc::t_half(n32)
                .sub(&RatFunc::t_half(-n32))
                .mul(&RatFunc::p_half(n32))
                .mul(&RatFunc::from_frac(1, n as i64));
            assert_eq!(sigma(Mode::Quantum, Sign::Plus, 3, 1, n), want);
            assert_eq!(sigma(Mode::Classical, Sign::Plus, 3, 1, n), RatFunc::b_pow(1));
        }
    }

    #[test]
    fn rank2_level1_kernel() {
        let d = RSData::plus(vec![1], vec![1]).unwrap();
        let k = singular_kernel(Mode::Quantum, &d, 1).unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].terms.len(), 1);
        assert!(k[0].terms.contains_key(&Monomial::new(vec![(1, 1)])));
    }

    #[test]
    fn generic_momentum_has_no_kernel() {
        let g = WeightVector::from_lambda(vec![RatFunc::from_frac(3, 7)]);
        for level in 1..=2 {
            assert!(kernel_at(Mode::Classical, 2, &g, level, 1).unwrap().is_empty());
        }
    }

    #[test]
    fn c_is_constant_for_two_variables() {
        for beta in 1..=3 {
            let c = c_function(2, beta, 4).unwrap();
            assert_eq!(c.len(), 1, "beta={beta}: {c:?}");
            assert!(c.contains_key(&vec![0, 0]));
            assert_eq!(q_shift(&c, 0), c);
            assert_eq!(q_shift(&c, 1), c);
        }
    }

    #[test]
    fn integral_rank2_level1() {
        let d = RSData::plus(vec![1], vec![1]).unwrap();
        let v = integral_singular_vector(&d, 2).unwrap();
        assert_eq!(v.terms.len(), 1);
        let m = integral_macdonald(&d, 1, 2).unwrap();
        assert_eq!(m.terms().len(), 1);
    }
}
