//! Command implementations behind the `qwn` binary. Each command returns a
//! JSON report and a verdict; the binary maps verdicts to exit codes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::climit::{verify_appendix, ClimitError};
use crate::coeff::{CoeffError, RatFunc};
use crate::currents::{classical_miura_currents, qmiura_currents, ClassicalEngine, ModeEngine};
use crate::fock::{BosonAlgebra, FockError, Mode, Oscillators, WeightVector};
use crate::relations::{
    classical_momentum, default_momentum, gram_determinant, printed_rhs, verify_relation_with, window_level, QuantumW,
    RelError,
};
use crate::singular::{
    compare_with_oracle, integral_singular_vector, momentum_rs, partition_from_rs, singular_kernel, specialize_b_squared,
    specialize_vector, vector_ratio, RSData, Sign, SingularError,
};
use crate::symfun::{jack_j, macdonald_p, schur, to_monomial, Partition, SymError};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error(transparent)]
    Fock(#[from] FockError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Singular(#[from] SingularError),
    #[error(transparent)]
    Relation(#[from] RelError),
    #[error(transparent)]
    Climit(#[from] ClimitError),
}

impl CliError {
    /// 2 for usage and coverage errors, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Relation(RelError::Uncovered(..)) | CliError::Climit(ClimitError::Unprinted(_)) => 2,
            CliError::Singular(SingularError::Invalid(_)) => 2,
            _ => 1,
        }
    }
}

/// Optional file configuration; every key mirrors a command-line flag.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub rank: Option<usize>,
    pub mode: Option<String>,
    pub level: Option<usize>,
    pub mode_bound: Option<i64>,
    pub order: Option<usize>,
    pub beta: Option<u32>,
    pub out: Option<String>,
}

impl RunConfig {
    pub fn load(path: &str) -> Result<RunConfig, CliError> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }

    /// `--flag value` pairs for the keys that are set.
    pub fn to_args(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut push = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                out.push(format!("--{k}"));
                out.push(v);
            }
        };
        push("rank", self.rank.map(|x| x.to_string()));
        push("mode", self.mode.clone());
        push("level", self.level.map(|x| x.to_string()));
        push("mode-bound", self.mode_bound.map(|x| x.to_string()));
        push("order", self.order.map(|x| x.to_string()));
        push("beta", self.beta.map(|x| x.to_string()));
        push("out", self.out.clone());
        out
    }
}

/// A command's JSON report and whether every check in it passed.
#[derive(Debug, Clone)]
pub struct Report {
    pub json: Value,
    pub passed: bool,
}

pub fn parse_list(s: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| CliError::Usage(format!("expected comma-separated integers, got {s:?}"))))
        .collect()
}

pub fn parse_partition(s: &str) -> Result<Partition, CliError> {
    let v = parse_list(s)?;
    if v.iter().any(|&x| x <= 0) {
        return Err(CliError::Usage(format!("partition parts must be positive: {s:?}")));
    }
    Ok(Partition::new(v.into_iter().map(|x| x as usize).collect()))
}

pub fn parse_mode(s: &str) -> Result<Mode, CliError> {
    match s {
        "quantum" => Ok(Mode::Quantum),
        "classical" => Ok(Mode::Classical),
        _ => Err(CliError::Usage(format!("mode must be quantum or classical, got {s:?}"))),
    }
}

fn check_rank(rank: usize) -> Result<(), CliError> {
    if rank < 2 {
        return Err(CliError::Usage("rank must be at least 2".into()));
    }
    Ok(())
}

pub fn cmd_macdonald(lambda: &Partition, specialize_q_eq_t: bool) -> Result<Report, CliError> {
    let p = macdonald_p(lambda)?;
    if !specialize_q_eq_t {
        return Ok(Report { json: json!({"partition": lambda.parts(), "macdonald_p": p.to_json()}), passed: true });
    }
    let at = p.map_coeffs(|c| c.specialize_beta(1))?;
    let s = to_monomial(&schur(lambda));
    let passed = at == s;
    Ok(Report {
        json: json!({"partition": lambda.parts(), "specialization": "q=t", "macdonald_p": at.to_json(), "schur": s.to_json(), "matches_schur": passed}),
        passed,
    })
}

pub fn cmd_jack(lambda: &Partition, beta: Option<u32>) -> Result<Report, CliError> {
    let j = jack_j(lambda)?;
    let j = match beta {
        None => j,
        Some(0) => return Err(CliError::Usage("beta must be at least 1".into())),
        Some(b) => j.map_coeffs(|c| specialize_b_squared(c, b).map_err(|_| CoeffError::SpecializationPole))?,
    };
    Ok(Report { json: json!({"partition": lambda.parts(), "beta": beta, "jack_j": j.to_json()}), passed: true })
}

/// Pairs with a printed right side for rank `N`.
pub fn covered_pairs(rank: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 1..rank {
        for j in i..rank {
            if printed_rhs(rank, i, j).is_ok() {
                out.push((i, j));
            }
        }
    }
    out
}

/// Checks every pair on every mode pair `(n, m)` of the window on Fock levels
/// `0..=level`.
pub fn cmd_verify(rank: usize, pairs: &[(usize, usize)], modes: &[(i64, i64)], level: usize) -> Result<Report, CliError> {
    check_rank(rank)?;
    let pairs = if pairs.is_empty() { covered_pairs(rank) } else { pairs.to_vec() };
    let rhs = pairs.iter().map(|&(i, j)| printed_rhs(rank, i, j)).collect::<Result<Vec<_>, _>>()?;
    let top = modes.iter().map(|&(n, m)| window_level(level, n, m)).max().unwrap_or(level);
    let w = QuantumW::new(rank, default_momentum(rank), top)?;
    let mut instances = Vec::new();
    let mut passed = true;
    for (&(i, j), terms) in pairs.iter().zip(&rhs) {
        for &(n, m) in modes {
            let inst = verify_relation_with(&w, i, j, terms, n, m, level);
            passed &= inst.passed;
            instances.push(inst.to_json());
        }
    }
    Ok(Report { json: json!({"rank": rank, "level": level, "passed": passed, "instances": instances}), passed })
}

/// All `(n, m)` with `|n|, |m| ≤ bound`.
pub fn mode_window(bound: i64) -> Vec<(i64, i64)> {
    (-bound..=bound).flat_map(|n| (-bound..=bound).map(move |m| (n, m))).collect()
}

/// Kernel at `α^±_{rs}`, its image against the oracle, and for the quantum
/// plus chain at integer `β` the cross-check with the constant-term vector.
pub fn cmd_singular(mode: Mode, data: &RSData, beta: Option<u32>) -> Result<Report, CliError> {
    let lambda = partition_from_rs(data);
    let kernel = singular_kernel(mode, data, 1)?;
    let mut passed = !kernel.is_empty();
    let mut vectors = Vec::new();
    for v in &kernel {
        let cmp = compare_with_oracle(mode, data.sign, v, &lambda)?;
        passed &= cmp.passed;
        vectors.push(json!({"state": v.to_json(), "comparison": cmp.to_json()}));
    }
    let mut integral = Value::Null;
    if let Some(beta) = beta {
        if mode != Mode::Quantum || data.sign != Sign::Plus {
            return Err(CliError::Usage("--beta applies to the quantum plus chain".into()));
        }
        let iv = integral_singular_vector(data, beta)?;
        let ratio = match kernel.first() {
            Some(k) => vector_ratio(&iv.terms, &specialize_vector(&k.terms, beta)?),
            None => None,
        };
        passed &= ratio.is_some();
        integral = json!({"beta": beta, "state": iv.to_json(), "ratio_to_kernel": ratio.map(|r| r.to_canonical_string())});
    }
    Ok(Report {
        json: json!({
            "data": data.to_json(),
            "mode": mode.name(),
            "partition": lambda.parts(),
            "kernel_dimension": kernel.len(),
            "vectors": vectors,
            "integral": integral,
            "passed": passed,
        }),
        passed,
    })
}

/// Momentum choices for Gram tables.
#[derive(Debug, Clone)]
pub enum GramMomentum {
    /// `α^+_{rs}` for rank 2.
    Degenerate { r: usize, s: usize },
    /// `c b + d/b` with integers drawn from a seeded generator.
    Generic { seed: u64 },
    Default,
}

/// A generic rank-2 momentum `c b + d/b`, `3 ≤ c ≤ 9`, `-9 ≤ d ≤ -3`, with
/// monomial zero modes.
pub fn generic_momentum(seed: u64) -> WeightVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c: i64 = rng.gen_range(3..=9);
    let d: i64 = rng.gen_range(-9..=-3);
    WeightVector::from_lambda(vec![RatFunc::b_pow(1).mul_int(c).add(&RatFunc::b_pow(-1).mul_int(d))])
}

/// Gram determinants of the rank-2 quantum module for levels `0..=level`;
/// passes iff the determinant vanishes exactly at levels `≥ rs`.
pub fn cmd_gram(momentum: &GramMomentum, level: usize) -> Result<(Report, String), CliError> {
    let gamma = match momentum {
        GramMomentum::Degenerate { r, s } => momentum_rs(&RSData::plus(vec![*r], vec![*s])?).0,
        GramMomentum::Generic { seed } => generic_momentum(*seed),
        GramMomentum::Default => default_momentum(2),
    };
    let w = QuantumW::new(2, gamma.clone(), level)?;
    let mut rows = Vec::new();
    let mut csv = String::from("level,determinant,vanishes\n");
    let mut passed = true;
    for l in 0..=level {
        let d = gram_determinant(&w, l);
        let expected_zero = match momentum {
            GramMomentum::Degenerate { r, s } => r * s <= l,
            _ => false,
        };
        passed &= d.is_zero() == expected_zero;
        csv.push_str(&format!("{l},\"{}\",{}\n", d.to_canonical_string(), d.is_zero()));
        rows.push(json!({"level": l, "determinant": d.to_canonical_string(), "vanishes": d.is_zero(), "expected_vanishing": expected_zero}));
    }
    let json = json!({"rank": 2, "momentum": gamma.to_json(), "levels": rows, "passed": passed});
    Ok((Report { json, passed }, csv))
}

pub fn cmd_classical_limit(rank: usize, order: usize, level: usize) -> Result<Report, CliError> {
    let r = verify_appendix(rank, order, level)?;
    Ok(Report { passed: r.passed(), json: r.to_json() })
}

/// Matrix of mode `k` of current `i` from Fock level `level`: quantum `W^i`
/// on the default momentum, or classical `W̄^i` on the classical one.
pub fn cmd_dump_modes(rank: usize, mode: Mode, i: usize, k: i64, level: usize) -> Result<Report, CliError> {
    check_rank(rank)?;
    let m = match mode {
        Mode::Quantum => {
            if !(1..rank).contains(&i) {
                return Err(CliError::Usage(format!("quantum currents are W^1..W^{}", rank - 1)));
            }
            let osc = std::sync::Arc::new(Oscillators::from_algebra(BosonAlgebra::quantum(rank)));
            let e = ModeEngine::new(osc, &qmiura_currents(rank, &default_momentum(rank), level.max(1) + k.unsigned_abs() as usize)?);
            e.mode_matrix(i - 1, k, level)
        }
        Mode::Classical => {
            if !(2..=rank).contains(&i) {
                return Err(CliError::Usage(format!("classical currents are W̄^2..W̄^{rank}")));
            }
            let e = ClassicalEngine::new(rank, classical_momentum(rank), vec![classical_miura_currents(rank)[i].clone()]);
            e.mode_matrix(0, k, level)
        }
    };
    let mut json = m.to_json();
    json["i"] = json!(i);
    Ok(Report { json, passed: true })
}

/// Compares a report with a golden file; `bless` rewrites the file instead.
pub fn golden(report: &Value, path: &str, bless: bool) -> Result<bool, CliError> {
    let text = serde_json::to_string_pretty(report)? + "\n";
    if bless {
        std::fs::write(path, text)?;
        return Ok(true);
    }
    let want: Value = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    Ok(&want == report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing() {
        assert_eq!(parse_partition("2,1").unwrap().parts(), &[2, 1]);
        assert!(parse_partition("2,x").is_err());
        assert!(parse_partition("0").is_err());
        assert!(parse_mode("other").is_err());
    }

    #[test]
    fn macdonald_at_q_equals_t_is_schur() {
        let r = cmd_macdonald(&Partition::new(vec![2, 1]), true).unwrap();
        assert!(r.passed);
    }

    #[test]
    fn uncovered_pairs_exit_two() {
        let e = cmd_verify(5, &[(3, 3)], &[(0, 0)], 0).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(e.to_string().contains("no printed RHS"));
    }

    #[test]
    fn config_round_trip() {
        let c: RunConfig = serde_json::from_str(r#"{"rank": 3, "level": 2}"#).unwrap();
        assert_eq!(c.to_args(), vec!["--rank", "3", "--level", "2"]);
        assert!(serde_json::from_str::<RunConfig>(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn gram_at_degenerate_momentum() {
        let (r, csv) = cmd_gram(&GramMomentum::Degenerate { r: 1, s: 1 }, 1).unwrap();
        assert!(r.passed, "{}", r.json);
        assert!(csv.starts_with("level,determinant"));
    }
}
