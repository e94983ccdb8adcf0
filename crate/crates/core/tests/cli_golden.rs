//! Reports of the `qwn` commands against checked-in golden files.
//! `QWN_BLESS=1 cargo test --test cli_golden` regenerates them.

use qwn::cli::{self, GramMomentum, Report};
use qwn::fock::Mode;
use qwn::singular::{RSData, Sign};

fn check(report: Report, name: &str) {
    assert!(report.passed, "{name}: {}", report.json);
    let path = format!("{}/tests/golden/{name}.json", env!("CARGO_MANIFEST_DIR"));
    let bless = std::env::var_os("QWN_BLESS").is_some();
    assert!(cli::golden(&report.json, &path, bless).unwrap(), "{name} differs from {path}");
}

#[test]
fn macdonald_at_q_equals_t() {
    check(cli::cmd_macdonald(&cli::parse_partition("2,1").unwrap(), true).unwrap(), "macdonald_21_q_eq_t");
}

#[test]
fn jack_at_beta_two() {
    check(cli::cmd_jack(&cli::parse_partition("2,1").unwrap(), Some(2)).unwrap(), "jack_21_beta2");
}

#[test]
fn q_virasoro_window() {
    check(cli::cmd_verify(2, &[], &cli::mode_window(1), 1).unwrap(), "verify_rank2");
}

#[test]
fn singular_rank2() {
    let data = RSData::new(Sign::Plus, vec![1], vec![2]).unwrap();
    check(cli::cmd_singular(Mode::Quantum, &data, Some(1)).unwrap(), "singular_r1_s2");
}

#[test]
fn gram_degenerate() {
    let (report, _) = cli::cmd_gram(&GramMomentum::Degenerate { r: 1, s: 1 }, 1).unwrap();
    check(report, "gram_r1_s1");
}

#[test]
fn classical_limit_rank2() {
    check(cli::cmd_classical_limit(2, 3, 1).unwrap(), "classical_limit_rank2");
}

#[test]
fn dump_modes_rank2() {
    check(cli::cmd_dump_modes(2, Mode::Quantum, 1, -1, 1).unwrap(), "dump_modes_rank2");
}
