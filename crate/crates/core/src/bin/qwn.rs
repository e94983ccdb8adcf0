use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use qwn::cli::{self, CliError, GramMomentum, Report, RunConfig};
use qwn::singular::{RSData, Sign};

#[derive(Parser)]
#[command(name = "qwn", about = "Exact checks of W_N and q-W_N free-field realizations", args_override_self = true)]
struct Cli {
    /// JSON file whose keys mirror the flags; flags given here win
    #[arg(long, global = true)]
    config: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Output {
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<String>,
    /// Compare the report with this golden file
    #[arg(long)]
    golden: Option<String>,
    /// Rewrite the golden file from this run
    #[arg(long, requires = "golden")]
    bless: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Macdonald P_λ(q,t) in the monomial basis
    Macdonald {
        #[arg(long)]
        partition: String,
        /// Only `q=t`, which is checked against the Schur function
        #[arg(long)]
        specialize: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Jack J_λ with symbolic or integer β
    Jack {
        #[arg(long)]
        partition: String,
        #[arg(long)]
        beta: Option<u32>,
        #[command(flatten)]
        output: Output,
    },
    /// Quadratic relations of q-W_N on Fock levels 0..=level
    Verify {
        #[arg(long, default_value_t = 2)]
        rank: usize,
        /// `i,j`; repeatable; defaults to every printed pair
        #[arg(long)]
        pairs: Vec<String>,
        /// One mode pair `n,m`; repeatable; defaults to the window of --mode-bound
        #[arg(long)]
        modes: Vec<String>,
        #[arg(long, default_value_t = 1)]
        mode_bound: i64,
        #[arg(long, default_value_t = 2)]
        level: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Singular vector at α^±_{rs} and its symmetric-function image
    Singular {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        r: String,
        #[arg(long)]
        s: String,
        #[arg(long, default_value = "quantum")]
        mode: String,
        /// `plus` or `minus`
        #[arg(long, default_value = "plus")]
        sign: String,
        /// Also build the constant-term vector at t = q^β
        #[arg(long)]
        beta: Option<u32>,
        #[command(flatten)]
        output: Output,
    },
    /// Gram determinants of the rank-2 quantum module
    Gram {
        #[arg(long, default_value_t = 2)]
        level: usize,
        /// `r,s` for α^+_{rs}, `generic`, or `default`
        #[arg(long, default_value = "default")]
        momentum: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Emit CSV instead of JSON
        #[arg(long)]
        csv: bool,
        #[command(flatten)]
        output: Output,
    },
    /// ħ' expansion of the q-Miura identity on the classical Fock module
    ClassicalLimit {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, default_value_t = 2)]
        level: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Mode matrix of one current between graded slices
    DumpModes {
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value = "quantum")]
        mode: String,
        #[arg(long)]
        current: usize,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long)]
        level: usize,
        #[command(flatten)]
        output: Output,
    },
}

fn pair(s: &str) -> Result<(i64, i64), CliError> {
    match cli::parse_list(s)?.as_slice() {
        [a, b] => Ok((*a, *b)),
        _ => Err(CliError::Usage(format!("expected a pair a,b, got {s:?}"))),
    }
}

fn unsigned(v: Vec<i64>) -> Result<Vec<usize>, CliError> {
    v.into_iter().map(|x| usize::try_from(x).map_err(|_| CliError::Usage(format!("negative entry {x}")))).collect()
}

fn emit(value: &Value, text: Option<String>, output: &Output) -> Result<bool, CliError> {
    let text = text.unwrap_or_else(|| serde_json::to_string_pretty(value).expect("serializable") + "\n");
    match &output.out {
        Some(p) => std::fs::write(p, &text)?,
        None => print!("{text}"),
    }
    match &output.golden {
        Some(g) => {
            let same = cli::golden(value, g, output.bless)?;
            if !same {
                eprintln!("report differs from golden file {g}");
            }
            Ok(same)
        }
        None => Ok(true),
    }
}

fn run(cmd: Cmd) -> Result<bool, CliError> {
    let (report, text, output): (Report, Option<String>, Output) = match cmd {
        Cmd::Macdonald { partition, specialize, output } => {
            let q_eq_t = match specialize.as_deref() {
                None => false,
                Some("q=t") => true,
                Some(x) => return Err(CliError::Usage(format!("unsupported specialization {x:?}"))),
            };
            (cli::cmd_macdonald(&cli::parse_partition(&partition)?, q_eq_t)?, None, output)
        }
        Cmd::Jack { partition, beta, output } => (cli::cmd_jack(&cli::parse_partition(&partition)?, beta)?, None, output),
        Cmd::Verify { rank, pairs, modes, mode_bound, level, output } => {
            let pairs = pairs
                .iter()
                .map(|p| pair(p).and_then(|(i, j)| Ok((usize::try_from(i).map_err(|_| CliError::Usage(p.clone()))?, usize::try_from(j).map_err(|_| CliError::Usage(p.clone()))?))))
                .collect::<Result<Vec<_>, _>>()?;
            let modes = if modes.is_empty() {
                cli::mode_window(mode_bound)
            } else {
                modes.iter().map(|m| pair(m)).collect::<Result<Vec<_>, _>>()?
            };
            (cli::cmd_verify(rank, &pairs, &modes, level)?, None, output)
        }
        Cmd::Singular { rank, r, s, mode, sign, beta, output } => {
            let sign = match sign.as_str() {
                "plus" => Sign::Plus,
                "minus" => Sign::Minus,
                x => return Err(CliError::Usage(format!("sign must be plus or minus, got {x:?}"))),
            };
            let data = RSData::new(sign, unsigned(cli::parse_list(&r)?)?, unsigned(cli::parse_list(&s)?)?)?;
            if data.rank() != rank {
                return Err(CliError::Usage(format!("--r and --s need {} entries for rank {rank}", rank - 1)));
            }
            (cli::cmd_singular(cli::parse_mode(&mode)?, &data, beta)?, None, output)
        }
        Cmd::Gram { level, momentum, seed, csv, output } => {
            let m = match momentum.as_str() {
                "default" => GramMomentum::Default,
                "generic" => GramMomentum::Generic { seed },
                x => {
                    let (r, s) = pair(x)?;
                    let u = unsigned(vec![r, s])?;
                    GramMomentum::Degenerate { r: u[0], s: u[1] }
                }
            };
            let (report, table) = cli::cmd_gram(&m, level)?;
            (report, csv.then_some(table), output)
        }
        Cmd::ClassicalLimit { rank, order, level, output } => {
            (cli::cmd_classical_limit(rank, order.unwrap_or(rank + 1), level)?, None, output)
        }
        Cmd::DumpModes { rank, mode, current, k, level, output } => {
            (cli::cmd_dump_modes(rank, cli::parse_mode(&mode)?, current, k, level)?, None, output)
        }
    };
    let same = emit(&report.json, text, &output)?;
    Ok(report.passed && same)
}

/// Splices config-file flags in right after the subcommand so that flags on
/// the command line, which come later, override them.
fn with_config(args: Vec<String>) -> Result<Vec<String>, CliError> {
    let Some(pos) = args.iter().position(|a| a == "--config") else {
        return Ok(args);
    };
    let path = args.get(pos + 1).ok_or_else(|| CliError::Usage("--config needs a path".into()))?.clone();
    let mut rest: Vec<String> = args[..pos].iter().chain(&args[pos + 2..]).cloned().collect();
    let sub = rest.iter().skip(1).position(|a| !a.starts_with('-')).map(|i| i + 2).unwrap_or(rest.len());
    let extra = RunConfig::load(&path)?.to_args();
    rest.splice(sub..sub, extra);
    Ok(rest)
}

fn main() -> ExitCode {
    let args = match with_config(std::env::args().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let cli = Cli::parse_from(args);
    match run(cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
