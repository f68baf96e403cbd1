//! Command-line front end. Every subcommand emits a JSON report (schema 1,
//! keys sorted) or an aligned text rendering of the same report.

mod report;
mod text;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::algebra::parse_rational;
use crate::error::Error;
use crate::pair::PairParams;
use crate::roots::AStarWeight;

pub const THREADS_ENV: &str = "HELGASON_SUPER_THREADS";

const WEIGHT_HELP: &str = "Weight in a* coordinates: λ^δ_1..λ^δ_q then λ^ε_1..λ^ε_s, as integers or a/b. \
Example for (1,1,1,1): --weight -2 0 (or --weight=-2,0)";

#[derive(Parser, Debug)]
#[command(
    name = "helgason-super",
    version,
    about = "Restricted roots, c-function zeros, spherical weights and odd-reflection chains for gl(p+q|r+s)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct ParamArgs {
    p: usize,
    q: usize,
    r: usize,
    s: usize,
}

#[derive(Args, Debug, Clone)]
struct Common {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Matrix data of the pair: σ, the Cartan basis and dim k, dim p.
    Pair(Common),
    /// Root table of gl(p+q|r+s), or the positive restricted roots.
    Roots {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        restricted: bool,
    },
    /// Weyl vector, by root sum and by supertrace.
    Rho(Common),
    /// c-function factors at a weight.
    Cfunction {
        #[command(flatten)]
        common: Common,
        #[arg(long, num_args = 1.., value_delimiter = ',', allow_negative_numbers = true, required = true, help = WEIGHT_HELP)]
        weight: Vec<String>,
        /// Evaluate at λ + ρ and compare with the zero clauses on λ.
        #[arg(long)]
        shift: bool,
    },
    /// Enumerate spherical weights up to a bound, or classify one weight.
    Spherical {
        #[command(flatten)]
        common: Common,
        /// Even bound on coefficient magnitudes.
        #[arg(long, conflicts_with = "weight")]
        bound: Option<i64>,
        #[arg(long, num_args = 1.., value_delimiter = ',', allow_negative_numbers = true, help = WEIGHT_HELP)]
        weight: Option<Vec<String>>,
    },
    /// Reversal-chain test R(λ) = −λ.
    Selfdual {
        #[command(flatten)]
        common: Common,
        #[arg(long, num_args = 1.., value_delimiter = ',', allow_negative_numbers = true, required = true, help = WEIGHT_HELP)]
        weight: Vec<String>,
    },
    /// Compatible δε-chain, its simple system and reversal.
    Chain {
        #[command(flatten)]
        common: Common,
        /// A full chain such as "d2 e2 e1 d1"; defaults to the compatible chain.
        #[arg(long)]
        chain: Option<String>,
        #[arg(long, num_args = 1.., value_delimiter = ',', allow_negative_numbers = true, help = WEIGHT_HELP)]
        weight: Option<Vec<String>>,
    },
    /// Rerun the self-checks: root-table oracle, ρ cross-check, flips, spherical sweep.
    Verify(Common),
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(code: i32, msg: impl Into<String>) -> Self {
        let mut stderr = msg.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Self {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParams(_) | Error::InvalidWeight(_) | Error::InvalidChain(_) | Error::Parse(_) | Error::DivisionByZero => 2,
        _ => 1,
    }
}

fn parse_params(a: ParamArgs) -> crate::Result<PairParams> {
    PairParams::new(a.p, a.q, a.r, a.s)
}

fn parse_weight(params: &PairParams, raw: &[String]) -> crate::Result<AStarWeight> {
    let coeffs = raw
        .iter()
        .map(|s| parse_rational(s).map_err(|e| Error::InvalidWeight(format!("{s:?}: {e}"))))
        .collect::<crate::Result<Vec<_>>>()?;
    if coeffs.len() != params.q + params.s {
        return Err(Error::InvalidWeight(format!(
            "expected q + s = {} coefficients for {params}, got {}",
            params.q + params.s,
            coeffs.len()
        )));
    }
    AStarWeight::from_flat(params, coeffs)
}

fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.trim().parse().ok().filter(|&n| n > 0)
}

fn dispatch(command: Command) -> crate::Result<(Value, Format, bool)> {
    match command {
        Command::Pair(c) => Ok((report::pair(&parse_params(c.params)?)?, c.format, true)),
        Command::Roots { common, restricted } => {
            let params = parse_params(common.params)?;
            let v = if restricted {
                report::restricted_roots(&params)?
            } else {
                report::roots(&params)?
            };
            Ok((v, common.format, true))
        }
        Command::Rho(c) => Ok((report::rho(&parse_params(c.params)?)?, c.format, true)),
        Command::Cfunction { common, weight, shift } => {
            let params = parse_params(common.params)?;
            let lam = parse_weight(&params, &weight)?;
            Ok((report::cfunction(&params, &lam, shift), common.format, true))
        }
        Command::Spherical { common, bound, weight } => {
            let params = parse_params(common.params)?;
            let v = match weight {
                Some(w) => report::classify(&params, &parse_weight(&params, &w)?)?,
                None => {
                    let bound = bound.unwrap_or(4);
                    if bound < 0 || bound % 2 != 0 {
                        return Err(Error::InvalidParams(format!(
                            "bound must be a non-negative even integer, got {bound}"
                        )));
                    }
                    report::spherical(&params, bound as u32)?
                }
            };
            Ok((v, common.format, true))
        }
        Command::Selfdual { common, weight } => {
            let params = parse_params(common.params)?;
            let lam = parse_weight(&params, &weight)?;
            Ok((report::selfdual(&params, &lam)?, common.format, true))
        }
        Command::Chain { common, chain, weight } => {
            let params = parse_params(common.params)?;
            let lam = weight.map(|w| parse_weight(&params, &w)).transpose()?;
            Ok((report::chain(&params, chain.as_deref(), lam.as_ref())?, common.format, true))
        }
        Command::Verify(c) => {
            let (v, ok) = report::verify(&parse_params(c.params)?)?;
            Ok((v, c.format, ok))
        }
    }
}

/// Folds `--weight a b c` into `--weight=a,b,c` so that values such as
/// `-1/2` are not mistaken for flags.
fn join_weight_values(args: Vec<OsString>) -> Vec<OsString> {
    let mut out = Vec::with_capacity(args.len());
    let mut it = args.into_iter().peekable();
    while let Some(arg) = it.next() {
        if arg != "--weight" {
            out.push(arg);
            continue;
        }
        let mut values = Vec::new();
        while let Some(next) = it.peek() {
            let is_flag = next
                .to_str()
                .is_some_and(|s| s.starts_with("--") || (s.starts_with('-') && !s[1..].starts_with(|c: char| c.is_ascii_digit())));
            if is_flag {
                break;
            }
            values.push(next.to_string_lossy().into_owned());
            it.next();
        }
        if values.is_empty() {
            out.push(arg);
        } else {
            out.push(format!("--weight={}", values.join(",")).into());
        }
    }
    out
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = join_weight_values(args.into_iter().map(Into::into).collect());
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                },
                ErrorKind::InvalidSubcommand | ErrorKind::MissingSubcommand | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    Outcome::error(64, rendered)
                }
                _ => Outcome::error(2, rendered),
            };
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads_from_env() {
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(pool) => pool,
        Err(e) => return Outcome::error(1, format!("error: cannot start worker pool: {e}")),
    };
    match pool.install(|| dispatch(cli.command)) {
        Ok((value, format, ok)) => {
            let mut stdout = match format {
                Format::Json => serde_json::to_string_pretty(&value).expect("serializable"),
                Format::Text => text::render(&value),
            };
            stdout.push('\n');
            Outcome {
                code: if ok { 0 } else { 1 },
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome::error(exit_code(&e), format!("error: {e}")),
    }
}

/// Runs and prints; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let out = run(args);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("helgason-super").chain(args.iter().copied()))
    }

    fn json(out: &Outcome) -> Value {
        assert_eq!(out.code, 0, "{}", out.stderr);
        serde_json::from_str(&out.stdout).unwrap()
    }

    #[test]
    fn restricted_roots_json() {
        let v = json(&run_args(&["roots", "1", "1", "1", "1", "--restricted", "--format", "json"]));
        let ms: Vec<i64> = v["positive_roots"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r["m"].as_i64().unwrap())
            .collect();
        assert_eq!(ms, vec![1, 1, -2, -2]);
        assert_eq!(v["schema"], 1);
    }

    #[test]
    fn selfdual_json() {
        let v = json(&run_args(&["selfdual", "1", "1", "1", "1", "--weight", "-2", "0"]));
        assert_eq!(v["self_dual"], true);
    }

    #[test]
    fn verify_passes() {
        let out = run_args(&["verify", "2", "1", "1", "1"]);
        assert_eq!(out.code, 0, "{}", out.stdout);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["frobnicate", "1", "1", "1", "1"]).code, 64);
        assert_eq!(run_args(&[]).code, 64);
        let out = run_args(&["pair", "1", "2", "1", "1"]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("p ≥ q"), "{}", out.stderr);
        assert_eq!(run_args(&["selfdual", "1", "1", "1", "1", "--weight", "-2"]).code, 2);
        assert_eq!(run_args(&["selfdual", "1", "1", "1", "1", "--weight", "x", "0"]).code, 2);
        assert_eq!(run_args(&["spherical", "1", "1", "1", "1", "--bound", "3"]).code, 2);
        assert_eq!(run_args(&["chain", "1", "1", "1", "1", "--chain", "d1 e1"]).code, 2);
        assert_eq!(run_args(&["--help"]).code, 0);
    }

    #[test]
    fn json_round_trips() {
        for args in [
            vec!["pair", "2", "1", "1", "1"],
            vec!["roots", "1", "1", "1", "1"],
            vec!["rho", "2", "1", "1", "1"],
            vec!["cfunction", "1", "1", "1", "1", "--weight", "-1/2", "1/2", "--shift"],
            vec!["spherical", "2", "1", "1", "1", "--bound", "4"],
            vec!["chain", "1", "1", "1", "1", "--weight", "-2", "0"],
        ] {
            let out = run_args(&args);
            let v = json(&out);
            let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
            assert_eq!(again, out.stdout, "{args:?}");
        }
    }

    #[test]
    fn text_format() {
        let out = run_args(&["roots", "1", "1", "1", "1", "--restricted", "--format", "text"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("2ia^B_1"), "{}", out.stdout);
        let out = run_args(&["verify", "1", "1", "1", "1", "--format", "text"]);
        assert_eq!(out.code, 0, "{}", out.stdout);
    }
}
