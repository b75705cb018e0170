//! Command-line front end for the `crs` binary.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage or precondition error,
//! 3 cross-method disagreement, 4 sweep failures.

pub mod sweep;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith_core::{generalized_gcd, jordan_totient, mobius, Natural};
use crate::cr_sum::{crs_by, crs_checked, CrsQuery, GcdReading, Method, DIRECT_LIMIT};
use crate::error::Error;
use crate::expansions::{partial_expansion, MobiusSpec};
use crate::identities::{divisor_abs_sum, grytczuk_value, s_kn_closed_form_with, s_kn_mobius};
use sweep::{parse_range, run_sweep, Check, SweepGrid};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DISAGREEMENT: i32 = 3;
pub const EXIT_SWEEP_FAILURES: i32 = 4;

/// Environment variable overriding the `q^s` cap of the direct evaluator.
pub const MAX_DIRECT_ENV: &str = "CRSUM_MAX_DIRECT";

const JSON_SAFE_MAX: u64 = 1 << 53;

/// Integers that fit in a double exactly stay numbers; anything larger
/// becomes a decimal string.
pub fn json_int(v: &BigInt) -> Value {
    if v.abs() <= BigInt::from(JSON_SAFE_MAX) {
        let small: i64 = v.try_into().expect("|v| <= 2^53");
        Value::from(small)
    } else {
        Value::from(v.to_string())
    }
}

pub fn json_uint(v: u64) -> Value {
    json_int(&BigInt::from(v))
}

fn json_nat(v: &Natural) -> Value {
    json_int(&v.to_bigint())
}

#[derive(Parser, Debug)]
#[command(name = "crs", version, about = "Cohen-Ramanujan sums, divisor-sum identities and expansions")]
pub struct Cli {
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Report format for `sweep`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Direct,
    Mobius,
    Multiplicative,
    Hoelder,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReadingArg {
    /// Largest d | k with d^s | n.
    Spower,
    /// Ordinary gcd(k, n).
    Ordinary,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate c_q^(s)(n).
    Crsum {
        q: Natural,
        n: Natural,
        #[arg(long, default_value_t = 1)]
        s: u32,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Cross-verify against the other evaluators.
        #[arg(long)]
        checked: bool,
    },
    /// Jordan's totient J_s(n).
    Jordan {
        n: Natural,
        #[arg(long, default_value_t = 1)]
        s: u32,
    },
    /// Generalized gcd (a, b)_s.
    Ggcd {
        a: Natural,
        b: Natural,
        #[arg(long, default_value_t = 1)]
        s: u32,
    },
    /// Möbius function μ(n).
    Mobius { n: Natural },
    /// Σ_{q|k} |c_q^(s)(n)|.
    Hsum {
        k: Natural,
        n: Natural,
        #[arg(long, default_value_t = 1)]
        s: u32,
    },
    /// Closed form 2^ω(k^s/(k^s,n)_s) (k^s,n)_s.
    Grytczuk {
        k: Natural,
        n: Natural,
        #[arg(long, default_value_t = 1)]
        s: u32,
    },
    /// S(k, n) by Möbius inversion and by the totient closed form.
    Skn {
        k: Natural,
        n: Natural,
        #[arg(long, default_value_t = 1)]
        s: u32,
        #[arg(long, value_enum, default_value_t = ReadingArg::Spower)]
        reading: ReadingArg,
    },
    /// Run identity checks over a grid of (k, n, s).
    Sweep {
        /// Inclusive k range, e.g. `1..50`.
        #[arg(long, default_value = "1..50")]
        k: String,
        /// Inclusive n range.
        #[arg(long, default_value = "1..50")]
        n: String,
        /// Comma-separated s values.
        #[arg(long, default_value = "1,2,3", value_delimiter = ',')]
        s: Vec<u32>,
        /// Comma-separated check names; all checks by default.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
    },
    /// Truncated Cohen-Ramanujan expansion of a function given by a spec file.
    Expand {
        spec_file: PathBuf,
        n: Natural,
        #[arg(long, default_value_t = 1)]
        s: u32,
        /// Defaults to the support bound K.
        #[arg(long)]
        q_max: Option<usize>,
        /// Also write the parsed spec back out in canonical form.
        #[arg(long, value_name = "PATH")]
        emit_spec: Option<PathBuf>,
    },
}

/// Failure carrying the exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn io(path: &Path, err: impl std::fmt::Display) -> Self {
        CliError {
            code: EXIT_IO,
            message: format!("{}: {err}", path.display()),
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::Disagreement { .. } | Error::NotIntegral { .. } => EXIT_DISAGREEMENT,
            _ => EXIT_USAGE,
        };
        CliError {
            code,
            message: err.to_string(),
        }
    }
}

/// Text written to stdout (or `--out`) plus the exit code.
struct Output {
    body: String,
    code: i32,
}

impl Output {
    fn ok(body: String) -> Self {
        Output { body, code: EXIT_OK }
    }
}

fn direct_limit_from_env() -> Result<u64, CliError> {
    match std::env::var(MAX_DIRECT_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("{MAX_DIRECT_ENV} must be a positive integer, got `{v}`"))),
        Err(_) => Ok(DIRECT_LIMIT),
    }
}

#[derive(Serialize)]
struct CrsumJson {
    q: Value,
    n: Value,
    s: u32,
    value: Value,
    method: Method,
}

fn render(json: bool, text: String, value: impl FnOnce() -> Value) -> String {
    if json {
        format!("{}\n", value())
    } else {
        format!("{text}\n")
    }
}

fn cmd_crsum(
    cli_json: bool,
    q: Natural,
    n: Natural,
    s: u32,
    method: MethodArg,
    checked: bool,
) -> Result<Output, CliError> {
    let query = CrsQuery::new(q, n, s)?;
    let limit = direct_limit_from_env()?;
    let method = match method {
        MethodArg::Auto => Method::Multiplicative,
        MethodArg::Direct => Method::Direct,
        MethodArg::Mobius => Method::Mobius,
        MethodArg::Multiplicative => Method::Multiplicative,
        MethodArg::Hoelder => Method::Hoelder,
    };
    let result = crs_by(&query, method, limit)?;
    if checked {
        let reference = crs_checked(&query)?;
        if reference.value != result.value {
            return Err(Error::Disagreement {
                query: Box::new(query),
                first: result.method,
                first_value: result.value,
                second: reference.method,
                second_value: reference.value,
            }
            .into());
        }
    }
    let body = render(cli_json, result.value.to_string(), || {
        serde_json::to_value(CrsumJson {
            q: json_nat(query.q()),
            n: json_nat(query.n()),
            s,
            value: json_int(&result.value),
            method: result.method,
        })
        .expect("plain data")
    });
    Ok(Output::ok(body))
}

fn build_grid(k: &str, n: &str, s: Vec<u32>, checks: &[String]) -> Result<SweepGrid, CliError> {
    let checks = if checks.is_empty() {
        Check::ALL.to_vec()
    } else {
        checks
            .iter()
            .map(|c| c.parse::<Check>())
            .collect::<Result<_, _>>()
            .map_err(CliError::usage)?
    };
    SweepGrid::new(
        parse_range(k).map_err(CliError::usage)?,
        parse_range(n).map_err(CliError::usage)?,
        s,
        checks,
    )
    .map_err(CliError::usage)
}

fn cmd_sweep(cli: &Cli, grid: SweepGrid) -> Result<Output, CliError> {
    let result = run_sweep(&grid);
    let report = match cli.format {
        Format::Json => format!("{:#}\n", result.to_json()),
        Format::Csv => {
            let mut buf = Vec::new();
            result
                .write_csv(&mut buf)
                .map_err(|e| CliError::usage(e.to_string()))?;
            String::from_utf8(buf).expect("csv is utf-8")
        }
    };
    let code = if result.is_success() {
        EXIT_OK
    } else {
        EXIT_SWEEP_FAILURES
    };
    let body = match &cli.out {
        Some(path) => {
            fs::write(path, report).map_err(|e| CliError::io(path, e))?;
            format!(
                "{}/{} checks passed, {} failures, report written to {}\n",
                result.cells_passed,
                result.cells_total,
                result.cells_total - result.cells_passed,
                path.display()
            )
        }
        None => report,
    };
    Ok(Output { body, code })
}

fn cmd_expand(
    spec_file: &Path,
    n: Natural,
    s: u32,
    q_max: Option<usize>,
    emit_spec: Option<&Path>,
) -> Result<Output, CliError> {
    let text = fs::read_to_string(spec_file).map_err(|e| CliError::usage(format!("{}: {e}", spec_file.display())))?;
    let spec = MobiusSpec::parse(&text)?;
    if s == 0 {
        return Err(Error::ZeroArgument { name: "s" }.into());
    }
    if let Some(path) = emit_spec {
        fs::write(path, spec.to_text()).map_err(|e| CliError::io(path, e))?;
    }
    let report = partial_expansion(&spec, &n, s, q_max.unwrap_or(spec.support_bound()))?;
    Ok(Output::ok(format!("{:#}\n", report.to_json(&spec))))
}

fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    let json = cli.json;
    // Every arm except `sweep` writes its output through `--out` the same way.
    let out = match &cli.command {
        Command::Crsum {
            q,
            n,
            s,
            method,
            checked,
        } => cmd_crsum(json, q.clone(), n.clone(), *s, *method, *checked)?,
        Command::Jordan { n, s } => {
            let v = jordan_totient(*s, n)?;
            Output::ok(render(json, v.to_string(), || {
                json!({"s": s, "n": json_nat(n), "value": json_nat(&v)})
            }))
        }
        Command::Ggcd { a, b, s } => {
            let v = generalized_gcd(a, b, *s)?;
            Output::ok(render(json, v.to_string(), || {
                json!({"a": json_nat(a), "b": json_nat(b), "s": s, "value": json_nat(&v)})
            }))
        }
        Command::Mobius { n } => {
            let v = mobius(n)?;
            Output::ok(render(json, v.to_string(), || {
                json!({"n": json_nat(n), "value": v})
            }))
        }
        Command::Hsum { k, n, s } => {
            let v = divisor_abs_sum(k, n, *s)?;
            Output::ok(render(json, v.to_string(), || {
                json!({"k": json_nat(k), "n": json_nat(n), "s": s, "value": json_nat(&v)})
            }))
        }
        Command::Grytczuk { k, n, s } => {
            let v = grytczuk_value(k, n, *s)?;
            Output::ok(render(json, v.to_string(), || {
                json!({"k": json_nat(k), "n": json_nat(n), "s": s, "value": json_nat(&v)})
            }))
        }
        Command::Skn { k, n, s, reading } => {
            let reading = match reading {
                ReadingArg::Spower => GcdReading::SPower,
                ReadingArg::Ordinary => GcdReading::Ordinary,
            };
            let by_inversion = s_kn_mobius(k, n, *s)?;
            let closed = s_kn_closed_form_with(k, n, *s, reading)?;
            let code = if by_inversion == closed {
                EXIT_OK
            } else {
                EXIT_DISAGREEMENT
            };
            let body = render(json, by_inversion.to_string(), || {
                json!({
                    "k": json_nat(k),
                    "n": json_nat(n),
                    "s": s,
                    "mobius_inversion": json_int(&by_inversion),
                    "closed_form": json_int(&closed),
                })
            });
            Output { body, code }
        }
        Command::Sweep { k, n, s, checks } => {
            let grid = build_grid(k, n, s.clone(), checks)?;
            return cmd_sweep(cli, grid);
        }
        Command::Expand {
            spec_file,
            n,
            s,
            q_max,
            emit_spec,
        } => cmd_expand(spec_file, n.clone(), *s, *q_max, emit_spec.as_deref())?,
    };
    match &cli.out {
        Some(path) => {
            fs::write(path, &out.body).map_err(|e| CliError::io(path, e))?;
            Ok(Output {
                body: String::new(),
                code: out.code,
            })
        }
        None => Ok(out),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let _ = write!(stderr, "{err}");
            return if err.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(&cli) {
        Ok(out) => {
            let _ = stdout.write_all(out.body.as_bytes());
            out.code
        }
        Err(err) => {
            let _ = writeln!(stderr, "error: {}", err.message);
            err.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("crs").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn json_int_switches_to_strings() {
        assert_eq!(json_int(&BigInt::from(-2)), json!(-2));
        assert_eq!(json_int(&BigInt::from(1u64 << 53)), json!(9007199254740992u64));
        assert_eq!(
            json_int(&(BigInt::from(1u64 << 53) + 1)),
            json!("9007199254740993")
        );
        assert_eq!(
            json_int(&-(BigInt::from(1u64 << 53) + BigInt::from(1))),
            json!("-9007199254740993")
        );
    }

    #[test]
    fn crsum_examples() {
        assert_eq!(run_capture(&["crsum", "2", "4", "--s", "2"]).1, "3\n");
        assert_eq!(run_capture(&["crsum", "1", "7", "--s", "1"]).1, "1\n");
        assert_eq!(
            run_capture(&["crsum", "4", "2", "--s", "1", "--json"]).1,
            "{\"q\":4,\"n\":2,\"s\":1,\"value\":-2,\"method\":\"multiplicative\"}\n"
        );
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_capture(&["crsum", "0", "4"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["crsum", "x", "4"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["crsum", "2", "4", "--method", "magic"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["sweep", "--checks", "nope"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["sweep", "--k", "0..3"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn big_values_are_strings() {
        let (code, out, _) = run_capture(&["crsum", "1000003", "1000009000027000027", "--s", "3", "--json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert!(v["value"].is_string());
    }
}
