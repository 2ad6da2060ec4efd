//! The `complements` command line.
//!
//! Every subcommand prints one JSON document on stdout. Exit codes: 0 on
//! success, 1 for domain errors, 2 when a search finds nothing (no `n`, no
//! decomposition, a covering counterexample, failing batch cases), 3 for
//! malformed input (bad flags, unreadable files, invalid JSON).

mod args;
mod batch;
mod commands;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Value};

use crate::error::Error;
use crate::rational::Rational;

pub use args::Cli;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_NOT_FOUND: i32 = 2;
pub const EXIT_MALFORMED: i32 = 3;

/// Library operation → subcommand path, with the selecting flag where one
/// subcommand serves several operations. Each operation has exactly one
/// entry.
pub const REGISTRY: &[(&str, &str)] = &[
    ("round_coeff", "round"),
    ("round_vector", "round-vector"),
    ("complement_coeff_ok", "complement-ok"),
    ("phi_contains", "gamma --phi-contains"),
    ("gamma_contains", "gamma --contains"),
    ("gamma_enumerate_upto", "gamma --enumerate-upto"),
    ("low_approx", "gamma --low-approx"),
    ("low_approx_boundary", "gamma --low-approx-boundary"),
    ("find_complementary_n", "find-n"),
    ("check_restriction", "check-restriction"),
    ("continuity_delta", "delta"),
    ("find_simultaneous_n", "simultaneous"),
    ("construct_covering_set", "cover"),
    ("verify_covering", "verify-cover"),
    ("classify", "curve classify"),
    ("has_r_complement", "curve r-complement"),
    ("find_n_complement", "curve complement"),
    ("is_n_complement", "curve check"),
    ("CurvePair::from_json", "curve validate"),
    ("component_degree_data", "curve degrees"),
    ("merge_small_multiplicities", "merge"),
    ("zariski_decompose", "zariski"),
    ("check_nef", "nef-check"),
    ("is_negative_definite", "negdef"),
    ("check_maximality", "maximality"),
    ("divisorial_coeff", "kodaira"),
    ("complement_index", "kodaira"),
    ("adjunction_index_elliptic", "kodaira"),
    ("linf_norm", "norm"),
    ("floor_rational", "floor"),
    ("batch", "batch"),
];

/// What a command produced: an exit code and the two output streams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn json(code: i32, value: &Value) -> Self {
        Outcome {
            code,
            stdout: format!("{value}\n"),
            stderr: String::new(),
        }
    }

    fn error(e: &Error) -> Self {
        let kind = match e {
            Error::Domain(_) | Error::Dimension { .. } | Error::EmptyVector => "domain",
            Error::InvalidCurve(_) => "invalid_curve",
            Error::InvalidModel(_) => "invalid_model",
            Error::Precondition(_) => "precondition",
            Error::NotFound(_) => "not_found",
            Error::NoDecomposition(_) => "no_decomposition",
            Error::ParseRational { .. } | Error::Malformed(_) => "malformed",
        };
        Outcome {
            code: exit_code(e),
            stdout: String::new(),
            stderr: format!("{}\n", json!({ "error": kind, "message": e.to_string() })),
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotFound(_) | Error::NoDecomposition(_) => EXIT_NOT_FOUND,
        Error::ParseRational { .. } | Error::Malformed(_) => EXIT_MALFORMED,
        _ => EXIT_DOMAIN,
    }
}

/// Copy of `v` with every rational string replaced by a decimal rendering.
fn decimal_copy(v: &Value, digits: usize) -> Value {
    match v {
        Value::String(s) => match s.parse::<Rational>() {
            Ok(q) if s.contains('/') || s.parse::<i64>().is_ok() => {
                Value::String(format!("~{}", q.to_decimal_string(digits)))
            }
            _ => v.clone(),
        },
        Value::Array(items) => Value::Array(items.iter().map(|x| decimal_copy(x, digits)).collect()),
        Value::Object(map) => Value::Object(map.iter().map(|(k, x)| (k.clone(), decimal_copy(x, digits))).collect()),
        _ => v.clone(),
    }
}

/// Parses and runs one command line (`args[0]` is the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: EXIT_MALFORMED,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let threads = cli.jobs.unwrap_or(1).max(1);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool,
        Err(e) => return Outcome::error(&Error::domain(e.to_string())),
    };
    let decimal = cli.decimal;
    match pool.install(|| commands::dispatch(cli.command)) {
        Ok((code, value)) if code == EXIT_OK || code == EXIT_NOT_FOUND => {
            let value = match (decimal, value) {
                (Some(k), Value::Object(mut map)) => {
                    let approx = decimal_copy(&Value::Object(map.clone()), k);
                    map.insert("decimal_approx".into(), approx);
                    Value::Object(map)
                }
                (_, v) => v,
            };
            Outcome::json(code, &value)
        }
        Ok((code, value)) => Outcome::json(code, &value),
        Err(e) => Outcome::error(&e),
    }
}

/// Entry point of the binary: runs on the process arguments, prints, and
/// returns the exit code.
pub fn main() -> i32 {
    let _ = env_logger::Builder::from_env(env_logger::Env::new().filter("COMPLEMENTS_LOG")).try_init();
    let out = run(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}
