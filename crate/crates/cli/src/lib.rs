//! Argument parsing and dispatch for the `octosolve` binary.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use octosolve::dynamic::with_schema;
use octosolve::oracle::DEFAULT_MAX_Q;
use octosolve::{AnyField, Error, FieldSpec};
use serde_json::Value;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "octosolve", version, about = "Polynomial equations over the split octonions")]
pub struct Command {
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Pretty,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Working field: C, Q, F:p, F:p^k or F:p^k:c0,...,1
    #[arg(long)]
    pub field: FieldSpec,
    /// Relative tolerance of the complex field
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Seed for every pseudo-random choice
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Work over the degree-d extension of a finite field
    #[arg(long, default_value_t = 1)]
    pub closure_degree: u32,
    #[arg(long, value_enum, default_value_t = Output::Json)]
    pub output: Output,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Product of two octonions
    Mul {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Evaluate a polynomial at an octonion
    Eval {
        #[command(flatten)]
        common: Common,
        /// Ascending coefficients a0,a1,...,an
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// All solutions of f(x) = c
    Solve {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
    },
    /// All solutions of x^n = c
    NthRoot {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
        #[arg(long)]
        n: u32,
    },
    /// G2-orbit label of an octonion
    Classify {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Eigenvalues of an octonion
    Eigen {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Pseudo-random points of a G2-orbit
    Sample {
        #[command(flatten)]
        common: Common,
        /// O2 or O3
        #[arg(long)]
        kind: String,
        /// Comma-separated orbit parameters
        #[arg(long, allow_hyphen_values = true)]
        params: String,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Check whether a candidate solves f(x) = c
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
        #[arg(long, allow_hyphen_values = true)]
        candidate: String,
    },
    /// Exhaustive scan over a small finite field, compared with solve
    Oracle {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
        /// Largest field size to scan
        #[arg(long, default_value_t = DEFAULT_MAX_Q)]
        max_q: u64,
        /// Worker threads (default: all cores)
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Random checks of the octonion identities
    Fuzz {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
}

impl Verb {
    pub fn common(&self) -> &Common {
        match self {
            Verb::Mul { common, .. }
            | Verb::Eval { common, .. }
            | Verb::Solve { common, .. }
            | Verb::NthRoot { common, .. }
            | Verb::Classify { common, .. }
            | Verb::Eigen { common, .. }
            | Verb::Sample { common, .. }
            | Verb::Verify { common, .. }
            | Verb::Oracle { common, .. }
            | Verb::Fuzz { common, .. } => common,
        }
    }
}

pub fn parse_args<I, T>(argv: I) -> Result<Command, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    Command::try_parse_from(argv)
}

/// Exit code and the text for standard output or standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::InvalidFieldSpec { .. }
        | Error::InvalidArgument(_)
        | Error::DeterminantNotOne
        | Error::ZeroPolynomial
        | Error::ConstantPolynomial
        | Error::WrongBackend(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

fn text(s: &str) -> Value {
    Value::String(s.to_string())
}

pub fn run(cmd: &Command) -> Outcome {
    let common = cmd.verb.common();
    let result = AnyField::new(&common.field, common.epsilon, common.closure_degree)
        .and_then(|field| dispatch(&field, &cmd.verb, common.seed));
    match result {
        Ok((value, ok)) => {
            let value = with_schema(value);
            let mut stdout = match common.output {
                Output::Json => serde_json::to_string(&value),
                Output::Pretty => serde_json::to_string_pretty(&value),
            }
            .expect("JSON values always serialise");
            stdout.push('\n');
            Outcome { code: if ok { EXIT_OK } else { EXIT_FAILURE }, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn dispatch(f: &AnyField, verb: &Verb, seed: u64) -> octosolve::Result<(Value, bool)> {
    let ok = |v: Value| Ok((v, true));
    match verb {
        Verb::Mul { a, b, .. } => ok(f.mul(&text(a), &text(b))?),
        Verb::Eval { poly, x, .. } => ok(f.eval(&text(poly), &text(x))?),
        Verb::Solve { poly, rhs, .. } => ok(f.solve(&text(poly), &text(rhs))?),
        Verb::NthRoot { rhs, n, .. } => ok(f.nth_root(&text(rhs), *n)?),
        Verb::Classify { x, .. } => ok(f.classify(&text(x))?),
        Verb::Eigen { x, .. } => ok(f.eigen(&text(x))?),
        Verb::Sample { kind, params, count, .. } => {
            let params: Vec<Value> = params.split(',').map(text).collect();
            ok(f.sample(kind, &params, *count, seed)?)
        }
        Verb::Verify { poly, rhs, candidate, .. } => ok(f.verify(&text(poly), &text(rhs), &text(candidate))?),
        Verb::Oracle { poly, rhs, max_q, jobs, .. } => f.oracle(&text(poly), &text(rhs), *max_q, *jobs),
        Verb::Fuzz { trials, .. } => Ok(f.fuzz(*trials, seed)),
    }
}

/// Parses and runs; clap errors become usage failures.
pub fn main_with_args<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match parse_args(argv) {
        Ok(cmd) => run(&cmd),
        Err(e) => {
            let rendered = e.render().to_string();
            match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: EXIT_OK, stdout: rendered, stderr: String::new() }
                }
                _ => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: rendered },
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn out(args: &[&str]) -> Outcome {
        main_with_args(std::iter::once("octosolve").chain(args.iter().copied()))
    }

    #[test]
    fn parses_a_solve_command() {
        let cmd = parse_args(["octosolve", "solve", "--field", "C", "--poly", "0,0,1", "--rhs", "1,0,0,0,0,0,0,1"]).unwrap();
        match cmd.verb {
            Verb::Solve { common, poly, rhs } => {
                assert_eq!(common.field, FieldSpec::Complex);
                assert_eq!(common.seed, 0);
                assert_eq!(poly, "0,0,1");
                assert_eq!(rhs, "1,0,0,0,0,0,0,1");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn extension_field_spec() {
        let cmd = parse_args(["octosolve", "nth-root", "--field", "F:2^6", "--n", "2", "--rhs", "1,0,0,0,0,0,0,1"]).unwrap();
        assert_eq!(cmd.verb.common().field, FieldSpec::Extension { p: 2, k: 6, modulus: None });
    }

    #[test]
    fn bad_field_is_a_usage_error() {
        let o = out(&["solve", "--field", "F:4", "--poly", "0,0,1", "--rhs", "1,0,0,0,0,0,0,1"]);
        assert_eq!(o.code, EXIT_USAGE);
        assert!(o.stderr.contains("F:4"), "{}", o.stderr);
        assert!(o.stderr.contains("F:2^2"), "{}", o.stderr);
    }

    #[test]
    fn unknown_flags_are_rejected() {
        assert_eq!(out(&["classify", "--field", "C", "--x", "1,0,0,0,0,0,0,1", "--bogus"]).code, EXIT_USAGE);
    }

    #[test]
    fn malformed_octonion_is_a_usage_error() {
        let o = out(&["classify", "--field", "C", "--x", "1,2,3"]);
        assert_eq!(o.code, EXIT_USAGE);
        assert!(o.stderr.contains("1,2,3"));
    }

    #[test]
    fn negative_literals_are_accepted() {
        let o = out(&["mul", "--field", "Q", "--a", "-1,0,0,0,0,0,0,-1", "--b", "-1,0,0,0,0,0,0,-1"]);
        assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
        assert_eq!(o.stdout, "{\"product\":[1,0,0,0,0,0,0,1],\"schema\":1}\n");
    }
}
