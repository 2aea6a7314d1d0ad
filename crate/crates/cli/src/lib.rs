//! The `chromlat` command-line front end.
//!
//! [`run`] takes a parsed [`Cli`] and produces the exit code and the text
//! for stdout/stderr, so the binary and the tests share one code path.
//! Exit codes: 0 success, 1 domain error, 2 parse error, 3 negative Schur
//! coefficient, 4 not nice.

pub mod args;
mod commands;
pub mod oracle;
pub mod sweep;
pub mod verify;

use std::time::Instant;

use chromlat_core::Error;
use serde_json::{json, Value};

pub use args::{Cli, Command};

pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_NEGATIVE: i32 = 3;
pub const EXIT_NOT_NICE: i32 = 4;

/// What a command produced before it is wrapped in an envelope.
pub(crate) struct Report {
    pub method: Option<String>,
    pub result: Value,
    pub text: String,
    pub code: i32,
}

#[derive(Debug)]
pub(crate) struct Failure {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match e {
            Error::Parse { .. } | Error::InvalidPartition(_) | Error::InvalidSpec(_) => (EXIT_PARSE, "parse"),
            Error::BudgetExceeded(_) | Error::TooLarge { .. } => (EXIT_DOMAIN, "budget"),
            _ => (EXIT_DOMAIN, "domain"),
        };
        Failure {
            code,
            kind,
            message: e.to_string(),
        }
    }
}

/// Process output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one request, honouring `--threads` and `--json`.
pub fn run(cli: &Cli) -> Outcome {
    let start = Instant::now();
    let result = match cli.threads {
        Some(0) => Err(Failure {
            code: EXIT_PARSE,
            kind: "parse",
            message: "--threads must be at least 1".into(),
        }),
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| commands::dispatch(&cli.command)),
            Err(e) => Err(Failure {
                code: EXIT_DOMAIN,
                kind: "domain",
                message: format!("cannot start worker pool: {e}"),
            }),
        },
        None => commands::dispatch(&cli.command),
    };
    let wall_time_ms = start.elapsed().as_millis() as u64;
    if cli.json {
        let mut env = json!({
            "version": env!("CARGO_PKG_VERSION"),
            "request": cli.command,
            "wall_time_ms": wall_time_ms,
        });
        let code = match result {
            Ok(r) => {
                env["method"] = r.method.map_or(Value::Null, Value::String);
                env["result"] = r.result;
                r.code
            }
            Err(f) => {
                env["error"] = json!({ "kind": f.kind, "message": f.message });
                f.code
            }
        };
        let mut stdout = serde_json::to_string_pretty(&env).expect("envelope serializes");
        stdout.push('\n');
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    } else {
        match result {
            Ok(r) => Outcome {
                code: r.code,
                stdout: r.text,
                stderr: String::new(),
            },
            Err(f) => Outcome {
                code: f.code,
                stdout: String::new(),
                stderr: format!("error ({}): {}\n", f.kind, f.message),
            },
        }
    }
}

/// Drops the `wall_time_ms` field so envelopes can be compared.
pub fn strip_timing(envelope: &mut Value) {
    if let Some(obj) = envelope.as_object_mut() {
        obj.remove("wall_time_ms");
    }
}
