//! The `sigflow` command line: argument handling, report assembly and exit
//! statuses. `run` does everything except touching the real stdout, so tests
//! can drive it directly.

mod args;
mod commands;
mod describe;

use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::Parser;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub use args::{Cli, Command, Format};

/// Exit statuses.
pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID_INPUT: i32 = 1;
pub const EXIT_GUARD: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    InvalidInput,
    Guard,
    Invariant,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => EXIT_OK,
            Status::InvalidInput => EXIT_INVALID_INPUT,
            Status::Guard => EXIT_GUARD,
            Status::Invariant => EXIT_INVARIANT,
        }
    }
}

/// A failed command: the status it maps to and a message.
#[derive(Debug)]
pub struct Failure {
    pub status: Status,
    pub message: String,
}

impl Failure {
    pub fn invalid(message: impl Into<String>) -> Self {
        Failure { status: Status::InvalidInput, message: message.into() }
    }

    pub fn guard(message: impl Into<String>) -> Self {
        Failure { status: Status::Guard, message: message.into() }
    }

    pub fn invariant(message: impl Into<String>) -> Self {
        Failure { status: Status::Invariant, message: message.into() }
    }
}

/// What a command produces on success. `rendered` replaces the JSON report
/// for `--format dot`.
pub struct Produced {
    pub result: Value,
    pub rendered: Option<String>,
    /// Success with a nonzero status, for sweeps that found disagreements.
    pub status: Status,
}

impl Produced {
    pub fn json(result: Value) -> Self {
        Produced { result, rendered: None, status: Status::Ok }
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub input_digest: Option<String>,
    pub status: Status,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub result: Value,
}

/// Text for stdout and the process exit status.
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn out_path(command: &Command) -> Option<&PathBuf> {
    match command {
        Command::Check(a) => a.out.as_ref(),
        Command::Decompose(a) => a.file.out.as_ref(),
        Command::Classify(a) => a.file.out.as_ref(),
        Command::Oracle(a) => a.out.as_ref(),
    }
}

/// Runs one invocation. `args` excludes the program name.
pub fn run(args: &[String]) -> Outcome {
    let argv = std::iter::once("sigflow".to_string()).chain(args.iter().cloned());
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { stdout: text, stderr: String::new(), code: EXIT_OK }
                }
                _ => Outcome { stdout: String::new(), stderr: text, code: EXIT_INVALID_INPUT },
            };
        }
    };
    let mut input_digest = None;
    let produced = commands::dispatch(&cli.command, &mut input_digest);
    let (report, rendered) = match produced {
        Ok(p) => (
            RunReport {
                command: args.to_vec(),
                input_digest,
                status: p.status,
                exit_code: p.status.exit_code(),
                error: None,
                result: p.result,
            },
            p.rendered,
        ),
        Err(f) => (
            RunReport {
                command: args.to_vec(),
                input_digest,
                status: f.status,
                exit_code: f.status.exit_code(),
                error: Some(f.message),
                result: Value::Null,
            },
            None,
        ),
    };
    let code = report.exit_code;
    let text = match rendered {
        Some(dot) => dot,
        None => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
    };
    match out_path(&cli.command) {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome { stdout: String::new(), stderr: String::new(), code },
            Err(e) => Outcome {
                stdout: String::new(),
                stderr: format!("cannot write {}: {e}\n", path.display()),
                code: EXIT_INVALID_INPUT,
            },
        },
        None => Outcome { stdout: text, stderr: String::new(), code },
    }
}
