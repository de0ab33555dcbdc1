//! Command-line front end: argument parsing, dispatch to the library and
//! JSON run reports.

pub mod args;
mod commands;
pub mod render;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::Parser;
use serde::Serialize;
use sha2::{Digest, Sha256};

use args::{Cli, Format};

pub const SCHEMA: u32 = 1;
pub const CAP_ENV: &str = "BLOBSHIFT_CELL_CAP";

/// Everything a run produced; `main` forwards it to the process.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: String,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] blobshift::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Domain(_) => 2,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: Vec<String>,
    pub inputs_digest: String,
    pub result: serde_json::Value,
}

/// What a subcommand hands back: a JSON result, and optionally the raw
/// bytes to print when a non-JSON format was requested.
pub(crate) struct Produced {
    pub result: serde_json::Value,
    pub raw: Option<Vec<u8>>,
}

/// Per-run state: the cell cap and the bytes of every input file read.
pub(crate) struct Context {
    pub cap: u128,
    pub format: Format,
    inputs: Vec<Vec<u8>>,
}

impl Context {
    pub fn read(&mut self, flag: &str, path: &Path) -> Result<String, CliError> {
        let bytes = fs::read(path)
            .map_err(|e| CliError::Usage(format!("--{flag} {}: {e}", path.display())))?;
        let text = String::from_utf8(bytes.clone())
            .map_err(|_| CliError::Usage(format!("--{flag} {}: not UTF-8", path.display())))?;
        self.inputs.push(bytes);
        Ok(text)
    }

    fn digest(&self) -> String {
        let mut h = Sha256::new();
        for b in &self.inputs {
            h.update((b.len() as u64).to_le_bytes());
            h.update(b);
        }
        hex::encode(h.finalize())
    }
}

/// Runs the CLI on `argv` (program name first), reading the cell cap from
/// the environment.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cap = match std::env::var(CAP_ENV) {
        Ok(v) => match v.trim().parse::<u128>() {
            Ok(c) if c > 0 => Some(c),
            _ => return usage(format!("{CAP_ENV}={v} is not a positive integer")),
        },
        Err(_) => None,
    };
    run_with_cap(argv, cap.unwrap_or(blobshift::DEFAULT_CELL_CAP))
}

/// [`run`] with an explicit cell cap.
pub fn run_with_cap<I, T>(argv: I, cap: u128) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 1,
                    stdout: Vec::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text.into_bytes(),
                    stderr: String::new(),
                }
            };
        }
    };
    let mut ctx = Context {
        cap,
        format: cli.format,
        inputs: Vec::new(),
    };
    let produced = match commands::dispatch(&cli.command, &mut ctx) {
        Ok(p) => p,
        Err(e) => {
            return Outcome {
                code: e.exit_code(),
                stdout: Vec::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    };
    let bytes = match (cli.format, produced.raw) {
        (Format::Json, _) | (_, None) => {
            let report = RunReport {
                schema: SCHEMA,
                tool: "blobshift",
                version: env!("CARGO_PKG_VERSION"),
                command: argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect(),
                inputs_digest: ctx.digest(),
                result: produced.result,
            };
            let mut s = serde_json::to_string_pretty(&report).expect("reports serialise");
            s.push('\n');
            s.into_bytes()
        }
        (_, Some(raw)) => raw,
    };
    match cli.out {
        Some(path) => write_out(&path, &bytes),
        None => Outcome {
            code: 0,
            stdout: bytes,
            stderr: String::new(),
        },
    }
}

fn write_out(path: &PathBuf, bytes: &[u8]) -> Outcome {
    match fs::write(path, bytes) {
        Ok(()) => Outcome {
            code: 0,
            stdout: Vec::new(),
            stderr: String::new(),
        },
        Err(e) => usage(format!("--out {}: {e}", path.display())),
    }
}

fn usage(msg: String) -> Outcome {
    Outcome {
        code: 1,
        stdout: Vec::new(),
        stderr: format!("error: {msg}\n"),
    }
}
