//! Batch front end: JSON descriptors in, JSON reports out.

mod commands;
pub mod descriptor;
pub mod fixtures;
mod report;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

pub use commands::Outcome;
pub use report::{digest, Report, Status};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Command {
    Snf,
    Tate,
    FlasqueCheck,
    Resolve,
    GraphH,
    Contract,
    SixTerm,
    Monotonic,
    Psi,
    Basechange,
    Sha,
    ShaP1Report,
}

impl Command {
    pub const ALL: [Command; 12] = [
        Command::Snf,
        Command::Tate,
        Command::FlasqueCheck,
        Command::Resolve,
        Command::GraphH,
        Command::Contract,
        Command::SixTerm,
        Command::Monotonic,
        Command::Psi,
        Command::Basechange,
        Command::Sha,
        Command::ShaP1Report,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Snf => "snf",
            Command::Tate => "tate",
            Command::FlasqueCheck => "flasque-check",
            Command::Resolve => "resolve",
            Command::GraphH => "graph-h",
            Command::Contract => "contract",
            Command::SixTerm => "six-term",
            Command::Monotonic => "monotonic",
            Command::Psi => "psi",
            Command::Basechange => "basechange",
            Command::Sha => "sha",
            Command::ShaP1Report => "shaP1-report",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown command {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct Job {
    pub command: Command,
    pub input: PathBuf,
    pub output: PathBuf,
    pub parallel: Option<usize>,
    pub verbose: bool,
}

fn status_of(e: &Error) -> Status {
    match e {
        Error::Invalid(_) | Error::Mismatch(_) | Error::Precondition(_) => Status::InvalidInput,
        Error::Verification(_) => Status::VerificationFailed,
        Error::LimitExceeded(_) => Status::LimitExceeded,
    }
}

/// Runs a command on raw input bytes. Never fails: errors become the report's
/// status and failure fields.
pub fn execute(command: Command, input: &[u8], parallel: Option<usize>) -> Report {
    let start = Instant::now();
    let outcome = match parallel {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(|| commands::dispatch(command, input)),
            Err(e) => Err(Error::Invalid(format!("cannot start {n} worker threads: {e}"))),
        },
        None => commands::dispatch(command, input),
    };
    finish(command, input, outcome, start.elapsed().as_secs_f64() * 1000.0)
}

fn finish(command: Command, input: &[u8], outcome: Result<Outcome>, timing_ms: f64) -> Report {
    let (status, result, verification, failure) = match outcome {
        Ok(o) => {
            let failed: Vec<&str> = o
                .verification
                .iter()
                .filter(|(_, ok)| !**ok)
                .map(|(k, _)| k.as_str())
                .collect();
            if failed.is_empty() {
                (Status::Ok, o.result, o.verification, None)
            } else {
                let msg = format!("checks failed: {}", failed.join(", "));
                (Status::VerificationFailed, o.result, o.verification, Some(msg))
            }
        }
        Err(e) => (status_of(&e), serde_json::Value::Null, Default::default(), Some(e.to_string())),
    };
    Report {
        command: command.name().to_string(),
        input_digest: digest(input),
        status,
        result,
        verification,
        failure,
        timing_ms,
    }
}

/// Reads the job's input, runs it, and writes the report atomically. Returns
/// the report; its status gives the exit code.
pub fn run(job: &Job) -> std::io::Result<Report> {
    let report = match std::fs::read(&job.input) {
        Ok(bytes) => {
            if job.verbose {
                eprintln!("{}: read {} bytes from {}", job.command, bytes.len(), job.input.display());
            }
            execute(job.command, &bytes, job.parallel)
        }
        Err(e) => Report {
            command: job.command.name().to_string(),
            input_digest: String::new(),
            status: Status::InvalidInput,
            result: serde_json::Value::Null,
            verification: Default::default(),
            failure: Some(format!("cannot read {}: {e}", job.input.display())),
            timing_ms: 0.0,
        },
    };
    if job.verbose {
        eprintln!(
            "{}: status {:?} in {:.1} ms, writing {}",
            job.command,
            report.status,
            report.timing_ms,
            job.output.display()
        );
    }
    report.write_atomically(&job.output)?;
    Ok(report)
}
