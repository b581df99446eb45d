//! Command-line front end for `solenoid-core`.
//!
//! [`run`] parses arguments, executes one subcommand and returns what the
//! binary would print together with its exit status.

pub mod cli;
pub mod emit;
pub mod parse;

mod commands;

use clap::Parser;

use cli::{Cli, Command};
use emit::Format;

/// Environment variable capping the worker threads of parallel scans.
pub const THREADS_ENV: &str = "SOLENOID_LAB_THREADS";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

fn format_of(cmd: &Command) -> Option<Format> {
    use Command::*;
    match cmd {
        FixedPoints { out, .. }
        | Orbits { out, .. }
        | Mertens { out, .. }
        | Pi { out, .. }
        | Zeta { out, .. }
        | ToralZeta { out, .. }
        | Realizable { out, .. }
        | Mahler { out, .. }
        | Entropy { out, .. }
        | LehmerScan { out, .. }
        | Conjugacy { out, .. }
        | Poset { out, .. }
        | Dirichlet { out, .. }
        | GrowthConstruct { out, .. }
        | BoundaryScan { out, .. }
        | ClassifyType { out, .. } => out.format,
    }
}

fn failure(status: i32, msg: impl std::fmt::Display) -> CommandResult {
    CommandResult {
        status,
        stdout: String::new(),
        stderr: format!("error: {msg}\n"),
    }
}

pub fn run<I, S>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandResult {
                    status: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CommandResult {
                    status: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => pool = pool.num_threads(n),
            _ => return failure(2, format!("{THREADS_ENV} must be a positive integer")),
        }
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => return failure(3, e),
    };
    let report = match pool.install(|| commands::dispatch(&cli.command)) {
        Ok(r) => r,
        Err(e) => return failure(e.status(), e),
    };
    match report.render(format_of(&cli.command)) {
        Ok(stdout) => CommandResult {
            status: report.status,
            stdout,
            stderr: String::new(),
        },
        Err(e) => failure(2, e),
    }
}
