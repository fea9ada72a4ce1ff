// Copyright 2026 The voterbloc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 for unreadable or invalid input, 3 when a
//! computation fails (Meek non-convergence, enumeration guard, and so on).

mod audit;
mod batch;
mod gen;
mod psc;
mod tabulate;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::arith::parse_rational;
use crate::criteria::{CriteriaError, Criterion};
use crate::methods::{Method, ScoringVector, TabulationError};
use crate::profile::{parse_blt, parse_csv, Election};

pub use self::batch::{run_batch, BatchConfig, BatchReport, BatchRow};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_COMPUTATION: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Computation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Computation(_) => EXIT_COMPUTATION,
        }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        CliError::Input(format!("{}: {e}", path.display()))
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<TabulationError> for CliError {
    fn from(e: TabulationError) -> Self {
        CliError::Computation(e.to_string())
    }
}

impl From<CriteriaError> for CliError {
    fn from(e: CriteriaError) -> Self {
        match e {
            CriteriaError::Tabulation(t) => t.into(),
            CriteriaError::OracleBudget { .. } => CliError::Computation(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "voterbloc", version, about = "Multiwinner ranked-choice tabulation and voter-bloc audits")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate one election and print the round-by-round count.
    Tabulate(TabulateArgs),
    /// Search one election for ILVB, IWVB and IWVB* violations.
    Audit(AuditArgs),
    /// Audit every election file in a directory.
    Batch(BatchArgs),
    /// Write a worst-case profile and its manifest.
    Gen(GenArgs),
    /// Solid coalitions, PSC constraints and the q-PSC scoring rule.
    Psc(PscArgs),
}

#[derive(Debug, Args)]
pub struct TabulateArgs {
    pub path: PathBuf,
    /// scottish, meek, ear, cc-om, cc-pm, borda, plurality or positional.
    #[arg(short, long, default_value = "scottish")]
    pub method: String,
    /// Scoring vector for `positional`, e.g. "3,2,1".
    #[arg(long)]
    pub sv: Option<String>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    pub path: PathBuf,
    /// Comma-separated method names.
    #[arg(short, long, default_value = "scottish")]
    pub method: String,
    /// Comma-separated criteria: ilvb, iwvb, iwvb-star.
    #[arg(long, default_value = "ilvb,iwvb,iwvb-star")]
    pub criteria: String,
    #[arg(long, default_value_t = 10)]
    pub sigma_l: u64,
    #[arg(long, default_value_t = 3)]
    pub sigma_w: u64,
    /// Also run the party-swap searches.
    #[arg(long)]
    pub party_swaps: bool,
    /// Keep records whose tabulations involved a consequential tie.
    #[arg(long)]
    pub keep_ties: bool,
    /// Write the JSON-lines records here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Reserved; every search is deterministic.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct BatchArgs {
    pub dir: PathBuf,
    /// key=value configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory, reused when resuming.
    #[arg(long, default_value = "batch-out")]
    pub out: PathBuf,
    #[arg(long, env = "RCV_AUDIT_WORKERS")]
    pub workers: Option<usize>,
    /// Reserved; every search is deterministic.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// stv-ilvb, ear-ilvb, stv-iwvb, ear-iwvb, stv-iwvb-star, ear-iwvb-star,
    /// cc-iwvb, qpsc-left or qpsc-right.
    pub family: String,
    #[arg(short, long, default_value_t = 3)]
    pub k: usize,
    /// Bullet votes for A (stv-iwvb-star and ear-iwvb-star).
    #[arg(long)]
    pub a: Option<u64>,
    /// A > B_i ballots per pair (stv-iwvb-star).
    #[arg(long)]
    pub b: Option<u64>,
    /// Bullet votes per C_i (stv-iwvb-star).
    #[arg(long)]
    pub c: Option<u64>,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct PscArgs {
    pub path: PathBuf,
    /// hare, droop or a positive number.
    #[arg(long, default_value = "droop")]
    pub q_mode: String,
    /// Scoring vector for the q-PSC scoring rule, e.g. "1,0.01".
    #[arg(long)]
    pub sv: Option<String>,
    /// Tabulate with this method and list the constraints it violates.
    #[arg(long)]
    pub audit: Option<String>,
}

/// Parses `args` (program name first) and runs the command, writing to `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            write!(out, "{e}")?;
            return Ok(());
        }
        Err(e) => return Err(CliError::Input(e.to_string())),
    };
    match cli.command {
        Command::Tabulate(a) => tabulate::run(&a, out),
        Command::Audit(a) => audit::run(&a, out),
        Command::Batch(a) => batch::run(&a, out),
        Command::Gen(a) => gen::run(&a, out),
        Command::Psc(a) => psc::run(&a, out),
    }
}

/// Runs the command line and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(args, &mut lock) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Reads a `.csv` file as CSV and anything else as BLT.
pub fn load_election(path: &Path) -> Result<Election, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let is_csv = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    let parsed = if is_csv {
        parse_csv(&text).map_err(|e| e.to_string())
    } else {
        parse_blt(&text).map_err(|e| e.to_string())
    };
    parsed.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// File stem used as the election id in records and reports.
pub fn election_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

pub fn parse_scoring_vector(text: &str) -> Result<ScoringVector, CliError> {
    let points = text
        .split(',')
        .map(|s| parse_rational(s.trim()).ok_or_else(|| CliError::Input(format!("bad score {s:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    ScoringVector::new(points).map_err(|e| CliError::Input(e.to_string()))
}

pub fn parse_method(name: &str, sv: Option<&str>, m: usize) -> Result<Method, CliError> {
    if name.trim().eq_ignore_ascii_case("positional") {
        let sv = sv.ok_or_else(|| CliError::Input("method positional needs --sv".into()))?;
        return Ok(Method::Positional(parse_scoring_vector(sv)?));
    }
    Method::from_name(name, m).map_err(|e| CliError::Input(e.to_string()))
}

fn split_list(text: &str) -> impl Iterator<Item = &str> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty())
}

pub fn parse_methods(list: &str, m: usize) -> Result<Vec<Method>, CliError> {
    split_list(list).map(|n| parse_method(n, None, m)).collect()
}

pub fn parse_criteria(list: &str) -> Result<Vec<Criterion>, CliError> {
    split_list(list)
        .map(|c| c.parse().map_err(CliError::Input))
        .collect()
}
