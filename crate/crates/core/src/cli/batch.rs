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

//! Corpus audits.
//!
//! Each election's findings are written to `elections/<id>.json` as soon as
//! they are known, so an interrupted run resumes where it stopped. The
//! aggregate files are rebuilt from those per-election results in sorted id
//! order, which makes them independent of the worker count.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::audit::audit_election;
use super::{election_id, load_election, parse_criteria, BatchArgs, CliError};
use crate::criteria::{verify, Criterion, RecordJson, SearchParams};
use crate::methods::Method;
use crate::psc::{psc_constraints, QuotaMode};

/// Report columns, in order.
const METHOD_COLUMNS: [(&str, &str); 5] = [
    ("scottish", "scottish"),
    ("meek", "meek"),
    ("ear", "ear"),
    ("cc-om", "cc_om"),
    ("cc-pm", "cc_pm"),
];

#[derive(Clone, Debug, PartialEq)]
pub struct BatchConfig {
    pub methods: Vec<String>,
    pub criteria: Vec<Criterion>,
    pub sigma_l: u64,
    pub sigma_w: u64,
    pub party_swaps: bool,
    pub keep_ties: bool,
    pub workers: Option<usize>,
    pub q_mode: QuotaMode,
}

impl Default for BatchConfig {
    fn default() -> Self {
        BatchConfig {
            methods: METHOD_COLUMNS.iter().map(|(m, _)| m.to_string()).collect(),
            criteria: Criterion::ALL.to_vec(),
            sigma_l: 10,
            sigma_w: 3,
            party_swaps: true,
            keep_ties: false,
            workers: None,
            q_mode: QuotaMode::Hare,
        }
    }
}

impl BatchConfig {
    /// Parses `key = value` lines. Blank lines and `#` comments are ignored;
    /// missing keys keep their defaults.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut config = BatchConfig::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |why: String| CliError::Input(format!("config line {}: {why}", n + 1));
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| bad(format!("expected key=value, got {line:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            let flag = |v: &str| match v.to_ascii_lowercase().as_str() {
                "true" | "yes" | "1" => Ok(true),
                "false" | "no" | "0" => Ok(false),
                _ => Err(bad(format!("{key} must be true or false"))),
            };
            let number = |v: &str| v.parse::<u64>().map_err(|_| bad(format!("{key} must be an integer")));
            match key {
                "methods" => {
                    config.methods = value
                        .split(',')
                        .map(|m| m.parse::<Method>().map(|m| m.tag().to_string()))
                        .collect::<Result<_, _>>()
                        .map_err(|e| bad(e.to_string()))?;
                }
                "criteria" => config.criteria = parse_criteria(value).map_err(|e| bad(e.to_string()))?,
                "sigma_l" => config.sigma_l = number(value)?,
                "sigma_w" => config.sigma_w = number(value)?,
                "party_swaps" => config.party_swaps = flag(value)?,
                "keep_ties" => config.keep_ties = flag(value)?,
                "workers" => config.workers = Some(number(value)? as usize),
                "q_mode" => config.q_mode = value.parse().map_err(bad)?,
                other => return Err(bad(format!("unknown key {other:?}"))),
            }
        }
        if config.sigma_l == 0 || config.sigma_w == 0 {
            return Err(CliError::Input("sigma_l and sigma_w must be at least 1".into()));
        }
        Ok(config)
    }

    fn params(&self) -> SearchParams {
        SearchParams {
            sigma_l: self.sigma_l,
            sigma_w: self.sigma_w,
            discard_tied_results: !self.keep_ties,
            ..SearchParams::default()
        }
    }

    /// Identifies the settings that affect per-election results.
    fn fingerprint(&self) -> String {
        let criteria: Vec<&str> = self.criteria.iter().map(|c| c.tag()).collect();
        format!(
            "methods={};criteria={};sigma_l={};sigma_w={};party_swaps={};keep_ties={};q_mode={:?}",
            self.methods.join(","),
            criteria.join(","),
            self.sigma_l,
            self.sigma_w,
            self.party_swaps,
            self.keep_ties,
            self.q_mode
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchRow {
    pub election_id: String,
    pub method: String,
    pub criterion: String,
    pub violations: usize,
    pub party_swaps: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct ElectionResult {
    election_id: String,
    file: String,
    fingerprint: String,
    rows: Vec<BatchRow>,
    tied_methods: Vec<String>,
    /// Constraints violated at the configured PSC quota, per method.
    psc_violations: BTreeMap<String, usize>,
    records: Vec<RecordJson>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct BatchReport {
    pub elections: usize,
    pub rows: Vec<BatchRow>,
    /// `(election id, method)` pairs whose unmodified count needed a tie-break.
    pub tied: Vec<(String, String)>,
    /// `(file, message)` for every file that could not be audited.
    pub errors: Vec<(String, String)>,
    pub records_checked: usize,
}

impl BatchReport {
    /// Violations (or party swaps) summed over the rows for one criterion and
    /// method.
    pub fn cell(&self, criterion: &str, method: &str, party_swaps: bool) -> usize {
        self.rows
            .iter()
            .filter(|r| r.criterion == criterion && r.method == method)
            .map(|r| if party_swaps { r.party_swaps } else { r.violations })
            .sum()
    }

    /// Criterion by method grid with one row per criterion, then party-swap
    /// rows when `party_swaps` is set.
    pub fn grid_csv(&self, config: &BatchConfig) -> String {
        let mut out = String::from("criterion");
        for (_, column) in METHOD_COLUMNS {
            out.push(',');
            out.push_str(column);
        }
        out.push('\n');
        let mut lines = |suffix: &str, swaps: bool| {
            for c in &config.criteria {
                out.push_str(c.tag());
                out.push_str(suffix);
                for (method, _) in METHOD_COLUMNS {
                    out.push(',');
                    if config.methods.iter().any(|m| m == method) {
                        let _ = write!(out, "{}", self.cell(c.tag(), method, swaps));
                    }
                }
                out.push('\n');
            }
        };
        lines("", false);
        if config.party_swaps {
            lines("_PARTY_SWAP", true);
        }
        out
    }
}

fn election_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let entries = fs::read_dir(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.is_file()
                && p.extension()
                    .is_some_and(|e| e.eq_ignore_ascii_case("blt") || e.eq_ignore_ascii_case("csv"))
        })
        .collect();
    files.sort();
    Ok(files)
}

fn audit_file(path: &Path, config: &BatchConfig) -> Result<ElectionResult, CliError> {
    let election = load_election(path)?;
    let id = election_id(path);
    let methods: Vec<Method> = config
        .methods
        .iter()
        .map(|m| m.parse().map_err(|e: crate::methods::UnknownMethod| CliError::Input(e.to_string())))
        .collect::<Result<_, _>>()?;
    let audit = audit_election(&election, &methods, &config.criteria, &config.params(), config.party_swaps)?;
    let profile = election.profile();
    let q = config.q_mode.quota(&election);
    let constraints = psc_constraints(profile, election.seats(), &q);
    let mut psc_violations = BTreeMap::new();
    for method in &methods {
        let winners = method.winners(&election)?.set();
        let n = constraints
            .constraints
            .iter()
            .filter(|c| winners.intersection(c.set).len() < c.required)
            .count();
        psc_violations.insert(method.tag().to_string(), n);
    }
    let mut records = Vec::new();
    let mut rows = Vec::new();
    for cell in &audit.cells {
        rows.push(BatchRow {
            election_id: id.clone(),
            method: cell.method.clone(),
            criterion: cell.criterion.tag().to_string(),
            violations: cell.records.len(),
            party_swaps: cell.party_swaps.len(),
        });
        for r in cell.records.iter().chain(&cell.party_swaps) {
            records.push(RecordJson::from_record(&id, r, profile));
        }
    }
    Ok(ElectionResult {
        election_id: id,
        file: path.display().to_string(),
        fingerprint: config.fingerprint(),
        rows,
        tied_methods: audit.tied_methods,
        psc_violations,
        records,
    })
}

fn load_previous(path: &Path, fingerprint: &str) -> Option<ElectionResult> {
    let text = fs::read_to_string(path).ok()?;
    let result: ElectionResult = serde_json::from_str(&text).ok()?;
    (result.fingerprint == fingerprint).then_some(result)
}

fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let tmp = path.with_extension("tmp");
    let io = |e: std::io::Error| CliError::Input(format!("{}: {e}", path.display()));
    fs::write(&tmp, contents).map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

/// Re-verifies every hundredth record (at least one) from scratch.
fn spot_check(results: &[ElectionResult]) -> Result<(usize, Vec<String>), CliError> {
    let all: Vec<(&ElectionResult, &RecordJson)> =
        results.iter().flat_map(|r| r.records.iter().map(move |j| (r, j))).collect();
    let mut checked = 0;
    let mut failures = Vec::new();
    for (i, (result, json)) in all.iter().enumerate() {
        if i % 100 != 0 {
            continue;
        }
        checked += 1;
        let election = load_election(Path::new(&result.file))?;
        let method: Method = json
            .method
            .parse()
            .map_err(|e: crate::methods::UnknownMethod| CliError::Input(e.to_string()))?;
        let record = json.to_record(election.profile())?;
        if !verify(&election, &method, &record)? {
            failures.push(format!("{} {} {}", json.election_id, json.criterion, json.method));
        }
    }
    Ok((checked, failures))
}

pub fn run_batch(
    dir: &Path,
    out_dir: &Path,
    config: &BatchConfig,
    workers: Option<usize>,
) -> Result<BatchReport, CliError> {
    let files = election_files(dir)?;
    let elections_dir = out_dir.join("elections");
    fs::create_dir_all(&elections_dir).map_err(|e| CliError::Input(format!("{}: {e}", out_dir.display())))?;
    let fingerprint = config.fingerprint();

    let mut seen = HashSet::new();
    let mut errors = Vec::new();
    let mut jobs = Vec::new();
    for f in files {
        let id = election_id(&f);
        if seen.insert(id.clone()) {
            jobs.push((id, f));
        } else {
            errors.push((f.display().to_string(), format!("duplicate election id {id:?}")));
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.or(config.workers).unwrap_or(0))
        .build()
        .map_err(|e| CliError::Computation(e.to_string()))?;
    let outcomes: Vec<(String, Result<ElectionResult, CliError>)> = pool.install(|| {
        jobs.par_iter()
            .map(|(id, path)| {
                let cached = elections_dir.join(format!("{id}.json"));
                if let Some(previous) = load_previous(&cached, &fingerprint) {
                    return (path.display().to_string(), Ok(previous));
                }
                let result = audit_file(path, config).and_then(|r| {
                    let json = serde_json::to_string_pretty(&r).map_err(|e| CliError::Input(e.to_string()))?;
                    write_atomic(&cached, &json)?;
                    Ok(r)
                });
                (path.display().to_string(), result)
            })
            .collect()
    });

    let mut results = Vec::new();
    for (file, outcome) in outcomes {
        match outcome {
            Ok(r) => results.push(r),
            Err(e) => errors.push((file, e.to_string())),
        }
    }

    let (records_checked, failures) = spot_check(&results)?;
    let report = BatchReport {
        elections: results.len(),
        rows: results.iter().flat_map(|r| r.rows.iter().cloned()).collect(),
        tied: results
            .iter()
            .flat_map(|r| r.tied_methods.iter().map(move |m| (r.election_id.clone(), m.clone())))
            .collect(),
        errors,
        records_checked,
    };
    write_outputs(out_dir, config, &report, &results)?;
    if !failures.is_empty() {
        return Err(CliError::Computation(format!(
            "{} sampled records failed to re-verify: {}",
            failures.len(),
            failures.join("; ")
        )));
    }
    Ok(report)
}

fn write_outputs(
    out_dir: &Path,
    config: &BatchConfig,
    report: &BatchReport,
    results: &[ElectionResult],
) -> Result<(), CliError> {
    let json_err = |e: serde_json::Error| CliError::Input(e.to_string());
    write_atomic(&out_dir.join("report.csv"), &report.grid_csv(config))?;

    let mut rows = String::from("election_id,method,criterion,violations,party_swaps\n");
    for r in &report.rows {
        let _ = writeln!(rows, "{},{},{},{},{}", r.election_id, r.method, r.criterion, r.violations, r.party_swaps);
    }
    write_atomic(&out_dir.join("elections.csv"), &rows)?;

    let mut ties = String::from("election_id,method\n");
    for (e, m) in &report.tied {
        let _ = writeln!(ties, "{e},{m}");
    }
    write_atomic(&out_dir.join("ties.csv"), &ties)?;

    let mut psc = String::from("election_id,method,violated_constraints\n");
    for r in results {
        for (m, n) in &r.psc_violations {
            let _ = writeln!(psc, "{},{m},{n}", r.election_id);
        }
    }
    write_atomic(&out_dir.join("psc.csv"), &psc)?;

    let mut lines = String::new();
    for r in results {
        for rec in &r.records {
            lines.push_str(&serde_json::to_string(rec).map_err(json_err)?);
            lines.push('\n');
        }
    }
    write_atomic(&out_dir.join("records.jsonl"), &lines)?;

    let mut errors = String::new();
    for (f, e) in &report.errors {
        let _ = writeln!(errors, "{f}: {e}");
    }
    write_atomic(&out_dir.join("errors.txt"), &errors)?;
    write_atomic(
        &out_dir.join("report.json"),
        &serde_json::to_string_pretty(report).map_err(json_err)?,
    )
}

pub(super) fn run(args: &BatchArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let config = match &args.config {
        Some(path) => BatchConfig::parse(
            &fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?,
        )?,
        None => BatchConfig::default(),
    };
    let report = run_batch(&args.dir, &args.out, &config, args.workers)?;
    writeln!(out, "{} elections audited, {} errors", report.elections, report.errors.len())?;
    for (f, e) in &report.errors {
        writeln!(out, "error: {f}: {e}")?;
    }
    write!(out, "{}", report.grid_csv(&config))?;
    if !report.tied.is_empty() {
        writeln!(out, "tie-broken counts:")?;
        for (e, m) in &report.tied {
            writeln!(out, "  {e} ({m})")?;
        }
    }
    writeln!(out, "spot check: {} records re-verified", report.records_checked)?;
    writeln!(out, "results in {}", args.out.display())?;
    Ok(())
}
