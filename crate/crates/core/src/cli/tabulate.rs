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

use std::io::Write;

use super::{load_election, parse_method, CliError, TabulateArgs};
use crate::arith::truncated_decimal;
use crate::methods::{cc_score, positional_scores, Method, RoundLogReport};
use crate::profile::Election;

pub(super) fn run(args: &TabulateArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let election = load_election(&args.path)?;
    let profile = election.profile();
    let method = parse_method(&args.method, args.sv.as_deref(), profile.num_candidates())?;
    let (winners, log) = method.tabulate(&election)?;
    let report = log.unwrap_or_default().report(method.tag(), &winners, profile);
    if args.json {
        serde_json::to_writer_pretty(&mut *out, &report).map_err(|e| CliError::Input(e.to_string()))?;
        writeln!(out)?;
        return Ok(());
    }
    writeln!(out, "{}", election.title())?;
    writeln!(
        out,
        "method {}, {} seats, {} candidates, {} ballots",
        method.tag(),
        election.seats(),
        profile.num_candidates(),
        profile.total_ballots()
    )?;
    if !report.rounds.is_empty() {
        render_rounds(&report, &election, out)?;
    }
    match &method {
        Method::Cc(model) => {
            writeln!(out, "committee score {}", cc_score(profile, winners.set(), *model))?;
        }
        Method::Positional(sv) => {
            let scores = positional_scores(profile, sv);
            for (c, s) in scores.iter().enumerate() {
                writeln!(out, "  {:<24} {}", profile.candidate(c).name, truncated_decimal(s, 5))?;
            }
        }
        _ => {}
    }
    writeln!(out, "winners: {}", report.winners.join(", "))?;
    if winners.tie_flag {
        writeln!(out, "note: a tie-break decided the committee")?;
    }
    Ok(())
}

fn render_rounds(report: &RoundLogReport, election: &Election, out: &mut dyn Write) -> Result<(), CliError> {
    let profile = election.profile();
    let quotas: Vec<&str> = report.quota_trace.iter().map(String::as_str).collect();
    if quotas.windows(2).all(|w| w[0] == w[1]) {
        writeln!(out, "quota {}", quotas[0])?;
    } else {
        writeln!(out, "quota by round: {}", quotas.join(", "))?;
    }
    let label = |c: usize| format!("{} ({})", profile.candidate(c).name, profile.candidate(c).party);
    let width = (0..profile.num_candidates()).map(|c| label(c).len()).max().unwrap_or(0).max(9);
    write!(out, "{:<width$}", "")?;
    for r in &report.rounds {
        write!(out, " {:>14}", format!("r{}", r.round))?;
    }
    writeln!(out)?;
    for c in 0..profile.num_candidates() {
        write!(out, "{:<width$}", label(c))?;
        for r in &report.rounds {
            let v = &r.votes[c];
            let mark = match v.event.as_deref() {
                Some("elected") | Some("elected-remaining") => "*",
                Some("eliminated") => "x",
                _ => " ",
            };
            write!(out, " {:>13}{mark}", v.votes)?;
        }
        writeln!(out)?;
    }
    write!(out, "{:<width$}", "exhausted")?;
    for r in &report.rounds {
        write!(out, " {:>13} ", r.exhausted)?;
    }
    writeln!(out)?;
    for r in &report.rounds {
        let subject = r.subject.as_deref().map(|s| format!(" {s}")).unwrap_or_default();
        writeln!(out, "r{}: {}{subject}", r.round, r.action)?;
    }
    writeln!(out, "* elected, x eliminated")?;
    Ok(())
}
