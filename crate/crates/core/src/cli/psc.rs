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

use super::{load_election, parse_method, parse_scoring_vector, CliError, PscArgs};
use crate::arith::truncated_decimal;
use crate::methods::{TabulationError, CC_MAX_CANDIDATES};
use crate::profile::CandidateSet;
use crate::psc::{enumerate_psc_committees, psc_constraints, qpsc_scoring_rule, solid_coalitions, QuotaMode};

/// Committees listed individually up to this many.
const LIST_LIMIT: usize = 20;

pub(super) fn run(args: &PscArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let election = load_election(&args.path)?;
    let profile = election.profile();
    let mode: QuotaMode = args.q_mode.parse().map_err(CliError::Input)?;
    let q = mode.quota(&election);
    let show = |s: CandidateSet| format!("{{{}}}", profile.names(s.iter()).join(", "));

    writeln!(out, "quota {} ({})", truncated_decimal(&q, 5), args.q_mode)?;
    writeln!(out, "solid coalitions:")?;
    for c in solid_coalitions(profile) {
        writeln!(out, "  {} {}", show(c.supported), c.size)?;
    }
    let constraints = psc_constraints(profile, election.seats(), &q);
    writeln!(out, "constraints: {}", constraints.constraints.len())?;
    for c in &constraints.constraints {
        writeln!(out, "  {} size {} requires {}", show(c.set), c.size, c.required)?;
    }

    match enumerate_psc_committees(&election, &q) {
        Ok(committees) => {
            writeln!(out, "compatible committees: {}", committees.len())?;
            if committees.len() <= LIST_LIMIT {
                for c in &committees {
                    writeln!(out, "  {}", show(*c))?;
                }
            }
        }
        Err(TabulationError::EnumerationGuard { .. }) if args.sv.is_none() => {
            writeln!(out, "compatible committees: not enumerated (more than {CC_MAX_CANDIDATES} candidates)")?;
        }
        Err(e) => return Err(e.into()),
    }

    if let Some(sv) = &args.sv {
        let sv = parse_scoring_vector(sv)?;
        let w = qpsc_scoring_rule(&election, &q, &sv)?;
        writeln!(out, "q-PSC scoring winners: {}", profile.names(w.members().iter().copied()).join(", "))?;
        if w.tie_flag {
            writeln!(out, "note: several compatible committees share the top score")?;
        }
    }

    if let Some(name) = &args.audit {
        let method = parse_method(name, None, profile.num_candidates())?;
        let winners = method.winners(&election)?;
        let violated: Vec<_> = constraints
            .constraints
            .iter()
            .filter(|c| winners.set().intersection(c.set).len() < c.required)
            .collect();
        writeln!(
            out,
            "{} winners {}: {} violated constraints",
            method.tag(),
            show(winners.set()),
            violated.len()
        )?;
        for c in violated {
            writeln!(out, "  {} size {} requires {}", show(c.set), c.size, c.required)?;
        }
    }
    Ok(())
}
