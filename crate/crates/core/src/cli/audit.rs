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

use std::fs::File;
use std::io::{BufWriter, Write};

use super::{election_id, load_election, parse_criteria, parse_methods, AuditArgs, CliError};
use crate::criteria::{
    search_ilvb, search_iwvb, search_party_swaps, CriteriaError, Criterion, RecordJson, SearchParams, ViolationRecord,
};
use crate::methods::Method;
use crate::profile::Election;

/// Findings for one method and criterion.
pub(super) struct Cell {
    pub method: String,
    pub criterion: Criterion,
    pub records: Vec<ViolationRecord>,
    pub party_swaps: Vec<ViolationRecord>,
}

pub(super) struct Audit {
    pub cells: Vec<Cell>,
    /// Methods whose unmodified tabulation was decided by a tie-break.
    pub tied_methods: Vec<String>,
}

pub(super) fn audit_election(
    election: &Election,
    methods: &[Method],
    criteria: &[Criterion],
    params: &SearchParams,
    party_swaps: bool,
) -> Result<Audit, CriteriaError> {
    let mut cells = Vec::new();
    let mut tied_methods = Vec::new();
    for method in methods {
        if method.winners(election)?.tie_flag {
            tied_methods.push(method.tag().to_string());
        }
        for &criterion in criteria {
            let records = match criterion {
                Criterion::Ilvb => search_ilvb(election, method, params)?,
                Criterion::Iwvb => search_iwvb(election, method, params, false)?,
                Criterion::IwvbStar => search_iwvb(election, method, params, true)?,
            };
            let swaps = if party_swaps {
                search_party_swaps(election, method, params, criterion)?
            } else {
                Vec::new()
            };
            cells.push(Cell {
                method: method.tag().to_string(),
                criterion,
                records,
                party_swaps: swaps,
            });
        }
    }
    Ok(Audit { cells, tied_methods })
}

pub(super) fn run(args: &AuditArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let election = load_election(&args.path)?;
    let id = election_id(&args.path);
    let methods = parse_methods(&args.method, election.profile().num_candidates())?;
    let criteria = parse_criteria(&args.criteria)?;
    let params = SearchParams {
        sigma_l: args.sigma_l,
        sigma_w: args.sigma_w,
        discard_tied_results: !args.keep_ties,
        ..SearchParams::default()
    };
    let audit = audit_election(&election, &methods, &criteria, &params, args.party_swaps)?;

    let mut sink: Box<dyn Write + '_> = match &args.out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?,
        )),
        None => Box::new(&mut *out),
    };
    for cell in &audit.cells {
        for r in cell.records.iter().chain(&cell.party_swaps) {
            let line = serde_json::to_string(&RecordJson::from_record(&id, r, election.profile()))
                .map_err(|e| CliError::Input(e.to_string()))?;
            writeln!(sink, "{line}")?;
        }
    }
    sink.flush()?;
    drop(sink);

    writeln!(out, "# {id}: {} seats, {} ballots", election.seats(), election.profile().total_ballots())?;
    for cell in &audit.cells {
        write!(out, "# {} {}: {} violations", cell.criterion, cell.method, cell.records.len())?;
        if args.party_swaps {
            write!(out, ", {} party swaps", cell.party_swaps.len())?;
        }
        writeln!(out)?;
    }
    for m in &audit.tied_methods {
        writeln!(out, "# note: the {m} count was decided by a tie-break")?;
    }
    Ok(())
}
