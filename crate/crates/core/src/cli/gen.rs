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

use std::fs;
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{CliError, GenArgs};
use crate::criteria::RemovedBallots;
use crate::profile::to_blt;
use crate::worstcase::{generate, Family};

/// What a generated profile is expected to do, written next to its BLT file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub family: String,
    pub k: usize,
    pub criterion: String,
    pub methods: Vec<String>,
    pub winners_before: Vec<String>,
    pub winners_after: Vec<String>,
    pub removal: Vec<RemovedBallots>,
}

fn family_from_args(args: &GenArgs) -> Result<Family, CliError> {
    let family: Family = args.family.parse().map_err(|e: crate::worstcase::GeneratorError| {
        CliError::Input(e.to_string())
    })?;
    Ok(match family {
        Family::StvIwvbStar { a, b, c } => Family::StvIwvbStar {
            a: args.a.unwrap_or(a),
            b: args.b.unwrap_or(b),
            c: args.c.or(c),
        },
        Family::EarIwvbStar { a } => Family::EarIwvbStar { a: args.a.unwrap_or(a) },
        other => {
            if args.a.is_some() || args.b.is_some() || args.c.is_some() {
                return Err(CliError::Input(format!("{other} takes no --a, --b or --c")));
            }
            other
        }
    })
}

pub(super) fn run(args: &GenArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let family = family_from_args(args)?;
    let g = generate(&family, args.k).map_err(|e| CliError::Input(e.to_string()))?;
    let profile = g.election.profile();
    let manifest = Manifest {
        family: family.name().to_string(),
        k: args.k,
        criterion: family.criterion().tag().to_string(),
        methods: family.methods().iter().map(|m| m.tag().to_string()).collect(),
        winners_before: profile.names(g.before.iter().copied()),
        winners_after: profile.names(g.after.iter().copied()),
        removal: g
            .removal
            .entries()
            .map(|(i, count)| RemovedBallots {
                ranking: profile.names(profile.ballots()[i].ranking().iter().copied()),
                count,
            })
            .collect(),
    };
    let io = |e: std::io::Error| CliError::Input(format!("{}: {e}", args.out.display()));
    fs::create_dir_all(&args.out).map_err(io)?;
    let stem = format!("{}_k{}", family.name(), args.k);
    let blt = args.out.join(format!("{stem}.blt"));
    let json = args.out.join(format!("{stem}.manifest.json"));
    fs::write(&blt, to_blt(&g.election)).map_err(io)?;
    let text = serde_json::to_string_pretty(&manifest).map_err(|e| CliError::Input(e.to_string()))?;
    fs::write(&json, text + "\n").map_err(io)?;
    writeln!(out, "wrote {}", blt.display())?;
    writeln!(out, "wrote {}", json.display())?;
    writeln!(
        out,
        "{}: {} -> {}",
        manifest.criterion,
        manifest.winners_before.join(", "),
        manifest.winners_after.join(", ")
    )?;
    Ok(())
}
