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

// Heuristic search for loser-bloc removals that change a Scottish STV result.

use voterbloc::criteria::{search_ilvb, SearchParams};
use voterbloc::methods::Method;
use voterbloc::profile::parse_blt;

pub fn run_example() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/ea2012_ward5.blt");
    let election = parse_blt(&std::fs::read_to_string(path).unwrap()).unwrap();
    let profile = election.profile();
    let records = search_ilvb(&election, &Method::Scottish, &SearchParams::default()).unwrap();
    println!("{} ILVB violations", records.len());
    for r in &records {
        let removed: Vec<String> = r
            .removed
            .entries()
            .map(|(i, n)| format!("{n} x {}", profile.names(profile.ballots()[i].ranking().iter().copied()).join(">")))
            .collect();
        println!(
            "remove {}: {} -> {}",
            removed.join(", "),
            profile.names(r.original_winners.members().iter().copied()).join(", "),
            profile.names(r.modified_winners.members().iter().copied()).join(", ")
        );
    }
}

#[allow(dead_code)]
fn main() {
    run_example();
}
