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

// Winner-bloc searches: a winner's own supporters dropping out costs a
// different winner the seat.

use voterbloc::criteria::{search_iwvb, SearchParams};
use voterbloc::methods::Method;
use voterbloc::profile::parse_blt;

pub fn run_example() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/na2022_ward8.blt");
    let election = parse_blt(&std::fs::read_to_string(path).unwrap()).unwrap();
    let profile = election.profile();
    let params = SearchParams::default();
    for star in [false, true] {
        let records = search_iwvb(&election, &Method::Scottish, &params, star).unwrap();
        println!("{} {} violations", if star { "IWVB*" } else { "IWVB" }, records.len());
        for r in &records {
            let displaced = r.displaced_winner.map(|c| profile.candidate(c).name.clone());
            println!(
                "  {} ballots removed, {} -> {}, displaced {}",
                r.removed.total(),
                profile.names(r.original_winners.members().iter().copied()).join(", "),
                profile.names(r.modified_winners.members().iter().copied()).join(", "),
                displaced.unwrap_or_else(|| "-".into())
            );
        }
    }
}

#[allow(dead_code)]
fn main() {
    run_example();
}
