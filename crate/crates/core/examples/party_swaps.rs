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

// Violations that move a seat from one party to another.

use voterbloc::criteria::{party_seats, search_party_swaps, Criterion, SearchParams};
use voterbloc::methods::Method;
use voterbloc::profile::parse_blt;

pub fn run_example() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/ea2012_ward5.blt");
    let election = parse_blt(&std::fs::read_to_string(path).unwrap()).unwrap();
    let params = SearchParams::default();
    let records = search_party_swaps(&election, &Method::Scottish, &params, Criterion::Ilvb).unwrap();
    println!("{} ILVB party swaps", records.len());
    if let Some(r) = records.first() {
        let mut before: Vec<_> = party_seats(&election, &r.original_winners).into_iter().collect();
        let mut after: Vec<_> = party_seats(&election, &r.modified_winners).into_iter().collect();
        before.sort();
        after.sort();
        println!("seats before {before:?}");
        println!("seats after  {after:?}");
    }
}

#[allow(dead_code)]
fn main() {
    run_example();
}
