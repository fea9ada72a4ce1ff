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

// Scottish STV count of a reconstructed ward, printed round by round.

use voterbloc::arith::truncated_decimal;
use voterbloc::methods::scottish_stv;
use voterbloc::profile::parse_blt;

pub fn run_example() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/ea2012_ward5.blt");
    let election = parse_blt(&std::fs::read_to_string(path).unwrap()).unwrap();
    let profile = election.profile();
    let (winners, log) = scottish_stv(&election);

    println!("{}: {} seats", election.title(), election.seats());
    println!("quota {}", truncated_decimal(&log.rounds[0].quota, 0));
    for c in 0..profile.num_candidates() {
        let series: Vec<String> = log.series(c).iter().map(|v| truncated_decimal(v, 1)).collect();
        println!("{:<8} {}", profile.candidate(c).name, series.join("  "));
    }
    println!("winners: {}", profile.names(winners.members().iter().copied()).join(", "));
}

#[allow(dead_code)]
fn main() {
    run_example();
}
