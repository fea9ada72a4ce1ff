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

// Chamberlin-Courant scores for every committee of a small election under
// both treatments of unranked candidates.

use voterbloc::methods::{cc, CcModel};
use voterbloc::profile::{Candidate, Election, PreferenceProfile};

pub fn run_example() {
    let roster = ["A", "B", "C", "D"].iter().enumerate().map(|(i, n)| Candidate::independent(i, *n)).collect();
    let ballots = vec![(vec![0, 1], 5), (vec![1, 2, 3], 4), (vec![2], 3), (vec![3, 0], 2)];
    let election = Election::new(PreferenceProfile::new(roster, ballots).unwrap(), 2, "cc demo").unwrap();
    let profile = election.profile();
    for model in [CcModel::Optimistic, CcModel::Pessimistic] {
        let outcome = cc(&election, model).unwrap();
        println!("{model:?}: best score {}", outcome.best_score());
        for (committee, score) in &outcome.scores {
            let mark = if *committee == outcome.winners.set() { " *" } else { "" };
            println!("  {{{}}} {score}{mark}", profile.names(committee.iter()).join(","));
        }
    }
}

#[allow(dead_code)]
fn main() {
    run_example();
}
