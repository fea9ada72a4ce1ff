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

// Exhaustive loser-only removals compared with the heuristic search on a
// small worst-case profile.

use voterbloc::criteria::{loser_only_budget, oracle_ilvb, search_ilvb, SearchParams};
use voterbloc::methods::Method;
use voterbloc::worstcase::{generate, Family};

pub fn run_example() {
    let g = generate(&Family::StvIlvb, 1).unwrap();
    let method = Method::Scottish;
    let budget = loser_only_budget(&g.election, &method).unwrap();
    let oracle = oracle_ilvb(&g.election, &method, 100_000).unwrap();
    let heuristic = search_ilvb(&g.election, &method, &SearchParams::default()).unwrap();
    println!("{budget} loser-only removals checked");
    println!("oracle found {}, heuristic found {}", oracle.len(), heuristic.len());
    for r in &heuristic {
        assert!(oracle.iter().any(|o| o.removed == r.removed));
    }
}

#[allow(dead_code)]
fn main() {
    run_example();
}
