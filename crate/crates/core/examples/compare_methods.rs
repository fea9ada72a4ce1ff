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

// The same ward under every rule in the library.

use voterbloc::methods::{CcModel, Method, ScoringVector};
use voterbloc::profile::parse_blt;

pub fn run_example() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/na2022_ward8.blt");
    let election = parse_blt(&std::fs::read_to_string(path).unwrap()).unwrap();
    let profile = election.profile();
    let m = profile.num_candidates();
    let methods = [
        Method::Scottish,
        Method::meek(),
        Method::Ear,
        Method::Cc(CcModel::Optimistic),
        Method::Cc(CcModel::Pessimistic),
        Method::Positional(ScoringVector::borda(m)),
        Method::Positional(ScoringVector::plurality()),
    ];
    for method in &methods {
        let w = method.winners(&election).unwrap();
        let tie = if w.tie_flag { " (tie-broken)" } else { "" };
        println!("{:<12} {}{tie}", method.to_string(), profile.names(w.members().iter().copied()).join(", "));
    }
}

#[allow(dead_code)]
fn main() {
    run_example();
}
