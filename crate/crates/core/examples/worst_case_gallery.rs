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

// Every worst-case construction at its smallest seat count, with the
// committees before and after the removal.

use voterbloc::worstcase::{generate, Family};

pub fn run_example() {
    for family in Family::all_defaults() {
        let k = *family.seat_range().start();
        let g = generate(&family, k).unwrap();
        let profile = g.election.profile();
        let after = g.modified();
        for method in family.methods() {
            let w0 = method.winners(&g.election).unwrap();
            let w1 = method.winners(&after).unwrap();
            println!(
                "{family} k={k} {method}: {} -> {} ({}, {} ballots removed)",
                profile.names(w0.members().iter().copied()).join(","),
                profile.names(w1.members().iter().copied()).join(","),
                family.criterion(),
                g.removal.total()
            );
        }
    }
}

#[allow(dead_code)]
fn main() {
    run_example();
}
