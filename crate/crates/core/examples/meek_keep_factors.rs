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

// Meek STV keep factors and the falling quota, round by round.

use voterbloc::arith::truncated_decimal;
use voterbloc::methods::{meek_stv, MeekParams};
use voterbloc::worstcase::{generate, Family};

pub fn run_example() {
    let g = generate(&Family::StvIwvbStar { a: 1000, b: 20, c: None }, 3).unwrap();
    let after = g.modified();
    let profile = after.profile();
    let (winners, log) = meek_stv(&after, &MeekParams::default()).unwrap();
    for (i, round) in log.rounds.iter().enumerate() {
        let keep: Vec<String> = round
            .keep_factors
            .iter()
            .flatten()
            .zip(profile.candidates())
            .map(|(k, c)| format!("{}={}", c.name, truncated_decimal(k, 4)))
            .collect();
        println!(
            "r{} quota {} [{}] {} iterations",
            i + 1,
            truncated_decimal(&round.quota, 4),
            keep.join(" "),
            round.iterations
        );
    }
    println!("winners {}", profile.names(winners.members().iter().copied()).join(", "));
}

#[allow(dead_code)]
fn main() {
    run_example();
}
