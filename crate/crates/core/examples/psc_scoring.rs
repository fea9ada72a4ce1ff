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

// Solid coalitions, PSC constraints and the q-PSC scoring rule.

use voterbloc::arith::{int, ratio, truncated_decimal};
use voterbloc::methods::ScoringVector;
use voterbloc::profile::parse_blt;
use voterbloc::psc::{droop_quota, enumerate_psc_committees, psc_constraints, qpsc_scoring_rule, solid_coalitions};

pub fn run_example() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/qpsc_left.blt");
    let election = parse_blt(&std::fs::read_to_string(path).unwrap()).unwrap();
    let profile = election.profile();
    let q = droop_quota(&election);
    println!("quota {}", truncated_decimal(&q, 3));
    for s in solid_coalitions(profile) {
        println!("coalition {{{}}} size {}", profile.names(s.supported.iter()).join(","), s.size);
    }
    for c in psc_constraints(profile, election.seats(), &q).constraints {
        println!("{{{}}} needs {}", profile.names(c.set.iter()).join(","), c.required);
    }
    for committee in enumerate_psc_committees(&election, &q).unwrap() {
        println!("compatible {{{}}}", profile.names(committee.iter()).join(","));
    }
    let sv = ScoringVector::new(vec![int(1), ratio(1, 100)]).unwrap();
    let w = qpsc_scoring_rule(&election, &q, &sv).unwrap();
    println!("winners {}", profile.names(w.members().iter().copied()).join(", "));
}

#[allow(dead_code)]
fn main() {
    run_example();
}
