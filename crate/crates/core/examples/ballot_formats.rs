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

// Reading a BLT file and writing it back as BLT and CSV.

use voterbloc::profile::{parse_blt, parse_csv, to_blt, to_csv};

pub fn run_example() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/qpsc_right.blt");
    let election = parse_blt(&std::fs::read_to_string(path).unwrap()).unwrap();
    let csv = to_csv(&election);
    print!("{csv}");
    let back = parse_csv(&csv).unwrap();
    assert_eq!(back.profile(), election.profile());
    assert_eq!(parse_blt(&to_blt(&back)).unwrap().profile(), election.profile());
    println!("{} ballots survive both round trips", back.profile().total_ballots());
}

#[allow(dead_code)]
fn main() {
    run_example();
}
