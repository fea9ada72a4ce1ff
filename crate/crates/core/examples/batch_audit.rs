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

// Auditing a directory of elections and printing the violation grid.

use voterbloc::cli::{run_batch, BatchConfig};

pub fn run_example() {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let work = tempfile::tempdir().unwrap();
    let input = work.path().join("wards");
    std::fs::create_dir(&input).unwrap();
    for name in ["ea2012_ward5.blt", "na2022_ward8.blt"] {
        std::fs::copy(format!("{data}/{name}"), input.join(name)).unwrap();
    }
    let config = BatchConfig {
        methods: vec!["scottish".into(), "cc-om".into()],
        ..BatchConfig::default()
    };
    let report = run_batch(&input, &work.path().join("out"), &config, Some(2)).unwrap();
    print!("{}", report.grid_csv(&config));
    println!("{} elections, {} records checked", report.elections, report.records_checked);
}

#[allow(dead_code)]
fn main() {
    run_example();
}
