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

#![allow(dead_code)]

use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::Rng;
use voterbloc::profile::{parse_blt, BallotSelection, Candidate, CandidateSet, Election, PreferenceProfile};

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

pub fn fixture(name: &str) -> Election {
    let text = std::fs::read_to_string(data_path(name)).expect("fixture readable");
    parse_blt(&text).expect("fixture parses")
}

pub fn election(m: usize, k: usize, ballots: Vec<(Vec<usize>, u64)>) -> Election {
    let roster = (0..m).map(|i| Candidate::independent(i, format!("c{i}"))).collect();
    Election::new(PreferenceProfile::new(roster, ballots).unwrap(), k, "random").unwrap()
}

/// A random election with `m` in `ms`, at most `max_types` ballot types and
/// at most `max_voters` voters in total.
pub fn random_election(
    rng: &mut impl Rng,
    ms: std::ops::RangeInclusive<usize>,
    max_k: usize,
    max_types: usize,
    max_voters: u64,
) -> Election {
    let m = rng.gen_range(ms);
    let k = rng.gen_range(1..=max_k.min(m - 1));
    let types = rng.gen_range(1..=max_types);
    let mut left = max_voters;
    let mut ballots = Vec::new();
    for _ in 0..types {
        if left == 0 {
            break;
        }
        let mut order: Vec<usize> = (0..m).collect();
        order.shuffle(rng);
        order.truncate(rng.gen_range(1..=m));
        let n = rng.gen_range(1..=left.min(max_voters / types as u64).max(1));
        left -= n;
        ballots.push((order, n));
    }
    election(m, k, ballots)
}

/// Ballot types whose ranked candidates lie inside `allowed`, as
/// `(type index, multiplicity)`.
pub fn pool(e: &Election, allowed: CandidateSet) -> Vec<(usize, u64)> {
    e.profile()
        .ballots()
        .iter()
        .enumerate()
        .filter(|(_, b)| b.ranked().is_subset(allowed))
        .map(|(i, b)| (i, b.multiplicity()))
        .collect()
}

pub fn budget(pool: &[(usize, u64)]) -> u128 {
    pool.iter().fold(1u128, |acc, &(_, n)| acc.saturating_mul(n as u128 + 1))
}

/// Calls `f` on every non-empty removal drawn from `pool`.
pub fn for_each_removal(pool: &[(usize, u64)], mut f: impl FnMut(&BallotSelection)) {
    let mut counts = vec![0u64; pool.len()];
    while let Some(pos) = counts.iter().zip(pool).position(|(&c, &(_, n))| c < n) {
        counts[pos] += 1;
        counts[..pos].iter_mut().for_each(|c| *c = 0);
        f(&BallotSelection::from_entries(pool.iter().zip(&counts).map(|(&(i, _), &c)| (i, c))));
    }
}

/// Ballot types ranking only a non-empty proper subset of `winners`.
pub fn proper_subset_pool(e: &Election, winners: CandidateSet) -> Vec<(usize, u64)> {
    pool(e, winners)
        .into_iter()
        .filter(|&(i, _)| e.profile().ballots()[i].ranked() != winners)
        .collect()
}
