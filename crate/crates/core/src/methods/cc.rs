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

//! Chamberlin-Courant by exhaustive enumeration.
//!
//! A ballot awards `m - r` points to the committee, where `r` is the rank of
//! its favourite committee member. A truncated ballot ranking `t` candidates,
//! none on the committee, awards `m - t - 1` points under the optimistic
//! model and nothing under the pessimistic one. Scores are integers.

use std::str::FromStr;

use super::{TabulationError, WinnerSet};
use crate::profile::{CandidateSet, Election, PreferenceProfile};

pub const CC_MAX_CANDIDATES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CcModel {
    Optimistic,
    Pessimistic,
}

impl FromStr for CcModel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "om" | "optimistic" => Ok(CcModel::Optimistic),
            "pm" | "pessimistic" => Ok(CcModel::Pessimistic),
            other => Err(format!("unknown CC model {other:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CcOutcome {
    pub winners: WinnerSet,
    /// Every size-`k` committee with its score, in lexicographic order.
    pub scores: Vec<(CandidateSet, i64)>,
}

impl CcOutcome {
    pub fn best_score(&self) -> i64 {
        self.scores.iter().map(|&(_, s)| s).max().unwrap_or(0)
    }

    pub fn score_of(&self, committee: CandidateSet) -> Option<i64> {
        self.scores.iter().find(|(c, _)| *c == committee).map(|&(_, s)| s)
    }
}

pub fn cc_score(profile: &PreferenceProfile, committee: CandidateSet, model: CcModel) -> i64 {
    assert!(!committee.is_empty(), "committee must be non-empty");
    let m = profile.num_candidates() as i64;
    profile
        .ballots()
        .iter()
        .map(|b| {
            let points = match b.ranking().iter().position(|&c| committee.contains(c)) {
                Some(i) => m - (i as i64 + 1),
                None => match model {
                    CcModel::Optimistic => m - b.ranking().len() as i64 - 1,
                    CcModel::Pessimistic => 0,
                },
            };
            points * b.multiplicity() as i64
        })
        .sum()
}

/// Size-`k` subsets of `0..m` as bitmasks, in lexicographic order of their
/// sorted members.
pub(crate) fn committees(m: usize, k: usize) -> Vec<CandidateSet> {
    fn go(start: usize, m: usize, left: usize, acc: CandidateSet, out: &mut Vec<CandidateSet>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for c in start..=m - left {
            go(c + 1, m, left - 1, acc.with(c), out);
        }
    }
    let mut out = Vec::new();
    if k <= m {
        go(0, m, k, CandidateSet::EMPTY, &mut out);
    }
    out
}

pub fn cc(election: &Election, model: CcModel) -> Result<CcOutcome, TabulationError> {
    let profile = election.profile();
    let m = profile.num_candidates();
    if m > CC_MAX_CANDIDATES {
        return Err(TabulationError::EnumerationGuard {
            candidates: m,
            limit: CC_MAX_CANDIDATES,
        });
    }
    let scores: Vec<(CandidateSet, i64)> = committees(m, election.seats())
        .into_iter()
        .map(|c| (c, cc_score(profile, c, model)))
        .collect();
    let best = scores.iter().map(|&(_, s)| s).max().expect("at least one committee");
    let mut top = scores.iter().filter(|&&(_, s)| s == best).map(|&(c, _)| c);
    let winner = top.next().expect("a maximal committee");
    // Any second maximal committee differs from the winner in some member.
    let tie_flag = top.next().is_some();
    Ok(CcOutcome {
        winners: WinnerSet::new(winner.iter(), tie_flag),
        scores,
    })
}
