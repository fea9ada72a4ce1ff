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

use std::collections::BTreeMap;

use super::{CandidateId, CandidateSet, PreferenceProfile, ProfileError};

/// A multiset of ballots, expressed as counts per ballot-type index of a
/// specific profile. Zero counts are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BallotSelection {
    entries: BTreeMap<usize, u64>,
}

impl BallotSelection {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (usize, u64)>) -> Self {
        let mut s = Self::new();
        for (index, count) in entries {
            s.add(index, count);
        }
        s
    }

    pub fn add(&mut self, index: usize, count: u64) {
        if count > 0 {
            *self.entries.entry(index).or_insert(0) += count;
        }
    }

    pub fn count(&self, index: usize) -> u64 {
        self.entries.get(&index).copied().unwrap_or(0)
    }

    /// `(ballot-type index, count)` pairs in ascending index order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.entries.iter().map(|(&i, &n)| (i, n))
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn validate(&self, profile: &PreferenceProfile) -> Result<(), ProfileError> {
        for (index, requested) in self.entries() {
            let ballot = profile
                .ballots()
                .get(index)
                .ok_or(ProfileError::SelectionOutOfRange(index))?;
            if requested > ballot.multiplicity() {
                return Err(ProfileError::SelectionExceedsMultiplicity {
                    index,
                    requested,
                    available: ballot.multiplicity(),
                });
            }
        }
        Ok(())
    }

    /// Union of the candidates ranked by any selected ballot.
    pub fn ranked_candidates(&self, profile: &PreferenceProfile) -> CandidateSet {
        self.entries
            .keys()
            .fold(CandidateSet::EMPTY, |acc, &i| acc.union(profile.ballots()[i].ranked()))
    }
}

/// Every ballot type whose ranked candidates form a non-empty subset of
/// `allowed`, at full multiplicity.
pub fn ballots_ranking_only(profile: &PreferenceProfile, allowed: CandidateSet) -> BallotSelection {
    ballots_ranking_only_filtered(profile, allowed, CandidateSet::EMPTY)
}

/// As [`ballots_ranking_only`], additionally dropping ballots that rank any
/// candidate in `forbidden`.
pub fn ballots_ranking_only_filtered(
    profile: &PreferenceProfile,
    allowed: CandidateSet,
    forbidden: CandidateSet,
) -> BallotSelection {
    BallotSelection::from_entries(
        profile
            .ballots()
            .iter()
            .enumerate()
            .filter(|(_, b)| {
                b.ranked().is_subset(allowed) && b.ranked().intersection(forbidden).is_empty()
            })
            .map(|(i, b)| (i, b.multiplicity())),
    )
}

/// The bullet votes for `c` (empty when there are none).
pub fn bullet_votes(profile: &PreferenceProfile, c: CandidateId) -> BallotSelection {
    match profile.ballot_index(&[c]) {
        Some(i) => BallotSelection::from_entries([(i, profile.ballots()[i].multiplicity())]),
        None => BallotSelection::new(),
    }
}

/// The sub-selection holding `floor(total * numerator / denominator)`
/// ballots, apportioned across ballot types by largest remainder. Ties in the
/// remainder go to the lower ballot-type index.
///
/// Panics unless `1 <= numerator <= denominator`.
pub fn fraction_of(selection: &BallotSelection, numerator: u64, denominator: u64) -> BallotSelection {
    assert!(
        numerator >= 1 && numerator <= denominator,
        "fraction {numerator}/{denominator} outside (0, 1]"
    );
    let total = selection.total() as u128;
    if total == 0 {
        return BallotSelection::new();
    }
    let target = total * numerator as u128 / denominator as u128;
    // Each type's exact share is count * target / total.
    let mut shares: Vec<(usize, u64, u128)> = selection
        .entries()
        .map(|(i, n)| {
            let scaled = n as u128 * target;
            (i, (scaled / total) as u64, scaled % total)
        })
        .collect();
    let assigned: u128 = shares.iter().map(|&(_, base, _)| base as u128).sum();
    let leftover = (target - assigned) as usize;
    let mut order: Vec<usize> = (0..shares.len()).collect();
    order.sort_by(|&a, &b| shares[b].2.cmp(&shares[a].2).then(shares[a].0.cmp(&shares[b].0)));
    for &slot in order.iter().take(leftover) {
        shares[slot].1 += 1;
    }
    BallotSelection::from_entries(shares.into_iter().map(|(i, n, _)| (i, n)))
}

/// `profile` with the selected ballots withdrawn. Types whose multiplicity
/// reaches zero disappear; the candidate roster is untouched.
pub fn remove_ballots(
    profile: &PreferenceProfile,
    selection: &BallotSelection,
) -> Result<PreferenceProfile, ProfileError> {
    selection.validate(profile)?;
    let merged: BTreeMap<Vec<CandidateId>, u64> = profile
        .ballots()
        .iter()
        .enumerate()
        .filter_map(|(i, b)| {
            let left = b.multiplicity() - selection.count(i);
            (left > 0).then(|| (b.ranking().to_vec(), left))
        })
        .collect();
    Ok(PreferenceProfile::from_sorted(
        profile.candidates().to_vec(),
        merged,
    ))
}
