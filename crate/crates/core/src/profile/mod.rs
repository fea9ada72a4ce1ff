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

//! Ballot data model.
//!
//! A [`PreferenceProfile`] holds the candidate roster and a deduplicated list
//! of [`BallotType`]s (a strict, possibly truncated ranking plus the number of
//! identical ballots). Ballot types are kept sorted lexicographically by
//! ranking, so a type's index is a stable identifier for a given profile and
//! the [`BallotSelection`]s produced by the searches can refer to them by
//! index.

mod blt;
mod csv;
mod selection;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

pub use self::blt::{parse_blt, to_blt, BltError};
pub use self::csv::{parse_csv, to_csv, CsvError};
pub use self::selection::{
    ballots_ranking_only, ballots_ranking_only_filtered, bullet_votes, fraction_of,
    remove_ballots, BallotSelection,
};

/// Dense candidate index, `0..m`.
pub type CandidateId = usize;

/// Party tag shared by every independent candidate.
pub const INDEPENDENT: &str = "IND";

/// Hard cap on the roster size; candidate sets are 64-bit masks.
pub const MAX_CANDIDATES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProfileError {
    #[error("profile has no candidates")]
    NoCandidates,
    #[error("profile has {0} candidates, at most {MAX_CANDIDATES} are supported")]
    TooManyCandidates(usize),
    #[error("candidate at position {position} has id {id}")]
    NonContiguousId { position: usize, id: CandidateId },
    #[error("candidate {0} has an empty party tag")]
    EmptyParty(CandidateId),
    #[error("candidate name {0:?} appears more than once")]
    DuplicateName(String),
    #[error("ballot has an empty ranking")]
    EmptyRanking,
    #[error("ballot ranks candidate {0}, which is not on the roster")]
    UnknownCandidate(CandidateId),
    #[error("ballot ranks candidate {0} more than once")]
    RepeatedCandidate(CandidateId),
    #[error("ballot has multiplicity zero")]
    ZeroMultiplicity,
    #[error("election has no ballots")]
    NoBallots,
    #[error("{seats} seats for {candidates} candidates; need 1 <= k < m")]
    InvalidSeats { seats: usize, candidates: usize },
    #[error("selection removes {requested} ballots of type {index}, which has {available}")]
    SelectionExceedsMultiplicity {
        index: usize,
        requested: u64,
        available: u64,
    },
    #[error("selection references ballot type {0}, which does not exist")]
    SelectionOutOfRange(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Candidate {
    pub id: CandidateId,
    pub name: String,
    pub party: String,
}

impl Candidate {
    pub fn new(id: CandidateId, name: impl Into<String>, party: impl Into<String>) -> Self {
        Candidate {
            id,
            name: name.into(),
            party: party.into(),
        }
    }

    pub fn independent(id: CandidateId, name: impl Into<String>) -> Self {
        Self::new(id, name, INDEPENDENT)
    }
}

/// A set of candidates stored as a bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CandidateSet(u64);

impl CandidateSet {
    pub const EMPTY: CandidateSet = CandidateSet(0);

    pub fn all(m: usize) -> Self {
        if m >= 64 {
            CandidateSet(u64::MAX)
        } else {
            CandidateSet((1u64 << m) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> Self {
        CandidateSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, c: CandidateId) -> bool {
        c < 64 && self.0 & (1 << c) != 0
    }

    pub fn insert(&mut self, c: CandidateId) {
        self.0 |= 1 << c;
    }

    pub fn remove(&mut self, c: CandidateId) {
        self.0 &= !(1 << c);
    }

    pub fn with(mut self, c: CandidateId) -> Self {
        self.insert(c);
        self
    }

    pub fn without(mut self, c: CandidateId) -> Self {
        self.remove(c);
        self
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: CandidateSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: CandidateSet) -> Self {
        CandidateSet(self.0 | other.0)
    }

    pub fn intersection(self, other: CandidateSet) -> Self {
        CandidateSet(self.0 & other.0)
    }

    pub fn difference(self, other: CandidateSet) -> Self {
        CandidateSet(self.0 & !other.0)
    }

    /// Members in ascending id order.
    pub fn iter(self) -> impl Iterator<Item = CandidateId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let c = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(c)
            }
        })
    }

    pub fn to_vec(self) -> Vec<CandidateId> {
        self.iter().collect()
    }
}

impl FromIterator<CandidateId> for CandidateSet {
    fn from_iter<I: IntoIterator<Item = CandidateId>>(iter: I) -> Self {
        let mut set = CandidateSet::EMPTY;
        for c in iter {
            set.insert(c);
        }
        set
    }
}

impl fmt::Debug for CandidateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A ranking shared by `multiplicity` identical ballots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BallotType {
    ranking: Vec<CandidateId>,
    multiplicity: u64,
    ranked: CandidateSet,
}

impl BallotType {
    fn new(ranking: Vec<CandidateId>, multiplicity: u64) -> Self {
        let ranked = ranking.iter().copied().collect();
        BallotType {
            ranking,
            multiplicity,
            ranked,
        }
    }

    pub fn ranking(&self) -> &[CandidateId] {
        &self.ranking
    }

    pub fn multiplicity(&self) -> u64 {
        self.multiplicity
    }

    /// The set of candidates this ballot ranks.
    pub fn ranked(&self) -> CandidateSet {
        self.ranked
    }

    pub fn is_bullet(&self) -> bool {
        self.ranking.len() == 1
    }

    /// 1-based rank of `c`, if ranked.
    pub fn rank_of(&self, c: CandidateId) -> Option<usize> {
        self.ranking.iter().position(|&x| x == c).map(|p| p + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreferenceProfile {
    candidates: Vec<Candidate>,
    ballots: Vec<BallotType>,
    total: u64,
}

impl PreferenceProfile {
    /// Builds a profile, merging identical rankings by summing multiplicities.
    pub fn new<I>(candidates: Vec<Candidate>, ballots: I) -> Result<Self, ProfileError>
    where
        I: IntoIterator<Item = (Vec<CandidateId>, u64)>,
    {
        validate_roster(&candidates)?;
        let m = candidates.len();
        let mut merged: BTreeMap<Vec<CandidateId>, u64> = BTreeMap::new();
        for (ranking, multiplicity) in ballots {
            validate_ranking(&ranking, m)?;
            if multiplicity == 0 {
                return Err(ProfileError::ZeroMultiplicity);
            }
            *merged.entry(ranking).or_insert(0) += multiplicity;
        }
        Ok(Self::from_sorted(candidates, merged))
    }

    fn from_sorted(candidates: Vec<Candidate>, merged: BTreeMap<Vec<CandidateId>, u64>) -> Self {
        let ballots: Vec<BallotType> = merged
            .into_iter()
            .map(|(r, n)| BallotType::new(r, n))
            .collect();
        let total = ballots.iter().map(|b| b.multiplicity).sum();
        PreferenceProfile {
            candidates,
            ballots,
            total,
        }
    }

    pub fn candidates(&self) -> &[Candidate] {
        &self.candidates
    }

    pub fn candidate(&self, c: CandidateId) -> &Candidate {
        &self.candidates[c]
    }

    pub fn ballots(&self) -> &[BallotType] {
        &self.ballots
    }

    /// `V`, the number of ballots.
    pub fn total_ballots(&self) -> u64 {
        self.total
    }

    /// `m`, the number of candidates.
    pub fn num_candidates(&self) -> usize {
        self.candidates.len()
    }

    pub fn all_candidates(&self) -> CandidateSet {
        CandidateSet::all(self.candidates.len())
    }

    pub fn candidate_by_name(&self, name: &str) -> Option<CandidateId> {
        self.candidates.iter().position(|c| c.name == name)
    }

    pub fn party(&self, c: CandidateId) -> &str {
        &self.candidates[c].party
    }

    /// Index of the ballot type with exactly this ranking.
    pub fn ballot_index(&self, ranking: &[CandidateId]) -> Option<usize> {
        self.ballots
            .binary_search_by(|b| b.ranking.as_slice().cmp(ranking))
            .ok()
    }

    pub fn names(&self, set: impl IntoIterator<Item = CandidateId>) -> Vec<String> {
        set.into_iter()
            .map(|c| self.candidates[c].name.clone())
            .collect()
    }
}

fn validate_roster(candidates: &[Candidate]) -> Result<(), ProfileError> {
    if candidates.is_empty() {
        return Err(ProfileError::NoCandidates);
    }
    if candidates.len() > MAX_CANDIDATES {
        return Err(ProfileError::TooManyCandidates(candidates.len()));
    }
    let mut seen = std::collections::HashSet::new();
    for (position, c) in candidates.iter().enumerate() {
        if c.id != position {
            return Err(ProfileError::NonContiguousId { position, id: c.id });
        }
        if c.party.is_empty() {
            return Err(ProfileError::EmptyParty(c.id));
        }
        if !seen.insert(c.name.as_str()) {
            return Err(ProfileError::DuplicateName(c.name.clone()));
        }
    }
    Ok(())
}

fn validate_ranking(ranking: &[CandidateId], m: usize) -> Result<(), ProfileError> {
    if ranking.is_empty() {
        return Err(ProfileError::EmptyRanking);
    }
    let mut seen = CandidateSet::EMPTY;
    for &c in ranking {
        if c >= m {
            return Err(ProfileError::UnknownCandidate(c));
        }
        if seen.contains(c) {
            return Err(ProfileError::RepeatedCandidate(c));
        }
        seen.insert(c);
    }
    Ok(())
}

/// A profile together with the number of seats to fill.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Election {
    profile: PreferenceProfile,
    seats: usize,
    title: String,
}

impl Election {
    pub fn new(
        profile: PreferenceProfile,
        seats: usize,
        title: impl Into<String>,
    ) -> Result<Self, ProfileError> {
        let m = profile.num_candidates();
        if seats == 0 || seats >= m {
            return Err(ProfileError::InvalidSeats {
                seats,
                candidates: m,
            });
        }
        if profile.total_ballots() == 0 {
            return Err(ProfileError::NoBallots);
        }
        Ok(Election {
            profile,
            seats,
            title: title.into(),
        })
    }

    pub fn profile(&self) -> &PreferenceProfile {
        &self.profile
    }

    /// `k`, the committee size.
    pub fn seats(&self) -> usize {
        self.seats
    }

    pub fn title(&self) -> &str {
        &self.title
    }

    /// The same seats and title over a different ballot profile.
    pub fn with_profile(&self, profile: PreferenceProfile) -> Result<Self, ProfileError> {
        Election::new(profile, self.seats, self.title.clone())
    }

    /// The election that remains after `selection` is withdrawn.
    pub fn without(&self, selection: &BallotSelection) -> Result<Self, ProfileError> {
        self.with_profile(remove_ballots(&self.profile, selection)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roster(names: &[&str]) -> Vec<Candidate> {
        names
            .iter()
            .enumerate()
            .map(|(i, n)| Candidate::independent(i, *n))
            .collect()
    }

    #[test]
    fn merges_identical_rankings() {
        let p = PreferenceProfile::new(
            roster(&["a", "b"]),
            vec![(vec![0, 1], 2), (vec![1], 4), (vec![0, 1], 1)],
        )
        .unwrap();
        assert_eq!(p.ballots().len(), 2);
        assert_eq!(p.ballots()[0].ranking(), &[0, 1]);
        assert_eq!(p.ballots()[0].multiplicity(), 3);
        assert_eq!(p.total_ballots(), 7);
        assert_eq!(p.ballot_index(&[1]), Some(1));
    }

    #[test]
    fn rejects_bad_rankings() {
        let r = roster(&["a", "b"]);
        assert_eq!(
            PreferenceProfile::new(r.clone(), vec![(vec![0, 0], 1)]),
            Err(ProfileError::RepeatedCandidate(0))
        );
        assert_eq!(
            PreferenceProfile::new(r.clone(), vec![(vec![2], 1)]),
            Err(ProfileError::UnknownCandidate(2))
        );
        assert_eq!(
            PreferenceProfile::new(r.clone(), vec![(vec![], 1)]),
            Err(ProfileError::EmptyRanking)
        );
        assert_eq!(
            PreferenceProfile::new(r, vec![(vec![1], 0)]),
            Err(ProfileError::ZeroMultiplicity)
        );
    }

    #[test]
    fn rejects_bad_roster() {
        let mut r = roster(&["a", "b"]);
        r[1].id = 5;
        assert!(matches!(
            PreferenceProfile::new(r, Vec::new()),
            Err(ProfileError::NonContiguousId { .. })
        ));
        let mut r = roster(&["a", "b"]);
        r[0].party.clear();
        assert_eq!(
            PreferenceProfile::new(r, Vec::new()),
            Err(ProfileError::EmptyParty(0))
        );
        assert!(matches!(
            PreferenceProfile::new(roster(&["a", "a"]), Vec::new()),
            Err(ProfileError::DuplicateName(_))
        ));
    }

    #[test]
    fn election_requires_k_below_m() {
        let p = PreferenceProfile::new(roster(&["a", "b"]), vec![(vec![0], 1)]).unwrap();
        assert!(Election::new(p.clone(), 1, "t").is_ok());
        assert!(matches!(
            Election::new(p.clone(), 2, "t"),
            Err(ProfileError::InvalidSeats { .. })
        ));
        assert!(Election::new(p, 0, "t").is_err());
    }

    #[test]
    fn candidate_set_ops() {
        let s: CandidateSet = [0, 3, 5].into_iter().collect();
        assert_eq!(s.len(), 3);
        assert_eq!(s.to_vec(), vec![0, 3, 5]);
        assert!(s.contains(3) && !s.contains(4));
        assert!(CandidateSet::from_iter([0, 5]).is_subset(s));
        assert_eq!(s.without(3).to_vec(), vec![0, 5]);
        assert_eq!(CandidateSet::all(4).len(), 4);
    }
}
