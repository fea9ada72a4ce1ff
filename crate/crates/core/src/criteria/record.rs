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

//! JSON-lines form of a [`ViolationRecord`], with candidates by name.

use serde::{Deserialize, Serialize};

use super::{CriteriaError, ViolationRecord};
use crate::methods::WinnerSet;
use crate::profile::{BallotSelection, CandidateId, PreferenceProfile};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemovedBallots {
    pub ranking: Vec<String>,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordJson {
    pub election_id: String,
    pub criterion: String,
    pub method: String,
    pub removed: Vec<RemovedBallots>,
    pub winners_before: Vec<String>,
    pub winners_after: Vec<String>,
    pub party_swap: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_loser: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub displaced_winner: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub tie_before: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub tie_after: bool,
}

impl RecordJson {
    pub fn from_record(election_id: &str, record: &ViolationRecord, profile: &PreferenceProfile) -> Self {
        let name = |c: CandidateId| profile.candidate(c).name.clone();
        RecordJson {
            election_id: election_id.to_string(),
            criterion: record.criterion.tag().to_string(),
            method: record.method.clone(),
            removed: record
                .removed
                .entries()
                .map(|(i, count)| RemovedBallots {
                    ranking: profile.ballots()[i].ranking().iter().map(|&c| name(c)).collect(),
                    count,
                })
                .collect(),
            winners_before: profile.names(record.original_winners.members().iter().copied()),
            winners_after: profile.names(record.modified_winners.members().iter().copied()),
            party_swap: record.party_swap,
            target_loser: record.target_loser.map(name),
            displaced_winner: record.displaced_winner.map(name),
            tie_before: record.original_winners.tie_flag,
            tie_after: record.modified_winners.tie_flag,
        }
    }

    /// Resolves names against `profile`, which must be the profile the
    /// record was produced from.
    pub fn to_record(&self, profile: &PreferenceProfile) -> Result<ViolationRecord, CriteriaError> {
        let id = |n: &str| {
            profile
                .candidate_by_name(n)
                .ok_or_else(|| CriteriaError::Record(format!("unknown candidate {n:?}")))
        };
        let ids = |names: &[String]| names.iter().map(|n| id(n)).collect::<Result<Vec<_>, _>>();
        let mut removed = BallotSelection::new();
        for r in &self.removed {
            let ranking = ids(&r.ranking)?;
            let index = profile
                .ballot_index(&ranking)
                .ok_or_else(|| CriteriaError::Record(format!("no ballot type {:?}", r.ranking)))?;
            removed.add(index, r.count);
        }
        removed.validate(profile)?;
        Ok(ViolationRecord {
            criterion: self.criterion.parse().map_err(CriteriaError::Record)?,
            method: self.method.clone(),
            removed,
            original_winners: WinnerSet::new(ids(&self.winners_before)?, self.tie_before),
            modified_winners: WinnerSet::new(ids(&self.winners_after)?, self.tie_after),
            target_loser: self.target_loser.as_deref().map(id).transpose()?,
            displaced_winner: self.displaced_winner.as_deref().map(id).transpose()?,
            party_swap: self.party_swap,
        })
    }
}
