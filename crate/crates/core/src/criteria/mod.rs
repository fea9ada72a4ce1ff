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

//! Independence of voter blocs.
//!
//! * ILVB: removing ballots that rank only losers leaves the committee as is.
//! * IWVB: removing ballots that rank only a proper subset `S` of the winners
//!   never evicts a winner outside `S`.
//! * IWVB*: if every member of `S` still wins after that removal, the whole
//!   committee is unchanged.
//!
//! The `check_*` functions apply a definition to one removal. The `search_*`
//! functions propose removals heuristically, and [`oracle_ilvb`] enumerates
//! every loser-only removal of a small election.

mod oracle;
mod record;
mod search;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::methods::{Method, TabulationError, WinnerSet};
use crate::profile::{BallotSelection, CandidateId, CandidateSet, Election, ProfileError};

pub use self::oracle::{loser_only_budget, oracle_ilvb};
pub use self::record::{RecordJson, RemovedBallots};
pub use self::search::{
    iwvb_prefix_order, search_ilvb, search_iwvb, search_party_swaps, PrefixOrder, SearchParams,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Criterion {
    Ilvb,
    Iwvb,
    IwvbStar,
}

impl Criterion {
    pub const ALL: [Criterion; 3] = [Criterion::Ilvb, Criterion::Iwvb, Criterion::IwvbStar];

    pub fn tag(self) -> &'static str {
        match self {
            Criterion::Ilvb => "ILVB",
            Criterion::Iwvb => "IWVB",
            Criterion::IwvbStar => "IWVB_STAR",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Criterion {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "ilvb" => Ok(Criterion::Ilvb),
            "iwvb" => Ok(Criterion::Iwvb),
            "iwvb-star" | "iwvb*" => Ok(Criterion::IwvbStar),
            other => Err(format!("unknown criterion {other:?} (expected ilvb, iwvb or iwvb-star)")),
        }
    }
}

#[derive(Debug, Error)]
pub enum CriteriaError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Tabulation(#[from] TabulationError),
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error("oracle needs {needed} removals, above the budget of {budget}")]
    OracleBudget { needed: u128, budget: u128 },
    #[error("malformed record: {0}")]
    Record(String),
}

/// One removal that breaks a criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViolationRecord {
    pub criterion: Criterion,
    pub method: String,
    pub removed: BallotSelection,
    pub original_winners: WinnerSet,
    pub modified_winners: WinnerSet,
    pub target_loser: Option<CandidateId>,
    pub displaced_winner: Option<CandidateId>,
    pub party_swap: bool,
}

impl ViolationRecord {
    pub fn tied(&self) -> bool {
        self.original_winners.tie_flag || self.modified_winners.tie_flag
    }
}

/// Tabulates an election once and answers removal queries against it,
/// caching the committee produced by each distinct removal.
pub(crate) struct Probe<'a> {
    pub(crate) election: &'a Election,
    pub(crate) method: &'a Method,
    pub(crate) base: WinnerSet,
    cache: HashMap<BallotSelection, WinnerSet>,
}

impl<'a> Probe<'a> {
    pub(crate) fn new(election: &'a Election, method: &'a Method) -> Result<Self, CriteriaError> {
        Ok(Self::with_base(election, method, method.winners(election)?))
    }

    pub(crate) fn with_base(election: &'a Election, method: &'a Method, base: WinnerSet) -> Self {
        Probe {
            election,
            method,
            base,
            cache: HashMap::new(),
        }
    }

    pub(crate) fn after(&mut self, selection: &BallotSelection) -> Result<WinnerSet, CriteriaError> {
        if let Some(w) = self.cache.get(selection) {
            return Ok(w.clone());
        }
        let modified = self.election.without(selection)?;
        let w = self.method.winners(&modified)?;
        self.cache.insert(selection.clone(), w.clone());
        Ok(w)
    }

    /// Applies the definition of `criterion` to one removal. Preconditions are
    /// the caller's responsibility. Removing every ballot leaves nothing to
    /// tabulate and never counts as a violation.
    pub(crate) fn evaluate(
        &mut self,
        criterion: Criterion,
        selection: &BallotSelection,
    ) -> Result<Option<ViolationRecord>, CriteriaError> {
        if selection.is_empty() || selection.total() == self.election.profile().total_ballots() {
            return Ok(None);
        }
        let after = self.after(selection)?;
        let ranked = selection.ranked_candidates(self.election.profile());
        let base = self.base.set();
        let now = after.set();
        let displaced = base.difference(ranked).difference(now).iter().next();
        let violated = match criterion {
            Criterion::Ilvb => base != now,
            Criterion::Iwvb => displaced.is_some(),
            Criterion::IwvbStar => ranked.is_subset(now) && base != now,
        };
        Ok(violated.then(|| ViolationRecord {
            criterion,
            method: self.method.tag().to_string(),
            removed: selection.clone(),
            original_winners: self.base.clone(),
            modified_winners: after,
            target_loser: None,
            displaced_winner: displaced,
            party_swap: false,
        }))
    }
}

fn check_preconditions(
    election: &Election,
    winners: CandidateSet,
    criterion: Criterion,
    selection: &BallotSelection,
) -> Result<(), CriteriaError> {
    selection.validate(election.profile())?;
    let ranked = selection.ranked_candidates(election.profile());
    match criterion {
        Criterion::Ilvb => {
            if !ranked.intersection(winners).is_empty() {
                return Err(CriteriaError::Precondition(format!(
                    "removed ballots rank winners {:?}",
                    election.profile().names(ranked.intersection(winners).iter())
                )));
            }
        }
        Criterion::Iwvb | Criterion::IwvbStar => {
            if !ranked.is_subset(winners) || ranked == winners {
                return Err(CriteriaError::Precondition(
                    "removed ballots must rank only a proper subset of the winners".into(),
                ));
            }
        }
    }
    Ok(())
}

/// A record iff removing `selection` breaks `criterion`.
pub fn check(
    election: &Election,
    method: &Method,
    criterion: Criterion,
    selection: &BallotSelection,
) -> Result<Option<ViolationRecord>, CriteriaError> {
    let mut probe = Probe::new(election, method)?;
    check_preconditions(election, probe.base.set(), criterion, selection)?;
    probe.evaluate(criterion, selection)
}

/// A record iff removing `selection` (ballots ranking only losers) changes
/// the committee.
pub fn check_ilvb(
    election: &Election,
    method: &Method,
    selection: &BallotSelection,
) -> Result<Option<ViolationRecord>, CriteriaError> {
    check(election, method, Criterion::Ilvb, selection)
}

/// A record iff removing `selection` evicts a winner it does not rank.
pub fn check_iwvb(
    election: &Election,
    method: &Method,
    selection: &BallotSelection,
) -> Result<Option<ViolationRecord>, CriteriaError> {
    check(election, method, Criterion::Iwvb, selection)
}

/// A record iff every winner ranked by `selection` still wins afterwards but
/// the committee changed.
pub fn check_iwvb_star(
    election: &Election,
    method: &Method,
    selection: &BallotSelection,
) -> Result<Option<ViolationRecord>, CriteriaError> {
    check(election, method, Criterion::IwvbStar, selection)
}

/// Recomputes a record from scratch and confirms it.
pub fn verify(election: &Election, method: &Method, record: &ViolationRecord) -> Result<bool, CriteriaError> {
    let found = check(election, method, record.criterion, &record.removed)?;
    Ok(found.is_some_and(|r| {
        r.original_winners == record.original_winners && r.modified_winners == record.modified_winners
    }))
}

/// Seats held by each party.
pub fn party_seats(election: &Election, winners: &WinnerSet) -> HashMap<String, usize> {
    let mut seats = HashMap::new();
    for &c in winners.members() {
        *seats.entry(election.profile().party(c).to_string()).or_insert(0) += 1;
    }
    seats
}
