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

//! Multiwinner voting rules.
//!
//! Every rule returns a [`WinnerSet`] of exactly `k` candidates. The
//! sequential rules (Scottish STV, Meek STV, EAR) also return a [`RoundLog`]
//! with the exact vote totals of each round.
//!
//! Ties are broken toward the lowest candidate id (or the lexicographically
//! smallest committee). A tie only sets [`WinnerSet::tie_flag`] when the
//! candidates involved end up on both sides of the final committee, i.e. when
//! a different resolution could plausibly have produced a different outcome.

mod cc;
mod ear;
mod log;
mod meek;
mod positional;
mod scottish;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::arith::Rational;
use crate::profile::{CandidateId, CandidateSet, Election};

pub use self::cc::{cc, cc_score, CcModel, CcOutcome, CC_MAX_CANDIDATES};
pub use self::ear::ear;
pub use self::log::{Round, RoundAction, RoundEvent, RoundLog, RoundLogReport};
pub use self::meek::{meek_stv, MeekParams};
pub use self::positional::{positional_committee, positional_scores, ScoringVector};
pub use self::scottish::{scottish_quota, scottish_stv};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TabulationError {
    #[error("Meek count did not converge within {iterations} iterations")]
    MeekNonConvergence { iterations: usize },
    #[error("{candidates} candidates exceeds the enumeration limit of {limit}")]
    EnumerationGuard { candidates: usize, limit: usize },
    #[error("no committee satisfies the proportionality constraints")]
    NoCompatibleCommittee,
    #[error("invalid scoring vector: {0}")]
    InvalidScoringVector(String),
}

/// The winning committee, sorted by candidate id.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WinnerSet {
    members: Vec<CandidateId>,
    pub tie_flag: bool,
}

impl WinnerSet {
    pub fn new(members: impl IntoIterator<Item = CandidateId>, tie_flag: bool) -> Self {
        let mut members: Vec<CandidateId> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        WinnerSet { members, tie_flag }
    }

    pub fn members(&self) -> &[CandidateId] {
        &self.members
    }

    pub fn set(&self) -> CandidateSet {
        self.members.iter().copied().collect()
    }

    pub fn contains(&self, c: CandidateId) -> bool {
        self.members.contains(&c)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Same members, ignoring the tie flag.
    pub fn same_committee(&self, other: &WinnerSet) -> bool {
        self.members == other.members
    }
}

/// Tracks every tie broken during a count.
#[derive(Clone, Debug, Default)]
pub(crate) struct TieTracker {
    tied: Vec<CandidateSet>,
}

impl TieTracker {
    pub(crate) fn record(&mut self, tied: CandidateSet) {
        if tied.len() > 1 {
            self.tied.push(tied);
        }
    }

    /// True when some tied group is split by the final committee.
    pub(crate) fn consequential(&self, winners: CandidateSet) -> bool {
        self.tied.iter().any(|t| {
            let inside = t.intersection(winners);
            !inside.is_empty() && inside != *t
        })
    }
}

/// Picks the candidate with the greatest key (lowest id among equals) and the
/// set of candidates sharing that key.
pub(crate) fn argmax_by<K: Ord>(
    candidates: impl IntoIterator<Item = CandidateId>,
    mut key: impl FnMut(CandidateId) -> K,
) -> Option<(CandidateId, CandidateSet)> {
    let mut best: Option<(CandidateId, K, CandidateSet)> = None;
    for c in candidates {
        let k = key(c);
        match &mut best {
            None => best = Some((c, k, CandidateSet::EMPTY.with(c))),
            Some((b, bk, tied)) => match k.cmp(bk) {
                std::cmp::Ordering::Greater => best = Some((c, k, CandidateSet::EMPTY.with(c))),
                std::cmp::Ordering::Equal => {
                    tied.insert(c);
                    if c < *b {
                        *b = c;
                    }
                }
                std::cmp::Ordering::Less => {}
            },
        }
    }
    best.map(|(c, _, tied)| (c, tied))
}

/// As [`argmax_by`] but for the smallest key.
pub(crate) fn argmin_by<K: Ord>(
    candidates: impl IntoIterator<Item = CandidateId>,
    mut key: impl FnMut(CandidateId) -> K,
) -> Option<(CandidateId, CandidateSet)> {
    argmax_by(candidates, |c| std::cmp::Reverse(key(c)))
}

/// A voting rule with its parameters, used by the criteria searches.
#[derive(Clone, Debug, PartialEq)]
pub enum Method {
    Scottish,
    Meek(MeekParams),
    Ear,
    Cc(CcModel),
    Positional(ScoringVector),
    /// q-PSC scoring rule with the Droop-style quota `floor(V/(k+1)) + 1`.
    PscScoring(ScoringVector),
}

impl Method {
    pub fn meek() -> Self {
        Method::Meek(MeekParams::default())
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Method::Scottish => "scottish",
            Method::Meek(_) => "meek",
            Method::Ear => "ear",
            Method::Cc(CcModel::Optimistic) => "cc-om",
            Method::Cc(CcModel::Pessimistic) => "cc-pm",
            Method::Positional(_) => "positional",
            Method::PscScoring(_) => "qpsc-scoring",
        }
    }

    pub fn winners(&self, election: &Election) -> Result<WinnerSet, TabulationError> {
        Ok(match self {
            Method::Scottish => scottish_stv(election).0,
            Method::Meek(params) => meek_stv(election, params)?.0,
            Method::Ear => ear(election).0,
            Method::Cc(model) => cc(election, *model)?.winners,
            Method::Positional(sv) => positional_committee(election, sv),
            Method::PscScoring(sv) => {
                let q = crate::psc::droop_quota(election);
                crate::psc::qpsc_scoring_rule(election, &q, sv)?
            }
        })
    }

    /// Full round log for the sequential rules.
    pub fn tabulate(&self, election: &Election) -> Result<(WinnerSet, Option<RoundLog>), TabulationError> {
        Ok(match self {
            Method::Scottish => {
                let (w, log) = scottish_stv(election);
                (w, Some(log))
            }
            Method::Meek(params) => {
                let (w, log) = meek_stv(election, params)?;
                (w, Some(log))
            }
            Method::Ear => {
                let (w, log) = ear(election);
                (w, Some(log))
            }
            other => (other.winners(election)?, None),
        })
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Error)]
#[error("unknown method {0:?} (expected scottish, meek, ear, cc-om, cc-pm, borda or plurality)")]
pub struct UnknownMethod(pub String);

/// Parses the method names accepted on the command line. `borda` and
/// `plurality` need the roster size, so they are resolved by
/// [`Method::from_name`] instead.
impl FromStr for Method {
    type Err = UnknownMethod;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "scottish" | "scottish-stv" | "stv" => Ok(Method::Scottish),
            "meek" | "meek-stv" => Ok(Method::meek()),
            "ear" => Ok(Method::Ear),
            "cc-om" | "cc_om" => Ok(Method::Cc(CcModel::Optimistic)),
            "cc-pm" | "cc_pm" => Ok(Method::Cc(CcModel::Pessimistic)),
            other => Err(UnknownMethod(other.to_string())),
        }
    }
}

impl Method {
    /// Like [`FromStr`], also resolving `borda` and `plurality` for `m`
    /// candidates.
    pub fn from_name(name: &str, m: usize) -> Result<Self, UnknownMethod> {
        match name.trim().to_ascii_lowercase().as_str() {
            "borda" | "k-borda" => Ok(Method::Positional(ScoringVector::borda(m))),
            "plurality" | "k-plurality" => Ok(Method::Positional(ScoringVector::plurality())),
            _ => name.parse(),
        }
    }
}

/// Quota helper shared by EAR and the worst-case constructions: `V/(k+1)`.
pub fn exact_droop(election: &Election) -> Rational {
    crate::arith::ratio(
        election.profile().total_ballots(),
        election.seats() as u64 + 1,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn argmax_prefers_lowest_id_and_reports_ties() {
        let (c, tied) = argmax_by([3, 1, 2], |c| [0, 5, 5, 5][c]).unwrap();
        assert_eq!(c, 1);
        assert_eq!(tied.to_vec(), vec![1, 2, 3]);
        let (c, tied) = argmin_by([0, 1, 2], |c| [4, 2, 9][c]).unwrap();
        assert_eq!(c, 1);
        assert_eq!(tied.len(), 1);
    }

    #[test]
    fn tie_only_counts_when_split() {
        let mut t = TieTracker::default();
        t.record(CandidateSet::from_iter([1, 2]));
        assert!(!t.consequential(CandidateSet::from_iter([0, 1, 2])));
        assert!(!t.consequential(CandidateSet::from_iter([0, 3])));
        assert!(t.consequential(CandidateSet::from_iter([0, 1])));
    }

    #[test]
    fn parses_method_names() {
        assert_eq!("scottish".parse::<Method>().unwrap(), Method::Scottish);
        assert_eq!("cc-pm".parse::<Method>().unwrap(), Method::Cc(CcModel::Pessimistic));
        assert!("warren".parse::<Method>().is_err());
        assert_eq!(Method::from_name("borda", 3).unwrap().tag(), "positional");
    }
}
