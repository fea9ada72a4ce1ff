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

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::WinnerSet;
use crate::arith::{parse_rational, truncated_decimal, Rational};
use crate::profile::{CandidateId, PreferenceProfile};

const REPORT_PLACES: u32 = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RoundAction {
    FirstCount,
    Surplus(CandidateId),
    Elimination(CandidateId),
    /// Meek convergence pass after the roster changed.
    Iteration,
    /// EAR election at rank threshold `j`.
    Threshold(usize),
    /// EAR election after every threshold was exhausted.
    Fallback,
    /// Remaining hopefuls fill the remaining seats.
    FillRemaining,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RoundEvent {
    Elected {
        candidate: CandidateId,
        reached_quota: bool,
    },
    Eliminated(CandidateId),
    QuotaUpdate,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Round {
    pub action: RoundAction,
    /// Vote totals after the round, indexed by candidate id.
    pub totals: Vec<Rational>,
    pub exhausted: Rational,
    pub quota: Rational,
    pub events: Vec<RoundEvent>,
    pub threshold: Option<usize>,
    pub keep_factors: Option<Vec<Rational>>,
    /// Meek iterations spent settling this round.
    pub iterations: usize,
}

impl Round {
    /// Sum of all candidate totals plus exhausted weight.
    pub fn accounted(&self) -> Rational {
        self.totals.iter().fold(Rational::zero(), |acc, v| acc + v) + &self.exhausted
    }

    pub(crate) fn new(action: RoundAction, totals: Vec<Rational>, exhausted: Rational, quota: Rational) -> Self {
        Round {
            action,
            totals,
            exhausted,
            quota,
            events: Vec::new(),
            threshold: None,
            keep_factors: None,
            iterations: 0,
        }
    }

    pub fn elected(&self) -> impl Iterator<Item = CandidateId> + '_ {
        self.events.iter().filter_map(|e| match e {
            RoundEvent::Elected { candidate, .. } => Some(*candidate),
            _ => None,
        })
    }

    pub fn eliminated(&self) -> Option<CandidateId> {
        self.events.iter().find_map(|e| match e {
            RoundEvent::Eliminated(c) => Some(*c),
            _ => None,
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RoundLog {
    pub rounds: Vec<Round>,
}

impl RoundLog {
    pub fn quota_trace(&self) -> Vec<Rational> {
        self.rounds.iter().map(|r| r.quota.clone()).collect()
    }

    /// Totals of candidate `c` across rounds.
    pub fn series(&self, c: CandidateId) -> Vec<Rational> {
        self.rounds.iter().map(|r| r.totals[c].clone()).collect()
    }

    pub(crate) fn push(&mut self, mut round: Round) {
        if let Some(prev) = self.rounds.last() {
            if prev.quota != round.quota && !round.events.contains(&RoundEvent::QuotaUpdate) {
                round.events.push(RoundEvent::QuotaUpdate);
            }
        }
        round.events.sort_by_key(|e| match e {
            RoundEvent::Elected { candidate, .. } | RoundEvent::Eliminated(candidate) => (0, *candidate),
            RoundEvent::QuotaUpdate => (1, 0),
        });
        self.rounds.push(round);
    }

    pub fn report(&self, method: &str, winners: &WinnerSet, profile: &PreferenceProfile) -> RoundLogReport {
        let name = |c: CandidateId| profile.candidate(c).name.clone();
        RoundLogReport {
            method: method.to_string(),
            winners: winners.members().iter().map(|&c| name(c)).collect(),
            tie_flag: winners.tie_flag,
            quota_trace: self
                .rounds
                .iter()
                .map(|r| truncated_decimal(&r.quota, REPORT_PLACES))
                .collect(),
            rounds: self
                .rounds
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    let (kind, subject) = match &r.action {
                        RoundAction::FirstCount => ("first-count", None),
                        RoundAction::Surplus(c) => ("surplus", Some(name(*c))),
                        RoundAction::Elimination(c) => ("elimination", Some(name(*c))),
                        RoundAction::Iteration => ("iteration", None),
                        RoundAction::Threshold(_) => ("threshold", None),
                        RoundAction::Fallback => ("fallback", None),
                        RoundAction::FillRemaining => ("fill-remaining", None),
                    };
                    RoundReport {
                        round: i + 1,
                        action: kind.to_string(),
                        subject,
                        threshold: r.threshold,
                        quota: truncated_decimal(&r.quota, REPORT_PLACES),
                        quota_exact: r.quota.to_string(),
                        exhausted: truncated_decimal(&r.exhausted, REPORT_PLACES),
                        exhausted_exact: r.exhausted.to_string(),
                        quota_update: r.events.contains(&RoundEvent::QuotaUpdate),
                        iterations: r.iterations,
                        votes: r
                            .totals
                            .iter()
                            .enumerate()
                            .map(|(c, v)| VoteEntry {
                                candidate: name(c),
                                votes: truncated_decimal(v, REPORT_PLACES),
                                exact: v.to_string(),
                                event: r.events.iter().find_map(|e| match e {
                                    RoundEvent::Elected { candidate, reached_quota } if *candidate == c => {
                                        Some(if *reached_quota { "elected" } else { "elected-remaining" }.to_string())
                                    }
                                    RoundEvent::Eliminated(x) if *x == c => Some("eliminated".to_string()),
                                    _ => None,
                                }),
                                keep_factor: r.keep_factors.as_ref().map(|k| k[c].to_string()),
                            })
                            .collect(),
                    }
                })
                .collect(),
        }
    }
}

/// JSON form of a [`RoundLog`]. Every number appears twice: truncated to five
/// decimals for reading, and as an exact `p/q` string for reconstruction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundLogReport {
    pub method: String,
    pub winners: Vec<String>,
    pub tie_flag: bool,
    pub quota_trace: Vec<String>,
    pub rounds: Vec<RoundReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundReport {
    pub round: usize,
    pub action: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subject: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<usize>,
    pub quota: String,
    pub quota_exact: String,
    pub exhausted: String,
    pub exhausted_exact: String,
    pub quota_update: bool,
    pub iterations: usize,
    pub votes: Vec<VoteEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VoteEntry {
    pub candidate: String,
    pub votes: String,
    pub exact: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub event: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub keep_factor: Option<String>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReportError {
    #[error("round {round}: bad number {text:?}")]
    Number { round: usize, text: String },
    #[error("round {round}: unknown candidate {name:?}")]
    Candidate { round: usize, name: String },
    #[error("round {round}: unknown action or event {text:?}")]
    Kind { round: usize, text: String },
}

impl RoundLogReport {
    /// Rebuilds the exact winner set and round log.
    pub fn to_log(&self) -> Result<(WinnerSet, RoundLog), ReportError> {
        let names: Vec<&str> = self
            .rounds
            .first()
            .map(|r| r.votes.iter().map(|v| v.candidate.as_str()).collect())
            .unwrap_or_default();
        let id_of = |round: usize, name: &str| {
            names
                .iter()
                .position(|n| *n == name)
                .ok_or_else(|| ReportError::Candidate {
                    round,
                    name: name.to_string(),
                })
        };
        let num = |round: usize, text: &str| {
            parse_rational(text).ok_or_else(|| ReportError::Number {
                round,
                text: text.to_string(),
            })
        };
        let mut log = RoundLog::default();
        for r in &self.rounds {
            let n = r.round;
            let subject = || id_of(n, r.subject.as_deref().unwrap_or_default());
            let action = match r.action.as_str() {
                "first-count" => RoundAction::FirstCount,
                "surplus" => RoundAction::Surplus(subject()?),
                "elimination" => RoundAction::Elimination(subject()?),
                "iteration" => RoundAction::Iteration,
                "threshold" => RoundAction::Threshold(r.threshold.unwrap_or_default()),
                "fallback" => RoundAction::Fallback,
                "fill-remaining" => RoundAction::FillRemaining,
                other => {
                    return Err(ReportError::Kind {
                        round: n,
                        text: other.to_string(),
                    })
                }
            };
            let mut totals = Vec::with_capacity(r.votes.len());
            let mut events = Vec::new();
            let mut keep = Vec::new();
            for (c, v) in r.votes.iter().enumerate() {
                totals.push(num(n, &v.exact)?);
                match v.event.as_deref() {
                    None => {}
                    Some("elected") => events.push(RoundEvent::Elected {
                        candidate: c,
                        reached_quota: true,
                    }),
                    Some("elected-remaining") => events.push(RoundEvent::Elected {
                        candidate: c,
                        reached_quota: false,
                    }),
                    Some("eliminated") => events.push(RoundEvent::Eliminated(c)),
                    Some(other) => {
                        return Err(ReportError::Kind {
                            round: n,
                            text: other.to_string(),
                        })
                    }
                }
                if let Some(k) = &v.keep_factor {
                    keep.push(num(n, k)?);
                }
            }
            if r.quota_update {
                events.push(RoundEvent::QuotaUpdate);
            }
            let mut round = Round::new(action, totals, num(n, &r.exhausted_exact)?, num(n, &r.quota_exact)?);
            round.events = events;
            round.threshold = r.threshold;
            round.iterations = r.iterations;
            round.keep_factors = (!keep.is_empty()).then_some(keep);
            log.rounds.push(round);
        }
        let winners = self
            .winners
            .iter()
            .map(|w| id_of(0, w))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((WinnerSet::new(winners, self.tie_flag), log))
    }
}
