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

//! Proportionality for solid coalitions.
//!
//! A ballot is solidly committed to `S` when it ranks at least `|S|`
//! candidates and its first `|S|` entries are exactly `S`. A coalition whose
//! size reaches `j*q` must see `min(j, |S|)` members of `S` seated (never more
//! than `k`).

use std::collections::BTreeMap;
use std::str::FromStr;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{int, parse_rational, ratio, Rational};
use crate::methods::{positional_scores, ScoringVector, TabulationError, WinnerSet, CC_MAX_CANDIDATES};
use crate::profile::{CandidateSet, Election, PreferenceProfile};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolidCoalition {
    pub supported: CandidateSet,
    pub size: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PscConstraint {
    pub set: CandidateSet,
    pub size: u64,
    pub required: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PscConstraintSet {
    pub quota: Rational,
    pub constraints: Vec<PscConstraint>,
}

/// How the PSC quota is chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotaMode {
    /// `V/k`.
    Hare,
    /// `floor(V/(k+1)) + 1`.
    Droop,
    Fixed(Rational),
}

impl QuotaMode {
    pub fn quota(&self, election: &Election) -> Rational {
        match self {
            QuotaMode::Hare => hare_quota(election),
            QuotaMode::Droop => droop_quota(election),
            QuotaMode::Fixed(q) => q.clone(),
        }
    }
}

impl FromStr for QuotaMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "hare" => Ok(QuotaMode::Hare),
            "droop" => Ok(QuotaMode::Droop),
            other => match parse_rational(other) {
                Some(q) if q.is_positive() => Ok(QuotaMode::Fixed(q)),
                _ => Err(format!("quota mode must be hare, droop or a positive number, got {other:?}")),
            },
        }
    }
}

pub fn hare_quota(election: &Election) -> Rational {
    ratio(election.profile().total_ballots(), election.seats() as u64)
}

pub fn droop_quota(election: &Election) -> Rational {
    int(election.profile().total_ballots() / (election.seats() as u64 + 1) + 1)
}

/// Coalitions ordered by set size, then by bitmask.
pub fn solid_coalitions(profile: &PreferenceProfile) -> Vec<SolidCoalition> {
    let mut sizes: BTreeMap<(usize, u64), u64> = BTreeMap::new();
    for b in profile.ballots() {
        let mut prefix = CandidateSet::EMPTY;
        for &c in b.ranking() {
            prefix.insert(c);
            *sizes.entry((prefix.len(), prefix.bits())).or_insert(0) += b.multiplicity();
        }
    }
    sizes
        .into_iter()
        .map(|((_, bits), size)| SolidCoalition {
            supported: CandidateSet::from_bits(bits),
            size,
        })
        .collect()
}

pub fn psc_constraints(profile: &PreferenceProfile, k: usize, q: &Rational) -> PscConstraintSet {
    assert!(q.is_positive(), "PSC quota must be positive");
    let constraints = solid_coalitions(profile)
        .into_iter()
        .filter_map(|coalition| {
            let j = (int(coalition.size) / q).floor().to_integer();
            let j = j.to_usize().unwrap_or(usize::MAX);
            let required = j.min(coalition.supported.len()).min(k);
            (required > 0).then_some(PscConstraint {
                set: coalition.supported,
                size: coalition.size,
                required,
            })
        })
        .collect();
    PscConstraintSet {
        quota: q.clone(),
        constraints,
    }
}

pub fn is_psc_committee(committee: CandidateSet, constraints: &PscConstraintSet) -> bool {
    violated(committee, constraints).next().is_none()
}

fn violated(committee: CandidateSet, constraints: &PscConstraintSet) -> impl Iterator<Item = &PscConstraint> {
    constraints
        .constraints
        .iter()
        .filter(move |c| committee.intersection(c.set).len() < c.required)
}

/// Every compatible size-`k` committee, in lexicographic order.
pub fn enumerate_psc_committees(election: &Election, q: &Rational) -> Result<Vec<CandidateSet>, TabulationError> {
    let m = election.profile().num_candidates();
    if m > CC_MAX_CANDIDATES {
        return Err(TabulationError::EnumerationGuard {
            candidates: m,
            limit: CC_MAX_CANDIDATES,
        });
    }
    let k = election.seats();
    let cs = psc_constraints(election.profile(), k, q);
    let mut out = Vec::new();
    extend(0, m, k, CandidateSet::EMPTY, &cs, &mut out);
    Ok(out)
}

fn extend(next: usize, m: usize, k: usize, chosen: CandidateSet, cs: &PscConstraintSet, out: &mut Vec<CandidateSet>) {
    let open = k - chosen.len();
    // Prune when some constraint cannot be met by the remaining picks.
    let reachable = CandidateSet::all(m).difference(CandidateSet::all(next));
    for c in &cs.constraints {
        let have = chosen.intersection(c.set).len();
        let can_add = reachable.intersection(c.set).len().min(open);
        if have + can_add < c.required {
            return;
        }
    }
    if open == 0 {
        out.push(chosen);
        return;
    }
    for c in next..=m - open {
        extend(c + 1, m, k, chosen.with(c), cs, out);
    }
}

/// The compatible committee with the highest total positional score.
/// Partial ballots give nothing to unranked candidates.
pub fn qpsc_scoring_rule(election: &Election, q: &Rational, sv: &ScoringVector) -> Result<WinnerSet, TabulationError> {
    let scores = positional_scores(election.profile(), sv);
    let mut best: Option<(Rational, CandidateSet)> = None;
    let mut tied = false;
    for committee in enumerate_psc_committees(election, q)? {
        let total = committee.iter().fold(Rational::zero(), |acc, c| acc + &scores[c]);
        match &best {
            Some((b, _)) if total < *b => {}
            Some((b, _)) if total == *b => tied = true,
            _ => {
                best = Some((total, committee));
                tied = false;
            }
        }
    }
    let (_, committee) = best.ok_or(TabulationError::NoCompatibleCommittee)?;
    Ok(WinnerSet::new(committee.iter(), tied))
}

/// Constraints at the Hare quota `V/k` that `winners` fails.
pub fn audit_hare_psc(election: &Election, winners: &WinnerSet) -> Vec<PscConstraint> {
    let cs = psc_constraints(election.profile(), election.seats(), &hare_quota(election));
    violated(winners.set(), &cs).cloned().collect()
}
