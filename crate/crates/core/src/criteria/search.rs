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

//! Heuristic removal searches.
//!
//! Targets (losers, or winner/loser pairs) are probed in parallel; results
//! are merged in target order and deduplicated by selection, so the output is
//! independent of the thread count.

use std::collections::HashSet;

use rayon::prelude::*;

use super::{party_seats, CriteriaError, Criterion, Probe, ViolationRecord};
use crate::methods::{Method, WinnerSet};
use crate::profile::{
    ballots_ranking_only_filtered, fraction_of, BallotSelection, BallotType, CandidateId, CandidateSet, Election,
    PreferenceProfile,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PrefixOrder {
    /// Most-helped winners first, by the transfer differential between the
    /// targeted winner and loser.
    #[default]
    TransferDifferential,
    /// Ascending candidate id.
    CandidateId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchParams {
    pub sigma_l: u64,
    pub sigma_w: u64,
    pub discard_tied_results: bool,
    pub prefix_order: PrefixOrder,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams {
            sigma_l: 10,
            sigma_w: 3,
            discard_tied_results: true,
            prefix_order: PrefixOrder::TransferDifferential,
        }
    }
}

impl SearchParams {
    pub fn validate(&self) -> Result<(), CriteriaError> {
        if self.sigma_l == 0 || self.sigma_w == 0 {
            return Err(CriteriaError::Precondition("sigma_l and sigma_w must be at least 1".into()));
        }
        Ok(())
    }
}

/// `x` ranked strictly above `y`; an unranked candidate sits below every
/// ranked one.
fn above(ballot: &BallotType, x: CandidateId, y: CandidateId) -> bool {
    match (ballot.rank_of(x), ballot.rank_of(y)) {
        (Some(rx), Some(ry)) => rx < ry,
        (Some(_), None) => true,
        _ => false,
    }
}

/// The other winners `W \ {a}` in the order their ballots are added to the
/// removal pool when targeting winner `a` and loser `b`.
pub fn iwvb_prefix_order(
    profile: &PreferenceProfile,
    winners: CandidateSet,
    a: CandidateId,
    b: CandidateId,
    order: PrefixOrder,
) -> Vec<CandidateId> {
    let others = winners.without(a);
    match order {
        PrefixOrder::CandidateId => others.to_vec(),
        PrefixOrder::TransferDifferential => {
            let mut keyed: Vec<(i128, CandidateId)> = others
                .iter()
                .map(|c| {
                    let diff: i128 = profile
                        .ballots()
                        .iter()
                        .filter(|bt| above(bt, c, a) && above(bt, c, b))
                        .map(|bt| {
                            let n = bt.multiplicity() as i128;
                            if above(bt, a, b) {
                                n
                            } else if above(bt, b, a) {
                                -n
                            } else {
                                0
                            }
                        })
                        .sum();
                    (diff, c)
                })
                .collect();
            keyed.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
            keyed.into_iter().map(|(_, c)| c).collect()
        }
    }
}

/// One probe target: the removal pools to sweep and how to label findings.
struct Target {
    pools: Vec<BallotSelection>,
    loser: CandidateId,
    winner: Option<CandidateId>,
}

fn sweep(
    election: &Election,
    method: &Method,
    base: &WinnerSet,
    criterion: Criterion,
    target: &Target,
    sigma: u64,
) -> Result<Vec<ViolationRecord>, CriteriaError> {
    let mut probe = Probe::with_base(election, method, base.clone());
    let mut found = Vec::new();
    for pool in target.pools.iter().filter(|p| !p.is_empty()) {
        for i in 1..=sigma {
            let selection = fraction_of(pool, i, sigma);
            if let Some(mut record) = probe.evaluate(criterion, &selection)? {
                record.target_loser = Some(target.loser);
                found.push(record);
            }
        }
    }
    Ok(found)
}

/// Probes every target and merges the findings in target order, keeping the
/// first record for each selection.
fn run(
    election: &Election,
    method: &Method,
    criterion: Criterion,
    targets: Vec<Target>,
    sigma: u64,
    params: &SearchParams,
    keep: impl Fn(&Target, &ViolationRecord) -> bool + Sync,
) -> Result<Vec<ViolationRecord>, CriteriaError> {
    let base = method.winners(election)?;
    let per_target: Vec<Vec<ViolationRecord>> = targets
        .par_iter()
        .map(|t| {
            let found = sweep(election, method, &base, criterion, t, sigma)?;
            Ok(found.into_iter().filter(|r| keep(t, r)).collect())
        })
        .collect::<Result<_, CriteriaError>>()?;
    let mut seen = HashSet::new();
    Ok(per_target
        .into_iter()
        .flatten()
        .filter(|r| !(params.discard_tied_results && r.tied()))
        .filter(|r| seen.insert(r.removed.clone()))
        .collect())
}

fn losers(election: &Election, winners: &WinnerSet) -> CandidateSet {
    election.profile().all_candidates().difference(winners.set())
}

/// For each loser `B`, removes growing fractions of the ballots that rank
/// only losers other than `B`.
pub fn search_ilvb(
    election: &Election,
    method: &Method,
    params: &SearchParams,
) -> Result<Vec<ViolationRecord>, CriteriaError> {
    params.validate()?;
    let base = method.winners(election)?;
    let l = losers(election, &base);
    let targets = l
        .iter()
        .map(|b| Target {
            pools: vec![ballots_ranking_only_filtered(election.profile(), l.without(b), CandidateSet::EMPTY)],
            loser: b,
            winner: None,
        })
        .collect();
    run(election, method, Criterion::Ilvb, targets, params.sigma_l, params, |_, _| true)
}

fn prefix_pools(
    profile: &PreferenceProfile,
    winners: CandidateSet,
    a: CandidateId,
    b: CandidateId,
    order: PrefixOrder,
    forbidden: CandidateSet,
) -> Vec<BallotSelection> {
    let mut prefix = CandidateSet::EMPTY;
    iwvb_prefix_order(profile, winners, a, b, order)
        .into_iter()
        .map(|c| {
            prefix.insert(c);
            ballots_ranking_only_filtered(profile, prefix, forbidden)
        })
        .collect()
}

/// For each winner `A` and loser `B`, removes growing fractions of the
/// ballots ranking only the first `p` other winners, for `p = 1..k-1`.
/// With `star` the IWVB* definition is applied instead of IWVB.
pub fn search_iwvb(
    election: &Election,
    method: &Method,
    params: &SearchParams,
    star: bool,
) -> Result<Vec<ViolationRecord>, CriteriaError> {
    params.validate()?;
    let base = method.winners(election)?;
    let w = base.set();
    let l = losers(election, &base);
    let mut targets = Vec::new();
    for a in w.iter() {
        for b in l.iter() {
            targets.push(Target {
                pools: prefix_pools(election.profile(), w, a, b, params.prefix_order, CandidateSet::EMPTY),
                loser: b,
                winner: Some(a),
            });
        }
    }
    let criterion = if star { Criterion::IwvbStar } else { Criterion::Iwvb };
    run(election, method, criterion, targets, params.sigma_w, params, |_, _| true)
}

fn party_members(profile: &PreferenceProfile, party: &str) -> CandidateSet {
    (0..profile.num_candidates()).filter(|&c| profile.party(c) == party).collect()
}

/// Searches for removals that move exactly one seat from the party of a
/// winner `A` to the party of a loser `B`, using only ballots that rank no
/// member of either party.
pub fn search_party_swaps(
    election: &Election,
    method: &Method,
    params: &SearchParams,
    criterion: Criterion,
) -> Result<Vec<ViolationRecord>, CriteriaError> {
    params.validate()?;
    let profile = election.profile();
    let base = method.winners(election)?;
    let w = base.set();
    let l = losers(election, &base);
    let mut targets = Vec::new();
    for a in w.iter() {
        for b in l.iter() {
            if profile.party(a) == profile.party(b) {
                continue;
            }
            let forbidden = party_members(profile, profile.party(a)).union(party_members(profile, profile.party(b)));
            let pools = match criterion {
                Criterion::Ilvb => vec![ballots_ranking_only_filtered(profile, l.without(b), forbidden)],
                Criterion::Iwvb | Criterion::IwvbStar => {
                    prefix_pools(profile, w, a, b, params.prefix_order, forbidden)
                }
            };
            targets.push(Target {
                pools,
                loser: b,
                winner: Some(a),
            });
        }
    }
    let sigma = match criterion {
        Criterion::Ilvb => params.sigma_l,
        Criterion::Iwvb | Criterion::IwvbStar => params.sigma_w,
    };
    let before = party_seats(election, &base);
    let keep = |t: &Target, r: &ViolationRecord| {
        let a = t.winner.expect("party targets name a winner");
        let after = party_seats(election, &r.modified_winners);
        let seats = |map: &std::collections::HashMap<String, usize>, c: CandidateId| {
            map.get(profile.party(c)).copied().unwrap_or(0) as i64
        };
        seats(&before, a) - seats(&after, a) == 1 && seats(&after, t.loser) - seats(&before, t.loser) == 1
    };
    let mut records = run(election, method, criterion, targets, sigma, params, keep)?;
    for r in &mut records {
        r.party_swap = true;
    }
    Ok(records)
}
