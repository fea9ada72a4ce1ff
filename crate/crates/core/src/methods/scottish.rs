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

//! Scottish STV with weighted inclusive surplus transfers.

use num_traits::Zero;

use super::log::{Round, RoundAction, RoundEvent, RoundLog};
use super::{argmax_by, argmin_by, TieTracker, WinnerSet};
use crate::arith::{int, Rational};
use crate::profile::{CandidateId, CandidateSet, Election};

/// `floor(V/(k+1)) + 1`.
pub fn scottish_quota(election: &Election) -> u64 {
    election.profile().total_ballots() / (election.seats() as u64 + 1) + 1
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Hopeful,
    Elected,
    Excluded,
}

struct Parcel {
    ballot: usize,
    /// Total value carried by all copies of this ballot type.
    weight: Rational,
    pos: usize,
}

struct Count<'a> {
    election: &'a Election,
    status: Vec<Status>,
    parcels: Vec<Parcel>,
    /// Parcel indices held by each candidate.
    piles: Vec<Vec<usize>>,
    /// Totals of elected candidates whose surplus has been transferred.
    fixed: Vec<Option<Rational>>,
    quota: Rational,
}

impl<'a> Count<'a> {
    fn hopeful(&self) -> impl Iterator<Item = CandidateId> + '_ {
        (0..self.status.len()).filter(|&c| self.status[c] == Status::Hopeful)
    }

    fn route(&mut self, p: usize) {
        let ranking = self.election.profile().ballots()[self.parcels[p].ballot].ranking();
        let parcel = &mut self.parcels[p];
        while parcel.pos < ranking.len() && self.status[ranking[parcel.pos]] != Status::Hopeful {
            parcel.pos += 1;
        }
        if let Some(&c) = ranking.get(parcel.pos) {
            self.piles[c].push(p);
        }
    }

    fn pile_total(&self, c: CandidateId) -> Rational {
        self.piles[c]
            .iter()
            .fold(Rational::zero(), |acc, &p| acc + &self.parcels[p].weight)
    }

    fn totals(&self) -> Vec<Rational> {
        (0..self.status.len())
            .map(|c| match &self.fixed[c] {
                Some(v) => v.clone(),
                None => self.pile_total(c),
            })
            .collect()
    }

    fn snapshot(&self, action: RoundAction) -> Round {
        let totals = self.totals();
        let held = totals.iter().fold(Rational::zero(), |acc, v| acc + v);
        let exhausted = int(self.election.profile().total_ballots()) - held;
        Round::new(action, totals, exhausted, self.quota.clone())
    }
}

pub fn scottish_stv(election: &Election) -> (WinnerSet, RoundLog) {
    let profile = election.profile();
    let m = profile.num_candidates();
    let k = election.seats();
    let mut count = Count {
        election,
        status: vec![Status::Hopeful; m],
        parcels: profile
            .ballots()
            .iter()
            .enumerate()
            .map(|(i, b)| Parcel {
                ballot: i,
                weight: int(b.multiplicity()),
                pos: 0,
            })
            .collect(),
        piles: vec![Vec::new(); m],
        fixed: vec![None; m],
        quota: int(scottish_quota(election)),
    };
    for p in 0..count.parcels.len() {
        count.route(p);
    }

    let mut ties = TieTracker::default();
    let mut log = RoundLog::default();
    let mut elected: Vec<CandidateId> = Vec::new();
    // Elected candidates whose surplus is still to be transferred.
    let mut pending: Vec<CandidateId> = Vec::new();

    let mut round = count.snapshot(RoundAction::FirstCount);
    elect_reaching_quota(&mut count, &mut round, &mut elected, &mut pending, &mut ties, k);
    log.push(round);

    while elected.len() < k {
        let hopeful: Vec<CandidateId> = count.hopeful().collect();
        if hopeful.len() <= k - elected.len() {
            let mut round = count.snapshot(RoundAction::FillRemaining);
            for c in hopeful {
                count.status[c] = Status::Elected;
                elected.push(c);
                round.events.push(RoundEvent::Elected {
                    candidate: c,
                    reached_quota: false,
                });
            }
            log.push(round);
            break;
        }

        let totals = count.totals();
        let action = if let Some((c, tied)) = argmax_by(pending.iter().copied(), |c| &totals[c] - &count.quota) {
            ties.record(tied);
            pending.retain(|&x| x != c);
            let total = totals[c].clone();
            let surplus = &total - &count.quota;
            let pile = std::mem::take(&mut count.piles[c]);
            count.fixed[c] = Some(count.quota.clone());
            if surplus.is_zero() {
                continue;
            }
            let tv = surplus / total;
            for p in pile {
                count.parcels[p].weight *= &tv;
                count.route(p);
            }
            RoundAction::Surplus(c)
        } else {
            let (c, tied) = argmin_by(hopeful.iter().copied(), |c| totals[c].clone()).expect("hopeful candidates remain");
            ties.record(tied);
            count.status[c] = Status::Excluded;
            for p in std::mem::take(&mut count.piles[c]) {
                count.route(p);
            }
            RoundAction::Elimination(c)
        };

        let mut round = count.snapshot(action.clone());
        if let RoundAction::Elimination(c) = action {
            round.events.push(RoundEvent::Eliminated(c));
        }
        elect_reaching_quota(&mut count, &mut round, &mut elected, &mut pending, &mut ties, k);
        log.push(round);
    }

    let set: CandidateSet = elected.iter().copied().collect();
    (WinnerSet::new(elected, ties.consequential(set)), log)
}

fn elect_reaching_quota(
    count: &mut Count<'_>,
    round: &mut Round,
    elected: &mut Vec<CandidateId>,
    pending: &mut Vec<CandidateId>,
    ties: &mut TieTracker,
    k: usize,
) {
    let mut reaching: Vec<CandidateId> = count.hopeful().filter(|&c| round.totals[c] >= count.quota).collect();
    // Largest first; equal totals only matter if the last seat is contested.
    reaching.sort_by(|&a, &b| round.totals[b].cmp(&round.totals[a]).then(a.cmp(&b)));
    let open = k - elected.len();
    if reaching.len() > open {
        let cutoff = &round.totals[reaching[open - 1]];
        ties.record(reaching.iter().copied().filter(|&c| &round.totals[c] == cutoff).collect());
    }
    for c in reaching.into_iter().take(open) {
        count.status[c] = Status::Elected;
        elected.push(c);
        pending.push(c);
        round.events.push(RoundEvent::Elected {
            candidate: c,
            reached_quota: true,
        });
    }
}
