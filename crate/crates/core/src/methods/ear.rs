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

//! Expanding Approvals Rule.
//!
//! A ballot supports candidate `c` at threshold `j` when it ranks `c` in one
//! of its first `j` positions. The quota is `V/(k+1)`. Once some unelected
//! candidate's support reaches the quota, the best supported one is elected
//! and each of its supporters keeps `(S - q)/S` of its weight. Otherwise the
//! threshold grows. Past the last position, the best supported candidate is
//! elected outright and its supporters' weight drops to zero.

use num_traits::{One, Zero};

use super::log::{Round, RoundAction, RoundEvent, RoundLog};
use super::{argmax_by, exact_droop, TieTracker, WinnerSet};
use crate::arith::{int, Rational};
use crate::profile::{CandidateSet, Election};

pub fn ear(election: &Election) -> (WinnerSet, RoundLog) {
    let profile = election.profile();
    let m = profile.num_candidates();
    let k = election.seats();
    let q = exact_droop(election);
    let total = int(profile.total_ballots());
    // Per-ballot weight of each ballot type.
    let mut weight = vec![Rational::one(); profile.ballots().len()];
    let mut elected = CandidateSet::EMPTY;
    let mut order = Vec::with_capacity(k);
    let mut ties = TieTracker::default();
    let mut log = RoundLog::default();
    let mut j = 1;

    let support = |weight: &[Rational], j: usize, elected: CandidateSet| {
        let mut s = vec![Rational::zero(); m];
        for (b, w) in profile.ballots().iter().zip(weight) {
            if w.is_zero() {
                continue;
            }
            let mass = w * int(b.multiplicity());
            for &c in b.ranking().iter().take(j) {
                if !elected.contains(c) {
                    s[c] += &mass;
                }
            }
        }
        s
    };

    while order.len() < k {
        let fallback = j > m;
        let s = support(&weight, j.min(m), elected);
        let unelected = (0..m).filter(|&c| !elected.contains(c));
        let pick = if fallback {
            argmax_by(unelected, |c| s[c].clone())
        } else {
            argmax_by(unelected.filter(|&c| s[c] >= q), |c| s[c].clone())
        };
        let Some((c, tied)) = pick else {
            j += 1;
            continue;
        };
        ties.record(tied);
        let depth = j.min(m);
        let factor = if fallback {
            Rational::zero()
        } else {
            (&s[c] - &q) / &s[c]
        };
        for (b, w) in profile.ballots().iter().zip(weight.iter_mut()) {
            if b.rank_of(c).is_some_and(|r| r <= depth) {
                *w *= &factor;
            }
        }
        elected.insert(c);
        order.push(c);

        let held = profile
            .ballots()
            .iter()
            .zip(&weight)
            .fold(Rational::zero(), |acc, (b, w)| acc + w * int(b.multiplicity()));
        let action = if fallback {
            RoundAction::Fallback
        } else {
            RoundAction::Threshold(j)
        };
        let mut round = Round::new(action, s, &total - held, q.clone());
        round.threshold = Some(depth);
        round.events.push(RoundEvent::Elected {
            candidate: c,
            reached_quota: !fallback,
        });
        log.push(round);
    }

    (WinnerSet::new(order, ties.consequential(elected)), log)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::{Candidate, PreferenceProfile};

    fn election(m: usize, k: usize, ballots: Vec<(Vec<usize>, u64)>) -> Election {
        let roster = (0..m).map(|i| Candidate::independent(i, format!("c{i}"))).collect();
        Election::new(PreferenceProfile::new(roster, ballots).unwrap(), k, "t").unwrap()
    }

    #[test]
    fn majority_elected_at_first_threshold() {
        let e = election(2, 1, vec![(vec![0], 3), (vec![1], 1)]);
        let (w, log) = ear(&e);
        assert_eq!(w.members(), &[0]);
        assert_eq!(log.rounds[0].threshold, Some(1));
        assert_eq!(log.rounds[0].quota, int(2));
    }

    #[test]
    fn threshold_expands_until_quota() {
        // q = 3/2; no first-preference count reaches it, but everyone ranks B.
        let e = election(3, 1, vec![(vec![0, 1], 1), (vec![2, 1], 1), (vec![1], 1)]);
        let (w, log) = ear(&e);
        assert_eq!(w.members(), &[1]);
        assert_eq!(log.rounds[0].threshold, Some(2));
    }

    #[test]
    fn supporters_pay_a_quota() {
        // q = 3; A's 6 supporters keep half their weight, which then elects B.
        let e = election(3, 2, vec![(vec![0, 1], 6), (vec![2], 2), (vec![1], 1)]);
        let (w, log) = ear(&e);
        assert_eq!(w.members(), &[0, 1]);
        assert_eq!(log.rounds[0].exhausted, int(3));
        assert_eq!(log.rounds[1].totals[1], int(4));
    }

    #[test]
    fn fallback_elects_most_support() {
        // Nobody ranks B or C, so the second seat goes to the tie-break.
        let e = election(3, 2, vec![(vec![0], 2)]);
        let (w, log) = ear(&e);
        assert_eq!(w.members(), &[0, 1]);
        assert_eq!(log.rounds[1].action, RoundAction::Fallback);
        assert!(w.tie_flag);
    }
}
