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

//! Meek STV.
//!
//! Each candidate holds a keep factor. A ballot's unit weight flows down its
//! ranking and every candidate it reaches retains `keep` of what arrives. The
//! quota is `(V - exhausted) / (k + 1)` and moves as weight exhausts. After
//! every change to the roster the elected candidates' keep factors are
//! rescaled by `quota / votes` until each elected total sits within the
//! tolerance of the quota.
//!
//! Keep factors are rounded up to a multiple of `10^-18` after each update.
//! Without rounding their denominators grow without bound.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::log::{Round, RoundAction, RoundEvent, RoundLog};
use super::{argmin_by, TabulationError, TieTracker, WinnerSet};
use crate::arith::{ceil_to, int, pow10, ratio, Rational};
use crate::profile::{CandidateId, CandidateSet, Election};

const KEEP_GRID_DIGITS: u32 = 18;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeekParams {
    pub tolerance: Rational,
    /// Iteration budget for each settling pass.
    pub max_iterations: usize,
}

impl Default for MeekParams {
    fn default() -> Self {
        MeekParams {
            tolerance: ratio(1, 1_000_000_000),
            max_iterations: 1000,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Hopeful,
    Elected,
    Excluded,
}

struct State<'a> {
    election: &'a Election,
    status: Vec<Status>,
    keep: Vec<Rational>,
    grid: BigInt,
}

struct Distribution {
    votes: Vec<Rational>,
    exhausted: Rational,
    quota: Rational,
}

impl State<'_> {
    fn distribute(&self) -> Distribution {
        let profile = self.election.profile();
        let g = &self.grid;
        let scale = Rational::from_integer(g.clone());
        // Keep factors are multiples of 1/g, so weights stay integers over a
        // power of g and only the final totals need reducing.
        let keep: Vec<BigInt> = self.keep.iter().map(|k| (k * &scale).to_integer()).collect();
        let partial = keep.iter().filter(|k| !k.is_zero() && *k != g).count();
        let top = partial + 1;
        let mut powers = vec![BigInt::one()];
        for i in 0..top {
            let next = &powers[i] * g;
            powers.push(next);
        }
        let mut votes = vec![BigInt::zero(); keep.len()];
        let mut exhausted = BigInt::zero();
        for b in profile.ballots() {
            let n = BigInt::from(b.multiplicity());
            let mut weight = n;
            let mut depth = 0;
            let mut absorbed = false;
            for &c in b.ranking() {
                let k = &keep[c];
                if k.is_zero() {
                    continue;
                }
                if k == g {
                    votes[c] += &weight * &powers[top - depth];
                    absorbed = true;
                    break;
                }
                votes[c] += &weight * k * &powers[top - depth - 1];
                weight *= g - k;
                depth += 1;
            }
            if !absorbed {
                exhausted += weight * &powers[top - depth];
            }
        }
        let denominator = &powers[top];
        let votes: Vec<Rational> = votes.into_iter().map(|v| Rational::new(v, denominator.clone())).collect();
        let exhausted = Rational::new(exhausted, denominator.clone());
        let quota = (int(profile.total_ballots()) - &exhausted) / int(self.election.seats() as u64 + 1);
        Distribution {
            votes,
            exhausted,
            quota,
        }
    }

    fn settled(&self, d: &Distribution, tolerance: &Rational) -> bool {
        (0..self.keep.len())
            .filter(|&c| self.status[c] == Status::Elected)
            .all(|c| {
                let gap = &d.votes[c] - &d.quota;
                gap.abs() <= *tolerance || (self.keep[c].is_one() && gap < Rational::zero())
            })
    }

    /// Rescales keep factors until the elected totals settle on the quota.
    fn settle(&mut self, params: &MeekParams) -> Result<(Distribution, usize), TabulationError> {
        let mut d = self.distribute();
        let mut iterations = 0;
        while !self.settled(&d, &params.tolerance) {
            if iterations == params.max_iterations {
                return Err(TabulationError::MeekNonConvergence { iterations });
            }
            iterations += 1;
            for c in 0..self.keep.len() {
                if self.status[c] == Status::Elected && !d.votes[c].is_zero() {
                    let scaled = &self.keep[c] * &d.quota / &d.votes[c];
                    let rounded = ceil_to(&scaled, &self.grid);
                    self.keep[c] = if rounded > Rational::one() { Rational::one() } else { rounded };
                }
            }
            d = self.distribute();
        }
        Ok((d, iterations))
    }

    fn hopeful(&self) -> Vec<CandidateId> {
        (0..self.status.len()).filter(|&c| self.status[c] == Status::Hopeful).collect()
    }

    fn round(&self, action: RoundAction, d: &Distribution, iterations: usize) -> Round {
        let mut r = Round::new(action, d.votes.clone(), d.exhausted.clone(), d.quota.clone());
        r.keep_factors = Some(self.keep.clone());
        r.iterations = iterations;
        r
    }
}

pub fn meek_stv(election: &Election, params: &MeekParams) -> Result<(WinnerSet, RoundLog), TabulationError> {
    assert!(params.tolerance > Rational::zero(), "Meek tolerance must be positive");
    let m = election.profile().num_candidates();
    let k = election.seats();
    let mut state = State {
        election,
        status: vec![Status::Hopeful; m],
        keep: vec![Rational::one(); m],
        grid: pow10(KEEP_GRID_DIGITS),
    };
    let mut ties = TieTracker::default();
    let mut log = RoundLog::default();
    let mut elected: Vec<CandidateId> = Vec::new();
    let mut action = RoundAction::FirstCount;

    loop {
        let open = k - elected.len();
        let hopeful = state.hopeful();
        if hopeful.len() <= open && matches!(action, RoundAction::Elimination(_)) {
            let d = state.distribute();
            let mut round = state.round(action.clone(), &d, 0);
            if let RoundAction::Elimination(c) = action {
                round.events.push(RoundEvent::Eliminated(c));
            }
            log.push(round);
            let mut round = state.round(RoundAction::FillRemaining, &d, 0);
            for c in hopeful {
                state.status[c] = Status::Elected;
                elected.push(c);
                round.events.push(RoundEvent::Elected {
                    candidate: c,
                    reached_quota: false,
                });
            }
            log.push(round);
            break;
        }
        let (d, iterations) = state.settle(params)?;
        let mut round = state.round(action.clone(), &d, iterations);
        if let RoundAction::Elimination(c) = action {
            round.events.push(RoundEvent::Eliminated(c));
        }

        let mut reaching: Vec<CandidateId> = state.hopeful().into_iter().filter(|&c| d.votes[c] >= d.quota).collect();
        reaching.sort_by(|&a, &b| d.votes[b].cmp(&d.votes[a]).then(a.cmp(&b)));
        if reaching.len() > open {
            let cutoff = &d.votes[reaching[open - 1]];
            ties.record(reaching.iter().copied().filter(|&c| &d.votes[c] == cutoff).collect());
        }
        let newly: Vec<CandidateId> = reaching.into_iter().take(open).collect();
        for &c in &newly {
            state.status[c] = Status::Elected;
            elected.push(c);
            round.events.push(RoundEvent::Elected {
                candidate: c,
                reached_quota: true,
            });
        }
        log.push(round);

        if elected.len() == k {
            break;
        }
        if !newly.is_empty() {
            action = RoundAction::Iteration;
            continue;
        }

        let hopeful = state.hopeful();
        if hopeful.len() <= k - elected.len() {
            let mut round = state.round(RoundAction::FillRemaining, &d, 0);
            for c in hopeful {
                state.status[c] = Status::Elected;
                elected.push(c);
                round.events.push(RoundEvent::Elected {
                    candidate: c,
                    reached_quota: false,
                });
            }
            log.push(round);
            break;
        }
        let (c, tied) = argmin_by(hopeful, |c| d.votes[c].clone()).expect("hopeful candidates remain");
        ties.record(tied);
        state.status[c] = Status::Excluded;
        state.keep[c] = Rational::zero();
        action = RoundAction::Elimination(c);
    }

    let set: CandidateSet = elected.iter().copied().collect();
    Ok((WinnerSet::new(elected, ties.consequential(set)), log))
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
    fn all_bullets_elect_top_two() {
        let e = election(3, 2, vec![(vec![0], 5), (vec![1], 3), (vec![2], 1)]);
        let (w, _) = meek_stv(&e, &MeekParams::default()).unwrap();
        assert_eq!(w.members(), &[0, 1]);
        assert!(!w.tie_flag);
    }

    #[test]
    fn settles_within_tolerance_and_conserves() {
        let e = election(
            4,
            2,
            vec![(vec![0, 1], 9), (vec![0, 2, 1], 4), (vec![1, 3], 2), (vec![2, 3], 3), (vec![3], 3)],
        );
        let params = MeekParams::default();
        let (w, log) = meek_stv(&e, &params).unwrap();
        assert_eq!(w.len(), 2);
        let last = log.rounds.last().unwrap();
        for &c in w.members() {
            let kf = &last.keep_factors.as_ref().unwrap()[c];
            assert!(*kf >= Rational::zero() && *kf <= Rational::one());
            let gap = (&last.totals[c] - &last.quota).abs();
            assert!(gap <= params.tolerance || kf.is_one());
        }
        for r in &log.rounds {
            assert_eq!(r.accounted(), int(21));
        }
    }

    #[test]
    fn elected_candidates_keep_receiving_transfers() {
        // C>A ballots reach A after C is excluded; A's keep factor then drops.
        let e = election(3, 1, vec![(vec![0], 4), (vec![1], 3), (vec![2, 0], 2)]);
        let (w, log) = meek_stv(&e, &MeekParams::default()).unwrap();
        assert_eq!(w.members(), &[0]);
        assert!(log.rounds.iter().any(|r| r.eliminated() == Some(2)));
    }

    #[test]
    fn reports_non_convergence() {
        // Exhausting bullets keep moving the quota, so one pass cannot settle.
        let e = election(3, 2, vec![(vec![0], 10), (vec![1], 3), (vec![2], 2)]);
        let params = MeekParams {
            tolerance: ratio(1, 10u64.pow(15)),
            max_iterations: 1,
        };
        assert_eq!(
            meek_stv(&e, &params).unwrap_err(),
            TabulationError::MeekNonConvergence { iterations: 1 }
        );
        assert!(meek_stv(&e, &MeekParams::default()).is_ok());
    }
}
