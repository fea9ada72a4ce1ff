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

use super::{CriteriaError, Criterion, Probe, ViolationRecord};
use crate::methods::Method;
use crate::profile::{ballots_ranking_only, BallotSelection, CandidateSet, Election};

/// Number of count vectors (including the empty one) over the ballot types
/// that rank only losers, saturating at `u128::MAX`.
pub fn loser_only_budget(election: &Election, method: &Method) -> Result<u128, CriteriaError> {
    let winners = method.winners(election)?;
    let pool = loser_pool(election, winners.set());
    Ok(pool
        .entries()
        .fold(1u128, |acc, (_, n)| acc.saturating_mul(n as u128 + 1)))
}

fn loser_pool(election: &Election, winners: CandidateSet) -> BallotSelection {
    let profile = election.profile();
    ballots_ranking_only(profile, profile.all_candidates().difference(winners))
}

/// Every loser-only removal that changes the committee, tied tabulations
/// included. Refuses when the removal space exceeds `max_budget`.
pub fn oracle_ilvb(
    election: &Election,
    method: &Method,
    max_budget: u128,
) -> Result<Vec<ViolationRecord>, CriteriaError> {
    let mut probe = Probe::new(election, method)?;
    let pool: Vec<(usize, u64)> = loser_pool(election, probe.base.set()).entries().collect();
    let needed = pool.iter().fold(1u128, |acc, &(_, n)| acc.saturating_mul(n as u128 + 1));
    if needed > max_budget {
        return Err(CriteriaError::OracleBudget {
            needed,
            budget: max_budget,
        });
    }
    let mut counts = vec![0u64; pool.len()];
    let mut found = Vec::new();
    // Odometer over count vectors, skipping the all-zero start.
    loop {
        let Some(pos) = counts.iter().zip(&pool).position(|(&c, &(_, n))| c < n) else {
            break;
        };
        counts[pos] += 1;
        counts[..pos].iter_mut().for_each(|c| *c = 0);
        let selection = BallotSelection::from_entries(pool.iter().zip(&counts).map(|(&(i, _), &c)| (i, c)));
        if let Some(record) = probe.evaluate(Criterion::Ilvb, &selection)? {
            found.push(record);
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::methods::CcModel;
    use crate::profile::{Candidate, PreferenceProfile};

    fn election(m: usize, k: usize, ballots: Vec<(Vec<usize>, u64)>) -> Election {
        let roster = (0..m).map(|i| Candidate::independent(i, format!("c{i}"))).collect();
        Election::new(PreferenceProfile::new(roster, ballots).unwrap(), k, "t").unwrap()
    }

    #[test]
    fn budget_is_product_of_multiplicities() {
        let e = election(4, 1, vec![(vec![0], 10), (vec![1], 2), (vec![2, 3], 3)]);
        assert_eq!(loser_only_budget(&e, &Method::Scottish).unwrap(), 12);
        assert!(matches!(
            oracle_ilvb(&e, &Method::Scottish, 11),
            Err(CriteriaError::OracleBudget { needed: 12, budget: 11 })
        ));
    }

    #[test]
    fn no_loser_only_ballots_means_nothing_to_find() {
        let e = election(3, 1, vec![(vec![0, 1], 4), (vec![1, 0], 3), (vec![2, 0], 2)]);
        assert!(oracle_ilvb(&e, &Method::Scottish, 1).unwrap().is_empty());
    }

    #[test]
    fn cc_majority_survives_every_loser_removal() {
        let e = election(3, 1, vec![(vec![0], 10), (vec![1], 2), (vec![2], 1)]);
        let m = Method::Cc(CcModel::Pessimistic);
        assert_eq!(loser_only_budget(&e, &m).unwrap(), 6);
        assert!(oracle_ilvb(&e, &m, 6).unwrap().is_empty());
    }
}
