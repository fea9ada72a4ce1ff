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

use num_traits::{Signed, Zero};

use super::{TabulationError, WinnerSet};
use crate::arith::{int, Rational};
use crate::profile::{CandidateId, Election, PreferenceProfile};

/// Points `s_1 >= s_2 >= ... >= 0` for ranks 1, 2, ...; positions past the
/// end of the vector score zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScoringVector(Vec<Rational>);

impl ScoringVector {
    pub fn new(points: Vec<Rational>) -> Result<Self, TabulationError> {
        let bad = |why: &str| Err(TabulationError::InvalidScoringVector(why.to_string()));
        match points.first() {
            None => return bad("empty"),
            Some(s1) if !s1.is_positive() => return bad("first entry must be positive"),
            _ => {}
        }
        if points.iter().any(|s| s.is_negative()) {
            return bad("entries must be non-negative");
        }
        if points.windows(2).any(|w| w[0] < w[1]) {
            return bad("entries must be non-increasing");
        }
        Ok(ScoringVector(points))
    }

    /// `(m-1, m-2, ..., 0)`.
    pub fn borda(m: usize) -> Self {
        ScoringVector((0..m.max(2)).rev().map(|i| int(i as u64)).collect())
    }

    /// `(1)`.
    pub fn plurality() -> Self {
        ScoringVector(vec![int(1)])
    }

    pub fn points(&self) -> &[Rational] {
        &self.0
    }

    pub fn at_rank(&self, rank: usize) -> Rational {
        self.0.get(rank - 1).cloned().unwrap_or_else(Rational::zero)
    }
}

/// Total points per candidate. Unranked candidates receive nothing.
pub fn positional_scores(profile: &PreferenceProfile, sv: &ScoringVector) -> Vec<Rational> {
    let mut scores = vec![Rational::zero(); profile.num_candidates()];
    for b in profile.ballots() {
        let n = int(b.multiplicity());
        for (&c, s) in b.ranking().iter().zip(sv.points()) {
            scores[c] += s * &n;
        }
    }
    scores
}

/// The `k` highest scorers, lowest id first among equals.
pub fn positional_committee(election: &Election, sv: &ScoringVector) -> WinnerSet {
    let scores = positional_scores(election.profile(), sv);
    let k = election.seats();
    let mut order: Vec<CandidateId> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].cmp(&scores[a]).then(a.cmp(&b)));
    let tie_flag = order.len() > k && scores[order[k - 1]] == scores[order[k]];
    WinnerSet::new(order.into_iter().take(k), tie_flag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;
    use crate::profile::Candidate;

    fn election(m: usize, k: usize, ballots: Vec<(Vec<usize>, u64)>) -> Election {
        let roster = (0..m).map(|i| Candidate::independent(i, format!("c{i}"))).collect();
        Election::new(PreferenceProfile::new(roster, ballots).unwrap(), k, "t").unwrap()
    }

    #[test]
    fn validates_vectors() {
        assert!(ScoringVector::new(vec![]).is_err());
        assert!(ScoringVector::new(vec![int(0)]).is_err());
        assert!(ScoringVector::new(vec![int(1), int(2)]).is_err());
        assert!(ScoringVector::new(vec![int(1), int(-1)]).is_err());
        assert!(ScoringVector::new(vec![int(1), ratio(1, 100)]).is_ok());
    }

    #[test]
    fn borda_on_one_full_ballot_takes_top_k() {
        let e = election(4, 2, vec![(vec![2, 0, 3, 1], 1)]);
        let w = positional_committee(&e, &ScoringVector::borda(4));
        assert_eq!(w.members(), &[0, 2]);
        assert!(!w.tie_flag);
    }

    #[test]
    fn equal_points_everywhere_is_a_flagged_tie() {
        let sv = ScoringVector::new(vec![int(1), int(1), int(1)]).unwrap();
        let e = election(3, 1, vec![(vec![2, 1, 0], 1)]);
        let w = positional_committee(&e, &sv);
        assert_eq!(w.members(), &[0]);
        assert!(w.tie_flag);
    }

    #[test]
    fn plurality_counts_first_preferences() {
        let e = election(3, 2, vec![(vec![0, 1], 4), (vec![1], 3), (vec![2, 0], 2)]);
        let scores = positional_scores(e.profile(), &ScoringVector::plurality());
        assert_eq!(scores, vec![int(4), int(3), int(2)]);
    }
}
