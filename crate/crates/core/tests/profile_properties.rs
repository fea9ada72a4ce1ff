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

mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use voterbloc::profile::{
    ballots_ranking_only, bullet_votes, fraction_of, parse_blt, parse_csv, remove_ballots, to_blt, to_csv,
    BallotSelection, CandidateSet,
};

use common::{fixture, random_election};

fn arbitrary_election(seed: u64) -> voterbloc::profile::Election {
    random_election(&mut ChaCha8Rng::seed_from_u64(seed), 2..=7, 3, 8, 80)
}

proptest! {
    #[test]
    fn removal_lowers_the_total_by_the_selection(seed in any::<u64>(), mask in 1u64..128) {
        let e = arbitrary_election(seed);
        let p = e.profile();
        let s = CandidateSet::from_bits(mask).intersection(p.all_candidates());
        prop_assume!(!s.is_empty());
        let selection = ballots_ranking_only(p, s);
        let left = remove_ballots(p, &selection).unwrap();
        prop_assert_eq!(left.total_ballots(), p.total_ballots() - selection.total());
        prop_assert_eq!(left.candidates(), p.candidates());
        for b in left.ballots() {
            prop_assert!(!b.ranked().is_subset(s));
        }
    }

    #[test]
    fn fractions_floor_and_grow_with_the_numerator(seed in any::<u64>(), sigma in 1u64..12) {
        let e = arbitrary_election(seed);
        let p = e.profile();
        let everything = ballots_ranking_only(p, p.all_candidates());
        let mut previous = 0;
        for i in 1..=sigma {
            let part = fraction_of(&everything, i, sigma);
            prop_assert_eq!(part.total(), everything.total() * i / sigma);
            prop_assert!(part.total() >= previous);
            for (t, n) in part.entries() {
                prop_assert!(n <= everything.count(t));
            }
            previous = part.total();
        }
        prop_assert_eq!(fraction_of(&everything, sigma, sigma), everything);
    }

    #[test]
    fn serialisation_is_a_fixed_point(seed in any::<u64>()) {
        let e = arbitrary_election(seed);
        let blt = to_blt(&e);
        let again = parse_blt(&blt).unwrap();
        prop_assert_eq!(again.profile(), e.profile());
        prop_assert_eq!(to_blt(&again), blt);
        let csv = to_csv(&e);
        let from_csv = parse_csv(&csv).unwrap();
        prop_assert_eq!(from_csv.profile(), e.profile());
    }

    #[test]
    fn rankings_stay_unique(seed in any::<u64>(), keep in 1u64..5) {
        let e = arbitrary_election(seed);
        let p = e.profile();
        let part = fraction_of(&ballots_ranking_only(p, p.all_candidates()), keep, 5);
        let left = remove_ballots(p, &part).unwrap();
        let mut seen = std::collections::HashSet::new();
        for b in left.ballots() {
            prop_assert!(seen.insert(b.ranking().to_vec()));
        }
    }
}

#[test]
fn minimal_blt_file() {
    let e = parse_blt("2 1\n3 1 0\n0\n\"A\"\n\"B\"\n\"t\"").unwrap();
    assert_eq!(e.profile().num_candidates(), 2);
    assert_eq!(e.seats(), 1);
    assert_eq!(e.profile().ballots().len(), 1);
    assert_eq!(e.profile().ballots()[0].ranking(), &[0]);
    assert_eq!(e.profile().ballots()[0].multiplicity(), 3);
}

#[test]
fn repeated_rankings_merge() {
    let e = parse_blt("2 1\n2 1 2 0\n1 1 2 0\n0\n\"A\"\n\"B\"\n\"t\"").unwrap();
    assert_eq!(e.profile().ballots().len(), 1);
    assert_eq!(e.profile().ballots()[0].multiplicity(), 3);
}

#[test]
fn largest_remainder_apportionment() {
    let s = BallotSelection::from_entries([(0, 10), (1, 5)]);
    let third = fraction_of(&s, 1, 3);
    assert_eq!((third.count(0), third.count(1)), (3, 2));
    assert_eq!(fraction_of(&BallotSelection::from_entries([(0, 7)]), 1, 10).total(), 0);
}

#[test]
fn ward_bullets() {
    let ea = fixture("ea2012_ward5.blt");
    let holden = ea.profile().candidate_by_name("Holden").unwrap();
    let only = ballots_ranking_only(ea.profile(), CandidateSet::EMPTY.with(holden));
    assert!(only.total() >= 20);
    assert_eq!(only, bullet_votes(ea.profile(), holden));

    let na = fixture("na2022_ward8.blt");
    let mcdonald = na.profile().candidate_by_name("McDonald").unwrap();
    assert!(bullet_votes(na.profile(), mcdonald).total() >= 199);
}
