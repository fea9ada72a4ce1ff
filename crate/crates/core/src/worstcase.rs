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

//! Parametric worst-case profiles.
//!
//! Each family builds a profile, the bloc of ballots whose removal flips the
//! committee, and the committees expected before and after. Candidates are
//! numbered A-block first, then B, then C, so the lowest-id tie-break never
//! decides one of these outcomes.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::arith::{ratio, Rational};
use crate::criteria::Criterion;
use crate::methods::{CcModel, Method, ScoringVector};
use crate::profile::{BallotSelection, Candidate, CandidateId, Election, PreferenceProfile};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// Scottish/Meek STV, loser bloc: every `A_i` replaced by `C_i`.
    StvIlvb,
    /// EAR, loser bloc: every `A_i` replaced by `B_i`.
    EarIlvb,
    /// Scottish/Meek STV, bullets for one winner: `A` block replaced by `B` block.
    StvIwvb,
    /// EAR, bullets for one winner: `{A, B..}` replaced by `{C..}`.
    EarIwvb,
    /// Scottish/Meek STV, `a` bullets for `A`, `b` ballots `A > B_i`, `c`
    /// bullets for each `C_i`. `A` keeps its seat, the rest flips.
    StvIwvbStar { a: u64, b: u64, c: Option<u64> },
    /// EAR analogue of [`Family::StvIwvbStar`].
    EarIwvbStar { a: u64 },
    /// Chamberlin-Courant (both models): `A` block replaced by `B` block.
    CcIwvb,
    /// q-PSC scoring rule, `k = 2`, scoring vector `(1, 1/100)`.
    QpscLeft,
    /// q-PSC scoring rule, `k = 2`, scoring vector `(1, 1/1000)`.
    QpscRight,
}

impl Family {
    pub const DEFAULT_A: u64 = 1000;
    pub const DEFAULT_B: u64 = 20;

    pub fn all_defaults() -> Vec<Family> {
        vec![
            Family::StvIlvb,
            Family::EarIlvb,
            Family::StvIwvb,
            Family::EarIwvb,
            Family::StvIwvbStar {
                a: Self::DEFAULT_A,
                b: Self::DEFAULT_B,
                c: None,
            },
            Family::EarIwvbStar { a: Self::DEFAULT_A },
            Family::CcIwvb,
            Family::QpscLeft,
            Family::QpscRight,
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::StvIlvb => "stv-ilvb",
            Family::EarIlvb => "ear-ilvb",
            Family::StvIwvb => "stv-iwvb",
            Family::EarIwvb => "ear-iwvb",
            Family::StvIwvbStar { .. } => "stv-iwvb-star",
            Family::EarIwvbStar { .. } => "ear-iwvb-star",
            Family::CcIwvb => "cc-iwvb",
            Family::QpscLeft => "qpsc-left",
            Family::QpscRight => "qpsc-right",
        }
    }

    /// Seat counts for which the construction is valid.
    pub fn seat_range(&self) -> std::ops::RangeInclusive<usize> {
        match self {
            Family::StvIlvb | Family::EarIlvb => 1..=usize::MAX,
            Family::StvIwvb | Family::EarIwvb | Family::StvIwvbStar { .. } | Family::CcIwvb => 2..=usize::MAX,
            Family::EarIwvbStar { .. } => 3..=usize::MAX,
            Family::QpscLeft | Family::QpscRight => 2..=2,
        }
    }

    pub fn criterion(&self) -> Criterion {
        match self {
            Family::StvIlvb | Family::EarIlvb | Family::QpscLeft | Family::QpscRight => Criterion::Ilvb,
            Family::StvIwvb | Family::EarIwvb | Family::CcIwvb => Criterion::Iwvb,
            Family::StvIwvbStar { .. } | Family::EarIwvbStar { .. } => Criterion::IwvbStar,
        }
    }

    pub fn methods(&self) -> Vec<Method> {
        match self {
            Family::StvIlvb | Family::StvIwvb | Family::StvIwvbStar { .. } => vec![Method::Scottish, Method::meek()],
            Family::EarIlvb | Family::EarIwvb | Family::EarIwvbStar { .. } => vec![Method::Ear],
            Family::CcIwvb => vec![Method::Cc(CcModel::Optimistic), Method::Cc(CcModel::Pessimistic)],
            Family::QpscLeft => vec![Method::PscScoring(qpsc_vector(100))],
            Family::QpscRight => vec![Method::PscScoring(qpsc_vector(1000))],
        }
    }
}

fn qpsc_vector(denominator: u64) -> ScoringVector {
    ScoringVector::new(vec![ratio(1, 1), ratio(1, denominator)]).expect("valid scoring vector")
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = GeneratorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::all_defaults()
            .into_iter()
            .find(|f| f.name() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| GeneratorError::UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("{family} needs k in {min}..={max}, got {k}")]
    Seats { family: String, k: usize, min: usize, max: usize },
    #[error("parameters a={a}, b={b}, c={c} at k={k} violate kb/(k+1) > c > (kb-c)/(k+1)")]
    Region { k: usize, a: u64, b: u64, c: u64 },
}

#[derive(Clone, Debug)]
pub struct Generated {
    pub family: Family,
    pub election: Election,
    pub removal: BallotSelection,
    pub before: Vec<CandidateId>,
    pub after: Vec<CandidateId>,
}

impl Generated {
    pub fn modified(&self) -> Election {
        self.election.without(&self.removal).expect("removal drawn from the profile")
    }
}

/// Builds a profile from labelled blocks, recording which blocks to remove.
struct Builder {
    names: Vec<String>,
    ballots: Vec<(Vec<CandidateId>, u64)>,
    removed: Vec<Vec<CandidateId>>,
}

impl Builder {
    fn new(names: Vec<String>) -> Self {
        Builder {
            names,
            ballots: Vec::new(),
            removed: Vec::new(),
        }
    }

    fn id(&self, name: &str) -> CandidateId {
        self.names.iter().position(|n| n == name).unwrap_or_else(|| panic!("no candidate {name}"))
    }

    fn ranking(&self, names: &[&str]) -> Vec<CandidateId> {
        names.iter().map(|n| self.id(n)).collect()
    }

    fn add(&mut self, count: u64, names: &[&str]) {
        if count > 0 {
            self.ballots.push((self.ranking(names), count));
        }
    }

    fn remove(&mut self, count: u64, names: &[&str]) {
        self.add(count, names);
        self.removed.push(self.ranking(names));
    }

    fn ids(&self, names: &[String]) -> Vec<CandidateId> {
        names.iter().map(|n| self.id(n)).collect()
    }

    fn finish(self, family: Family, k: usize, title: String, before: &[String], after: &[String]) -> Generated {
        let before = self.ids(before);
        let after = self.ids(after);
        let roster = self
            .names
            .iter()
            .enumerate()
            .map(|(i, n)| Candidate::independent(i, n.clone()))
            .collect();
        let profile = PreferenceProfile::new(roster, self.ballots).expect("generated profile is valid");
        let removal = BallotSelection::from_entries(self.removed.iter().map(|r| {
            let index = profile.ballot_index(r).expect("removed ballots are present");
            (index, profile.ballots()[index].multiplicity())
        }));
        let election = Election::new(profile, k, title).expect("generated election is valid");
        Generated {
            family,
            election,
            removal,
            before,
            after,
        }
    }
}

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// Default `c`: the largest integer strictly below `kb/(k+1)`.
pub fn default_c(k: usize, b: u64) -> u64 {
    let k = k as u64;
    (k * b).div_ceil(k + 1) - 1
}

fn in_region(k: usize, b: u64, c: u64) -> bool {
    let k = k as u64;
    let c_r: Rational = ratio(c, 1);
    ratio(k * b, k + 1) > c_r && c_r > ratio((k * b).saturating_sub(c), k + 1) && k * b >= c
}

pub fn generate(family: &Family, k: usize) -> Result<Generated, GeneratorError> {
    let range = family.seat_range();
    if !range.contains(&k) {
        return Err(GeneratorError::Seats {
            family: family.name().to_string(),
            k,
            min: *range.start(),
            max: *range.end(),
        });
    }
    let title = format!("{} k={k}", family.name());
    let a = labels("A", k);
    let b = labels("B", k);
    let c = labels("C", k);
    Ok(match family {
        Family::StvIlvb => {
            let mut g = Builder::new([a.clone(), b.clone(), c.clone()].concat());
            for i in 0..k {
                let (ai, bi, ci) = (a[i].as_str(), b[i].as_str(), c[i].as_str());
                g.add(7, &[ai, bi, ci]);
                g.add(9, &[ai, ci, bi]);
                g.add(12, &[bi, ci, ai]);
                g.add(13, &[ci, ai, bi]);
                g.remove(2, &[bi]);
            }
            g.finish(family.clone(), k, title, &a, &c)
        }
        Family::EarIlvb => {
            let mut names = [a.clone(), b.clone()].concat();
            names.push("C".into());
            let mut g = Builder::new(names);
            for i in 0..k {
                g.add(8, &[&a[i]]);
                g.add(10 * k as u64, &[&b[i], &a[i]]);
            }
            g.remove(3 * k as u64, &["C"]);
            g.finish(family.clone(), k, title, &a, &b)
        }
        Family::StvIwvb => {
            let kk = k as u64;
            let mut g = Builder::new([a.clone(), b.clone()].concat());
            g.remove(14 * kk - 12, &["A1"]);
            g.add(4 * kk + 2, &["A1", "B1"]);
            for i in 1..k {
                g.add(2, &["A1", &b[i]]);
            }
            g.add(6 * kk + 2, &["B1"]);
            for i in 1..k {
                g.add(2, &["B1", &a[i]]);
            }
            for i in 1..k {
                g.add(10 * kk, &[&a[i]]);
                g.add(10 * kk, &[&b[i]]);
            }
            g.finish(family.clone(), k, title, &a, &b)
        }
        Family::EarIwvb => {
            let kk = k as u64;
            let bs = labels("B", k - 1);
            let mut names = vec!["A".to_string()];
            names.extend(bs.iter().cloned());
            names.extend(c.iter().cloned());
            let mut g = Builder::new(names);
            g.remove(20 * kk + 20, &["A"]);
            for i in 0..k - 1 {
                g.add(10, &[&bs[i]]);
                g.add(20 * kk, &[&c[i], &bs[i]]);
            }
            g.add(20 * kk, &[&c[k - 1]]);
            let mut before = vec!["A".to_string()];
            before.extend(bs);
            g.finish(family.clone(), k, title, &before, &c)
        }
        Family::StvIwvbStar { a: bullets, b: pairs, c: cs } => {
            let cval = cs.unwrap_or_else(|| default_c(k, *pairs));
            if !in_region(k, *pairs, cval) {
                return Err(GeneratorError::Region {
                    k,
                    a: *bullets,
                    b: *pairs,
                    c: cval,
                });
            }
            let bs = labels("B", k - 1);
            let cs = labels("C", k - 1);
            let mut names = vec!["A".to_string()];
            names.extend(bs.iter().cloned());
            names.extend(cs.iter().cloned());
            let mut g = Builder::new(names);
            g.remove(*bullets, &["A"]);
            for i in 0..k - 1 {
                g.add(*pairs, &["A", &bs[i]]);
                g.add(cval, &[&cs[i]]);
            }
            let family = Family::StvIwvbStar {
                a: *bullets,
                b: *pairs,
                c: Some(cval),
            };
            let before = [vec!["A".to_string()], bs].concat();
            let after = [vec!["A".to_string()], cs].concat();
            g.finish(family, k, title, &before, &after)
        }
        Family::EarIwvbStar { a: bullets } => {
            let kk = k as u64;
            let bs = labels("B", k - 1);
            let cs = labels("C", k - 1);
            let mut names = vec!["A".to_string()];
            names.extend(bs.iter().cloned());
            names.extend(cs.iter().cloned());
            let mut g = Builder::new(names);
            g.remove(*bullets, &["A"]);
            for i in 0..k - 1 {
                g.add(10 * kk, &["A", &cs[i], &bs[i]]);
                g.add(10, &[&bs[i]]);
                g.add(10, &[&cs[i], &bs[i]]);
            }
            let before = [vec!["A".to_string()], bs].concat();
            let after = [vec!["A".to_string()], cs].concat();
            g.finish(family.clone(), k, title, &before, &after)
        }
        Family::CcIwvb => {
            let mut g = Builder::new([a.clone(), b.clone()].concat());
            g.remove(3, &["A1"]);
            g.add(1, &["A1", "B1"]);
            g.add(2, &["B1", "A1"]);
            g.add(1, &["A1", "B2"]);
            g.add(2, &["B2", "A1"]);
            for i in 1..k - 1 {
                g.add(2, &[&a[i], &b[i]]);
                g.add(2, &[&b[i], &a[i]]);
                g.add(2, &[&a[i], &b[i + 1]]);
                g.add(2, &[&b[i + 1], &a[i]]);
            }
            let (ak, bk) = (a[k - 1].as_str(), b[k - 1].as_str());
            g.add(2, &[ak, bk]);
            g.add(2, &[bk, ak]);
            g.add(2, &[ak, "B1"]);
            g.add(2, &["B1", ak]);
            g.finish(family.clone(), k, title, &a, &b)
        }
        Family::QpscLeft => {
            let names: Vec<String> = ["A", "B", "C", "D"].iter().map(|s| s.to_string()).collect();
            let mut g = Builder::new(names);
            g.add(333, &["A"]);
            g.remove(1, &["B"]);
            g.add(333, &["C", "D"]);
            g.add(332, &["D", "C"]);
            g.finish(family.clone(), k, title, &["C".into(), "D".into()], &["A".into(), "C".into()])
        }
        Family::QpscRight => {
            let names: Vec<String> = ["A", "B", "C", "D"].iter().map(|s| s.to_string()).collect();
            let mut g = Builder::new(names);
            g.remove(1, &["A"]);
            g.add(666, &["C", "D"]);
            g.add(332, &["B"]);
            g.finish(family.clone(), k, title, &["B".into(), "C".into()], &["C".into(), "D".into()])
        }
    })
}
