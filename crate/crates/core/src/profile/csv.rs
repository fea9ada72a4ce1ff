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

//! Canonical CSV layout.
//!
//! A header block of `#`-prefixed records declares the election, followed by
//! one record per ballot type:
//!
//! ```text
//! #seats,3
//! #title,Ward 5
//! #candidate,Holden,Con
//! #candidate,Knapp            <- party defaults to IND
//! 53,Holden
//! 980,Knapp,Scott
//! ```
//!
//! Candidate ids follow the order of the `#candidate` records. Names are
//! matched exactly.

use std::collections::HashMap;

use thiserror::Error;

use super::{Candidate, Election, PreferenceProfile, ProfileError, INDEPENDENT};

#[derive(Debug, Error)]
pub enum CsvError {
    #[error("record {record}: unknown candidate {name:?}")]
    UnknownCandidate { record: usize, name: String },
    #[error("record {record}: multiplicity {value:?} is not a positive integer")]
    NonPositiveMultiplicity { record: usize, value: String },
    #[error("record {record}: malformed header {field:?}")]
    MalformedHeader { record: usize, field: String },
    #[error("record {record}: candidate {name:?} ranked twice")]
    DuplicateCandidate { record: usize, name: String },
    #[error("record {record}: ballot ranks no candidates")]
    EmptyBallot { record: usize },
    #[error("missing #seats header")]
    MissingSeats,
    #[error("csv syntax: {0}")]
    Syntax(#[from] ::csv::Error),
    #[error("invalid election: {0}")]
    Profile(#[from] ProfileError),
}

pub fn parse_csv(text: &str) -> Result<Election, CsvError> {
    let mut reader = ::csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(::csv::Trim::All)
        .from_reader(text.as_bytes());

    let mut seats = None;
    let mut title = String::new();
    let mut candidates: Vec<Candidate> = Vec::new();
    let mut by_name: HashMap<String, usize> = HashMap::new();
    let mut ballots = Vec::new();

    for (i, rec) in reader.records().enumerate() {
        let record = i + 1;
        let rec = rec?;
        let fields: Vec<&str> = rec.iter().collect();
        let Some(&head) = fields.first() else { continue };
        if head.is_empty() && fields.len() == 1 {
            continue;
        }
        if let Some(key) = head.strip_prefix('#') {
            let malformed = || CsvError::MalformedHeader {
                record,
                field: head.to_string(),
            };
            match key {
                "seats" => {
                    let v = fields.get(1).ok_or_else(malformed)?;
                    seats = Some(v.parse::<usize>().map_err(|_| malformed())?);
                }
                "title" => title = fields[1..].join(","),
                "candidate" => {
                    let name = fields.get(1).filter(|n| !n.is_empty()).ok_or_else(malformed)?;
                    let party = match fields.get(2) {
                        Some(p) if !p.is_empty() => p.to_string(),
                        _ => INDEPENDENT.to_string(),
                    };
                    let id = candidates.len();
                    by_name.insert(name.to_string(), id);
                    candidates.push(Candidate::new(id, *name, party));
                }
                _ => return Err(malformed()),
            }
            continue;
        }
        let mult: u64 = match head.parse() {
            Ok(n) if n > 0 => n,
            _ => {
                return Err(CsvError::NonPositiveMultiplicity {
                    record,
                    value: head.to_string(),
                })
            }
        };
        let mut ranking = Vec::with_capacity(fields.len() - 1);
        for name in fields[1..].iter().filter(|n| !n.is_empty()) {
            let id = *by_name.get(*name).ok_or_else(|| CsvError::UnknownCandidate {
                record,
                name: name.to_string(),
            })?;
            if ranking.contains(&id) {
                return Err(CsvError::DuplicateCandidate {
                    record,
                    name: name.to_string(),
                });
            }
            ranking.push(id);
        }
        if ranking.is_empty() {
            return Err(CsvError::EmptyBallot { record });
        }
        ballots.push((ranking, mult));
    }

    let seats = seats.ok_or(CsvError::MissingSeats)?;
    let profile = PreferenceProfile::new(candidates, ballots)?;
    Ok(Election::new(profile, seats, title)?)
}

pub fn to_csv(election: &Election) -> String {
    let mut w = ::csv::WriterBuilder::new()
        .flexible(true)
        .from_writer(Vec::new());
    let p = election.profile();
    // Writing to a Vec cannot fail.
    w.write_record(["#seats", &election.seats().to_string()]).unwrap();
    w.write_record(["#title", election.title()]).unwrap();
    for c in p.candidates() {
        w.write_record(["#candidate", &c.name, &c.party]).unwrap();
    }
    for b in p.ballots() {
        let mut rec = vec![b.multiplicity().to_string()];
        rec.extend(b.ranking().iter().map(|&c| p.candidate(c).name.clone()));
        w.write_record(&rec).unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::{parse_blt, to_blt};

    #[test]
    fn single_bullet_row() {
        let e = parse_csv("#seats,1\n#candidate,A\n#candidate,B\n3,A\n").unwrap();
        assert_eq!(e.profile().ballots().len(), 1);
        assert!(e.profile().ballots()[0].is_bullet());
        assert_eq!(e.profile().ballots()[0].multiplicity(), 3);
        assert_eq!(e.profile().party(0), INDEPENDENT);
    }

    #[test]
    fn merges_identical_rows() {
        let e = parse_csv("#seats,1\n#candidate,A,Lab\n#candidate,B\n2,A,B\n5,A,B\n").unwrap();
        assert_eq!(e.profile().ballots()[0].multiplicity(), 7);
        assert_eq!(e.profile().party(0), "Lab");
    }

    #[test]
    fn rejects_unknown_names_and_bad_counts() {
        assert!(matches!(
            parse_csv("#seats,1\n#candidate,A\n#candidate,B\n1,C\n"),
            Err(CsvError::UnknownCandidate { record: 4, .. })
        ));
        assert!(matches!(
            parse_csv("#seats,1\n#candidate,A\n#candidate,B\n0,A\n"),
            Err(CsvError::NonPositiveMultiplicity { record: 4, .. })
        ));
        assert!(matches!(
            parse_csv("#seats,1\n#candidate,A\n#candidate,B\n-2,A\n"),
            Err(CsvError::NonPositiveMultiplicity { .. })
        ));
        assert!(matches!(
            parse_csv("#candidate,A\n#candidate,B\n1,A\n"),
            Err(CsvError::MissingSeats)
        ));
    }

    #[test]
    fn agrees_with_blt() {
        let blt = "3 2\n4 1 0\n2 2 3 0\n1 3 1 2 0\n0\n\"A\",\"Lab\"\n\"B\"\n\"C\",\"SNP\"\n\"ward\"\n";
        let from_blt = parse_blt(blt).unwrap();
        let from_csv = parse_csv(&to_csv(&from_blt)).unwrap();
        assert_eq!(from_csv, from_blt);
        assert_eq!(to_blt(&from_csv), blt);
    }
}
