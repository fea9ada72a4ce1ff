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

//! Canonical BLT reader and writer.
//!
//! ```text
//! m k
//! mult c1 c2 ... ct 0      (one line per ballot type, 1-based ids)
//! 0
//! "Name"[,"Party"]         (m lines, party defaults to IND)
//! "Title"
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use super::{Candidate, Election, PreferenceProfile, ProfileError, INDEPENDENT};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BltError {
    #[error("line {line}: malformed header, expected \"m k\"")]
    MalformedHeader { line: usize },
    #[error("line {line}: {token:?} is not a valid number")]
    InvalidNumber { line: usize, token: String },
    #[error("line {line}: candidate index {index} out of range 1..={m}")]
    CandidateOutOfRange { line: usize, index: usize, m: usize },
    #[error("line {line}: candidate {index} ranked twice")]
    DuplicateCandidate { line: usize, index: usize },
    #[error("line {line}: missing terminating 0")]
    MissingTerminator { line: usize },
    #[error("line {line}: ballot ranks no candidates")]
    EmptyBallot { line: usize },
    #[error("line {line}: ballot multiplicity must be positive")]
    ZeroMultiplicity { line: usize },
    #[error("line {line}: expected a quoted candidate name")]
    MalformedName { line: usize },
    #[error("line {line}: expected a quoted title")]
    MissingTitle { line: usize },
    #[error("line {line}: unexpected content after the title")]
    TrailingContent { line: usize },
    #[error("invalid election: {0}")]
    Profile(#[from] ProfileError),
}

struct Lines<'a> {
    inner: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate().peekable(),
            last: 0,
        }
    }

    /// Next non-blank line with its 1-based number.
    fn next(&mut self) -> Option<(usize, &'a str)> {
        for (i, l) in self.inner.by_ref() {
            self.last = i + 1;
            let t = l.trim();
            if !t.is_empty() {
                return Some((i + 1, t));
            }
        }
        None
    }

    fn eof_line(&self) -> usize {
        self.last + 1
    }
}

fn number(line: usize, token: &str) -> Result<usize, BltError> {
    token.parse().map_err(|_| BltError::InvalidNumber {
        line,
        token: token.to_string(),
    })
}

/// Reads one quoted string from the front of `s`, returning it and the rest.
fn quoted(s: &str) -> Option<(String, &str)> {
    let s = s.trim_start();
    let body = s.strip_prefix('"')?;
    let mut out = String::new();
    let mut chars = body.char_indices();
    while let Some((i, ch)) = chars.next() {
        match ch {
            '\\' => out.push(chars.next()?.1),
            '"' => return Some((out, &body[i + 1..])),
            _ => out.push(ch),
        }
    }
    None
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        if ch == '"' || ch == '\\' {
            out.push('\\');
        }
        out.push(ch);
    }
    out.push('"');
    out
}

pub fn parse_blt(text: &str) -> Result<Election, BltError> {
    let mut lines = Lines::new(text);
    let (hline, header) = lines.next().ok_or(BltError::MalformedHeader { line: 1 })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(BltError::MalformedHeader { line: hline });
    }
    let m = number(hline, fields[0])?;
    let k = number(hline, fields[1])?;

    let mut ballots = Vec::new();
    loop {
        let (line, text) = lines.next().ok_or(BltError::MissingTerminator {
            line: lines.eof_line(),
        })?;
        if text == "0" {
            break;
        }
        if text.starts_with('"') {
            return Err(BltError::MissingTerminator { line });
        }
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.last() != Some(&"0") || tokens.len() < 2 {
            return Err(BltError::MissingTerminator { line });
        }
        let mult = number(line, tokens[0])? as u64;
        if mult == 0 {
            return Err(BltError::ZeroMultiplicity { line });
        }
        let mut ranking = Vec::with_capacity(tokens.len() - 2);
        for tok in &tokens[1..tokens.len() - 1] {
            let index = number(line, tok)?;
            if index == 0 || index > m {
                return Err(BltError::CandidateOutOfRange { line, index, m });
            }
            if ranking.contains(&(index - 1)) {
                return Err(BltError::DuplicateCandidate { line, index });
            }
            ranking.push(index - 1);
        }
        if ranking.is_empty() {
            return Err(BltError::EmptyBallot { line });
        }
        ballots.push((ranking, mult));
    }

    let mut candidates = Vec::with_capacity(m);
    for id in 0..m {
        let (line, text) = lines.next().ok_or(BltError::MalformedName {
            line: lines.eof_line(),
        })?;
        let (name, rest) = quoted(text).ok_or(BltError::MalformedName { line })?;
        let rest = rest.trim();
        let party = if rest.is_empty() {
            INDEPENDENT.to_string()
        } else {
            let after_comma = rest
                .strip_prefix(',')
                .ok_or(BltError::MalformedName { line })?;
            let (party, tail) = quoted(after_comma).ok_or(BltError::MalformedName { line })?;
            if !tail.trim().is_empty() || party.is_empty() {
                return Err(BltError::MalformedName { line });
            }
            party
        };
        candidates.push(Candidate::new(id, name, party));
    }

    let (tline, ttext) = lines.next().ok_or(BltError::MissingTitle {
        line: lines.eof_line(),
    })?;
    let (title, rest) = quoted(ttext).ok_or(BltError::MissingTitle { line: tline })?;
    if !rest.trim().is_empty() {
        return Err(BltError::MissingTitle { line: tline });
    }
    if let Some((line, _)) = lines.next() {
        return Err(BltError::TrailingContent { line });
    }

    let profile = PreferenceProfile::new(candidates, ballots)?;
    Ok(Election::new(profile, k, title)?)
}

/// Canonical serialization: ballot types in lexicographic ranking order,
/// party tags written only when they differ from `IND`.
pub fn to_blt(election: &Election) -> String {
    let p = election.profile();
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", p.num_candidates(), election.seats());
    for b in p.ballots() {
        let _ = write!(out, "{}", b.multiplicity());
        for c in b.ranking() {
            let _ = write!(out, " {}", c + 1);
        }
        out.push_str(" 0\n");
    }
    out.push_str("0\n");
    for c in p.candidates() {
        out.push_str(&quote(&c.name));
        if c.party != INDEPENDENT {
            out.push(',');
            out.push_str(&quote(&c.party));
        }
        out.push('\n');
    }
    out.push_str(&quote(election.title()));
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn minimal_file() {
        let e = parse_blt("2 1\n3 1 0\n0\n\"A\"\n\"B\"\n\"t\"").unwrap();
        assert_eq!(e.profile().num_candidates(), 2);
        assert_eq!(e.seats(), 1);
        assert_eq!(e.profile().ballots().len(), 1);
        assert_eq!(e.profile().ballots()[0].ranking(), &[0]);
        assert_eq!(e.profile().ballots()[0].multiplicity(), 3);
        assert_eq!(e.title(), "t");
        assert_eq!(e.profile().party(0), INDEPENDENT);
    }

    #[test]
    fn merges_duplicate_lines() {
        let e = parse_blt("2 1\n2 1 2 0\n1 1 2 0\n0\n\"A\"\n\"B\"\n\"t\"\n").unwrap();
        assert_eq!(e.profile().ballots().len(), 1);
        assert_eq!(e.profile().ballots()[0].ranking(), &[0, 1]);
        assert_eq!(e.profile().ballots()[0].multiplicity(), 3);
    }

    #[test]
    fn parties_and_escapes() {
        let text = "2 1\n1 2 0\n0\n\"Ann \\\"Q\\\" Lee\",\"Lab\"\n\"Bob\" , \"SNP\"\n\"x\"\n";
        let e = parse_blt(text).unwrap();
        assert_eq!(e.profile().candidate(0).name, "Ann \"Q\" Lee");
        assert_eq!(e.profile().party(0), "Lab");
        assert_eq!(e.profile().party(1), "SNP");
        let again = parse_blt(&to_blt(&e)).unwrap();
        assert_eq!(again, e);
    }

    #[test]
    fn errors_name_their_line() {
        let cases: &[(&str, BltError)] = &[
            ("2\n", BltError::MalformedHeader { line: 1 }),
            (
                "2 1\n1 3 0\n0\n\"A\"\n\"B\"\n\"t\"",
                BltError::CandidateOutOfRange { line: 2, index: 3, m: 2 },
            ),
            (
                "2 1\n1 1 1 0\n0\n\"A\"\n\"B\"\n\"t\"",
                BltError::DuplicateCandidate { line: 2, index: 1 },
            ),
            (
                "2 1\n1 1 2\n0\n\"A\"\n\"B\"\n\"t\"",
                BltError::MissingTerminator { line: 2 },
            ),
            ("2 1\n1 1 0\n\"A\"\n\"B\"\n\"t\"", BltError::MissingTerminator { line: 3 }),
            ("2 1\n1 1 0\n", BltError::MissingTerminator { line: 3 }),
            ("2 1\n1 1 0\n0\nA\n\"B\"\n\"t\"", BltError::MalformedName { line: 4 }),
            ("2 1\n1 1 0\n0\n\"A\"\n\"B\"\n", BltError::MissingTitle { line: 6 }),
            (
                "2 1\n1 1 0\n0\n\"A\"\n\"B\"\n\"t\"\n\"u\"",
                BltError::TrailingContent { line: 7 },
            ),
            ("2 1\nx 1 0\n0\n", BltError::InvalidNumber { line: 2, token: "x".into() }),
        ];
        for (text, expected) in cases {
            assert_eq!(&parse_blt(text).unwrap_err(), expected, "{text:?}");
        }
        assert!(matches!(
            parse_blt("2 2\n1 1 0\n0\n\"A\"\n\"B\"\n\"t\""),
            Err(BltError::Profile(ProfileError::InvalidSeats { .. }))
        ));
    }

    fn arb_election() -> impl Strategy<Value = Election> {
        (2usize..6).prop_flat_map(|m| {
            let ballot = (
                Just((0..m).collect::<Vec<usize>>()).prop_shuffle(),
                1..=m,
                1u64..30,
            )
                .prop_map(|(mut ids, len, n)| {
                    ids.truncate(len);
                    (ids, n)
                });
            (
                prop::collection::vec(ballot, 1..10),
                prop::collection::vec(prop::sample::select(vec!["IND", "Lab", "SNP"]), m),
                1..m,
            )
                .prop_map(move |(ballots, parties, k)| {
                    let roster = parties
                        .into_iter()
                        .enumerate()
                        .map(|(i, p)| Candidate::new(i, format!("Cand {i}"), p))
                        .collect();
                    let p = PreferenceProfile::new(roster, ballots).unwrap();
                    Election::new(p, k, "prop").unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn serialize_parse_fixed_point(e in arb_election()) {
            let text = to_blt(&e);
            let parsed = parse_blt(&text).unwrap();
            prop_assert_eq!(&parsed, &e);
            prop_assert_eq!(to_blt(&parsed), text);
        }
    }
}
