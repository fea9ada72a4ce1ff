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

//! Multiwinner ranked-choice tabulation and truncated-ballot fairness audits.
//!
//! The crate tabulates Scottish STV, Meek STV, the Expanding Approvals Rule,
//! Chamberlin-Courant (optimistic and pessimistic) and positional scoring
//! rules in exact rational arithmetic, then searches for elections in which
//! removing a bloc of truncated ballots changes the committee.

pub mod arith;
pub mod cli;
pub mod criteria;
pub mod methods;
pub mod profile;
pub mod psc;
pub mod worstcase;
