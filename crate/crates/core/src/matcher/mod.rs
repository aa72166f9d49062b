// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Exact pattern matching in labeled graphs under walk semantics: an
//! occurrence may revisit nodes, only the pattern position strictly advances.

mod bruteforce;
mod product;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{LabeledGraph, NodeId};

pub use bruteforce::{enumerate_occurrences, match_bruteforce, BRUTEFORCE_MAX_NODES, BRUTEFORCE_MAX_PATTERN};
pub use product::{MatchReport, Matcher, NodeSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchError {
    #[error("pattern must be nonempty")]
    EmptyPattern,
    #[error("pattern must not contain whitespace")]
    WhitespaceInPattern,
    #[error("brute-force guard exceeded: pattern length {m} (max {max_m}), {nodes} nodes (max {max_nodes})")]
    GuardExceeded { m: usize, max_m: usize, nodes: usize, max_nodes: usize },
    #[error("more than {0} occurrences")]
    TooManyOccurrences(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    symbols: Vec<char>,
}

impl Pattern {
    pub fn new(symbols: Vec<char>) -> Result<Self, MatchError> {
        if symbols.is_empty() {
            return Err(MatchError::EmptyPattern);
        }
        if symbols.iter().any(|c| c.is_whitespace()) {
            return Err(MatchError::WhitespaceInPattern);
        }
        Ok(Pattern { symbols })
    }

    /// Reads a pattern file: one line, surrounding whitespace ignored.
    pub fn parse_file(text: &str) -> Result<Self, MatchError> {
        text.trim().parse()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn contains(&self, needle: &str) -> bool {
        self.to_string().contains(needle)
    }

    pub fn count(&self, symbol: char) -> usize {
        self.symbols.iter().filter(|&&c| c == symbol).count()
    }
}

impl FromStr for Pattern {
    type Err = MatchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Pattern::new(s.chars().collect())
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.symbols.iter().try_for_each(|c| write!(f, "{c}"))
    }
}

/// A walk `nodes[0], ..., nodes[j-1]` spelling the pattern from 1-based
/// `offset` in the first label through 1-based `end_offset` in the last.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Occurrence {
    pub nodes: Vec<NodeId>,
    pub offset: usize,
    pub end_offset: usize,
}

impl Occurrence {
    /// Re-checks adjacency step by step and that the spelled string is `p`.
    pub fn validate(&self, g: &LabeledGraph, p: &Pattern) -> bool {
        if self.nodes.is_empty() || self.nodes.iter().any(|&u| u >= g.node_count()) {
            return false;
        }
        if !self.nodes.windows(2).all(|w| g.has_edge(w[0], w[1])) {
            return false;
        }
        let last = self.nodes.len() - 1;
        let mut spelled = Vec::with_capacity(p.len());
        for (i, &u) in self.nodes.iter().enumerate() {
            let label: Vec<char> = g.label(u).chars().collect();
            let from = if i == 0 { self.offset } else { 1 };
            let to = if i == last { self.end_offset } else { label.len() };
            if from < 1 || to > label.len() || from > to {
                return false;
            }
            spelled.extend_from_slice(&label[from - 1..to]);
        }
        spelled == p.symbols
    }

    /// `match <start> <offset> <node,node,...> <end_offset>`
    pub fn to_line(&self) -> String {
        let nodes: Vec<String> = self.nodes.iter().map(|u| u.to_string()).collect();
        format!("match {} {} {} {}", self.nodes[0], self.offset, nodes.join(","), self.end_offset)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchMode {
    Decision,
    ReportAll,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchOutcome {
    Decision(bool),
    Report(MatchReport),
}

impl MatchOutcome {
    pub fn is_match(&self) -> bool {
        match self {
            MatchOutcome::Decision(b) => *b,
            MatchOutcome::Report(r) => !r.witnesses.is_empty(),
        }
    }
}

/// Runs the product DP once. For many queries against one graph build a
/// [`Matcher`] and reuse it.
pub fn match_exact(g: &LabeledGraph, p: &Pattern, mode: MatchMode) -> MatchOutcome {
    let m = Matcher::new(g);
    match mode {
        MatchMode::Decision => MatchOutcome::Decision(m.is_match(p)),
        MatchMode::ReportAll => MatchOutcome::Report(m.report(p)),
    }
}
