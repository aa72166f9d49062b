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

//! Walk enumeration straight from the definition of a match: no DP tables,
//! no memoization, labels read in place with offsets.

use crate::graph::{LabeledGraph, NodeId};

use super::{MatchError, Occurrence, Pattern};

pub const BRUTEFORCE_MAX_PATTERN: usize = 16;
pub const BRUTEFORCE_MAX_NODES: usize = 64;

struct Search<'a> {
    g: &'a LabeledGraph,
    labels: Vec<Vec<char>>,
    p: &'a [char],
    limit: usize,
    found: Vec<Occurrence>,
    stop_at_first: bool,
}

impl Search<'_> {
    /// `walk` has consumed `p[..pos]` and ends with a fully read label.
    fn extend(&mut self, walk: &mut Vec<NodeId>, offset: usize, pos: usize) -> Result<bool, MatchError> {
        let u = *walk.last().unwrap();
        for &v in self.g.successors(u) {
            let label = &self.labels[v];
            let take = label.len().min(self.p.len() - pos);
            if label[..take] != self.p[pos..pos + take] {
                continue;
            }
            walk.push(v);
            let done = if pos + take == self.p.len() {
                self.record(walk, offset, take)?
            } else {
                self.extend(walk, offset, pos + take)?
            };
            walk.pop();
            if done {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn record(&mut self, walk: &[NodeId], offset: usize, end_offset: usize) -> Result<bool, MatchError> {
        if self.found.len() == self.limit {
            return Err(MatchError::TooManyOccurrences(self.limit));
        }
        self.found.push(Occurrence { nodes: walk.to_vec(), offset, end_offset });
        Ok(self.stop_at_first)
    }

    fn run(&mut self) -> Result<(), MatchError> {
        for u in 0..self.g.node_count() {
            for start in 0..self.labels[u].len() {
                let rest = &self.labels[u][start..];
                let take = rest.len().min(self.p.len());
                if rest[..take] != self.p[..take] {
                    continue;
                }
                let mut walk = vec![u];
                let done = if take == self.p.len() {
                    self.record(&walk, start + 1, start + take)?
                } else {
                    self.extend(&mut walk, start + 1, take)?
                };
                if done {
                    return Ok(());
                }
            }
        }
        Ok(())
    }
}

fn search<'a>(g: &'a LabeledGraph, p: &'a Pattern, limit: usize, stop_at_first: bool) -> Search<'a> {
    Search {
        g,
        labels: g.labels().iter().map(|l| l.chars().collect()).collect(),
        p: p.symbols(),
        limit,
        found: Vec::new(),
        stop_at_first,
    }
}

/// Decides whether `p` occurs in `g` by depth-first enumeration of walks.
/// Guarded to `m <= 16` and `|V| <= 64`.
pub fn match_bruteforce(g: &LabeledGraph, p: &Pattern) -> Result<bool, MatchError> {
    if p.len() > BRUTEFORCE_MAX_PATTERN || g.node_count() > BRUTEFORCE_MAX_NODES {
        return Err(MatchError::GuardExceeded {
            m: p.len(),
            max_m: BRUTEFORCE_MAX_PATTERN,
            nodes: g.node_count(),
            max_nodes: BRUTEFORCE_MAX_NODES,
        });
    }
    let mut s = search(g, p, usize::MAX, true);
    s.run()?;
    Ok(!s.found.is_empty())
}

/// Every occurrence (every walk with its offsets), failing once more than
/// `limit` are found. Cost grows with the number of walks, so keep inputs
/// small or strongly constrained.
pub fn enumerate_occurrences(g: &LabeledGraph, p: &Pattern, limit: usize) -> Result<Vec<Occurrence>, MatchError> {
    let mut s = search(g, p, limit, false);
    s.run()?;
    Ok(s.found)
}
