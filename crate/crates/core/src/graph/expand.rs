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

//! Splitting string labels into chains of single-symbol nodes.

use super::{LabeledGraph, NodeId};

/// Correspondence between `(original node, offset)` and expanded nodes.
/// Offsets are 0-based; chain nodes of one original node have consecutive ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    starts: Vec<NodeId>,
    origin: Vec<(NodeId, usize)>,
}

impl ChainMap {
    fn build(g: &LabeledGraph) -> Self {
        let mut starts = Vec::with_capacity(g.node_count() + 1);
        let mut origin = Vec::new();
        for (u, label) in g.labels().iter().enumerate() {
            starts.push(origin.len());
            origin.extend((0..label.chars().count()).map(|off| (u, off)));
        }
        starts.push(origin.len());
        ChainMap { starts, origin }
    }

    /// Expanded node holding symbol `offset` of original node `u`.
    pub fn node(&self, u: NodeId, offset: usize) -> NodeId {
        debug_assert!(offset < self.chain_len(u));
        self.starts[u] + offset
    }

    pub fn head(&self, u: NodeId) -> NodeId {
        self.starts[u]
    }

    pub fn tail(&self, u: NodeId) -> NodeId {
        self.starts[u + 1] - 1
    }

    pub fn chain_len(&self, u: NodeId) -> usize {
        self.starts[u + 1] - self.starts[u]
    }

    /// `(original node, offset)` of an expanded node.
    pub fn origin(&self, x: NodeId) -> (NodeId, usize) {
        self.origin[x]
    }

    pub fn expanded_len(&self) -> usize {
        self.origin.len()
    }

    fn unit_labels(&self, g: &LabeledGraph) -> Vec<String> {
        g.labels().iter().flat_map(|l| l.chars().map(String::from)).collect()
    }
}

/// Match-preserving expansion.
///
/// Every node with a label of length `L` becomes a chain of `L` single-symbol
/// nodes read head to tail, and each original arc `u -> v` attaches the tail
/// of `u` to the head of `v`. A match with offset `l` starting in `u` and
/// ending at `l'` in `w` corresponds exactly to a walk from chain node
/// `(u, l)` to chain node `(w, l')`.
///
/// Labels are read in one direction only, so for an undirected graph with a
/// label longer than one symbol the result is directed: each edge `{u, v}`
/// yields the arcs `tail(u) -> head(v)` and `tail(v) -> head(u)`. A graph whose
/// labels are already single symbols is returned unchanged.
pub fn expand_to_unit_labels(g: &LabeledGraph) -> (LabeledGraph, ChainMap) {
    let map = ChainMap::build(g);
    if g.has_unit_labels() {
        return (g.clone(), map);
    }
    let mut arcs = Vec::with_capacity(map.expanded_len() + 2 * g.edge_count());
    for u in 0..g.node_count() {
        for x in map.head(u)..map.tail(u) {
            arcs.push((x, x + 1));
        }
    }
    for &(u, v) in g.edges() {
        arcs.push((map.tail(u), map.head(v)));
        if !g.is_directed() {
            arcs.push((map.tail(v), map.head(u)));
        }
    }
    let expanded = LabeledGraph::new(true, map.unit_labels(g), arcs).expect("expansion of a valid graph is valid");
    (expanded, map)
}

/// Chain splitting that keeps the graph's directedness.
///
/// Each stored edge `(u, v)` attaches `tail(u)` to `head(v)`; for undirected
/// graphs this is the canonical orientation `u < v`, so node ids must follow
/// the intended reading order. Chain interiors get degree two and chain ends
/// inherit the original incidences split between head and tail.
pub fn expand_to_unit_chains(g: &LabeledGraph) -> (LabeledGraph, ChainMap) {
    let map = ChainMap::build(g);
    let mut edges = Vec::with_capacity(map.expanded_len() + g.edge_count());
    for u in 0..g.node_count() {
        for x in map.head(u)..map.tail(u) {
            edges.push((x, x + 1));
        }
    }
    edges.extend(g.edges().iter().map(|&(u, v)| (map.tail(u), map.head(v))));
    let expanded =
        LabeledGraph::new(g.is_directed(), map.unit_labels(g), edges).expect("expansion of a valid graph is valid");
    (expanded, map)
}
