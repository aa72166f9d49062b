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

//! Immutable node-labeled graphs.
//!
//! Nodes are dense ids `0..n` carrying nonempty labels; each character of a
//! label is one symbol. Edges are stored canonically (sorted, undirected edges
//! as `(u, v)` with `u < v`), so two graphs with the same node labels and the
//! same edge set compare equal and serialize to the same bytes.

mod analysis;
mod expand;
mod format;

use std::collections::BTreeSet;

use thiserror::Error;

pub use analysis::{find_bridges, is_dag, max_degree, DegreeStats};
pub use expand::{expand_to_unit_chains, expand_to_unit_labels, ChainMap};
pub use format::{parse_graph, serialize_graph};

pub type NodeId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({u}, {v}) references a node outside 0..{nodes}")]
    EndpointOutOfRange { u: NodeId, v: NodeId, nodes: usize },
    #[error("self-loop on node {0}")]
    SelfLoop(NodeId),
    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: NodeId, v: NodeId },
    #[error("node {0} has an empty label")]
    EmptyLabel(NodeId),
    #[error("label of node {0} contains whitespace")]
    WhitespaceInLabel(NodeId),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("operation requires an undirected graph")]
    ExpectedUndirected,
    #[error("operation requires a directed graph")]
    ExpectedDirected,
}

/// Compressed adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
struct Csr {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
}

impl Csr {
    fn build(nodes: usize, pairs: impl Iterator<Item = (NodeId, NodeId)> + Clone) -> Self {
        let mut offsets = vec![0usize; nodes + 1];
        for (from, _) in pairs.clone() {
            offsets[from + 1] += 1;
        }
        for i in 0..nodes {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0; offsets[nodes]];
        for (from, to) in pairs {
            targets[fill[from]] = to;
            fill[from] += 1;
        }
        for i in 0..nodes {
            targets[offsets[i]..offsets[i + 1]].sort_unstable();
        }
        Csr { offsets, targets }
    }

    fn row(&self, u: NodeId) -> &[NodeId] {
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    directed: bool,
    labels: Vec<String>,
    edges: Vec<(NodeId, NodeId)>,
    succ: Csr,
    pred: Csr,
}

impl LabeledGraph {
    /// Builds a graph, canonicalizing the edge list.
    ///
    /// Rejects self-loops, duplicate edges (for undirected graphs `(u, v)` and
    /// `(v, u)` are the same edge), dangling endpoints and labels that are
    /// empty or contain whitespace.
    pub fn new(
        directed: bool,
        labels: Vec<String>,
        edges: impl IntoIterator<Item = (NodeId, NodeId)>,
    ) -> Result<Self, GraphError> {
        for (id, label) in labels.iter().enumerate() {
            if label.is_empty() {
                return Err(GraphError::EmptyLabel(id));
            }
            if label.chars().any(char::is_whitespace) {
                return Err(GraphError::WhitespaceInLabel(id));
            }
        }
        let nodes = labels.len();
        let mut canon = Vec::new();
        for (u, v) in edges {
            if u >= nodes || v >= nodes {
                return Err(GraphError::EndpointOutOfRange { u, v, nodes });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            canon.push(if directed { (u, v) } else { (u.min(v), u.max(v)) });
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            let (u, v) = w[0];
            return Err(GraphError::DuplicateEdge { u, v });
        }
        Ok(Self::from_canonical(directed, labels, canon))
    }

    fn from_canonical(directed: bool, labels: Vec<String>, edges: Vec<(NodeId, NodeId)>) -> Self {
        let nodes = labels.len();
        let (succ, pred) = if directed {
            (Csr::build(nodes, edges.iter().copied()), Csr::build(nodes, edges.iter().map(|&(u, v)| (v, u))))
        } else {
            let both = edges.iter().flat_map(|&(u, v)| [(u, v), (v, u)]);
            let adj = Csr::build(nodes, both);
            (adj.clone(), adj)
        };
        LabeledGraph { directed, labels, edges, succ, pred }
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn label(&self, u: NodeId) -> &str {
        &self.labels[u]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Canonical, sorted edge list.
    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    /// Nodes a walk may step to from `u`. For undirected graphs these are all
    /// neighbors.
    pub fn successors(&self, u: NodeId) -> &[NodeId] {
        self.succ.row(u)
    }

    /// Nodes a walk may arrive from when entering `u`.
    pub fn predecessors(&self, u: NodeId) -> &[NodeId] {
        self.pred.row(u)
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        u < self.node_count() && self.successors(u).binary_search(&v).is_ok()
    }

    /// Number of incident edges, counting both directions for directed graphs.
    pub fn degree(&self, u: NodeId) -> usize {
        if self.directed {
            self.succ.row(u).len() + self.pred.row(u).len()
        } else {
            self.succ.row(u).len()
        }
    }

    /// Symbols occurring in any label.
    pub fn alphabet(&self) -> BTreeSet<char> {
        self.labels.iter().flat_map(|l| l.chars()).collect()
    }

    pub fn has_unit_labels(&self) -> bool {
        self.labels.iter().all(|l| l.chars().count() == 1)
    }

    /// Same nodes and edge set, with each edge turned into the arc `u -> v`
    /// for its canonical orientation `u < v`.
    pub fn orient_by_id(&self) -> LabeledGraph {
        if self.directed {
            return self.clone();
        }
        Self::from_canonical(true, self.labels.clone(), self.edges.clone())
    }

    /// Applies a node permutation: node `u` becomes `perm[u]`.
    pub fn permuted(&self, perm: &[NodeId]) -> Result<LabeledGraph, GraphError> {
        let mut labels = vec![String::new(); self.node_count()];
        for (u, label) in self.labels.iter().enumerate() {
            labels[perm[u]] = label.clone();
        }
        LabeledGraph::new(self.directed, labels, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }
}
