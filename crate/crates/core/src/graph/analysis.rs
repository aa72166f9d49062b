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

use std::collections::{BTreeSet, VecDeque};

use super::{GraphError, LabeledGraph, NodeId};

/// Edges of an undirected graph whose removal increases the number of
/// connected components, as canonical `(u, v)` pairs with `u < v`.
///
/// Iterative low-link DFS, `O(|V| + |E|)`.
pub fn find_bridges(g: &LabeledGraph) -> Result<BTreeSet<(NodeId, NodeId)>, GraphError> {
    if g.is_directed() {
        return Err(GraphError::ExpectedUndirected);
    }
    let n = g.node_count();
    const UNSEEN: usize = usize::MAX;
    let mut order = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut bridges = BTreeSet::new();
    let mut clock = 0;
    // (node, parent, next neighbor index)
    let mut stack: Vec<(NodeId, NodeId, usize)> = Vec::new();

    for root in 0..n {
        if order[root] != UNSEEN {
            continue;
        }
        order[root] = clock;
        low[root] = clock;
        clock += 1;
        stack.push((root, UNSEEN, 0));
        while let Some(top) = stack.last_mut() {
            let (u, parent, next) = *top;
            let adj = g.successors(u);
            if next < adj.len() {
                top.2 += 1;
                let v = adj[next];
                if v == parent {
                    // simple graph: exactly one edge back to the parent
                    continue;
                }
                if order[v] == UNSEEN {
                    order[v] = clock;
                    low[v] = clock;
                    clock += 1;
                    stack.push((v, u, 0));
                } else {
                    low[u] = low[u].min(order[v]);
                }
            } else {
                stack.pop();
                if parent != UNSEEN {
                    low[parent] = low[parent].min(low[u]);
                    if low[u] > order[parent] {
                        bridges.insert((parent.min(u), parent.max(u)));
                    }
                }
            }
        }
    }
    Ok(bridges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DegreeStats {
    /// Maximum number of distinct neighbors, ignoring direction.
    pub undirected: usize,
    /// Maximum indegree + outdegree. Equals `undirected` for undirected
    /// graphs, where every edge counts once.
    pub in_plus_out: usize,
}

pub fn max_degree(g: &LabeledGraph) -> DegreeStats {
    let mut stats = DegreeStats::default();
    for u in 0..g.node_count() {
        let total = g.degree(u);
        let distinct = if g.is_directed() {
            let (a, b) = (g.successors(u), g.predecessors(u));
            a.len() + b.iter().filter(|v| a.binary_search(v).is_err()).count()
        } else {
            total
        };
        stats.undirected = stats.undirected.max(distinct);
        stats.in_plus_out = stats.in_plus_out.max(total);
    }
    stats
}

/// True iff the directed graph has a topological order (Kahn).
pub fn is_dag(g: &LabeledGraph) -> Result<bool, GraphError> {
    if !g.is_directed() {
        return Err(GraphError::ExpectedDirected);
    }
    let n = g.node_count();
    let mut indeg: Vec<usize> = (0..n).map(|u| g.predecessors(u).len()).collect();
    let mut queue: VecDeque<NodeId> = (0..n).filter(|&u| indeg[u] == 0).collect();
    let mut visited = 0;
    while let Some(u) = queue.pop_front() {
        visited += 1;
        for &v in g.successors(u) {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                queue.push_back(v);
            }
        }
    }
    Ok(visited == n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(directed: bool, n: usize, edges: &[(usize, usize)]) -> LabeledGraph {
        LabeledGraph::new(directed, vec!["a".to_string(); n], edges.iter().copied()).unwrap()
    }

    #[test]
    fn path_edges_are_bridges() {
        let g = graph(false, 3, &[(0, 1), (1, 2)]);
        assert_eq!(find_bridges(&g).unwrap(), BTreeSet::from([(0, 1), (1, 2)]));
    }

    #[test]
    fn triangle_has_no_bridges() {
        let g = graph(false, 3, &[(0, 1), (1, 2), (0, 2)]);
        assert!(find_bridges(&g).unwrap().is_empty());
    }

    #[test]
    fn bridge_between_cycles() {
        let g = graph(false, 6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)]);
        assert_eq!(find_bridges(&g).unwrap(), BTreeSet::from([(2, 3)]));
    }

    #[test]
    fn bridges_reject_directed() {
        assert_eq!(find_bridges(&graph(true, 2, &[(0, 1)])), Err(GraphError::ExpectedUndirected));
    }

    #[test]
    fn degrees() {
        assert_eq!(max_degree(&graph(false, 1, &[])).undirected, 0);
        let star = graph(false, 6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]);
        assert_eq!(max_degree(&star), DegreeStats { undirected: 5, in_plus_out: 5 });
        let two_cycle = graph(true, 2, &[(0, 1), (1, 0)]);
        assert_eq!(max_degree(&two_cycle), DegreeStats { undirected: 1, in_plus_out: 2 });
    }

    #[test]
    fn acyclicity() {
        assert!(is_dag(&graph(true, 2, &[(0, 1)])).unwrap());
        assert!(!is_dag(&graph(true, 2, &[(0, 1), (1, 0)])).unwrap());
        assert_eq!(is_dag(&graph(false, 2, &[(0, 1)])), Err(GraphError::ExpectedDirected));
    }
}
