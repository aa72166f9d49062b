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

#![allow(dead_code)]

use std::collections::BTreeSet;

use pmlg::{LabeledGraph, NodeId};
use proptest::prelude::*;

/// Edge set without self-loops or duplicates; canonical `u < v` when undirected.
pub fn edge_set(n: usize, directed: bool, raw: Vec<(usize, usize)>) -> Vec<(NodeId, NodeId)> {
    let set: BTreeSet<(usize, usize)> = raw
        .into_iter()
        .map(|(a, b)| (a % n, b % n))
        .filter(|(a, b)| a != b)
        .map(|(a, b)| if directed { (a, b) } else { (a.min(b), a.max(b)) })
        .collect();
    set.into_iter().collect()
}

/// Graphs with `1..=max_nodes` nodes, labels drawn from `labels`.
pub fn arb_graph(
    max_nodes: usize,
    labels: &'static [&'static str],
    directed: Option<bool>,
) -> impl Strategy<Value = LabeledGraph> {
    let dir = match directed {
        Some(d) => Just(d).boxed(),
        None => any::<bool>().boxed(),
    };
    (1..=max_nodes, dir).prop_flat_map(move |(n, directed)| {
        (
            proptest::collection::vec(proptest::sample::select(labels), n),
            proptest::collection::vec((0..n, 0..n), 0..=2 * n + 2),
        )
            .prop_map(move |(ls, raw)| {
                let edges = edge_set(n, directed, raw);
                LabeledGraph::new(directed, ls.into_iter().map(String::from).collect(), edges).unwrap()
            })
    })
}

/// Number of connected components of an undirected graph, skipping one edge.
pub fn components_without(g: &LabeledGraph, skip: Option<(NodeId, NodeId)>) -> usize {
    let n = g.node_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for &e in g.edges() {
        if Some(e) == skip {
            continue;
        }
        let (a, b) = (find(&mut parent, e.0), find(&mut parent, e.1));
        parent[a] = b;
    }
    (0..n).filter(|&x| find(&mut parent, x) == x).count()
}

/// Bridges by removing each edge and recounting components.
pub fn naive_bridges(g: &LabeledGraph) -> BTreeSet<(NodeId, NodeId)> {
    let base = components_without(g, None);
    g.edges().iter().copied().filter(|&e| components_without(g, Some(e)) > base).collect()
}

/// Relabels node `u` to `perm[u]`.
pub fn random_permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}
