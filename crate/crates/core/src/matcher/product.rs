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

//! Layered product DP over (pattern position, node).
//!
//! On a graph with single-symbol labels,
//! `reach(0, v) = L(v) == P[0]` and
//! `reach(i, v) = L(v) == P[i] && exists u -> v with reach(i-1, u)`;
//! the pattern occurs iff `reach(m-1, v)` holds for some `v`. Each layer costs
//! `O(|V| + |E|)`, so a query is `O(m (|V| + |E|))`. Graphs with longer labels
//! are first expanded with [`expand_to_unit_labels`].

use std::collections::HashMap;

use crate::graph::{expand_to_unit_labels, ChainMap, LabeledGraph, NodeId};

use super::{Occurrence, Pattern};

/// Fixed-size set of node ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeSet {
    words: Vec<u64>,
    len: usize,
}

impl NodeSet {
    pub fn new(len: usize) -> Self {
        NodeSet { words: vec![0; len.div_ceil(64)], len }
    }

    #[inline]
    pub fn insert(&mut self, u: NodeId) {
        self.words[u >> 6] |= 1 << (u & 63);
    }

    #[inline]
    pub fn contains(&self, u: NodeId) -> bool {
        (self.words[u >> 6] >> (u & 63)) & 1 == 1
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn capacity(&self) -> usize {
        self.len
    }

    pub fn iter(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                (bits != 0).then(|| {
                    let t = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    (i << 6) | t
                })
            })
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MatchReport {
    /// One witness per end state `(end node, end offset)`, ordered by end state.
    pub witnesses: Vec<Occurrence>,
    /// Number of distinct `(start node, offset, end node, end offset)`
    /// quadruples that bound some occurrence.
    pub occurrence_count: usize,
}

/// Reusable matching index for one graph.
#[derive(Debug, Clone)]
pub struct Matcher {
    unit: LabeledGraph,
    map: ChainMap,
    symbols: HashMap<char, u32>,
    by_symbol: Vec<Vec<NodeId>>,
}

impl Matcher {
    pub fn new(g: &LabeledGraph) -> Self {
        let (unit, map) = expand_to_unit_labels(g);
        let mut symbols = HashMap::new();
        let mut by_symbol: Vec<Vec<NodeId>> = Vec::new();
        for (v, label) in unit.labels().iter().enumerate() {
            let c = label.chars().next().expect("unit label");
            let next = symbols.len() as u32;
            let id = *symbols.entry(c).or_insert(next);
            if id as usize == by_symbol.len() {
                by_symbol.push(Vec::new());
            }
            by_symbol[id as usize].push(v);
        }
        Matcher { unit, map, symbols, by_symbol }
    }

    /// The single-symbol graph the DP runs on.
    pub fn unit_graph(&self) -> &LabeledGraph {
        &self.unit
    }

    fn encode(&self, p: &Pattern) -> Option<Vec<u32>> {
        p.symbols().iter().map(|c| self.symbols.get(c).copied()).collect()
    }

    /// Layer 0: unit nodes labeled `symbol`.
    pub fn first_layer(&self, symbol: char) -> NodeSet {
        let mut set = NodeSet::new(self.unit.node_count());
        if let Some(&s) = self.symbols.get(&symbol) {
            self.by_symbol[s as usize].iter().for_each(|&v| set.insert(v));
        }
        set
    }

    /// One DP step: unit nodes labeled `symbol` with a predecessor in `prev`.
    pub fn advance(&self, prev: &NodeSet, symbol: char) -> NodeSet {
        let mut next = NodeSet::new(self.unit.node_count());
        if let Some(&s) = self.symbols.get(&symbol) {
            self.advance_into(prev, s, &mut next);
        }
        next
    }

    fn advance_into(&self, prev: &NodeSet, symbol: u32, next: &mut NodeSet) {
        for &v in &self.by_symbol[symbol as usize] {
            if self.unit.predecessors(v).iter().any(|&u| prev.contains(u)) {
                next.insert(v);
            }
        }
    }

    /// Decision query with two rolling layers.
    pub fn is_match(&self, p: &Pattern) -> bool {
        let Some(code) = self.encode(p) else {
            return false;
        };
        let n = self.unit.node_count();
        let mut cur = NodeSet::new(n);
        self.by_symbol[code[0] as usize].iter().for_each(|&v| cur.insert(v));
        let mut next = NodeSet::new(n);
        for &s in &code[1..] {
            next.clear();
            self.advance_into(&cur, s, &mut next);
            if next.is_empty() {
                return false;
            }
            std::mem::swap(&mut cur, &mut next);
        }
        !cur.is_empty()
    }

    /// All `m` reachability layers, or `None` when some pattern symbol does
    /// not occur in the graph.
    pub fn layers(&self, p: &Pattern) -> Option<Vec<NodeSet>> {
        let code = self.encode(p)?;
        let n = self.unit.node_count();
        let mut layers = Vec::with_capacity(code.len());
        let mut first = NodeSet::new(n);
        self.by_symbol[code[0] as usize].iter().for_each(|&v| first.insert(v));
        layers.push(first);
        for &s in &code[1..] {
            let mut next = NodeSet::new(n);
            self.advance_into(layers.last().unwrap(), s, &mut next);
            layers.push(next);
        }
        Some(layers)
    }

    pub fn report(&self, p: &Pattern) -> MatchReport {
        let Some(layers) = self.layers(p) else {
            return MatchReport::default();
        };
        let m = layers.len();
        let mut report = MatchReport::default();
        for end in layers[m - 1].iter() {
            let mut walk = vec![end];
            for i in (0..m - 1).rev() {
                let v = *walk.last().unwrap();
                let u =
                    *self.unit.predecessors(v).iter().find(|&&u| layers[i].contains(u)).expect("DP back-link exists");
                walk.push(u);
            }
            walk.reverse();
            report.witnesses.push(self.to_occurrence(&walk));

            let mut back = NodeSet::new(self.unit.node_count());
            back.insert(end);
            for layer in layers[..m - 1].iter().rev() {
                let mut prev = NodeSet::new(self.unit.node_count());
                for w in back.iter() {
                    for &u in self.unit.predecessors(w) {
                        if layer.contains(u) {
                            prev.insert(u);
                        }
                    }
                }
                back = prev;
            }
            report.occurrence_count += back.count();
        }
        report
    }

    fn to_occurrence(&self, walk: &[NodeId]) -> Occurrence {
        let (first, first_off) = self.map.origin(walk[0]);
        let mut nodes = vec![first];
        let mut prev = (first, first_off);
        for &x in &walk[1..] {
            let (u, off) = self.map.origin(x);
            let chain_step = u == prev.0 && off == prev.1 + 1;
            if !chain_step {
                nodes.push(u);
            }
            prev = (u, off);
        }
        Occurrence { nodes, offset: first_off + 1, end_offset: prev.1 + 1 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcher::{match_exact, MatchMode};

    fn graph(directed: bool, labels: &[&str], edges: &[(usize, usize)]) -> LabeledGraph {
        LabeledGraph::new(directed, labels.iter().map(|s| s.to_string()).collect(), edges.iter().copied()).unwrap()
    }

    fn pat(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    #[test]
    fn single_node() {
        let g = graph(false, &["a"], &[]);
        let r = Matcher::new(&g).report(&pat("a"));
        assert_eq!(r.witnesses, vec![Occurrence { nodes: vec![0], offset: 1, end_offset: 1 }]);
        assert_eq!(r.occurrence_count, 1);
        assert!(!Matcher::new(&g).is_match(&pat("aa")));
    }

    #[test]
    fn walk_revisits_nodes() {
        let g = graph(false, &["a", "b"], &[(0, 1)]);
        let r = Matcher::new(&g).report(&pat("aba"));
        assert_eq!(r.witnesses, vec![Occurrence { nodes: vec![0, 1, 0], offset: 1, end_offset: 1 }]);
    }

    #[test]
    fn direction_is_respected() {
        let g = graph(true, &["a", "b"], &[(0, 1)]);
        let m = Matcher::new(&g);
        assert!(m.is_match(&pat("ab")));
        assert!(!m.is_match(&pat("ba")));
    }

    #[test]
    fn unknown_symbol_is_no_match() {
        let g = graph(false, &["a", "b"], &[(0, 1)]);
        assert!(!match_exact(&g, &pat("az"), MatchMode::Decision).is_match());
        assert_eq!(Matcher::new(&g).report(&pat("z")), MatchReport::default());
    }

    #[test]
    fn string_labels_with_offsets() {
        // "xab" -> "cd" -> "ey": pattern "bcde" starts at offset 3 of node 0.
        let g = graph(true, &["xab", "cd", "ey"], &[(0, 1), (1, 2)]);
        let p = pat("bcde");
        let r = Matcher::new(&g).report(&p);
        assert_eq!(r.witnesses, vec![Occurrence { nodes: vec![0, 1, 2], offset: 3, end_offset: 1 }]);
        assert!(r.witnesses[0].validate(&g, &p));
        // occurrence inside one label
        let r = Matcher::new(&g).report(&pat("ab"));
        assert_eq!(r.witnesses, vec![Occurrence { nodes: vec![0], offset: 2, end_offset: 3 }]);
    }

    #[test]
    fn counts_distinct_endpoint_quadruples() {
        // a - b - a star: "ab" from both leaves into the center
        let g = graph(false, &["a", "b", "a"], &[(0, 1), (1, 2)]);
        let r = Matcher::new(&g).report(&pat("ab"));
        assert_eq!(r.witnesses.len(), 1);
        assert_eq!(r.occurrence_count, 2);
        let r = Matcher::new(&g).report(&pat("aba"));
        assert_eq!(r.witnesses.len(), 2);
        assert_eq!(r.occurrence_count, 4);
    }

    #[test]
    fn node_set_iteration() {
        let mut s = NodeSet::new(200);
        for u in [0, 63, 64, 130, 199] {
            s.insert(u);
        }
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 63, 64, 130, 199]);
        assert_eq!(s.count(), 5);
    }
}
