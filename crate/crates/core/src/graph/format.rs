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

//! Line-oriented text format.
//!
//! ```text
//! pmlg 1 undirected
//! 2 1
//! n 0 b
//! n 1 e
//! e 0 1
//! ```
//!
//! Lines starting with `#` (and blank lines) are ignored.

use std::fmt::Write as _;

use super::{GraphError, LabeledGraph};

fn err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse { line, message: message.into() }
}

fn parse_index(tok: Option<&str>, line: usize, what: &str) -> Result<usize, GraphError> {
    let tok = tok.ok_or_else(|| err(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| err(line, format!("invalid {what} `{tok}`")))
}

pub fn parse_graph(text: &str) -> Result<LabeledGraph, GraphError> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line, header) = lines.next().ok_or_else(|| err(1, "missing header"))?;
    let directed = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["pmlg", "1", "directed"] => true,
        ["pmlg", "1", "undirected"] => false,
        _ => return Err(err(line, format!("malformed header `{header}`"))),
    };

    let (line, counts) = lines.next().ok_or_else(|| err(line + 1, "missing node/edge counts"))?;
    let mut toks = counts.split_whitespace();
    let num_nodes = parse_index(toks.next(), line, "node count")?;
    let num_edges = parse_index(toks.next(), line, "edge count")?;
    if toks.next().is_some() {
        return Err(err(line, "trailing tokens after counts"));
    }

    let mut last = line;
    let mut labels: Vec<Option<String>> = vec![None; num_nodes];
    for _ in 0..num_nodes {
        let (line, text) = lines.next().ok_or_else(|| err(last + 1, format!("expected {num_nodes} node lines")))?;
        last = line;
        let mut toks = text.split_whitespace();
        if toks.next() != Some("n") {
            return Err(err(line, "expected node line `n <id> <label>`"));
        }
        let id = parse_index(toks.next(), line, "node id")?;
        let label = toks.next().ok_or_else(|| err(line, "empty label"))?;
        if toks.next().is_some() {
            return Err(err(line, "label must not contain whitespace"));
        }
        let slot = labels.get_mut(id).ok_or_else(|| err(line, format!("node id {id} outside 0..{num_nodes}")))?;
        if slot.is_some() {
            return Err(err(line, format!("duplicate node id {id}")));
        }
        *slot = Some(label.to_string());
    }
    let labels: Vec<String> = labels.into_iter().map(|l| l.unwrap_or_default()).collect();

    let mut edges = Vec::with_capacity(num_edges);
    let mut seen = std::collections::HashSet::with_capacity(num_edges);
    for _ in 0..num_edges {
        let (line, text) = lines.next().ok_or_else(|| err(last + 1, format!("expected {num_edges} edge lines")))?;
        last = line;
        let mut toks = text.split_whitespace();
        if toks.next() != Some("e") {
            return Err(err(line, "expected edge line `e <u> <v>`"));
        }
        let u = parse_index(toks.next(), line, "edge endpoint")?;
        let v = parse_index(toks.next(), line, "edge endpoint")?;
        if toks.next().is_some() {
            return Err(err(line, "trailing tokens after edge"));
        }
        if u >= num_nodes || v >= num_nodes {
            return Err(err(line, format!("edge ({u}, {v}) references a node outside 0..{num_nodes}")));
        }
        if u == v {
            return Err(err(line, format!("self-loop on node {u}")));
        }
        let key = if directed { (u, v) } else { (u.min(v), u.max(v)) };
        if !seen.insert(key) {
            return Err(err(line, format!("duplicate edge ({u}, {v})")));
        }
        edges.push((u, v));
    }
    if let Some((line, _)) = lines.next() {
        return Err(err(line, "unexpected content after the declared edges"));
    }
    LabeledGraph::new(directed, labels, edges)
}

/// Canonical serialization; `parse_graph(&serialize_graph(g)) == *g`.
pub fn serialize_graph(g: &LabeledGraph) -> String {
    let mut out = String::new();
    let kind = if g.is_directed() { "directed" } else { "undirected" };
    let _ = writeln!(out, "pmlg 1 {kind}");
    let _ = writeln!(out, "{} {}", g.node_count(), g.edge_count());
    for (id, label) in g.labels().iter().enumerate() {
        let _ = writeln!(out, "n {id} {label}");
    }
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    out
}
