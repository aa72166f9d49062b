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

//! Manifest file: `stat <key> <value>`, `role <id> <role> [<j> <h>] <gadget>`
//! and `bridge <u> <v>` lines.

use std::fmt::Write as _;

use crate::roles::NodeRole;

use super::{ReductionArtifacts, ReductionError, ReductionStats, Variant};

impl ReductionArtifacts {
    pub fn to_manifest(&self) -> String {
        let s = &self.stats;
        let mut out = String::new();
        for (key, value) in [
            ("n", s.n),
            ("k", s.k),
            ("m", s.m),
            ("nodes", s.nodes),
            ("edges", s.edges),
            ("clause_nodes", s.clause_nodes),
            ("dummy_nodes", s.dummy_nodes),
        ] {
            let _ = writeln!(out, "stat {key} {value}");
        }
        let _ = writeln!(out, "stat variant {}", s.variant);
        for (id, role) in self.roles.iter().enumerate() {
            match role.coords {
                Some((j, h)) => {
                    let _ = writeln!(out, "role {id} {} {j} {h} {}", role.kind, role.gadget);
                }
                None => {
                    let _ = writeln!(out, "role {id} {} {}", role.kind, role.gadget);
                }
            }
        }
        for &(u, v) in &s.bridges {
            let _ = writeln!(out, "bridge {u} {v}");
        }
        out
    }

    /// One-line summary printed by the CLI.
    pub fn stats_line(&self) -> String {
        let s = &self.stats;
        format!(
            "variant={} n={} k={} m={} nodes={} edges={} clause_nodes={} dummy_nodes={} bridges={}",
            s.variant,
            s.n,
            s.k,
            s.m,
            s.nodes,
            s.edges,
            s.clause_nodes,
            s.dummy_nodes,
            s.bridges.len()
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Manifest {
    pub stats: ReductionStats,
    pub roles: Vec<NodeRole>,
}

pub fn parse_manifest(text: &str) -> Result<Manifest, ReductionError> {
    let mut stats = ReductionStats {
        n: 0,
        k: 0,
        m: 0,
        nodes: 0,
        edges: 0,
        clause_nodes: 0,
        dummy_nodes: 0,
        bridges: vec![],
        variant: Variant::Base,
    };
    let mut roles = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let bad = |message: String| ReductionError::Manifest { line: line_no, message };
        let num = |tok: &str| tok.parse::<usize>().map_err(|_| bad(format!("invalid number `{tok}`")));
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            [] => {}
            ["stat", "variant", v] => stats.variant = v.parse().map_err(bad)?,
            ["stat", key, value] => {
                let value = num(value)?;
                match *key {
                    "n" => stats.n = value,
                    "k" => stats.k = value,
                    "m" => stats.m = value,
                    "nodes" => stats.nodes = value,
                    "edges" => stats.edges = value,
                    "clause_nodes" => stats.clause_nodes = value,
                    "dummy_nodes" => stats.dummy_nodes = value,
                    other => return Err(bad(format!("unknown stat `{other}`"))),
                }
            }
            ["role", id, rest @ ..] => {
                if num(id)? != roles.len() {
                    return Err(bad("role ids must be listed in order".into()));
                }
                let role = match rest {
                    [kind, gadget] => NodeRole::plain(kind.parse().map_err(bad)?, gadget.parse().map_err(bad)?),
                    [kind, j, h, gadget] => {
                        NodeRole::at(kind.parse().map_err(bad)?, num(j)?, num(h)?, gadget.parse().map_err(bad)?)
                    }
                    _ => return Err(bad("malformed role line".into())),
                };
                roles.push(role);
            }
            ["bridge", u, v] => stats.bridges.push((num(u)?, num(v)?)),
            _ => return Err(bad(format!("unrecognized line `{line}`"))),
        }
    }
    Ok(Manifest { stats, roles })
}
