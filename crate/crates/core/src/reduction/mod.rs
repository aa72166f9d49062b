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

//! SAT to pattern-matching reduction.
//!
//! For a formula over `n` (even) variables and `k` clauses, with the half
//! assignments `x_1..x_R` of the first half and `y_1..y_R` of the second half
//! (`R = 2^{n/2}`), this builds
//!
//! * the pattern `e b P_1 e b P_2 e ... b P_R e b` where `P_i[h]` is `c` when
//!   `x_i` leaves clause `h` unsatisfied and `d` otherwise;
//! * the graph `u - GU1 - GF - GU2 - z`: `GF` has one row per `y_j` with a
//!   `d` node in every column and a `c` node in column `h` iff `y_j`
//!   satisfies clause `h`; each universal gadget `GU` is `R - 1` chained
//!   copies of a full two-row ladder that matches any block `b {c,d}^k e`.
//!
//! The pattern occurs in the graph iff the formula is satisfiable. Every edge
//! joining an `e` node to a `b` node is a bridge.
//!
//! Node ids run left to right (`u`, `GU1`, `GF`, `GU2`, `z`, each row-major),
//! so the canonical orientation `u < v` of every edge points from the
//! beginning of the pattern towards its end.

mod manifest;
mod sizes;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{find_bridges, GraphError, LabeledGraph, NodeId};
use crate::matcher::Pattern;
use crate::roles::{Gadget, NodeRole, RoleKind};
use crate::sat::{enumerate_half_assignments, half_satisfies, make_even, CnfFormula, Half, SatError};

pub use manifest::{parse_manifest, Manifest};
pub use sizes::{base_sizes, binary_sizes, degree3_sizes, gu_copies, gu_copy_nodes, SizeFormula};

/// Largest (padded) variable count the builders accept.
pub const REDUCTION_MAX_VARS: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("variable count {0} is odd; pad it with make_even first")]
    OddVariableCount(usize),
    #[error("{vars} variables exceeds the reduction limit of {limit}")]
    TooManyVariables { vars: usize, limit: usize },
    #[error("expected a {expected} artifact, got {found}")]
    WrongVariant { expected: &'static str, found: Variant },
    #[error("inconsistent artifact: {0}")]
    Inconsistent(String),
    #[error("manifest line {line}: {message}")]
    Manifest { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Sat(#[from] SatError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Base,
    Degree3,
    Binary,
    BinaryDag,
    Degree3Dag,
}

impl Variant {
    pub const ALL: [Variant; 5] =
        [Variant::Base, Variant::Degree3, Variant::Binary, Variant::BinaryDag, Variant::Degree3Dag];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Base => "Base",
            Variant::Degree3 => "Degree3",
            Variant::Binary => "Binary",
            Variant::BinaryDag => "BinaryDag",
            Variant::Degree3Dag => "Degree3Dag",
        }
    }

    pub fn is_directed(self) -> bool {
        matches!(self, Variant::BinaryDag | Variant::Degree3Dag)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Variant::ALL.into_iter().find(|v| v.as_str() == s).ok_or_else(|| format!("unknown variant `{s}`"))
    }
}

/// For each `y_j` in counting order, the (1-based) clauses it satisfies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatisfactionMatrix {
    pub clauses: usize,
    pub rows: Vec<BTreeSet<usize>>,
}

impl SatisfactionMatrix {
    pub fn contains(&self, row: usize, clause: usize) -> bool {
        self.rows[row - 1].contains(&clause)
    }

    pub fn entries(&self) -> usize {
        self.rows.iter().map(BTreeSet::len).sum()
    }

    /// Number of rows having clause node `h`.
    pub fn column_entries(&self, h: usize) -> usize {
        self.rows.iter().filter(|r| r.contains(&h)).count()
    }

    /// True iff some row covers every `c` position of `block`.
    pub fn covers(&self, block: &[char]) -> bool {
        self.rows.iter().any(|row| block.iter().enumerate().all(|(i, &s)| s != 'c' || row.contains(&(i + 1))))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStats {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub nodes: usize,
    pub edges: usize,
    pub clause_nodes: usize,
    pub dummy_nodes: usize,
    /// Edges joining each `e` node to the following `b` node, in ids of the
    /// current graph.
    pub bridges: Vec<(NodeId, NodeId)>,
    pub variant: Variant,
}

impl ReductionStats {
    fn recount(
        n: usize,
        k: usize,
        variant: Variant,
        pattern: &Pattern,
        graph: &LabeledGraph,
        roles: &[NodeRole],
        bridges: Vec<(NodeId, NodeId)>,
    ) -> Self {
        let count = |pred: fn(RoleKind) -> bool| roles.iter().filter(|r| pred(r.kind)).count();
        ReductionStats {
            n,
            k,
            m: pattern.len(),
            nodes: graph.node_count(),
            edges: graph.edge_count(),
            clause_nodes: count(|k| k == RoleKind::Clause),
            dummy_nodes: count(|k| matches!(k, RoleKind::Dummy | RoleKind::TreeDummy | RoleKind::PairDummy)),
            bridges,
            variant,
        }
    }
}

/// Pattern, graph, node-role manifest and size statistics of one reduction
/// stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionArtifacts {
    pub pattern: Pattern,
    pub graph: LabeledGraph,
    pub roles: Vec<NodeRole>,
    pub stats: ReductionStats,
}

impl ReductionArtifacts {
    pub(crate) fn assemble(
        n: usize,
        k: usize,
        variant: Variant,
        pattern: Pattern,
        graph: LabeledGraph,
        roles: Vec<NodeRole>,
        bridges: Vec<(NodeId, NodeId)>,
    ) -> Self {
        let stats = ReductionStats::recount(n, k, variant, &pattern, &graph, &roles, bridges);
        ReductionArtifacts { pattern, graph, roles, stats }
    }

    pub fn variant(&self) -> Variant {
        self.stats.variant
    }

    /// Recounts the statistics and cross-checks the recorded bridges against
    /// [`find_bridges`] (undirected variants only).
    pub fn check(&self) -> Result<(), ReductionError> {
        let s = &self.stats;
        let fresh =
            ReductionStats::recount(s.n, s.k, s.variant, &self.pattern, &self.graph, &self.roles, s.bridges.clone());
        if fresh != *s {
            return Err(ReductionError::Inconsistent(format!("stats {s:?} but recount gives {fresh:?}")));
        }
        if self.roles.len() != self.graph.node_count() {
            return Err(ReductionError::Inconsistent("role count differs from node count".into()));
        }
        let r = 1usize << (s.n / 2);
        if s.bridges.len() != 2 * r {
            return Err(ReductionError::Inconsistent(format!(
                "{} boundary edges recorded, expected {}",
                s.bridges.len(),
                2 * r
            )));
        }
        if !self.graph.is_directed() {
            let found = find_bridges(&self.graph)?;
            if let Some(e) = s.bridges.iter().find(|e| !found.contains(e)) {
                return Err(ReductionError::Inconsistent(format!("boundary edge {e:?} is not a bridge")));
            }
        }
        Ok(())
    }
}

/// Incremental graph construction shared by all builders.
/// Graph, roles and bridge list of a finished assembly.
pub(crate) type Assembled = (LabeledGraph, Vec<NodeRole>, Vec<(NodeId, NodeId)>);

#[derive(Debug, Default)]
pub(crate) struct Assembly {
    labels: Vec<String>,
    roles: Vec<NodeRole>,
    edges: Vec<(NodeId, NodeId)>,
    bridges: Vec<(NodeId, NodeId)>,
}

impl Assembly {
    pub(crate) fn add(&mut self, label: &str, role: NodeRole) -> NodeId {
        self.labels.push(label.to_string());
        self.roles.push(role);
        self.labels.len() - 1
    }

    pub(crate) fn link(&mut self, u: NodeId, v: NodeId) {
        self.edges.push((u, v));
    }

    /// An `e`-to-`b` boundary edge.
    pub(crate) fn bridge(&mut self, e: NodeId, b: NodeId) {
        self.link(e, b);
        self.bridges.push((e.min(b), e.max(b)));
    }

    pub(crate) fn finish(self) -> Result<Assembled, GraphError> {
        let g = LabeledGraph::new(false, self.labels, self.edges)?;
        Ok((g, self.roles, self.bridges))
    }
}

fn require_even(f: &CnfFormula) -> Result<usize, ReductionError> {
    let n = f.num_vars();
    if n % 2 == 1 {
        return Err(ReductionError::OddVariableCount(n));
    }
    if n > REDUCTION_MAX_VARS {
        return Err(ReductionError::TooManyVariables { vars: n, limit: REDUCTION_MAX_VARS });
    }
    Ok(n)
}

/// `P_{x_i}` for every first-half assignment, in counting order.
pub fn pattern_blocks(f: &CnfFormula) -> Result<Vec<Vec<char>>, ReductionError> {
    let n = require_even(f)?;
    Ok(enumerate_half_assignments(n, Half::First)?
        .iter()
        .map(|x| f.clauses().iter().map(|c| if half_satisfies(x, c, n) { 'd' } else { 'c' }).collect())
        .collect())
}

/// Concatenates blocks as `e b B_1 e b B_2 e ... b B_R e b`.
pub(crate) fn join_blocks<'a>(blocks: impl IntoIterator<Item = &'a [char]>) -> Pattern {
    let mut symbols = vec!['e'];
    for block in blocks {
        symbols.push('b');
        symbols.extend_from_slice(block);
        symbols.push('e');
    }
    symbols.push('b');
    Pattern::new(symbols).expect("nonempty")
}

/// Inverse of the block layout: the `{c,d}` runs between each `b` and `e`.
pub fn split_blocks(p: &Pattern) -> Option<Vec<Vec<char>>> {
    let s = p.symbols();
    if s.len() < 2 || s[0] != 'e' || s[s.len() - 1] != 'b' {
        return None;
    }
    let inner = &s[1..s.len() - 1];
    let mut blocks = Vec::new();
    let mut rest = inner;
    while !rest.is_empty() {
        if rest[0] != 'b' {
            return None;
        }
        let end = rest.iter().position(|&c| c == 'e')?;
        let body = &rest[1..end];
        if body.is_empty() || body.iter().any(|&c| c != 'c' && c != 'd') {
            return None;
        }
        blocks.push(body.to_vec());
        rest = &rest[end + 1..];
    }
    (!blocks.is_empty()).then_some(blocks)
}

pub fn build_pattern(f: &CnfFormula) -> Result<Pattern, ReductionError> {
    let blocks = pattern_blocks(f)?;
    Ok(join_blocks(blocks.iter().map(Vec::as_slice)))
}

pub fn build_satisfaction_matrix(f: &CnfFormula) -> Result<SatisfactionMatrix, ReductionError> {
    let n = require_even(f)?;
    let rows = enumerate_half_assignments(n, Half::Second)?
        .iter()
        .map(|y| f.clauses().iter().enumerate().filter(|(_, c)| half_satisfies(y, c, n)).map(|(h, _)| h + 1).collect())
        .collect();
    Ok(SatisfactionMatrix { clauses: f.num_clauses(), rows })
}

/// Appends the branching gadget; returns its `(b, e)`.
fn push_gf(asm: &mut Assembly, matrix: &SatisfactionMatrix) -> (NodeId, NodeId) {
    let k = matrix.clauses;
    let b = asm.add("b", NodeRole::plain(RoleKind::Begin, Gadget::GF));
    let mut prev_col: Vec<NodeId> = Vec::new();
    let mut last_cols: Vec<Vec<NodeId>> = Vec::new();
    for j in 1..=matrix.rows.len() {
        for h in 1..=k {
            let mut col = Vec::with_capacity(2);
            if matrix.contains(j, h) {
                col.push(asm.add("c", NodeRole::at(RoleKind::Clause, j, h, Gadget::GF)));
            }
            col.push(asm.add("d", NodeRole::at(RoleKind::Dummy, j, h, Gadget::GF)));
            if h == 1 {
                col.iter().for_each(|&x| asm.link(b, x));
            } else {
                for &x in &prev_col {
                    for &y in &col {
                        asm.link(x, y);
                    }
                }
            }
            prev_col = col;
        }
        last_cols.push(std::mem::take(&mut prev_col));
    }
    let e = asm.add("e", NodeRole::plain(RoleKind::End, Gadget::GF));
    for &x in last_cols.iter().flatten() {
        asm.link(x, e);
    }
    (b, e)
}

/// Appends `copies` chained universal ladders; returns the first `b` and the
/// last `e`.
fn push_gu(asm: &mut Assembly, k: usize, copies: usize, gadget: Gadget) -> (NodeId, NodeId) {
    let mut first_b = None;
    let mut prev_e: Option<NodeId> = None;
    for i in 1..=copies {
        let b = asm.add("b", NodeRole::at(RoleKind::Begin, i, 0, gadget));
        if let Some(e) = prev_e {
            asm.bridge(e, b);
        }
        first_b.get_or_insert(b);
        let mut prev: Option<(NodeId, NodeId)> = None;
        for h in 1..=k {
            let c = asm.add("c", NodeRole::at(RoleKind::Clause, i, h, gadget));
            let d = asm.add("d", NodeRole::at(RoleKind::Dummy, i, h, gadget));
            match prev {
                None => {
                    asm.link(b, c);
                    asm.link(b, d);
                }
                Some((pc, pd)) => {
                    for x in [pc, pd] {
                        asm.link(x, c);
                        asm.link(x, d);
                    }
                }
            }
            prev = Some((c, d));
        }
        let e = asm.add("e", NodeRole::at(RoleKind::End, i, 0, gadget));
        let (pc, pd) = prev.expect("k >= 1");
        asm.link(pc, e);
        asm.link(pd, e);
        prev_e = Some(e);
    }
    (first_b.expect("copies >= 1"), prev_e.expect("copies >= 1"))
}

/// The branching gadget for an explicit satisfaction matrix.
pub fn build_gadget_gf_from_matrix(matrix: &SatisfactionMatrix) -> (LabeledGraph, Vec<NodeRole>) {
    let mut asm = Assembly::default();
    push_gf(&mut asm, matrix);
    let (g, roles, _) = asm.finish().expect("gadget is a simple graph");
    (g, roles)
}

pub fn build_gadget_gf(f: &CnfFormula) -> Result<(LabeledGraph, Vec<NodeRole>), ReductionError> {
    Ok(build_gadget_gf_from_matrix(&build_satisfaction_matrix(f)?))
}

/// `copies` universal ladders for the formula's clause count, tagged `GU1`.
pub fn build_gadget_gu(f: &CnfFormula, copies: usize) -> Result<(LabeledGraph, Vec<NodeRole>), ReductionError> {
    require_even(f)?;
    if copies == 0 {
        return Ok((LabeledGraph::new(false, vec![], [])?, vec![]));
    }
    let mut asm = Assembly::default();
    push_gu(&mut asm, f.num_clauses(), copies, Gadget::GU1);
    let (g, roles, _) = asm.finish()?;
    Ok((g, roles))
}

/// Full base instance for an even-`n` formula.
pub fn build_full_graph(f: &CnfFormula) -> Result<ReductionArtifacts, ReductionError> {
    let n = require_even(f)?;
    let k = f.num_clauses();
    let matrix = build_satisfaction_matrix(f)?;
    let copies = gu_copies(n);

    let mut asm = Assembly::default();
    let u = asm.add("e", NodeRole::plain(RoleKind::End, Gadget::Extremal));
    let (b1, e1) = push_gu(&mut asm, k, copies, Gadget::GU1);
    asm.bridge(u, b1);
    let (bf, ef) = push_gf(&mut asm, &matrix);
    asm.bridge(e1, bf);
    let (b2, e2) = push_gu(&mut asm, k, copies, Gadget::GU2);
    asm.bridge(ef, b2);
    let z = asm.add("b", NodeRole::plain(RoleKind::Begin, Gadget::Extremal));
    asm.bridge(e2, z);

    let (graph, roles, mut bridges) = asm.finish()?;
    bridges.sort_unstable();
    let pattern = build_pattern(f)?;
    Ok(ReductionArtifacts::assemble(n, k, Variant::Base, pattern, graph, roles, bridges))
}

/// Pads to an even variable count, then builds the base instance.
pub fn reduce(f: &CnfFormula) -> Result<ReductionArtifacts, ReductionError> {
    build_full_graph(&make_even(f))
}

/// Rebuilds the satisfaction matrix from the `GF` clause nodes of an
/// artifact.
pub fn matrix_from_roles(roles: &[NodeRole], n: usize, k: usize) -> SatisfactionMatrix {
    let mut rows = vec![BTreeSet::new(); 1 << (n / 2)];
    for r in roles {
        if let (RoleKind::Clause, Gadget::GF, Some((j, h))) = (r.kind, r.gadget, r.coords) {
            rows[j - 1].insert(h);
        }
    }
    SatisfactionMatrix { clauses: k, rows }
}
