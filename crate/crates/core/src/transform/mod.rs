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

//! Rewrites of a base instance that keep its match answer:
//!
//! * [`to_degree3`]: binary trees of `d` dummies replace the fan-out of `b` and
//!   the fan-in of `e` in the branching gadget, and a pair of `d` dummies sits
//!   between every two consecutive columns of every ladder. The pattern gets
//!   `d^{n/2}` after each `b` and before each `e`, and `dd` between clause
//!   symbols. Maximum degree becomes three.
//! * [`encode_binary`]: labels and pattern go through the code
//!   `c -> 0000, d -> 1111, b -> 10, e -> 01`, then every node is split into a
//!   chain of single-bit nodes.
//! * [`orient_dag`]: every edge is directed left to right.

mod encoding;

use crate::graph::{expand_to_unit_chains, LabeledGraph, NodeId};
use crate::matcher::Pattern;
use crate::reduction::{
    gu_copies, join_blocks, matrix_from_roles, split_blocks, Assembly, ReductionArtifacts, ReductionError,
    SatisfactionMatrix, Variant,
};
use crate::roles::{Gadget, NodeRole, RoleKind};

pub use encoding::{verify_encoding_table, EncodingReport, EncodingTable};

fn wrong(expected: &'static str, found: Variant) -> ReductionError {
    ReductionError::WrongVariant { expected, found }
}

/// Degree-three branching gadget; returns `(b, e)`.
///
/// Tree dummies carry `(level, index)`: levels `1..=n/2` on the `b` side
/// counted from `b`, levels `n/2+1..=n` on the `e` side counted from the rows.
/// Bottom tree node `q` on either side serves row `q + 1`, so every path from
/// `b` (or to `e`) crosses exactly `n/2` tree dummies.
fn push_gf3(asm: &mut Assembly, matrix: &SatisfactionMatrix, half: usize) -> (NodeId, NodeId) {
    let k = matrix.clauses;
    let b = asm.add("b", NodeRole::plain(RoleKind::Begin, Gadget::GF));
    let mut level = vec![b];
    for t in 1..=half {
        let next: Vec<NodeId> = (0..1usize << t)
            .map(|q| {
                let f = asm.add("d", NodeRole::at(RoleKind::TreeDummy, t, q + 1, Gadget::GF));
                asm.link(level[q / 2], f);
                f
            })
            .collect();
        level = next;
    }
    let bottom = level;

    let mut last_cols = Vec::with_capacity(matrix.rows.len());
    for j in 1..=matrix.rows.len() {
        let mut entry = bottom[j - 1];
        for h in 1..=k {
            let mut col = Vec::with_capacity(2);
            if matrix.contains(j, h) {
                col.push(asm.add("c", NodeRole::at(RoleKind::Clause, j, h, Gadget::GF)));
            }
            col.push(asm.add("d", NodeRole::at(RoleKind::Dummy, j, h, Gadget::GF)));
            col.iter().for_each(|&x| asm.link(entry, x));
            if h < k {
                entry = push_pair(asm, &col, j, h, Gadget::GF);
            } else {
                last_cols.push(col);
            }
        }
    }

    // e side, bottom level first so that ids keep increasing towards e
    let mut children: Vec<Vec<NodeId>> = last_cols;
    for t in (1..=half).rev() {
        let tag = half + (half - t + 1);
        let parents: Vec<NodeId> =
            (0..1usize << t).map(|q| asm.add("d", NodeRole::at(RoleKind::TreeDummy, tag, q + 1, Gadget::GF))).collect();
        for (q, kids) in children.iter().enumerate() {
            let parent = if t == half { parents[q] } else { parents[q / 2] };
            kids.iter().for_each(|&x| asm.link(x, parent));
        }
        children = parents.into_iter().map(|p| vec![p]).collect();
    }
    let e = asm.add("e", NodeRole::plain(RoleKind::End, Gadget::GF));
    children.iter().flatten().for_each(|&x| asm.link(x, e));
    (b, e)
}

/// Dummy pair after column `h` of a row: both column nodes feed `f1`,
/// `f1 - f2`, and `f2` is returned as the entry of column `h + 1`.
fn push_pair(asm: &mut Assembly, col: &[NodeId], row: usize, h: usize, gadget: Gadget) -> NodeId {
    let f1 = asm.add("d", NodeRole::at(RoleKind::PairDummy, row, h, gadget));
    col.iter().for_each(|&x| asm.link(x, f1));
    let f2 = asm.add("d", NodeRole::at(RoleKind::PairDummy, row, h, gadget));
    asm.link(f1, f2);
    f2
}

/// Degree-three universal gadget; returns first `b` and last `e`. Padding
/// chain dummies carry `(copy, position)` with positions `1..=n/2` after
/// `b_i` and `n/2+1..=n` before `e_i`.
fn push_gu3(asm: &mut Assembly, k: usize, copies: usize, half: usize, gadget: Gadget) -> (NodeId, NodeId) {
    let mut first_b = None;
    let mut prev_e: Option<NodeId> = None;
    for i in 1..=copies {
        let b = asm.add("b", NodeRole::at(RoleKind::Begin, i, 0, gadget));
        if let Some(e) = prev_e {
            asm.bridge(e, b);
        }
        first_b.get_or_insert(b);
        let mut entry = b;
        for t in 1..=half {
            let f = asm.add("d", NodeRole::at(RoleKind::TreeDummy, i, t, gadget));
            asm.link(entry, f);
            entry = f;
        }
        let mut col = Vec::new();
        for h in 1..=k {
            col = vec![
                asm.add("c", NodeRole::at(RoleKind::Clause, i, h, gadget)),
                asm.add("d", NodeRole::at(RoleKind::Dummy, i, h, gadget)),
            ];
            col.iter().for_each(|&x| asm.link(entry, x));
            if h < k {
                entry = push_pair(asm, &col, i, h, gadget);
            }
        }
        let mut tail = col;
        for t in half + 1..=2 * half {
            let f = asm.add("d", NodeRole::at(RoleKind::TreeDummy, i, t, gadget));
            tail.iter().for_each(|&x| asm.link(x, f));
            tail = vec![f];
        }
        let e = asm.add("e", NodeRole::at(RoleKind::End, i, 0, gadget));
        tail.iter().for_each(|&x| asm.link(x, e));
        prev_e = Some(e);
    }
    (first_b.expect("copies >= 1"), prev_e.expect("copies >= 1"))
}

/// `d^{n/2} a_1 d d a_2 ... d d a_k d^{n/2}` for a block `a_1..a_k`.
pub fn degree3_block(block: &[char], half: usize) -> Vec<char> {
    let mut out = vec!['d'; half];
    for (h, &a) in block.iter().enumerate() {
        if h > 0 {
            out.extend(['d', 'd']);
        }
        out.push(a);
    }
    out.extend(std::iter::repeat_n('d', half));
    out
}

pub fn to_degree3(art: &ReductionArtifacts) -> Result<ReductionArtifacts, ReductionError> {
    if art.variant() != Variant::Base {
        return Err(wrong("Base", art.variant()));
    }
    let (n, k) = (art.stats.n, art.stats.k);
    let half = n / 2;
    let matrix = matrix_from_roles(&art.roles, n, k);
    let blocks = split_blocks(&art.pattern)
        .filter(|b| b.len() == 1 << half && b.iter().all(|x| x.len() == k))
        .ok_or_else(|| ReductionError::Inconsistent("pattern does not have the block layout".into()))?;
    let copies = gu_copies(n);

    let mut asm = Assembly::default();
    let u = asm.add("e", NodeRole::plain(RoleKind::End, Gadget::Extremal));
    let (b1, e1) = push_gu3(&mut asm, k, copies, half, Gadget::GU1);
    asm.bridge(u, b1);
    let (bf, ef) = push_gf3(&mut asm, &matrix, half);
    asm.bridge(e1, bf);
    let (b2, e2) = push_gu3(&mut asm, k, copies, half, Gadget::GU2);
    asm.bridge(ef, b2);
    let z = asm.add("b", NodeRole::plain(RoleKind::Begin, Gadget::Extremal));
    asm.bridge(e2, z);
    let (graph, roles, mut bridges) = asm.finish()?;
    bridges.sort_unstable();

    let revised: Vec<Vec<char>> = blocks.iter().map(|b| degree3_block(b, half)).collect();
    let pattern = join_blocks(revised.iter().map(Vec::as_slice));
    Ok(ReductionArtifacts::assemble(n, k, Variant::Degree3, pattern, graph, roles, bridges))
}

pub fn encode_binary(art: &ReductionArtifacts) -> Result<ReductionArtifacts, ReductionError> {
    if art.variant() != Variant::Degree3 {
        return Err(wrong("Degree3", art.variant()));
    }
    let table = EncodingTable::standard();
    let encode = |s: &str| {
        table.encode(s).ok_or_else(|| ReductionError::Inconsistent(format!("label `{s}` outside {{b,e,c,d}}")))
    };
    let labels = art.graph.labels().iter().map(|l| encode(l)).collect::<Result<Vec<_>, _>>()?;
    let relabeled = LabeledGraph::new(false, labels, art.graph.edges().iter().copied())?;
    let (graph, map) = expand_to_unit_chains(&relabeled);
    let roles = (0..graph.node_count())
        .map(|x| {
            let (u, off) = map.origin(x);
            NodeRole::at(RoleKind::BitChain, u, off + 1, art.roles[u].gadget)
        })
        .collect();
    let bridges = art.stats.bridges.iter().map(|&(u, v)| (map.tail(u), map.head(v))).collect();
    let pattern: Pattern = encode(&art.pattern.to_string())?.parse().expect("nonempty");
    Ok(ReductionArtifacts::assemble(art.stats.n, art.stats.k, Variant::Binary, pattern, graph, roles, bridges))
}

pub fn orient_dag(art: &ReductionArtifacts) -> Result<ReductionArtifacts, ReductionError> {
    let variant = match art.variant() {
        Variant::Degree3 => Variant::Degree3Dag,
        Variant::Binary => Variant::BinaryDag,
        other => return Err(wrong("Degree3 or Binary", other)),
    };
    Ok(ReductionArtifacts::assemble(
        art.stats.n,
        art.stats.k,
        variant,
        art.pattern.clone(),
        art.graph.orient_by_id(),
        art.roles.clone(),
        art.stats.bridges.clone(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{find_bridges, is_dag, max_degree};
    use crate::reduction::{binary_sizes, build_full_graph, build_satisfaction_matrix, degree3_sizes};
    use crate::sat::CnfFormula;

    fn xor2() -> CnfFormula {
        CnfFormula::from_ints(2, &[&[1, 2], &[-1, -2]]).unwrap()
    }

    #[test]
    fn revised_block_template() {
        assert_eq!(degree3_block(&['c', 'd'], 1).iter().collect::<String>(), "dcdddd");
        let art = to_degree3(&build_full_graph(&xor2()).unwrap()).unwrap();
        assert!(art.pattern.to_string().starts_with("ebdcddddeb"));
    }

    #[test]
    fn degree3_sizes_and_bounds() {
        for f in [
            xor2(),
            CnfFormula::from_ints(4, &[&[1, 3], &[-2, 4], &[3]]).unwrap(),
            CnfFormula::from_ints(4, &[&[1, -3]]).unwrap(),
        ] {
            let base = build_full_graph(&f).unwrap();
            let d3 = to_degree3(&base).unwrap();
            d3.check().unwrap();
            let sizes = degree3_sizes(f.num_vars(), &build_satisfaction_matrix(&f).unwrap());
            assert_eq!((d3.stats.m, d3.stats.nodes, d3.stats.edges), (sizes.m, sizes.nodes, sizes.edges));
            assert!(max_degree(&d3.graph).undirected <= 3);

            let bin = encode_binary(&d3).unwrap();
            bin.check().unwrap();
            let sizes = binary_sizes(f.num_vars(), &build_satisfaction_matrix(&f).unwrap());
            assert_eq!((bin.stats.m, bin.stats.nodes, bin.stats.edges), (sizes.m, sizes.nodes, sizes.edges));
            assert!(bin.graph.labels().iter().all(|l| l == "0" || l == "1"));
            assert!(max_degree(&bin.graph).undirected <= 3);
            let bridges = find_bridges(&bin.graph).unwrap();
            assert!(bin.stats.bridges.iter().all(|e| bridges.contains(e)));

            for dag in [orient_dag(&d3).unwrap(), orient_dag(&bin).unwrap()] {
                assert!(is_dag(&dag.graph).unwrap());
                assert!(max_degree(&dag.graph).in_plus_out <= 3);
            }
        }
    }

    #[test]
    fn wrong_variants_rejected() {
        let base = build_full_graph(&xor2()).unwrap();
        assert!(matches!(encode_binary(&base), Err(ReductionError::WrongVariant { .. })));
        assert!(matches!(orient_dag(&base), Err(ReductionError::WrongVariant { .. })));
        let d3 = to_degree3(&base).unwrap();
        assert!(matches!(to_degree3(&d3), Err(ReductionError::WrongVariant { .. })));
        let dag = orient_dag(&encode_binary(&d3).unwrap()).unwrap();
        assert_eq!(dag.variant(), Variant::BinaryDag);
        assert!(matches!(orient_dag(&dag), Err(ReductionError::WrongVariant { .. })));
    }
}
