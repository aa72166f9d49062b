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

//! Closed-form instance sizes, computed from the satisfaction matrix alone
//! (independently of the builders, which are checked against them).

use super::SatisfactionMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeFormula {
    pub m: usize,
    pub nodes: usize,
    pub edges: usize,
}

/// Copies of the universal ladder in each universal gadget: `2^{n/2} - 1`.
pub fn gu_copies(n: usize) -> usize {
    (1 << (n / 2)) - 1
}

/// Nodes per universal ladder copy: `2k + 2`.
pub fn gu_copy_nodes(k: usize) -> usize {
    2 * k + 2
}

fn c(matrix: &SatisfactionMatrix, j: usize, h: usize) -> usize {
    matrix.contains(j, h) as usize
}

pub fn base_sizes(n: usize, matrix: &SatisfactionMatrix) -> SizeFormula {
    let k = matrix.clauses;
    let r = 1usize << (n / 2);
    let s = matrix.entries();
    let mut ladder = 0;
    for j in 1..=r {
        for h in 1..k {
            ladder += (1 + c(matrix, j, h)) * (1 + c(matrix, j, h + 1));
        }
    }
    let gf_nodes = 2 + k * r + s;
    let gf_edges = (r + matrix.column_entries(1)) + (r + matrix.column_entries(k)) + ladder;
    let copies = gu_copies(n);
    SizeFormula {
        m: (k + 2) * r + 2,
        nodes: 2 + gf_nodes + 2 * copies * gu_copy_nodes(k),
        edges: 4 + gf_edges + 2 * (copies * 4 * k + copies - 1),
    }
}

pub fn degree3_sizes(n: usize, matrix: &SatisfactionMatrix) -> SizeFormula {
    let k = matrix.clauses;
    let half = n / 2;
    let r = 1usize << half;
    let tree = 2 * r - 2;
    let mut pairs = 0;
    for j in 1..=r {
        for h in 1..k {
            pairs += (1 + c(matrix, j, h)) + 1 + (1 + c(matrix, j, h + 1));
        }
    }
    let gf_nodes = 2 + 2 * tree + k * r + matrix.entries() + 2 * (k - 1) * r;
    let gf_edges = tree + (r + matrix.column_entries(1)) + tree + (r + matrix.column_entries(k)) + pairs;
    let copies = gu_copies(n);
    let copy_nodes = 2 + 2 * k + 2 * half + 2 * (k - 1);
    let copy_edges = 2 * (half + 2) + 5 * (k - 1);
    SizeFormula {
        m: r * (n + 3 * k) + 2,
        nodes: 2 + gf_nodes + 2 * copies * copy_nodes,
        edges: 4 + gf_edges + 2 * (copies * copy_edges + copies - 1),
    }
}

/// Sizes after encoding the degree-three instance in binary and splitting
/// labels into chains: `4R` nodes (and `2R + 2` pattern symbols) are `b`/`e`
/// and take two bits, everything else takes four.
pub fn binary_sizes(n: usize, matrix: &SatisfactionMatrix) -> SizeFormula {
    let r = 1usize << (n / 2);
    let d3 = degree3_sizes(n, matrix);
    let wide = d3.nodes - 4 * r;
    SizeFormula {
        m: 4 * (d3.m - 2 * r - 2) + 2 * (2 * r + 2),
        nodes: 4 * wide + 2 * 4 * r,
        edges: d3.edges + 3 * wide + 4 * r,
    }
}
