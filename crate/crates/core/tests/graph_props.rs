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

mod common;

use common::{arb_graph, naive_bridges};
use pmlg::graph::{find_bridges, parse_graph, serialize_graph};
use pmlg::reduction::build_full_graph;
use pmlg::transform::{encode_binary, orient_dag, to_degree3};
use pmlg::CnfFormula;
use proptest::prelude::*;

const LABELS: &[&str] = &["a", "b", "ab", "ba", "aab", "0", "1"];

proptest! {
    #[test]
    fn serialize_then_parse_is_identity(g in arb_graph(12, LABELS, None)) {
        let text = serialize_graph(&g);
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(serialize_graph(&back), text);
    }

    #[test]
    fn bridges_match_removal_oracle(g in arb_graph(12, &["a"], Some(false))) {
        prop_assert_eq!(find_bridges(&g).unwrap(), naive_bridges(&g));
    }

    #[test]
    fn permuting_ids_preserves_bridge_count(
        (g, perm) in arb_graph(10, &["a"], Some(false))
            .prop_flat_map(|g| { let n = g.node_count(); (Just(g), common::random_permutation(n)) })
    ) {
        let h = g.permuted(&perm).unwrap();
        prop_assert_eq!(find_bridges(&g).unwrap().len(), find_bridges(&h).unwrap().len());
    }
}

#[test]
fn reduction_graphs_round_trip() {
    let f = CnfFormula::from_ints(4, &[&[1, -3], &[2, 4], &[-1, -2, 3]]).unwrap();
    let base = build_full_graph(&f).unwrap();
    let d3 = to_degree3(&base).unwrap();
    let bin = encode_binary(&d3).unwrap();
    let dag = orient_dag(&bin).unwrap();
    for art in [&base, &d3, &bin, &dag] {
        let text = serialize_graph(&art.graph);
        assert_eq!(parse_graph(&text).unwrap(), art.graph, "{}", art.variant());
    }
}

#[test]
fn reduction_bridges_agree_with_removal_oracle() {
    let f = CnfFormula::from_ints(2, &[&[1, 2], &[-1, -2]]).unwrap();
    let base = build_full_graph(&f).unwrap();
    let naive = naive_bridges(&base.graph);
    assert_eq!(find_bridges(&base.graph).unwrap(), naive);
    assert!(base.stats.bridges.iter().all(|e| naive.contains(e)));
    assert_eq!(base.stats.bridges.len(), 4);
}
