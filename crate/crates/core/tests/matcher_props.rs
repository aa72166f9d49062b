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

use std::collections::BTreeSet;

use common::{arb_graph, random_permutation};
use pmlg::graph::expand_to_unit_labels;
use pmlg::matcher::enumerate_occurrences;
use pmlg::{match_bruteforce, match_exact, LabeledGraph, MatchMode, MatchOutcome, Matcher, Pattern};
use proptest::prelude::*;

fn arb_pattern(alphabet: &'static [char], max_len: usize) -> impl Strategy<Value = Pattern> {
    proptest::collection::vec(proptest::sample::select(alphabet), 1..=max_len).prop_map(|s| Pattern::new(s).unwrap())
}

fn graph_and_perm(max: usize, labels: &'static [&'static str]) -> impl Strategy<Value = (LabeledGraph, Vec<usize>)> {
    arb_graph(max, labels, None).prop_flat_map(|g| {
        let n = g.node_count();
        (Just(g), random_permutation(n))
    })
}

const STRING_LABELS: &[&str] = &["a", "b", "ab", "ba", "aab", "bb"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn dp_agrees_with_walk_enumeration(g in arb_graph(10, &["a", "b"], None), p in arb_pattern(&['a', 'b'], 6)) {
        prop_assert_eq!(Matcher::new(&g).is_match(&p), match_bruteforce(&g, &p).unwrap());
    }

    #[test]
    fn answer_is_invariant_under_renumbering((g, perm) in graph_and_perm(8, &["a", "b", "c"]), p in arb_pattern(&['a', 'b', 'c'], 6)) {
        let h = g.permuted(&perm).unwrap();
        prop_assert_eq!(Matcher::new(&g).is_match(&p), Matcher::new(&h).is_match(&p));
    }

    #[test]
    fn layers_are_stable_under_recomputation(g in arb_graph(8, &["a", "b"], None), p in arb_pattern(&['a', 'b'], 6)) {
        let m = Matcher::new(&g);
        let Some(layers) = m.layers(&p) else { return Ok(()); };
        prop_assert_eq!(layers.len(), p.len());
        prop_assert_eq!(&layers[0], &m.first_layer(p.symbols()[0]));
        for i in 1..layers.len() {
            prop_assert_eq!(&layers[i], &m.advance(&layers[i - 1], p.symbols()[i]));
        }
        prop_assert_eq!(m.is_match(&p), !layers.last().unwrap().is_empty());
    }

    #[test]
    fn witnesses_are_valid_and_counts_match_enumeration(g in arb_graph(6, &["a", "b"], None), p in arb_pattern(&['a', 'b'], 4)) {
        let MatchOutcome::Report(report) = match_exact(&g, &p, MatchMode::ReportAll) else { unreachable!() };
        for w in &report.witnesses {
            prop_assert!(w.validate(&g, &p));
        }
        let walks = enumerate_occurrences(&g, &p, 1_000_000).unwrap();
        let quads: BTreeSet<_> = walks
            .iter()
            .map(|o| (o.nodes[0], o.offset, *o.nodes.last().unwrap(), o.end_offset))
            .collect();
        prop_assert_eq!(report.occurrence_count, quads.len());
        prop_assert_eq!(report.witnesses.is_empty(), walks.is_empty());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn string_labels_expand_without_changing_answers(g in arb_graph(6, STRING_LABELS, None), p in arb_pattern(&['a', 'b'], 7)) {
        let direct = match_bruteforce(&g, &p).unwrap();
        let (unit, _) = expand_to_unit_labels(&g);
        prop_assert!(unit.has_unit_labels());
        prop_assert_eq!(match_bruteforce(&unit, &p).unwrap(), direct);
        prop_assert_eq!(Matcher::new(&g).is_match(&p), direct);
    }
}

#[test]
fn pattern_spelled_inside_one_label() {
    let g = LabeledGraph::new(true, vec!["xabcx".into()], []).unwrap();
    let p: Pattern = "abc".parse().unwrap();
    assert!(match_bruteforce(&g, &p).unwrap());
    assert!(Matcher::new(&g).is_match(&p));
}
