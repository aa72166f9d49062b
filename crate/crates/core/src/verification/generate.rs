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

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{with_oracle, CampaignConfig};
use crate::sat::{CnfFormula, Literal};

/// Draw budget when searching for a missing satisfiability class.
const REDRAW_BUDGET: usize = 4000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedFormula {
    pub formula: CnfFormula,
    /// Oracle answer for the padded formula.
    pub sat: bool,
}

/// `k` clauses over `n` variables; each clause picks distinct variables, so
/// no clause is a tautology.
pub fn random_formula<R: Rng>(rng: &mut R, n: usize, k: usize, width: (usize, usize)) -> CnfFormula {
    let clauses = (0..k)
        .map(|_| {
            let hi = width.1.min(n);
            let w = rng.gen_range(width.0.min(hi)..=hi);
            sample(rng, n, w)
                .into_iter()
                .map(|v| if rng.gen_bool(0.5) { Literal::positive(v + 1) } else { Literal::negative(v + 1) })
                .collect()
        })
        .collect();
    CnfFormula::new(n, clauses).expect("distinct variables never form a tautology")
}

/// `trials` formulas per `(n, k)` cell, in cell order. If the draws miss a
/// satisfiability class, later trials are redrawn (last first) until the
/// class appears or the budget runs out.
pub fn generate_formulas(config: &CampaignConfig) -> Vec<GeneratedFormula> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut cells = Vec::new();
    for &n in &config.n_values {
        for k in config.k_range.0..=config.k_range.1 {
            cells.extend(std::iter::repeat_n((n, k), config.trials));
        }
    }
    let mut out: Vec<GeneratedFormula> =
        cells.iter().map(|&(n, k)| with_oracle(random_formula(&mut rng, n, k, config.width))).collect();

    for wanted in [true, false] {
        if out.iter().any(|g| g.sat == wanted) {
            continue;
        }
        let mut budget = REDRAW_BUDGET;
        'slots: for slot in (0..out.len()).rev() {
            let (n, k) = cells[slot];
            for _ in 0..(REDRAW_BUDGET / 8).max(1) {
                if budget == 0 {
                    break 'slots;
                }
                budget -= 1;
                let g = with_oracle(random_formula(&mut rng, n, k, config.width));
                if g.sat == wanted {
                    out[slot] = g;
                    break 'slots;
                }
            }
        }
    }
    out
}

/// Every ordered sequence of `k` non-tautological clauses over `n`
/// variables with at most `max_width` literals each.
pub fn exhaustive_formulas(n: usize, k: usize, max_width: usize) -> Vec<CnfFormula> {
    let mut clauses: Vec<Vec<Literal>> = Vec::new();
    for mask in 1u32..(1 << n) {
        let vars: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).map(|v| v + 1).collect();
        if vars.len() > max_width {
            continue;
        }
        for signs in 0u32..(1 << vars.len()) {
            clauses.push(
                vars.iter()
                    .enumerate()
                    .map(|(i, &v)| if signs >> i & 1 == 1 { Literal::negative(v) } else { Literal::positive(v) })
                    .collect(),
            );
        }
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    loop {
        let chosen = idx.iter().map(|&i| clauses[i].clone()).collect();
        out.push(CnfFormula::new(n, chosen).expect("clauses are valid"));
        let mut pos = 0;
        loop {
            if pos == k {
                return out;
            }
            idx[pos] += 1;
            if idx[pos] < clauses.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_two_variable_pairs() {
        let all = exhaustive_formulas(2, 2, 2);
        assert_eq!(all.len(), 64);
        let unique: std::collections::BTreeSet<String> = all.iter().map(|f| f.to_dimacs()).collect();
        assert_eq!(unique.len(), 64);
    }

    #[test]
    fn random_formula_respects_width() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let f = random_formula(&mut rng, 4, 5, (1, 3));
            assert_eq!(f.num_clauses(), 5);
            assert!(f.clauses().iter().all(|c| (1..=3).contains(&c.len())));
        }
    }

    #[test]
    fn generation_is_seeded() {
        let cfg = CampaignConfig::new(4, (2, 5), 10, 42);
        assert_eq!(generate_formulas(&cfg), generate_formulas(&cfg));
        let other = CampaignConfig { seed: 43, ..cfg.clone() };
        assert_ne!(generate_formulas(&cfg), generate_formulas(&other));
    }

    #[test]
    fn both_classes_are_forced() {
        let mut cfg = CampaignConfig::new(2, (4, 4), 3, 1);
        cfg.width = (1, 1);
        let out = generate_formulas(&cfg);
        assert!(out.iter().any(|g| g.sat));
        assert!(out.iter().any(|g| !g.sat));
    }
}
