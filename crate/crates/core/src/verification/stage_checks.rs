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

//! Stage-level checks that localize a failure to one construction step.

use rayon::prelude::*;

use super::{formula_digest, generate_formulas, CampaignConfig, ConfigError};
use crate::graph::find_bridges;
use crate::matcher::{enumerate_occurrences, Matcher, Pattern};
use crate::reduction::{
    build_full_graph, build_gadget_gf_from_matrix, build_satisfaction_matrix, pattern_blocks, ReductionArtifacts,
};
use crate::roles::{NodeRole, RoleKind};
use crate::sat::{
    brute_force_sat, enumerate_half_assignments, half_satisfies, make_even, mirror_satisfiable,
    palindromic_clause_order, CnfFormula, Half,
};
use crate::transform::{encode_binary, to_degree3, verify_encoding_table};

/// Largest padded variable count the suite runs on.
pub const STAGE_CHECK_MAX_VARS: usize = 6;
/// Largest clause count for which every `{c,d}^k` block is enumerated.
pub const STAGE_CHECK_MAX_BLOCK_CLAUSES: usize = 8;
const WALK_LIMIT: usize = 200_000;
const MAX_FAILURES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageCheck {
    pub name: &'static str,
    pub passed: usize,
    pub total: usize,
    /// First few failing cases.
    pub failures: Vec<String>,
}

impl StageCheck {
    fn new(name: &'static str) -> Self {
        StageCheck { name, passed: 0, total: 0, failures: Vec::new() }
    }

    fn record(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.total += 1;
        if ok {
            self.passed += 1;
        } else if self.failures.len() < MAX_FAILURES {
            self.failures.push(case());
        }
    }

    fn merge(&mut self, other: StageCheck) {
        self.passed += other.passed;
        self.total += other.total;
        for f in other.failures {
            if self.failures.len() < MAX_FAILURES {
                self.failures.push(f);
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageReport {
    pub checks: Vec<StageCheck>,
    pub formulas: usize,
    /// Formulas above [`STAGE_CHECK_MAX_VARS`] that were not examined.
    pub skipped: usize,
}

impl StageReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok() && c.total > 0)
    }

    pub fn check(&self, name: &str) -> Option<&StageCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("stage-checks formulas={} skipped={}\n", self.formulas, self.skipped);
        for c in &self.checks {
            let verdict = if c.ok() && c.total > 0 { "PASS" } else { "FAIL" };
            out.push_str(&format!("{verdict} {} {}/{}\n", c.name, c.passed, c.total));
            for f in &c.failures {
                out.push_str(&format!("  {f}\n"));
            }
        }
        out
    }
}

const NAMES: [&str; 9] = [
    "same_row_walks",
    "block_cover",
    "block_decomposition",
    "half_satisfaction",
    "pattern_counts",
    "bridges",
    "binary_pattern_sync",
    "binary_preserves_match",
    "binary_sat_or_mirror",
];

fn fresh() -> Vec<StageCheck> {
    NAMES.iter().map(|&n| StageCheck::new(n)).collect()
}

fn all_blocks(k: usize) -> impl Iterator<Item = Vec<char>> {
    (0u32..1 << k).map(move |mask| (0..k).map(|h| if mask >> h & 1 == 1 { 'c' } else { 'd' }).collect())
}

fn wrap(block: &[char]) -> Pattern {
    let mut s = vec!['b'];
    s.extend_from_slice(block);
    s.push('e');
    Pattern::new(s).expect("non-empty")
}

fn same_row(roles: &[NodeRole], nodes: &[usize], k: usize) -> bool {
    if nodes.len() != k + 2 {
        return false;
    }
    let inner = &nodes[1..=k];
    let row = match roles[inner[0]].coords {
        Some((j, _)) => j,
        None => return false,
    };
    inner.iter().enumerate().all(|(i, &x)| {
        let r = roles[x];
        matches!(r.kind, RoleKind::Clause | RoleKind::Dummy) && r.coords == Some((row, i + 1))
    })
}

fn bridges_ok(art: &ReductionArtifacts) -> bool {
    match find_bridges(&art.graph) {
        Ok(found) => {
            art.stats.bridges.len() == 2 << (art.stats.n / 2) && art.stats.bridges.iter().all(|e| found.contains(e))
        }
        Err(_) => false,
    }
}

fn examine(f: &CnfFormula) -> Vec<StageCheck> {
    let mut checks = fresh();
    let tag = formula_digest(f);
    let n = f.num_vars();
    let k = f.num_clauses();
    let r = 1usize << (n / 2);
    let built = (|| {
        let matrix = build_satisfaction_matrix(f)?;
        let base = build_full_graph(f)?;
        let d3 = to_degree3(&base)?;
        let bin = encode_binary(&d3)?;
        Ok::<_, crate::reduction::ReductionError>((matrix, base, d3, bin, pattern_blocks(f)?))
    })();
    let (matrix, base, d3, bin, blocks) = match built {
        Ok(b) => b,
        Err(e) => {
            for c in checks.iter_mut() {
                c.record(false, || format!("{tag}: {e}"));
            }
            return checks;
        }
    };
    let (gf, gf_roles) = build_gadget_gf_from_matrix(&matrix);
    let gf_matcher = Matcher::new(&gf);

    if k <= STAGE_CHECK_MAX_BLOCK_CLAUSES {
        for block in all_blocks(k) {
            let p = wrap(&block);
            let word: String = block.iter().collect();
            match enumerate_occurrences(&gf, &p, WALK_LIMIT) {
                Ok(occ) => {
                    let ok = occ.iter().all(|o| o.offset == 1 && same_row(&gf_roles, &o.nodes, k));
                    checks[0].record(ok, || format!("{tag}: block {word} matched across rows"));
                }
                Err(e) => checks[0].record(false, || format!("{tag}: block {word}: {e}")),
            }
            let dp = gf_matcher.is_match(&p);
            checks[1].record(dp == matrix.covers(&block), || format!("{tag}: block {word} dp={dp}"));
        }
    }

    let truth = brute_force_sat(f).map(|a| a.is_some()).unwrap_or(false);
    let full = Matcher::new(&base.graph).is_match(&base.pattern);
    let any_block = blocks.iter().any(|b| gf_matcher.is_match(&wrap(b)));
    checks[2]
        .record(full == any_block && full == truth, || format!("{tag}: full={full} blocks={any_block} sat={truth}"));

    let halves = enumerate_half_assignments(n, Half::First)
        .and_then(|xs| enumerate_half_assignments(n, Half::Second).map(|ys| (xs, ys)));
    if let Ok((xs, ys)) = halves {
        let split = xs
            .iter()
            .any(|x| ys.iter().any(|y| f.clauses().iter().all(|c| half_satisfies(x, c, n) || half_satisfies(y, c, n))));
        checks[3].record(split == truth, || format!("{tag}: split={split} sat={truth}"));
    } else {
        checks[3].record(false, || format!("{tag}: half enumeration failed"));
    }

    for p in [&base.pattern, &d3.pattern] {
        let ok = !p.contains("be") && p.count('b') == r + 1 && p.count('e') == r + 1;
        checks[4].record(ok, || format!("{tag}: pattern {p}"));
    }

    for art in [&base, &d3, &bin] {
        checks[5].record(bridges_ok(art), || format!("{tag}: {} bridges", art.variant()));
    }

    checks[6].record(!bin.pattern.contains("1001") && !d3.pattern.contains("be"), || {
        format!("{tag}: binary pattern contains a sync-breaking window")
    });

    let before = Matcher::new(&d3.graph).is_match(&d3.pattern);
    let after = Matcher::new(&bin.graph).is_match(&bin.pattern);
    checks[7].record(before == after, || format!("{tag}: degree3={before} binary={after}"));
    let mirror = mirror_satisfiable(f).unwrap_or(false);
    checks[8].record(after == (truth || mirror), || format!("{tag}: binary={after} sat={truth} mirror={mirror}"));
    checks
}

/// Runs every stage-level check on the given formulas (padded first).
pub fn run_stage_checks_on(formulas: &[CnfFormula]) -> StageReport {
    let padded: Vec<CnfFormula> = formulas.iter().map(make_even).collect();
    let eligible: Vec<&CnfFormula> = padded.iter().filter(|f| f.num_vars() <= STAGE_CHECK_MAX_VARS).collect();
    let parts: Vec<Vec<StageCheck>> = eligible.par_iter().map(|f| examine(f)).collect();
    let mut checks = fresh();
    for part in parts {
        for (acc, c) in checks.iter_mut().zip(part) {
            acc.merge(c);
        }
    }
    let table = verify_encoding_table();
    let mut enc = StageCheck::new("encoding_table");
    enc.total = table.sync_checked + table.shapes_checked;
    enc.passed = enc.total - table.sync_violations.len() - table.shape_violations.len();
    enc.failures = table.sync_violations.iter().chain(&table.shape_violations).take(MAX_FAILURES).cloned().collect();
    checks.push(enc);
    StageReport { checks, formulas: eligible.len(), skipped: padded.len() - eligible.len() }
}

pub fn run_stage_checks(config: &CampaignConfig) -> Result<StageReport, ConfigError> {
    config.validate()?;
    let formulas: Vec<CnfFormula> = generate_formulas(config)
        .into_iter()
        .map(|g| if config.palindromic { palindromic_clause_order(&make_even(&g.formula)) } else { g.formula })
        .collect();
    Ok(run_stage_checks_on(&formulas))
}
