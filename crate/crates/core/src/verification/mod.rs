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

//! Seeded property campaigns: random formulas go through every pipeline
//! stage and each stage's match answer is compared with the truth-table
//! oracle. Any single disagreement fails the campaign.

mod generate;
mod report;
mod stage_checks;

use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::graph::{find_bridges, is_dag, max_degree, serialize_graph};
use crate::matcher::Matcher;
use crate::reduction::{
    base_sizes, binary_sizes, build_full_graph, build_satisfaction_matrix, degree3_sizes, gu_copies, gu_copy_nodes,
    ReductionArtifacts, ReductionError, Variant,
};
use crate::roles::{Gadget, RoleKind};
use crate::sat::{brute_force_sat, make_even, mirror_satisfiable, palindromic_clause_order, CnfFormula};
use crate::transform::{encode_binary, orient_dag, to_degree3};

pub use generate::{exhaustive_formulas, generate_formulas, random_formula, GeneratedFormula};
pub use report::CSV_HEADER;
pub use stage_checks::{run_stage_checks, run_stage_checks_on, StageCheck, StageReport};

/// Largest variable count a campaign accepts.
pub const CAMPAIGN_MAX_VARS: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("no variable counts given")]
    NoVariableCounts,
    #[error("variable count {0} outside 1..={CAMPAIGN_MAX_VARS}")]
    VariableCount(usize),
    #[error("invalid clause count range {0}..={1}")]
    ClauseRange(usize, usize),
    #[error("invalid clause width range {0}..={1}")]
    WidthRange(usize, usize),
    #[error("variant {0} cannot be selected in a campaign")]
    Variant(Variant),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignConfig {
    /// Variable counts; odd counts are padded by one unused variable.
    pub n_values: Vec<usize>,
    /// Inclusive clause count range.
    pub k_range: (usize, usize),
    /// Formulas per `(n, k)` cell.
    pub trials: usize,
    pub seed: u64,
    /// Subset of `Base`, `Degree3`, `Binary`, `BinaryDag`.
    pub variants: Vec<Variant>,
    /// Inclusive literals-per-clause range.
    pub width: (usize, usize),
    /// Where to write instances of failing trials.
    pub dump_dir: Option<PathBuf>,
    /// Reduce `c_1..c_k c_k..c_1` instead of the drawn clause list.
    pub palindromic: bool,
}

impl CampaignConfig {
    pub const CAMPAIGN_VARIANTS: [Variant; 4] = [Variant::Base, Variant::Degree3, Variant::Binary, Variant::BinaryDag];

    pub fn new(n: usize, k: (usize, usize), trials: usize, seed: u64) -> Self {
        CampaignConfig {
            n_values: vec![n],
            k_range: k,
            trials,
            seed,
            variants: Self::CAMPAIGN_VARIANTS.to_vec(),
            width: (1, 3),
            dump_dir: None,
            palindromic: false,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.trials == 0 {
            return Err(ConfigError::NoTrials);
        }
        if self.n_values.is_empty() {
            return Err(ConfigError::NoVariableCounts);
        }
        if let Some(&n) = self.n_values.iter().find(|&&n| n == 0 || n > CAMPAIGN_MAX_VARS) {
            return Err(ConfigError::VariableCount(n));
        }
        let (lo, hi) = self.k_range;
        if lo == 0 || lo > hi {
            return Err(ConfigError::ClauseRange(lo, hi));
        }
        let (lo, hi) = self.width;
        if lo == 0 || lo > hi {
            return Err(ConfigError::WidthRange(lo, hi));
        }
        if let Some(&v) = self.variants.iter().find(|v| !Self::CAMPAIGN_VARIANTS.contains(v)) {
            return Err(ConfigError::Variant(v));
        }
        Ok(())
    }
}

/// Structural checks of one trial; `None` when the stage was not built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StructuralChecks {
    /// Pattern length, node and edge counts equal the closed forms, and each
    /// universal gadget has `2^{n/2} - 1` copies of `2k + 2` nodes.
    pub sizes: Option<bool>,
    /// Recorded statistics equal a recount of every built stage.
    pub consistency: Option<bool>,
    /// No `be` in the base or revised pattern; `b` and `e` occur
    /// `2^{n/2} + 1` times each.
    pub pattern_shape: Option<bool>,
    pub binary_no_1001: Option<bool>,
    pub degree3_bound: Option<bool>,
    pub dag_acyclic: Option<bool>,
    pub dag_degree_bound: Option<bool>,
    /// Every recorded `e`-`b` boundary edge is a bridge.
    pub bridges: Option<bool>,
}

impl StructuralChecks {
    pub const NAMES: [&'static str; 8] = [
        "sizes",
        "consistency",
        "pattern_shape",
        "binary_no_1001",
        "degree3_bound",
        "dag_acyclic",
        "dag_degree_bound",
        "bridges",
    ];

    pub fn values(&self) -> [Option<bool>; 8] {
        [
            self.sizes,
            self.consistency,
            self.pattern_shape,
            self.binary_no_1001,
            self.degree3_bound,
            self.dag_acyclic,
            self.dag_degree_bound,
            self.bridges,
        ]
    }

    pub fn all_passed(&self) -> bool {
        self.values().iter().all(|v| v.unwrap_or(true))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialRecord {
    pub trial: usize,
    /// Variable count as generated, before padding.
    pub n: usize,
    pub n_padded: usize,
    pub k: usize,
    pub digest: String,
    pub sat: bool,
    /// Answer of the clause-reversed half-assignment oracle; a reversed
    /// reading of the undirected binary graph checks this condition.
    pub mirror_sat: bool,
    pub match_base: Option<bool>,
    pub match_degree3: Option<bool>,
    pub match_binary: Option<bool>,
    pub match_dag: Option<bool>,
    pub agree: bool,
    /// Base pattern length and edge count.
    pub m: usize,
    pub edges: usize,
    /// Summed matcher wall time over the selected variants.
    pub micros_match: u128,
    pub checks: StructuralChecks,
    pub error: Option<String>,
}

impl TrialRecord {
    pub fn matches(&self) -> [Option<bool>; 4] {
        [self.match_base, self.match_degree3, self.match_binary, self.match_dag]
    }

    pub fn ok(&self) -> bool {
        self.agree && self.error.is_none() && self.checks.all_passed()
    }

    /// Whether the undirected binary answer equals `sat || mirror_sat`.
    pub fn binary_explained(&self) -> Option<bool> {
        self.match_binary.map(|b| b == (self.sat || self.mirror_sat))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignReport {
    pub config: CampaignConfig,
    pub records: Vec<TrialRecord>,
}

impl CampaignReport {
    pub fn sat_count(&self) -> usize {
        self.records.iter().filter(|r| r.sat).count()
    }

    pub fn unsat_count(&self) -> usize {
        self.records.len() - self.sat_count()
    }

    pub fn both_classes(&self) -> bool {
        self.sat_count() > 0 && self.unsat_count() > 0
    }

    pub fn disagreements(&self) -> usize {
        self.records.iter().filter(|r| !r.agree).count()
    }

    pub fn agreement_rate(&self) -> f64 {
        if self.records.is_empty() {
            return 1.0;
        }
        (self.records.len() - self.disagreements()) as f64 / self.records.len() as f64
    }

    /// Disagreements with the oracle per CSV variant column.
    pub fn variant_disagreements(&self) -> [usize; 4] {
        let mut out = [0; 4];
        for r in &self.records {
            for (o, m) in out.iter_mut().zip(r.matches()) {
                *o += (m.is_some_and(|m| m != r.sat)) as usize;
            }
        }
        out
    }

    /// `(explained, evaluated)` for the undirected binary characterization.
    pub fn binary_explained(&self) -> (usize, usize) {
        self.records
            .iter()
            .filter_map(TrialRecord::binary_explained)
            .fold((0, 0), |(a, b), ok| (a + ok as usize, b + 1))
    }

    pub fn errors(&self) -> usize {
        self.records.iter().filter(|r| r.error.is_some()).count()
    }

    /// `(passed, evaluated)` per structural check, in [`StructuralChecks::NAMES`] order.
    pub fn check_totals(&self) -> [(usize, usize); 8] {
        let mut totals = [(0, 0); 8];
        for r in &self.records {
            for (t, v) in totals.iter_mut().zip(r.checks.values()) {
                if let Some(ok) = v {
                    t.1 += 1;
                    t.0 += ok as usize;
                }
            }
        }
        totals
    }

    pub fn passed(&self) -> bool {
        self.disagreements() == 0
            && self.errors() == 0
            && self.records.iter().all(|r| r.checks.all_passed())
            && self.both_classes()
    }
}

pub fn formula_digest(f: &CnfFormula) -> String {
    let hash = Sha256::digest(f.to_dimacs().as_bytes());
    hash.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// All pipeline stages a trial built.
struct Stages {
    base: ReductionArtifacts,
    degree3: Option<ReductionArtifacts>,
    binary: Option<ReductionArtifacts>,
    dag: Option<ReductionArtifacts>,
}

fn build_stages(f: &CnfFormula, variants: &[Variant]) -> Result<Stages, ReductionError> {
    let base = build_full_graph(f)?;
    let wants = |v: Variant| variants.contains(&v);
    let need_bin = wants(Variant::Binary) || wants(Variant::BinaryDag);
    let degree3 = if wants(Variant::Degree3) || need_bin { Some(to_degree3(&base)?) } else { None };
    let binary = match (&degree3, need_bin) {
        (Some(d3), true) => Some(encode_binary(d3)?),
        _ => None,
    };
    let dag = match (&binary, wants(Variant::BinaryDag)) {
        (Some(b), true) => Some(orient_dag(b)?),
        _ => None,
    };
    Ok(Stages { base, degree3, binary, dag })
}

fn structural_checks(f: &CnfFormula, stages: &Stages) -> Result<StructuralChecks, ReductionError> {
    let n = f.num_vars();
    let k = f.num_clauses();
    let r = 1usize << (n / 2);
    let matrix = build_satisfaction_matrix(f)?;
    let mut checks = StructuralChecks::default();

    let base = &stages.base;
    let mut sizes_ok = {
        let s = base_sizes(n, &matrix);
        (base.stats.m, base.stats.nodes, base.stats.edges) == (s.m, s.nodes, s.edges) && base.stats.m == (k + 2) * r + 2
    };
    for gadget in [Gadget::GU1, Gadget::GU2] {
        let copies = base.roles.iter().filter(|x| x.gadget == gadget && x.kind == RoleKind::Begin).count();
        let mut per_copy = vec![0usize; copies + 1];
        for role in base.roles.iter().filter(|x| x.gadget == gadget) {
            match role.coords {
                Some((i, _)) if i >= 1 && i <= copies => per_copy[i] += 1,
                _ => sizes_ok = false,
            }
        }
        sizes_ok &= copies == gu_copies(n) && per_copy[1..].iter().all(|&c| c == gu_copy_nodes(k));
    }
    let mut consistent = base.check().is_ok();
    let mut shape_ok =
        !base.pattern.contains("be") && base.pattern.count('b') == r + 1 && base.pattern.count('e') == r + 1;
    let mut bridges_ok = bridges_hold(base)?;

    if let Some(d3) = &stages.degree3 {
        let s = degree3_sizes(n, &matrix);
        sizes_ok &= (d3.stats.m, d3.stats.nodes, d3.stats.edges) == (s.m, s.nodes, s.edges);
        consistent &= d3.check().is_ok();
        shape_ok &= !d3.pattern.contains("be");
        bridges_ok &= bridges_hold(d3)?;
        checks.degree3_bound = Some(max_degree(&d3.graph).undirected <= 3);
    }
    if let Some(bin) = &stages.binary {
        let s = binary_sizes(n, &matrix);
        sizes_ok &= (bin.stats.m, bin.stats.nodes, bin.stats.edges) == (s.m, s.nodes, s.edges);
        consistent &= bin.check().is_ok();
        bridges_ok &= bridges_hold(bin)?;
        checks.binary_no_1001 = Some(!bin.pattern.contains("1001"));
        checks.degree3_bound = Some(checks.degree3_bound.unwrap_or(true) && max_degree(&bin.graph).undirected <= 3);
    }
    if let Some(dag) = &stages.dag {
        consistent &= dag.check().is_ok();
        checks.dag_acyclic = Some(is_dag(&dag.graph)?);
        checks.dag_degree_bound = Some(max_degree(&dag.graph).in_plus_out <= 3);
    }
    checks.sizes = Some(sizes_ok);
    checks.consistency = Some(consistent);
    checks.pattern_shape = Some(shape_ok);
    checks.bridges = Some(bridges_ok);
    Ok(checks)
}

fn bridges_hold(art: &ReductionArtifacts) -> Result<bool, ReductionError> {
    let found = find_bridges(&art.graph)?;
    Ok(art.stats.bridges.len() == 2 << (art.stats.n / 2) && art.stats.bridges.iter().all(|e| found.contains(e)))
}

fn run_trial(
    trial: usize,
    generated: &GeneratedFormula,
    variants: &[Variant],
    palindromic: bool,
) -> (TrialRecord, Option<Stages>) {
    let mut f = make_even(&generated.formula);
    if palindromic {
        f = palindromic_clause_order(&f);
    }
    let mirror_sat = mirror_satisfiable(&f).unwrap_or(false);
    let mut record = TrialRecord {
        trial,
        n: generated.formula.num_vars(),
        n_padded: f.num_vars(),
        k: f.num_clauses(),
        digest: formula_digest(&generated.formula),
        sat: generated.sat,
        mirror_sat,
        match_base: None,
        match_degree3: None,
        match_binary: None,
        match_dag: None,
        agree: true,
        m: 0,
        edges: 0,
        micros_match: 0,
        checks: StructuralChecks::default(),
        error: None,
    };
    if variants.is_empty() {
        return (record, None);
    }
    let stages = match build_stages(&f, variants) {
        Ok(s) => s,
        Err(e) => {
            record.error = Some(e.to_string());
            record.agree = false;
            return (record, None);
        }
    };
    record.m = stages.base.stats.m;
    record.edges = stages.base.stats.edges;

    let started = Instant::now();
    let answer = |art: &ReductionArtifacts| Matcher::new(&art.graph).is_match(&art.pattern);
    let wants = |v: Variant| variants.contains(&v);
    if wants(Variant::Base) {
        record.match_base = Some(answer(&stages.base));
    }
    if wants(Variant::Degree3) {
        record.match_degree3 = stages.degree3.as_ref().map(answer);
    }
    if wants(Variant::Binary) {
        record.match_binary = stages.binary.as_ref().map(answer);
    }
    if wants(Variant::BinaryDag) {
        record.match_dag = stages.dag.as_ref().map(answer);
    }
    record.micros_match = started.elapsed().as_micros();
    record.agree = record.matches().iter().flatten().all(|&m| m == record.sat);

    match structural_checks(&f, &stages) {
        Ok(c) => record.checks = c,
        Err(e) => record.error = Some(e.to_string()),
    }
    (record, Some(stages))
}

fn dump_trial(dir: &std::path::Path, record: &TrialRecord, formula: &CnfFormula, stages: Option<&Stages>) {
    let _ = std::fs::create_dir_all(dir);
    let stem = dir.join(format!("trial-{}-{}", record.trial, record.digest));
    let _ = std::fs::write(stem.with_extension("cnf"), formula.to_dimacs());
    let Some(stages) = stages else {
        return;
    };
    let all = [Some(&stages.base), stages.degree3.as_ref(), stages.binary.as_ref(), stages.dag.as_ref()];
    for art in all.into_iter().flatten() {
        let tag = art.variant().as_str().to_lowercase();
        let path = |ext: &str| dir.join(format!("trial-{}-{}.{tag}.{ext}", record.trial, record.digest));
        let _ = std::fs::write(path("graph"), serialize_graph(&art.graph));
        let _ = std::fs::write(path("pattern"), format!("{}\n", art.pattern));
        let _ = std::fs::write(path("manifest"), art.to_manifest());
    }
}

/// Runs the given formulas (in order) through the pipeline.
pub fn run_formulas(config: CampaignConfig, formulas: &[GeneratedFormula]) -> CampaignReport {
    let records = formulas
        .par_iter()
        .enumerate()
        .map(|(t, g)| {
            let (record, stages) = run_trial(t, g, &config.variants, config.palindromic);
            if let (false, Some(dir)) = (record.ok(), &config.dump_dir) {
                dump_trial(dir, &record, &g.formula, stages.as_ref());
            }
            record
        })
        .collect();
    CampaignReport { config, records }
}

pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignReport, ConfigError> {
    config.validate()?;
    let formulas = generate_formulas(config);
    Ok(run_formulas(config.clone(), &formulas))
}

/// Labels a formula with its oracle answer.
pub fn with_oracle(formula: CnfFormula) -> GeneratedFormula {
    let sat = brute_force_sat(&make_even(&formula)).expect("campaign sizes are within the oracle guard").is_some();
    GeneratedFormula { formula, sat }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> CampaignConfig {
        CampaignConfig::new(4, (2, 5), 6, 9)
    }

    #[test]
    fn config_rejects_bad_values() {
        let mut c = small();
        c.trials = 0;
        assert_eq!(c.validate(), Err(ConfigError::NoTrials));
        let mut c = small();
        c.k_range = (3, 2);
        assert_eq!(c.validate(), Err(ConfigError::ClauseRange(3, 2)));
        let mut c = small();
        c.n_values = vec![12];
        assert_eq!(c.validate(), Err(ConfigError::VariableCount(12)));
        let mut c = small();
        c.variants = vec![Variant::Degree3Dag];
        assert!(matches!(c.validate(), Err(ConfigError::Variant(_))));
    }

    #[test]
    fn small_campaign_agrees_on_directed_and_multi_symbol_stages() {
        let mut cfg = small();
        cfg.variants = vec![Variant::Base, Variant::Degree3, Variant::BinaryDag];
        let report = run_campaign(&cfg).unwrap();
        assert_eq!(report.records.len(), 24);
        assert!(report.passed(), "{}", report.to_text());
    }

    #[test]
    fn undirected_binary_answers_match_or_mirror() {
        let report = run_campaign(&small()).unwrap();
        let (explained, total) = report.binary_explained();
        assert_eq!((explained, total), (24, 24), "{}", report.to_text());
        let [b, d, _, dag] = report.variant_disagreements();
        assert_eq!((b, d, dag), (0, 0, 0));
    }

    #[test]
    fn palindromic_order_repairs_undirected_binary() {
        let mut cfg = small();
        cfg.palindromic = true;
        let report = run_campaign(&cfg).unwrap();
        assert!(report.records.iter().all(|r| r.k % 2 == 0));
        assert!(report.passed(), "{}", report.to_text());
    }

    #[test]
    fn text_report_is_reproducible() {
        let a = run_campaign(&small()).unwrap();
        let b = run_campaign(&small()).unwrap();
        assert_eq!(a.to_text(), b.to_text());
        assert_eq!(a.to_csv().lines().next(), Some(CSV_HEADER));
    }

    #[test]
    fn odd_variable_counts_are_padded() {
        let mut cfg = CampaignConfig::new(3, (2, 3), 4, 5);
        cfg.variants = vec![Variant::Base, Variant::Degree3, Variant::BinaryDag];
        let report = run_campaign(&cfg).unwrap();
        assert!(report.records.iter().all(|r| r.n == 3 && r.n_padded == 4));
        assert!(report.to_text().contains("padded 8 formulas"));
        assert!(report.passed(), "{}", report.to_text());
    }

    #[test]
    fn failing_trials_are_dumped() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = small();
        cfg.dump_dir = Some(dir.path().to_path_buf());
        let f = CnfFormula::from_ints(2, &[&[1], &[-1]]).unwrap();
        let lying = GeneratedFormula { formula: f, sat: true };
        let report = run_formulas(cfg, &[lying]);
        assert_eq!(report.disagreements(), 1);
        let names: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
        assert!(names.iter().any(|n| n.to_string_lossy().ends_with(".cnf")));
        assert!(names.iter().any(|n| n.to_string_lossy().ends_with(".graph")));
    }
}
