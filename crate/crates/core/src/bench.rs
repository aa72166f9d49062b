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

//! Timing of the matcher on reduction instances of growing `n`.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::matcher::{match_exact, MatchMode};
use crate::reduction::{base_sizes, build_full_graph, build_satisfaction_matrix, ReductionError};
use crate::sat::{brute_force_sat, CnfFormula, Literal};
use crate::verification::random_formula;

/// Largest `n` a bench run accepts.
pub const BENCH_MAX_VARS: usize = 16;
const DRAW_BUDGET: usize = 1000;

pub const BENCH_CSV_HEADER: &str = "n,k,m,edges,sat,micros,repeats";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BenchError {
    #[error("n range {0}..={1} must be even, non-empty and at most {BENCH_MAX_VARS}")]
    Range(usize, usize),
    #[error("k must be at least 2")]
    ClauseCount,
    #[error("repeats must be at least 1")]
    Repeats,
    #[error("no satisfiable formula found for n={0}")]
    NoSatisfiable(usize),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub k: usize,
    pub repeats: usize,
    pub seed: u64,
}

impl BenchConfig {
    pub fn validate(&self) -> Result<(), BenchError> {
        let (lo, hi) = (self.n_min, self.n_max);
        if lo == 0 || lo % 2 == 1 || hi % 2 == 1 || lo > hi || hi > BENCH_MAX_VARS {
            return Err(BenchError::Range(lo, hi));
        }
        if self.k < 2 {
            return Err(BenchError::ClauseCount);
        }
        if self.repeats == 0 {
            return Err(BenchError::Repeats);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub edges: usize,
    pub sat: bool,
    /// Median matcher wall time.
    pub micros: f64,
    pub repeats: usize,
    /// Whether `m` and `|E|` equal the closed forms.
    pub sizes_match: bool,
    /// Whether the match answer equals `sat`.
    pub answer_ok: bool,
}

impl BenchRecord {
    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{:.1},{}",
            self.n, self.k, self.m, self.edges, self.sat as u8, self.micros, self.repeats
        )
    }
}

/// Consecutive-`n` ratios for one satisfiability class.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRatio {
    pub n_from: usize,
    pub n_to: usize,
    pub sat: bool,
    pub time: f64,
    pub m: f64,
    pub edges: f64,
}

/// Satisfiable: random `k`-clause formula redrawn until satisfiable.
/// Unsatisfiable: `(v_1) (!v_1)` followed by `k - 2` random clauses.
pub fn bench_formulas(n: usize, k: usize, seed: u64) -> Result<(CnfFormula, CnfFormula), BenchError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64) << 32);
    let sat = (0..DRAW_BUDGET)
        .map(|_| random_formula(&mut rng, n, k, (1, 3)))
        .find(|f| !matches!(brute_force_sat(f), Ok(None)))
        .ok_or(BenchError::NoSatisfiable(n))?;
    let mut clauses = vec![vec![Literal::positive(1)], vec![Literal::negative(1)]];
    if k > 2 {
        clauses.extend(random_formula(&mut rng, n, k - 2, (1, 3)).clauses().iter().cloned());
    }
    let unsat = CnfFormula::new(n, clauses).expect("unit clauses are valid");
    Ok((sat, unsat))
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(|a, b| a.total_cmp(b));
    let mid = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[mid]
    } else {
        (xs[mid - 1] + xs[mid]) / 2.0
    }
}

fn time_instance(f: &CnfFormula, sat: bool, repeats: usize) -> Result<BenchRecord, BenchError> {
    let art = build_full_graph(f)?;
    let formula = base_sizes(f.num_vars(), &build_satisfaction_matrix(f)?);
    let mut times = Vec::with_capacity(repeats);
    let mut answer = false;
    for _ in 0..repeats {
        let started = Instant::now();
        answer = match_exact(&art.graph, &art.pattern, MatchMode::Decision).is_match();
        times.push(started.elapsed().as_secs_f64() * 1e6);
    }
    Ok(BenchRecord {
        n: f.num_vars(),
        k: f.num_clauses(),
        m: art.stats.m,
        edges: art.stats.edges,
        sat,
        micros: median(times),
        repeats,
        sizes_match: art.stats.m == formula.m && art.stats.edges == formula.edges,
        answer_ok: answer == sat,
    })
}

/// One satisfiable and one unsatisfiable record per even `n`, in that order.
pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRecord>, BenchError> {
    config.validate()?;
    let mut out = Vec::new();
    for n in (config.n_min..=config.n_max).step_by(2) {
        let (sat, unsat) = bench_formulas(n, config.k, config.seed)?;
        out.push(time_instance(&sat, true, config.repeats)?);
        out.push(time_instance(&unsat, false, config.repeats)?);
    }
    Ok(out)
}

pub fn step_ratios(records: &[BenchRecord]) -> Vec<StepRatio> {
    let mut out = Vec::new();
    for class in [true, false] {
        let series: Vec<&BenchRecord> = records.iter().filter(|r| r.sat == class).collect();
        for w in series.windows(2) {
            out.push(StepRatio {
                n_from: w[0].n,
                n_to: w[1].n,
                sat: class,
                time: w[1].micros / w[0].micros.max(f64::MIN_POSITIVE),
                m: w[1].m as f64 / w[0].m as f64,
                edges: w[1].edges as f64 / w[0].edges as f64,
            });
        }
    }
    out
}

pub fn bench_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from(BENCH_CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.to_csv_row());
        out.push('\n');
    }
    out
}
