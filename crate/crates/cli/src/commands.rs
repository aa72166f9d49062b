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

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use pmlg::bench::{bench_csv, run_bench, BenchConfig};
use pmlg::graph::{parse_graph, serialize_graph};
use pmlg::reduction;
use pmlg::transform::{encode_binary, orient_dag, to_degree3};
use pmlg::verification::{run_campaign, run_stage_checks, CampaignConfig};
use pmlg::{
    brute_force_sat, make_even, match_exact, palindromic_clause_order, parse_dimacs, MatchMode, MatchOutcome, Pattern,
};

use crate::args::{BenchArgs, MatchArgs, ReduceArgs, SatArgs, VerifyArgs};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn with_ext(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

pub fn reduce(a: ReduceArgs) -> Result<ExitCode> {
    let mut f = parse_dimacs(&read(&a.cnf)?).with_context(|| format!("parsing {}", a.cnf.display()))?;
    if a.palindromic {
        f = palindromic_clause_order(&make_even(&f));
    }
    let mut art = reduction::reduce(&f)?;
    if a.degree3 {
        art = to_degree3(&art)?;
        if a.binary {
            art = encode_binary(&art)?;
        }
        if a.dag {
            art = orient_dag(&art)?;
        }
    }
    let prefix = a.out.unwrap_or_else(|| a.cnf.with_extension(""));
    write(&with_ext(&prefix, "graph"), &serialize_graph(&art.graph))?;
    write(&with_ext(&prefix, "pattern"), &format!("{}\n", art.pattern))?;
    write(&with_ext(&prefix, "manifest"), &art.to_manifest())?;
    println!("{}", art.stats_line());
    Ok(ExitCode::SUCCESS)
}

pub fn run_match(a: MatchArgs) -> Result<ExitCode> {
    let g = parse_graph(&read(&a.graph)?).with_context(|| format!("parsing {}", a.graph.display()))?;
    let p = Pattern::parse_file(&read(&a.pattern)?).with_context(|| format!("parsing {}", a.pattern.display()))?;
    let mode = if a.all { MatchMode::ReportAll } else { MatchMode::Decision };
    let outcome = match_exact(&g, &p, mode);
    if let MatchOutcome::Report(report) = &outcome {
        for w in &report.witnesses {
            println!("{}", w.to_line());
        }
        println!("occurrences {}", report.occurrence_count);
    }
    let found = outcome.is_match();
    println!("{}", if found { "match" } else { "no match" });
    Ok(if found { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

pub fn verify(a: VerifyArgs) -> Result<ExitCode> {
    let config = CampaignConfig {
        n_values: a.n,
        k_range: (a.k.0, a.k.1),
        trials: a.trials as usize,
        seed: a.seed,
        variants: a.variants.into_iter().map(Into::into).collect(),
        width: (a.width.0, a.width.1),
        dump_dir: a.dump_dir,
        palindromic: a.palindromic,
    };
    let report = run_campaign(&config)?;
    let stages = if a.no_stage_checks { None } else { Some(run_stage_checks(&config)?) };
    for line in report.summary_lines() {
        println!("{line}");
    }
    if let Some(l) = &stages {
        print!("{}", l.to_text());
    }
    if let Some(dir) = &a.out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        write(&dir.join("report.txt"), &report.to_text())?;
        write(&dir.join("trials.csv"), &report.to_csv())?;
        if let Some(l) = &stages {
            write(&dir.join("stage_checks.txt"), &l.to_text())?;
        }
    }
    let ok = report.passed() && stages.as_ref().is_none_or(|l| l.passed());
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

pub fn sat(a: SatArgs) -> Result<ExitCode> {
    let f = parse_dimacs(&read(&a.cnf)?).with_context(|| format!("parsing {}", a.cnf.display()))?;
    match brute_force_sat(&f)? {
        Some(values) => {
            println!("s SATISFIABLE");
            let lits: Vec<String> = values
                .iter()
                .enumerate()
                .map(|(i, &v)| if v { format!("{}", i + 1) } else { format!("-{}", i + 1) })
                .collect();
            println!("v {} 0", lits.join(" "));
            Ok(ExitCode::SUCCESS)
        }
        None => {
            println!("s UNSATISFIABLE");
            Ok(ExitCode::from(1))
        }
    }
}

pub fn bench(a: BenchArgs) -> Result<ExitCode> {
    let config = BenchConfig { n_min: a.n_min, n_max: a.n_max, k: a.k, repeats: a.repeats, seed: a.seed };
    let records = run_bench(&config)?;
    let csv = bench_csv(&records);
    match &a.out {
        Some(path) => write(path, &csv)?,
        None => print!("{csv}"),
    }
    Ok(ExitCode::SUCCESS)
}
