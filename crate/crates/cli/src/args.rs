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

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pmlg::Variant;

/// Exact pattern matching in labeled graphs and its reduction from CNF-SAT.
#[derive(Parser, Debug)]
#[command(name = "pmlg", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the pattern, graph and manifest for a DIMACS formula
    Reduce(ReduceArgs),
    /// Match a pattern in a graph (exit 0 match, 1 no match, 2 error)
    Match(MatchArgs),
    /// Run a seeded equivalence campaign and the stage-level checks
    Verify(VerifyArgs),
    /// Decide a DIMACS formula by truth table (exit 0 sat, 1 unsat)
    Sat(SatArgs),
    /// Time the matcher on reduction instances of growing n, as CSV
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
pub struct ReduceArgs {
    #[arg(long)]
    pub cnf: PathBuf,
    /// Replace the base instance by its degree-three form
    #[arg(long)]
    pub degree3: bool,
    /// Encode labels in binary and split them into single-bit chains
    #[arg(long, requires = "degree3")]
    pub binary: bool,
    /// Orient every edge left to right
    #[arg(long, requires = "degree3")]
    pub dag: bool,
    /// Reduce the clause list followed by its reverse
    #[arg(long)]
    pub palindromic: bool,
    /// Output path prefix; defaults to the formula path without extension
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct MatchArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub pattern: PathBuf,
    /// Print one witness line per end state and the occurrence count
    #[arg(long)]
    pub all: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Base,
    Degree3,
    Binary,
    Dag,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Base => Variant::Base,
            VariantArg::Degree3 => Variant::Degree3,
            VariantArg::Binary => Variant::Binary,
            VariantArg::Dag => Variant::BinaryDag,
        }
    }
}

/// `3`, `2..6` or `2..=6`, both ends inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span(pub usize, pub usize);

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("`{s}` is not a count or range"));
        let span = match s.split_once("..") {
            Some((a, b)) => Span(num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = num(s)?;
                Span(v, v)
            }
        };
        if span.0 > span.1 {
            return Err(format!("empty range `{s}`"));
        }
        Ok(span)
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..={}", self.0, self.1)
    }
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Variable counts; odd values are padded with one unused variable
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    /// Clause count or inclusive range
    #[arg(long)]
    pub k: Span,
    /// Formulas per (n, k) cell
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub trials: u32,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "base,degree3,binary,dag")]
    pub variants: Vec<VariantArg>,
    /// Literals per clause
    #[arg(long, default_value = "1..3")]
    pub width: Span,
    /// Directory for instances of failing trials
    #[arg(long)]
    pub dump_dir: Option<PathBuf>,
    /// Directory for report.txt, trials.csv and stage_checks.txt
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Reduce each clause list followed by its reverse
    #[arg(long)]
    pub palindromic: bool,
    /// Skip the stage-level checks
    #[arg(long)]
    pub no_stage_checks: bool,
}

#[derive(Args, Debug)]
pub struct SatArgs {
    #[arg(long)]
    pub cnf: PathBuf,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 8)]
    pub n_min: usize,
    #[arg(long, default_value_t = 14)]
    pub n_max: usize,
    #[arg(long, default_value_t = 8)]
    pub k: usize,
    #[arg(long, default_value_t = 9)]
    pub repeats: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Write the CSV here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}
