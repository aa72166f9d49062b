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

use std::fmt::Write;

use super::{CampaignReport, StructuralChecks, TrialRecord};

pub const CSV_HEADER: &str = "trial,n,k,sat,match_base,match_deg3,match_bin,match_dag,m,edges,micros_match";

fn flag(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "1",
        Some(false) => "0",
        None => "-",
    }
}

impl TrialRecord {
    /// One per-trial line; carries no timing so reports are reproducible.
    pub fn to_line(&self) -> String {
        let [b, d, bi, dag] = self.matches();
        let mut line = format!(
            "trial {} n={} k={} digest={} sat={} mirror={} base={} degree3={} binary={} dag={} agree={}",
            self.trial,
            self.n,
            self.k,
            self.digest,
            flag(Some(self.sat)),
            flag(Some(self.mirror_sat)),
            flag(b),
            flag(d),
            flag(bi),
            flag(dag),
            if self.agree { "yes" } else { "no" },
        );
        if self.n != self.n_padded {
            let _ = write!(line, " padded={}", self.n_padded);
        }
        let failed: Vec<&str> = StructuralChecks::NAMES
            .iter()
            .zip(self.checks.values())
            .filter(|(_, v)| *v == Some(false))
            .map(|(n, _)| *n)
            .collect();
        if !failed.is_empty() {
            let _ = write!(line, " failed={}", failed.join(","));
        }
        if let Some(e) = &self.error {
            let _ = write!(line, " error=\"{e}\"");
        }
        line
    }

    pub fn to_csv_row(&self) -> String {
        let [b, d, bi, dag] = self.matches();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.trial,
            self.n,
            self.k,
            flag(Some(self.sat)),
            flag(b),
            flag(d),
            flag(bi),
            flag(dag),
            self.m,
            self.edges,
            self.micros_match
        )
    }
}

impl CampaignReport {
    pub fn summary_lines(&self) -> Vec<String> {
        let c = &self.config;
        let variants: Vec<&str> = c.variants.iter().map(|v| v.as_str()).collect();
        let ns: Vec<String> = c.n_values.iter().map(usize::to_string).collect();
        let mut lines = vec![
            format!(
                "campaign seed={} n={} k={}..={} trials={} width={}..={} variants={}",
                c.seed,
                ns.join(","),
                c.k_range.0,
                c.k_range.1,
                c.trials,
                c.width.0,
                c.width.1,
                variants.join(",")
            ),
            format!(
                "classes sat={} unsat={} both={}",
                self.sat_count(),
                self.unsat_count(),
                if self.both_classes() { "yes" } else { "no" }
            ),
            format!(
                "agreement {}/{} rate={:.4} errors={}",
                self.records.len() - self.disagreements(),
                self.records.len(),
                self.agreement_rate(),
                self.errors()
            ),
        ];
        let [b, d, bi, dag] = self.variant_disagreements();
        lines.push(format!("disagreements base={b} degree3={d} binary={bi} dag={dag}"));
        let (explained, total) = self.binary_explained();
        if total > 0 {
            lines.push(format!("binary answers equal sat-or-mirror {explained}/{total}"));
        }
        if c.palindromic {
            lines.push("clause order made palindromic before reduction".to_string());
        }
        let padded = self.records.iter().filter(|r| r.n != r.n_padded).count();
        if padded > 0 {
            lines.push(format!("padded {padded} formulas with one unused variable"));
        }
        for (name, (ok, total)) in StructuralChecks::NAMES.iter().zip(self.check_totals()) {
            if total > 0 {
                lines.push(format!("check {name} {ok}/{total}"));
            }
        }
        lines.push(format!("verdict {}", if self.passed() { "PASS" } else { "FAIL" }));
        lines
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for line in self.summary_lines() {
            out.push_str(&line);
            out.push('\n');
        }
        for r in &self.records {
            out.push_str(&r.to_line());
            out.push('\n');
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.records {
            out.push_str(&r.to_csv_row());
            out.push('\n');
        }
        out
    }
}
