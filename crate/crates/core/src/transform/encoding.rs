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

//! The binary code `c -> 0000, d -> 1111, b -> 10, e -> 01` and an exhaustive
//! check of its synchronization properties.

/// Symbol-to-bits table over `{b, e, c, d}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodingTable {
    entries: [(char, &'static str); 4],
}

impl EncodingTable {
    pub fn standard() -> Self {
        EncodingTable { entries: [('c', "0000"), ('d', "1111"), ('b', "10"), ('e', "01")] }
    }

    pub fn code(&self, symbol: char) -> Option<&'static str> {
        self.entries.iter().find(|(s, _)| *s == symbol).map(|(_, c)| *c)
    }

    /// Concatenated code of every symbol of `s`; `None` on a foreign symbol.
    pub fn encode(&self, s: &str) -> Option<String> {
        s.chars().map(|c| self.code(c)).collect()
    }

    pub fn symbols(&self) -> impl Iterator<Item = char> + '_ {
        self.entries.iter().map(|(s, _)| *s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EncodingReport {
    /// Triples over `{b,e,c,d}` checked for "code contains 0110 iff triple
    /// contains eb".
    pub sync_checked: usize,
    pub sync_violations: Vec<String>,
    /// Triples of the shapes that can occur in a revised pattern, checked for
    /// "no `be` and code has no 1001".
    pub shapes_checked: usize,
    pub shape_violations: Vec<String>,
}

impl EncodingReport {
    pub fn passed(&self) -> bool {
        self.sync_violations.is_empty() && self.shape_violations.is_empty()
    }
}

/// Length-3 windows of strings in `e b ({c,d}+ e b)+`.
fn pattern_window_shapes() -> Vec<String> {
    let cd = ["c", "d"];
    let mut out = Vec::new();
    for a in cd {
        out.push(format!("b{a}e"));
        out.push(format!("eb{a}"));
        out.push(format!("{a}eb"));
        for b in cd {
            out.push(format!("b{a}{b}"));
            out.push(format!("{a}{b}e"));
            for c in cd {
                out.push(format!("{a}{b}{c}"));
            }
        }
    }
    out
}

pub fn verify_encoding_table() -> EncodingReport {
    let table = EncodingTable::standard();
    let syms: Vec<char> = table.symbols().collect();
    let mut report = EncodingReport::default();
    for &a in &syms {
        for &b in &syms {
            for &c in &syms {
                let triple: String = [a, b, c].iter().collect();
                let code = table.encode(&triple).expect("table symbols");
                report.sync_checked += 1;
                if code.contains("0110") != triple.contains("eb") {
                    report.sync_violations.push(format!("{triple} -> {code}"));
                }
            }
        }
    }
    for triple in pattern_window_shapes() {
        let code = table.encode(&triple).expect("table symbols");
        report.shapes_checked += 1;
        if triple.contains("be") || code.contains("1001") {
            report.shape_violations.push(format!("{triple} -> {code}"));
        }
    }
    report
}
