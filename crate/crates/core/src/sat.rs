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

//! CNF formulas, DIMACS input, half-assignments and a truth-table oracle.

use std::fmt;

use thiserror::Error;

/// Largest variable count [`brute_force_sat`] will enumerate.
pub const ORACLE_MAX_VARS: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SatError {
    #[error("missing `p cnf <vars> <clauses>` header")]
    MissingHeader,
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("literal {literal} out of range for {vars} variables")]
    LiteralOutOfRange { literal: i64, vars: usize },
    #[error("header declares {declared} clauses but {found} were found")]
    ClauseCountMismatch { declared: usize, found: usize },
    #[error("clause {0} is empty")]
    EmptyClause(usize),
    #[error("clause {index} is tautological (contains {var} and -{var})")]
    Tautology { index: usize, var: usize },
    #[error("formula has no clauses")]
    NoClauses,
    #[error("formula must have at least one variable")]
    NoVariables,
    #[error("variable count {0} is odd")]
    OddVariableCount(usize),
    #[error("{vars} variables exceeds the enumeration limit of {limit}")]
    TooManyVariables { vars: usize, limit: usize },
}

/// A signed, 1-based variable reference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal(i32);

impl Literal {
    pub fn new(value: i32) -> Option<Self> {
        (value != 0).then_some(Literal(value))
    }

    pub fn positive(var: usize) -> Self {
        Literal(var as i32)
    }

    pub fn negative(var: usize) -> Self {
        Literal(-(var as i32))
    }

    /// 1-based variable index.
    pub fn var(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn value(self) -> i32 {
        self.0
    }

    /// Whether `value` (the variable's truth value) satisfies this literal.
    pub fn satisfied_by(self, value: bool) -> bool {
        value == self.is_positive()
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub type Clause = Vec<Literal>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    /// Validates and normalizes: duplicate literals inside a clause are
    /// dropped (first occurrence kept), empty and tautological clauses are
    /// rejected, and at least one clause is required.
    pub fn new(num_vars: usize, clauses: Vec<Clause>) -> Result<Self, SatError> {
        if num_vars == 0 {
            return Err(SatError::NoVariables);
        }
        if clauses.is_empty() {
            return Err(SatError::NoClauses);
        }
        let mut normalized = Vec::with_capacity(clauses.len());
        for (index, clause) in clauses.into_iter().enumerate() {
            let mut out: Clause = Vec::with_capacity(clause.len());
            for lit in clause {
                if lit.var() > num_vars {
                    return Err(SatError::LiteralOutOfRange { literal: lit.0 as i64, vars: num_vars });
                }
                if out.contains(&Literal(-lit.0)) {
                    return Err(SatError::Tautology { index: index + 1, var: lit.var() });
                }
                if !out.contains(&lit) {
                    out.push(lit);
                }
            }
            if out.is_empty() {
                return Err(SatError::EmptyClause(index + 1));
            }
            normalized.push(out);
        }
        Ok(CnfFormula { num_vars, clauses: normalized })
    }

    /// Convenience constructor from DIMACS-style signed integers.
    pub fn from_ints(num_vars: usize, clauses: &[&[i32]]) -> Result<Self, SatError> {
        let mut out = Vec::with_capacity(clauses.len());
        for (i, c) in clauses.iter().enumerate() {
            let lits: Option<Clause> = c.iter().map(|&v| Literal::new(v)).collect();
            out.push(lits.ok_or(SatError::EmptyClause(i + 1))?);
        }
        CnfFormula::new(num_vars, out)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// Evaluates a full assignment; `values[t]` is the value of `v_{t+1}`.
    pub fn evaluate(&self, values: &[bool]) -> bool {
        self.clauses.iter().all(|c| clause_satisfied(c, values))
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for lit in c {
                out.push_str(&lit.to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }
}

pub fn clause_satisfied(clause: &[Literal], values: &[bool]) -> bool {
    clause.iter().any(|l| l.satisfied_by(values[l.var() - 1]))
}

/// Parses DIMACS CNF. Clauses may span lines; `c` lines are comments and a
/// `%` line ends the clause section.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, SatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Clause> = Vec::new();
    let mut current: Clause = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(SatError::Syntax { line: line_no, message: "duplicate header".into() });
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let parsed = match toks.as_slice() {
                ["p", "cnf", n, k] => n.parse().ok().zip(k.parse().ok()),
                _ => None,
            };
            header =
                Some(parsed.ok_or_else(|| SatError::Syntax {
                    line: line_no,
                    message: format!("malformed header `{line}`"),
                })?);
            continue;
        }
        let (vars, _) = header.ok_or(SatError::MissingHeader)?;
        for tok in line.split_whitespace() {
            let value: i64 = tok
                .parse()
                .map_err(|_| SatError::Syntax { line: line_no, message: format!("invalid literal `{tok}`") })?;
            if value == 0 {
                if current.is_empty() {
                    return Err(SatError::EmptyClause(clauses.len() + 1));
                }
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            if value.unsigned_abs() as usize > vars {
                return Err(SatError::LiteralOutOfRange { literal: value, vars });
            }
            current.push(Literal(value as i32));
        }
    }
    let (vars, declared) = header.ok_or(SatError::MissingHeader)?;
    if !current.is_empty() {
        // final clause without its terminating 0
        clauses.push(current);
    }
    if clauses.len() != declared {
        return Err(SatError::ClauseCountMismatch { declared, found: clauses.len() });
    }
    CnfFormula::new(vars, clauses)
}

/// Pads an odd variable count with one unused variable.
pub fn make_even(f: &CnfFormula) -> CnfFormula {
    if f.num_vars.is_multiple_of(2) {
        return f.clone();
    }
    CnfFormula { num_vars: f.num_vars + 1, clauses: f.clauses.clone() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Half {
    /// Variables `v_1 ..= v_{n/2}`.
    First,
    /// Variables `v_{n/2+1} ..= v_n`.
    Second,
}

/// Truth assignment to one half of the variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HalfAssignment {
    pub half: Half,
    /// `bits[t]` is the value of the `t`-th variable of the half.
    pub bits: Vec<bool>,
    /// 1-based position in counting order.
    pub index: usize,
}

impl HalfAssignment {
    /// Assignment number `index` (1-based): bit `t` of `index - 1` is the value
    /// of the half's `t`-th variable, lowest variable least significant.
    pub fn from_index(half: Half, width: usize, index: usize) -> Self {
        let code = index - 1;
        let bits = (0..width).map(|t| (code >> t) & 1 == 1).collect();
        HalfAssignment { half, bits, index }
    }

    pub fn index_of_bits(bits: &[bool]) -> usize {
        1 + bits.iter().enumerate().map(|(t, &b)| (b as usize) << t).sum::<usize>()
    }

    /// 1-based index of the first variable of this half, given `n`.
    pub fn first_var(&self, n: usize) -> usize {
        match self.half {
            Half::First => 1,
            Half::Second => n / 2 + 1,
        }
    }

    /// Value of variable `var` if it lies in this half.
    pub fn value_of(&self, var: usize, n: usize) -> Option<bool> {
        let first = self.first_var(n);
        (first..first + n / 2).contains(&var).then(|| self.bits[var - first])
    }
}

pub fn enumerate_half_assignments(n: usize, half: Half) -> Result<Vec<HalfAssignment>, SatError> {
    if n % 2 == 1 {
        return Err(SatError::OddVariableCount(n));
    }
    if n == 0 {
        return Err(SatError::NoVariables);
    }
    let width = n / 2;
    Ok((1..=1usize << width).map(|i| HalfAssignment::from_index(half, width, i)).collect())
}

/// Whether `a` alone satisfies `clause`; literals on the other half never count.
pub fn half_satisfies(a: &HalfAssignment, clause: &[Literal], n: usize) -> bool {
    clause.iter().any(|l| a.value_of(l.var(), n).is_some_and(|v| l.satisfied_by(v)))
}

/// Whether some pair of half-assignments covers `c_h` with `x` or `c_{k+1-h}`
/// with `y` for every `h`: satisfiability of the formula whose second-half
/// literals are read against the clause list reversed.
pub fn mirror_satisfiable(f: &CnfFormula) -> Result<bool, SatError> {
    let n = f.num_vars;
    let xs = enumerate_half_assignments(n, Half::First)?;
    let ys = enumerate_half_assignments(n, Half::Second)?;
    let k = f.clauses.len();
    Ok(xs.iter().any(|x| {
        ys.iter()
            .any(|y| (0..k).all(|h| half_satisfies(x, &f.clauses[h], n) || half_satisfies(y, &f.clauses[k - 1 - h], n)))
    }))
}

/// `c_1 .. c_k c_k .. c_1`: logically equivalent, and invariant under
/// reversing the clause list.
pub fn palindromic_clause_order(f: &CnfFormula) -> CnfFormula {
    let mut clauses = f.clauses.clone();
    clauses.extend(f.clauses.iter().rev().cloned());
    CnfFormula { num_vars: f.num_vars, clauses }
}

/// First satisfying assignment in counting order (`v_1` least significant),
/// or `None` when unsatisfiable.
pub fn brute_force_sat(f: &CnfFormula) -> Result<Option<Vec<bool>>, SatError> {
    let n = f.num_vars;
    if n > ORACLE_MAX_VARS {
        return Err(SatError::TooManyVariables { vars: n, limit: ORACLE_MAX_VARS });
    }
    // per clause: (mask of variables, mask of positive literals)
    let compiled: Vec<(u32, u32)> = f
        .clauses
        .iter()
        .map(|c| {
            c.iter().fold((0u32, 0u32), |(m, p), l| {
                let bit = 1u32 << (l.var() - 1);
                (m | bit, if l.is_positive() { p | bit } else { p })
            })
        })
        .collect();
    for code in 0u32..(1u32 << n) {
        // a literal is true when its variable bit equals its polarity bit
        if compiled.iter().all(|&(mask, pos)| !(code ^ pos) & mask != 0) {
            return Ok(Some((0..n).map(|t| (code >> t) & 1 == 1).collect()));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_basic_dimacs() {
        let f = parse_dimacs("p cnf 2 2\n1 2 0\n-1 -2 0\n").unwrap();
        assert_eq!(f.num_vars(), 2);
        assert_eq!(f, CnfFormula::from_ints(2, &[&[1, 2], &[-1, -2]]).unwrap());
    }

    #[test]
    fn dimacs_errors() {
        assert!(matches!(parse_dimacs("p cnf 2 1\n1 -1 0\n"), Err(SatError::Tautology { index: 1, var: 1 })));
        assert_eq!(
            parse_dimacs("p cnf 4 3\n1 2 0\n3 0\n"),
            Err(SatError::ClauseCountMismatch { declared: 3, found: 2 })
        );
        assert_eq!(parse_dimacs("1 2 0\n"), Err(SatError::MissingHeader));
        assert_eq!(parse_dimacs("p cnf 2 1\n1 3 0\n"), Err(SatError::LiteralOutOfRange { literal: 3, vars: 2 }));
        assert_eq!(parse_dimacs("p cnf 2 1\n0\n"), Err(SatError::EmptyClause(1)));
        assert!(matches!(parse_dimacs("p dnf 2 1\n1 0\n"), Err(SatError::Syntax { line: 1, .. })));
    }

    #[test]
    fn dimacs_comments_and_multiline_clauses() {
        let f = parse_dimacs("c hi\np cnf 3 2\n1 2\n 3 0 -1\n0\n").unwrap();
        assert_eq!(f, CnfFormula::from_ints(3, &[&[1, 2, 3], &[-1]]).unwrap());
    }

    #[test]
    fn duplicate_literals_are_removed() {
        let f = CnfFormula::from_ints(2, &[&[1, 1, 2]]).unwrap();
        assert_eq!(f.clauses()[0], vec![Literal::positive(1), Literal::positive(2)]);
    }

    #[test]
    fn make_even_pads_odd_counts() {
        let f = CnfFormula::from_ints(4, &[&[1]]).unwrap();
        assert_eq!(make_even(&f), f);
        let g = CnfFormula::from_ints(3, &[&[1, -3], &[2]]).unwrap();
        let e = make_even(&g);
        assert_eq!(e.num_vars(), 4);
        assert_eq!(e.clauses(), g.clauses());
    }

    #[test]
    fn half_assignments_count_in_binary() {
        let a = enumerate_half_assignments(2, Half::First).unwrap();
        assert_eq!(a.iter().map(|x| x.bits.clone()).collect::<Vec<_>>(), vec![vec![false], vec![true]]);
        let b = enumerate_half_assignments(4, Half::First).unwrap();
        let bits: Vec<Vec<bool>> = b.iter().map(|x| x.bits.clone()).collect();
        assert_eq!(bits, vec![vec![false, false], vec![true, false], vec![false, true], vec![true, true]]);
        for n in [2, 4, 6, 8] {
            let all = enumerate_half_assignments(n, Half::Second).unwrap();
            assert_eq!(all.len(), 1 << (n / 2));
            for a in &all {
                assert_eq!(HalfAssignment::index_of_bits(&a.bits), a.index);
            }
        }
        assert_eq!(enumerate_half_assignments(3, Half::First), Err(SatError::OddVariableCount(3)));
    }

    #[test]
    fn half_satisfaction() {
        let clause = [Literal::positive(1), Literal::positive(2)];
        let x = HalfAssignment { half: Half::First, bits: vec![true], index: 2 };
        assert!(half_satisfies(&x, &clause, 2));
        let y = HalfAssignment { half: Half::Second, bits: vec![false], index: 1 };
        assert!(!half_satisfies(&y, &clause, 2));
    }

    #[test]
    fn oracle_examples() {
        let contra = CnfFormula::from_ints(1, &[&[1], &[-1]]).unwrap();
        assert_eq!(brute_force_sat(&contra).unwrap(), None);
        let xor = CnfFormula::from_ints(2, &[&[1, 2], &[-1, -2]]).unwrap();
        assert_eq!(brute_force_sat(&xor).unwrap(), Some(vec![true, false]));
        let big = CnfFormula::from_ints(25, &[&[25]]).unwrap();
        assert!(matches!(brute_force_sat(&big), Err(SatError::TooManyVariables { .. })));
    }

    #[test]
    fn mirror_of_palindromic_order_is_satisfiability() {
        let f = CnfFormula::from_ints(4, &[&[2], &[-4, -2, 1], &[-3], &[-2], &[2, 3, 1]]).unwrap();
        assert!(brute_force_sat(&f).unwrap().is_none());
        assert!(mirror_satisfiable(&f).unwrap());
        let p = palindromic_clause_order(&f);
        assert_eq!(p.num_clauses(), 10);
        assert!(brute_force_sat(&p).unwrap().is_none());
        assert!(!mirror_satisfiable(&p).unwrap());
    }
}
