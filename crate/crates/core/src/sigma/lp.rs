//! Integer program in LP text format, and a reader for it.
//!
//! `x_i_j = 1` means category `i` is below category `j`. Every key of the
//! tables with a non-zero count gets a variable `y_a_b_c_d` which is forced
//! to 1 whenever `x_a_b` and `x_c_d` disagree; minimizing the weighted sum
//! of the `y` then minimizes crossings. Always-crossing events do not depend
//! on any variable and are written as a `\ constant:` comment.
//!
//! Rows are emitted in a fixed order: antisymmetry for every ordered pair,
//! transitivity for every ordered triple, then the two xor rows per key.

use std::collections::BTreeMap;
use std::fmt::Write;

use thiserror::Error;

use super::tables::ResponsibilityTables;

const TERMS_PER_LINE: usize = 8;

fn x(i: usize, j: usize) -> String {
    format!("x_{i}_{j}")
}

pub fn export_ilp(tables: &ResponsibilityTables, k: usize) -> String {
    let mut out = String::new();
    let constant = tables.constant().total();
    let _ = writeln!(out, "\\ category order minimizing panel crossings");
    let _ = writeln!(out, "\\ constant: {constant}");
    out.push_str("Minimize\n obj:");
    let terms: Vec<String> = tables.entries().iter().map(|(key, counts)| format!("{} {key}", counts.total())).collect();
    if terms.is_empty() {
        out.push_str(" 0");
    }
    for (n, term) in terms.iter().enumerate() {
        if n > 0 {
            out.push_str(if n % TERMS_PER_LINE == 0 { "\n   +" } else { " +" });
        }
        out.push(' ');
        out.push_str(term);
    }
    out.push_str("\nSubject To\n");
    for i in 0..k {
        for j in (0..k).filter(|&j| j != i) {
            let _ = writeln!(out, " anti_{i}_{j}: {} + {} = 1", x(i, j), x(j, i));
        }
    }
    for i in 0..k {
        for j in (0..k).filter(|&j| j != i) {
            for l in (0..k).filter(|&l| l != i && l != j) {
                let _ = writeln!(out, " trans_{i}_{j}_{l}: {} + {} - {} <= 1", x(i, j), x(j, l), x(i, l));
            }
        }
    }
    for key in tables.entries().keys() {
        let (p, q) = (x(key.first.0, key.first.1), x(key.second.0, key.second.1));
        let tag = &key.to_string()[2..];
        let _ = writeln!(out, " xor1_{tag}: {key} - {p} + {q} >= 0");
        let _ = writeln!(out, " xor2_{tag}: {key} + {p} - {q} >= 0");
    }
    out.push_str("Binary\n");
    for i in 0..k {
        for j in (0..k).filter(|&j| j != i) {
            let _ = writeln!(out, " {}", x(i, j));
        }
    }
    for key in tables.entries().keys() {
        let _ = writeln!(out, " {key}");
    }
    out.push_str("End\n");
    out
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LpParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing section {0}")]
    MissingSection(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpConstraint {
    pub name: String,
    pub terms: Vec<(i64, String)>,
    pub sense: Sense,
    pub rhs: i64,
}

/// A parsed program, restricted to what [`export_ilp`] writes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LpProblem {
    pub constant: i64,
    pub objective: Vec<(i64, String)>,
    pub constraints: Vec<LpConstraint>,
    pub binaries: Vec<String>,
}

impl LpProblem {
    /// Objective value at `values`, or `None` if a constraint is violated or
    /// a listed variable is missing or not binary.
    pub fn evaluate(&self, values: &BTreeMap<String, i64>) -> Option<i64> {
        if self.binaries.iter().any(|v| !matches!(values.get(v), Some(0 | 1))) {
            return None;
        }
        let linear =
            |terms: &[(i64, String)]| -> Option<i64> { terms.iter().map(|(c, v)| values.get(v).map(|x| c * x)).sum() };
        for row in &self.constraints {
            let lhs = linear(&row.terms)?;
            let ok = match row.sense {
                Sense::Le => lhs <= row.rhs,
                Sense::Ge => lhs >= row.rhs,
                Sense::Eq => lhs == row.rhs,
            };
            if !ok {
                return None;
            }
        }
        Some(self.constant + linear(&self.objective)?)
    }

    pub fn rows_with_prefix(&self, prefix: &str) -> usize {
        self.constraints.iter().filter(|c| c.name.starts_with(prefix)).count()
    }
}

fn syntax(line: usize, message: impl Into<String>) -> LpParseError {
    LpParseError::Syntax { line, message: message.into() }
}

/// Parses `+ 3 y + x - z` style sums of integer-weighted variables; a bare
/// `0` is the empty sum.
fn parse_terms(text: &str, line: usize) -> Result<Vec<(i64, String)>, LpParseError> {
    let mut terms = Vec::new();
    let mut sign = 1;
    let mut coeff: Option<i64> = None;
    for token in text.split_whitespace() {
        match token {
            "+" => sign = 1,
            "-" => sign = -1,
            _ => {
                if let Ok(c) = token.parse::<i64>() {
                    if coeff.is_some() {
                        return Err(syntax(line, format!("two coefficients in a row at {token:?}")));
                    }
                    coeff = Some(c);
                } else if token.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) {
                    terms.push((sign * coeff.take().unwrap_or(1), token.to_string()));
                    sign = 1;
                } else {
                    return Err(syntax(line, format!("unexpected token {token:?}")));
                }
            }
        }
    }
    match coeff {
        Some(0) if terms.is_empty() => Ok(terms),
        Some(_) => Err(syntax(line, "dangling coefficient")),
        None => Ok(terms),
    }
}

pub fn parse_lp(text: &str) -> Result<LpProblem, LpParseError> {
    #[derive(PartialEq)]
    enum Section {
        Preamble,
        Objective,
        Constraints,
        Binary,
        End,
    }
    let mut section = Section::Preamble;
    let mut problem = LpProblem::default();
    let mut objective_text = String::new();
    let mut objective_line = 0;
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        if let Some(comment) = raw.trim().strip_prefix('\\') {
            if let Some(value) = comment.trim().strip_prefix("constant:") {
                problem.constant = value.trim().parse().map_err(|_| syntax(line, "bad constant"))?;
            }
            continue;
        }
        let body = raw.trim();
        if body.is_empty() {
            continue;
        }
        match body.to_ascii_lowercase().as_str() {
            "minimize" => {
                section = Section::Objective;
                continue;
            }
            "subject to" => {
                section = Section::Constraints;
                continue;
            }
            "binary" => {
                section = Section::Binary;
                continue;
            }
            "end" => {
                section = Section::End;
                continue;
            }
            _ => {}
        }
        match section {
            Section::Preamble | Section::End => return Err(syntax(line, "text outside any section")),
            Section::Objective => {
                let rest = body.strip_prefix("obj:").unwrap_or(body);
                if objective_text.is_empty() {
                    objective_line = line;
                }
                objective_text.push(' ');
                objective_text.push_str(rest);
            }
            Section::Constraints => {
                let (name, rest) = body.split_once(':').ok_or_else(|| syntax(line, "unnamed row"))?;
                let (lhs, sense, rhs) = if let Some((l, r)) = rest.split_once("<=") {
                    (l, Sense::Le, r)
                } else if let Some((l, r)) = rest.split_once(">=") {
                    (l, Sense::Ge, r)
                } else if let Some((l, r)) = rest.split_once('=') {
                    (l, Sense::Eq, r)
                } else {
                    return Err(syntax(line, "row without a relation"));
                };
                problem.constraints.push(LpConstraint {
                    name: name.trim().to_string(),
                    terms: parse_terms(lhs, line)?,
                    sense,
                    rhs: rhs.trim().parse().map_err(|_| syntax(line, "bad right-hand side"))?,
                });
            }
            Section::Binary => problem.binaries.extend(body.split_whitespace().map(str::to_string)),
        }
    }
    if section != Section::End {
        return Err(LpParseError::MissingSection("End"));
    }
    problem.objective = parse_terms(&objective_text, objective_line)?;
    Ok(problem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{OpdInstance, SigmaOrdering};
    use crate::sigma::tables::{compute_tables, objective_for_sigma, PairKey};
    use itertools::Itertools;

    fn three() -> ResponsibilityTables {
        let inst =
            OpdInstance::from_trajectories(&["c1", "c2", "c3"], &[("a", &["c1", "c3"]), ("b", &["c2", "c2"])]).unwrap();
        compute_tables(&inst)
    }

    /// x from the order, y from the xor.
    fn assignment(problem: &LpProblem, sigma: &SigmaOrdering) -> BTreeMap<String, i64> {
        let mut values = BTreeMap::new();
        for name in &problem.binaries {
            let parts: Vec<usize> = name[2..].split('_').map(|p| p.parse().unwrap()).collect();
            let value = match parts.as_slice() {
                [i, j] => sigma.precedes(*i, *j),
                [a, b, c, d] => PairKey { first: (*a, *b), second: (*c, *d) }.crosses(sigma),
                _ => unreachable!(),
            };
            values.insert(name.clone(), value as i64);
        }
        values
    }

    #[test]
    fn worked_example_shape() {
        let text = export_ilp(&three(), 3);
        assert!(text.contains(" obj: 1 y_0_1_2_1\n"));
        let problem = parse_lp(&text).unwrap();
        assert_eq!(problem.binaries.iter().filter(|v| v.starts_with("x_")).count(), 6);
        assert_eq!(problem.binaries.iter().filter(|v| v.starts_with("y_")).count(), 1);
        assert_eq!(problem.rows_with_prefix("anti_"), 6);
        assert_eq!(problem.rows_with_prefix("trans_"), 6);
        assert_eq!(problem.rows_with_prefix("xor"), 2);
    }

    #[test]
    fn worked_example_hand_solve() {
        let tables = three();
        let problem = parse_lp(&export_ilp(&tables, 3)).unwrap();
        let at = |order: &[usize]| {
            let sigma = SigmaOrdering::from_order(order.to_vec()).unwrap();
            problem.evaluate(&assignment(&problem, &sigma))
        };
        assert_eq!(at(&[1, 0, 2]), Some(0));
        assert_eq!(at(&[0, 1, 2]), Some(1));

        // every binary point: the feasible ones are exactly the orders
        let names = problem.binaries.clone();
        let mut best = None;
        let mut feasible = 0;
        for bits in 0..1u32 << names.len() {
            let values: BTreeMap<String, i64> =
                names.iter().enumerate().map(|(i, v)| (v.clone(), (bits >> i & 1) as i64)).collect();
            if let Some(value) = problem.evaluate(&values) {
                feasible += 1;
                best = Some(best.map_or(value, |b: i64| b.min(value)));
            }
        }
        assert_eq!(best, Some(0));
        // six orders; y is free to be 1 where the xor is 0
        assert!(feasible >= 6);
    }

    #[test]
    fn empty_tables() {
        let tables = compute_tables(&OpdInstance::from_matrix(3, vec![vec![0, 0]; 2]).unwrap());
        let text = export_ilp(&tables, 3);
        assert!(text.contains(" obj: 0\n"));
        let problem = parse_lp(&text).unwrap();
        assert!(problem.objective.is_empty());
        assert_eq!(problem.rows_with_prefix("trans_"), 6);
    }

    #[test]
    fn evaluation_matches_objective_on_random_instances() {
        for seed in 0..20 {
            let inst = crate::analysis::random_instance(5, 4, 2, seed).unwrap();
            let tables = compute_tables(&inst);
            let problem = parse_lp(&export_ilp(&tables, 4)).unwrap();
            assert_eq!(problem.rows_with_prefix("xor"), 2 * tables.entries().len());
            for order in (0..4).permutations(4) {
                let sigma = SigmaOrdering::from_order(order).unwrap();
                let value = problem.evaluate(&assignment(&problem, &sigma));
                assert_eq!(value, Some(objective_for_sigma(&tables, &sigma) as i64));
            }
        }
    }

    #[test]
    fn parse_errors_name_the_line() {
        let err = parse_lp("Minimize\n obj: 0\nSubject To\n r: x_0_1 ?? 1\nEnd\n").unwrap_err();
        assert_eq!(err, LpParseError::Syntax { line: 4, message: "row without a relation".into() });
        assert_eq!(parse_lp("Minimize\n obj: 0\n").unwrap_err(), LpParseError::MissingSection("End"));
    }
}
