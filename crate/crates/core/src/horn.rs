//! Horn renamings of arbitrary clause sets.
//!
//! For every clause and every two distinct literal occurrences `a, b` in it,
//! the 2-clause `¬a ∨ ¬b` enters the formula `σ`. The models `g` of `σ` are
//! in bijection with the Horn renamings: negate exactly the variables with
//! `g_i = 0`. Clauses of width one contribute nothing.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::enumerator::{enumerate_models, ModelEnumerator, Status};
use crate::error::{Error, Result};
use crate::formula::{read_dimacs, Clause2, Cnf2, Literal};

/// Clauses of any width, each free of complementary literals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClauseSet {
    num_vars: usize,
    clauses: Vec<Vec<Literal>>,
}

impl ClauseSet {
    /// Repeated literals inside a clause are merged.
    pub fn new(num_vars: usize, clauses: Vec<Vec<Literal>>) -> Result<ClauseSet> {
        let mut out = Vec::with_capacity(clauses.len());
        for (i, clause) in clauses.into_iter().enumerate() {
            out.push(check_clause(num_vars, clause, i + 1)?);
        }
        Ok(ClauseSet {
            num_vars,
            clauses: out,
        })
    }

    pub fn parse_dimacs(text: &str) -> Result<ClauseSet> {
        let (num_vars, raw) = read_dimacs(text)?;
        let clauses = raw
            .into_iter()
            .map(|rc| check_clause(num_vars, rc.literals, rc.line))
            .collect::<Result<Vec<_>>>()?;
        Ok(ClauseSet { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    /// Every clause has at most one positive literal.
    pub fn is_horn(&self) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().filter(|l| l.is_positive()).count() <= 1)
    }

    /// Flips the polarity of the renamed variables throughout.
    pub fn apply_renaming(&self, r: &RenamingSet) -> ClauseSet {
        let clauses = self
            .clauses
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&l| if r.contains(l.var()) { l.negate() } else { l })
                    .collect()
            })
            .collect();
        ClauseSet {
            num_vars: self.num_vars,
            clauses,
        }
    }
}

fn check_clause(num_vars: usize, clause: Vec<Literal>, line: usize) -> Result<Vec<Literal>> {
    if clause.is_empty() {
        return Err(Error::EmptyClause { line });
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(clause.len());
    for l in clause {
        if l.var() > num_vars {
            return Err(Error::LiteralOutOfRange {
                literal: l.to_dimacs(),
                num_vars,
            });
        }
        if seen.contains(&l.negate()) {
            return Err(Error::TautologicalClause { line });
        }
        if seen.insert(l) {
            out.push(l);
        }
    }
    Ok(out)
}

/// A renaming, identified with the set of negated variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RenamingSet {
    negated_variables: BTreeSet<usize>,
}

impl RenamingSet {
    pub fn new<I: IntoIterator<Item = usize>>(vars: I) -> RenamingSet {
        RenamingSet {
            negated_variables: vars.into_iter().collect(),
        }
    }

    pub fn contains(&self, var: usize) -> bool {
        self.negated_variables.contains(&var)
    }

    pub fn variables(&self) -> impl Iterator<Item = usize> + '_ {
        self.negated_variables.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.negated_variables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.negated_variables.is_empty()
    }

    /// `[-1,-4]`.
    pub fn to_json(&self) -> String {
        let v: Vec<i64> = self.variables().map(|v| -(v as i64)).collect();
        serde_json::to_string(&v).expect("serializable")
    }
}

/// Sorted negative indices, terminated by `0` as in DIMACS.
impl fmt::Display for RenamingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in self.variables() {
            write!(f, "-{v} ")?;
        }
        f.write_str("0")
    }
}

/// The 2-CNF whose models are the Horn renamings of `cs`.
pub fn build_sigma(cs: &ClauseSet) -> Cnf2 {
    let mut clauses = BTreeSet::new();
    for c in cs.clauses() {
        for (i, &a) in c.iter().enumerate() {
            for &b in &c[i + 1..] {
                // a → ¬b and b → ¬a
                clauses.insert(Clause2::new(a.negate(), b.negate()));
            }
        }
    }
    Cnf2::new(cs.num_vars(), clauses.into_iter().collect(), Vec::new())
        .expect("literals already range-checked")
}

/// Lazy stream of all Horn renamings.
#[derive(Clone, Debug)]
pub struct RenamingEnumerator {
    models: ModelEnumerator,
}

impl RenamingEnumerator {
    pub fn status(&self) -> Status {
        self.models.status()
    }

    /// Whether any renaming exists.
    pub fn is_renamable(&self) -> bool {
        self.models.is_satisfiable()
    }
}

impl Iterator for RenamingEnumerator {
    type Item = RenamingSet;

    fn next(&mut self) -> Option<RenamingSet> {
        let g = self.models.next()?;
        Some(RenamingSet::new(
            (1..=g.num_vars()).filter(|&v| !g.value(v)),
        ))
    }
}

pub fn enumerate_renamings(cs: &ClauseSet) -> RenamingEnumerator {
    RenamingEnumerator {
        models: enumerate_models(&build_sigma(cs)),
    }
}
