//! 2-CNF formulas: literals, two-literal clauses, DIMACS reading and
//! writing, normalization and evaluation.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Not;

use crate::error::{Error, Result};

/// A signed variable. Variables are numbered from 1.
///
/// Internally the literal is its implication-digraph vertex: `x_i` is
/// `2i-2` and `¬x_i` is `2i-1`, so negation flips the low bit.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal(u32);

impl Literal {
    pub fn new(var: usize, positive: bool) -> Literal {
        assert!(var >= 1, "variables are numbered from 1");
        Literal(((var as u32 - 1) << 1) | u32::from(!positive))
    }

    pub fn positive(var: usize) -> Literal {
        Literal::new(var, true)
    }

    pub fn negative(var: usize) -> Literal {
        Literal::new(var, false)
    }

    /// Parses a nonzero DIMACS integer.
    pub fn from_dimacs(value: i64) -> Option<Literal> {
        if value == 0 || value.unsigned_abs() > u32::MAX as u64 / 2 {
            return None;
        }
        Some(Literal::new(value.unsigned_abs() as usize, value > 0))
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var() as i64;
        if self.is_positive() {
            v
        } else {
            -v
        }
    }

    pub fn var(self) -> usize {
        (self.0 >> 1) as usize + 1
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    pub fn negate(self) -> Literal {
        Literal(self.0 ^ 1)
    }

    /// Vertex index in the implication digraph.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(index: usize) -> Literal {
        Literal(index as u32)
    }

    /// Truth value under an assignment.
    pub fn eval(self, a: &Assignment) -> bool {
        a.value(self.var()) == self.is_positive()
    }
}

impl Not for Literal {
    type Output = Literal;

    fn not(self) -> Literal {
        self.negate()
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_positive() {
            write!(f, "x{}", self.var())
        } else {
            write!(f, "~x{}", self.var())
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// A disjunction of two literals. Equality and hashing treat the clause as
/// an unordered pair.
#[derive(Copy, Clone, Debug)]
pub struct Clause2 {
    pub first: Literal,
    pub second: Literal,
}

impl Clause2 {
    pub fn new(first: Literal, second: Literal) -> Clause2 {
        Clause2 { first, second }
    }

    fn key(&self) -> (Literal, Literal) {
        if self.first <= self.second {
            (self.first, self.second)
        } else {
            (self.second, self.first)
        }
    }

    pub fn is_tautology(&self) -> bool {
        self.first == self.second.negate()
    }

    pub fn eval(&self, a: &Assignment) -> bool {
        self.first.eval(a) || self.second.eval(a)
    }
}

impl PartialEq for Clause2 {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Clause2 {}

impl Hash for Clause2 {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl PartialOrd for Clause2 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Clause2 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

/// Full truth assignment over variables `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Assignment {
        Assignment { values }
    }

    pub fn all_false(num_vars: usize) -> Assignment {
        Assignment::new(vec![false; num_vars])
    }

    /// Bit `i` of `bits` is variable `i+1`.
    pub fn from_bits(num_vars: usize, bits: u64) -> Assignment {
        Assignment::new((0..num_vars).map(|i| bits >> i & 1 == 1).collect())
    }

    /// Parses a `0`/`1` string in variable order.
    pub fn from_bitstring(s: &str) -> Option<Assignment> {
        s.chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(Assignment::new)
    }

    pub fn num_vars(&self) -> usize {
        self.values.len()
    }

    /// Value of the 1-based variable `var`.
    pub fn value(&self, var: usize) -> bool {
        self.values[var - 1]
    }

    pub fn set(&mut self, var: usize, value: bool) {
        self.values[var - 1] = value;
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn to_bitstring(&self) -> String {
        self.values.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    /// The assignment as true literals, one per variable, DIMACS-signed.
    pub fn to_literals(&self) -> Vec<i64> {
        (1..=self.num_vars())
            .map(|v| if self.value(v) { v as i64 } else { -(v as i64) })
            .collect()
    }
}

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Assignment({})", self.to_bitstring())
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bitstring())
    }
}

/// Two literals of the same variable occurring as units.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Contradiction {
    pub variable: usize,
}

/// A 2-CNF over `num_vars` variables plus unit literals that are forced true.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf2 {
    num_vars: usize,
    clauses: Vec<Clause2>,
    units: Vec<Literal>,
}

impl Cnf2 {
    pub fn new(num_vars: usize, clauses: Vec<Clause2>, units: Vec<Literal>) -> Result<Cnf2> {
        let lits = clauses
            .iter()
            .flat_map(|c| [c.first, c.second])
            .chain(units.iter().copied());
        for lit in lits {
            if lit.var() > num_vars {
                return Err(Error::LiteralOutOfRange {
                    literal: lit.to_dimacs(),
                    num_vars,
                });
            }
        }
        Ok(Cnf2 {
            num_vars,
            clauses,
            units,
        })
    }

    /// Builds a formula from DIMACS-signed pairs.
    pub fn from_pairs(num_vars: usize, pairs: &[(i64, i64)]) -> Result<Cnf2> {
        let mut clauses = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            let lit = |v: i64| {
                Literal::from_dimacs(v).ok_or(Error::LiteralOutOfRange {
                    literal: v,
                    num_vars,
                })
            };
            clauses.push(Clause2::new(lit(a)?, lit(b)?));
        }
        Cnf2::new(num_vars, clauses, Vec::new())
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Clause2] {
        &self.clauses
    }

    pub fn units(&self) -> &[Literal] {
        &self.units
    }

    /// Drops tautologies and duplicates, turns `u ∨ u` into the unit `u`
    /// and deduplicates units. Unit propagation is not performed.
    pub fn normalize(&self) -> std::result::Result<Cnf2, Contradiction> {
        let mut units: BTreeSet<Literal> = self.units.iter().copied().collect();
        let mut clauses = BTreeSet::new();
        for c in &self.clauses {
            if c.is_tautology() {
                continue;
            }
            if c.first == c.second {
                units.insert(c.first);
            } else {
                clauses.insert(Clause2::new(c.key().0, c.key().1));
            }
        }
        if let Some(u) = units.iter().find(|u| u.is_positive() && units.contains(&u.negate())) {
            return Err(Contradiction { variable: u.var() });
        }
        Ok(Cnf2 {
            num_vars: self.num_vars,
            clauses: clauses.into_iter().collect(),
            units: units.into_iter().collect(),
        })
    }

    pub fn evaluate(&self, a: &Assignment) -> Result<bool> {
        if a.num_vars() != self.num_vars {
            return Err(Error::LengthMismatch {
                expected: self.num_vars,
                got: a.num_vars(),
            });
        }
        Ok(self.clauses.iter().all(|c| c.eval(a)) && self.units.iter().all(|u| u.eval(a)))
    }

    /// DIMACS text with units written as 1-clauses after the 2-clauses.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!(
            "p cnf {} {}\n",
            self.num_vars,
            self.clauses.len() + self.units.len()
        );
        for c in &self.clauses {
            out.push_str(&format!("{} {} 0\n", c.first, c.second));
        }
        for u in &self.units {
            out.push_str(&format!("{u} 0\n"));
        }
        out
    }
}

/// A clause as read from DIMACS, with the line it ended on.
pub(crate) struct RawClause {
    pub line: usize,
    pub literals: Vec<Literal>,
}

/// Tokenizes DIMACS CNF of any clause width.
pub(crate) fn read_dimacs(text: &str) -> Result<(usize, Vec<RawClause>)> {
    let mut num_vars = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            // SATLIB end marker
            break;
        }
        if trimmed.starts_with('p') {
            if num_vars.is_some() {
                return Err(Error::MalformedHeader {
                    line,
                    reason: "duplicate header".into(),
                });
            }
            num_vars = Some(parse_header(trimmed, line)?);
            continue;
        }
        let Some(n) = num_vars else {
            return Err(Error::MissingHeader { line });
        };
        for token in trimmed.split_whitespace() {
            let value: i64 = token.parse().map_err(|_| Error::InvalidToken {
                line,
                token: token.to_string(),
            })?;
            if value == 0 {
                if current.is_empty() {
                    return Err(Error::EmptyClause { line });
                }
                clauses.push(RawClause {
                    line,
                    literals: std::mem::take(&mut current),
                });
                continue;
            }
            if value.unsigned_abs() as usize > n {
                return Err(Error::LiteralOutOfRange {
                    literal: value,
                    num_vars: n,
                });
            }
            current.push(Literal::from_dimacs(value).expect("nonzero"));
        }
    }
    let Some(n) = num_vars else {
        return Err(Error::MalformedHeader {
            line: last_line.max(1),
            reason: "no `p cnf` header".into(),
        });
    };
    if !current.is_empty() {
        clauses.push(RawClause {
            line: last_line,
            literals: current,
        });
    }
    Ok((n, clauses))
}

fn parse_header(line_text: &str, line: usize) -> Result<usize> {
    let fields: Vec<&str> = line_text.split_whitespace().collect();
    let bad = |reason: &str| Error::MalformedHeader {
        line,
        reason: reason.to_string(),
    };
    if fields.len() != 4 || fields[0] != "p" || fields[1] != "cnf" {
        return Err(bad("expected `p cnf <vars> <clauses>`"));
    }
    let n = fields[2].parse::<usize>().map_err(|_| bad("bad variable count"))?;
    fields[3].parse::<usize>().map_err(|_| bad("bad clause count"))?;
    Ok(n)
}

/// Reads a DIMACS CNF whose clauses all have width one or two.
pub fn parse_dimacs(text: &str) -> Result<Cnf2> {
    let (num_vars, raw) = read_dimacs(text)?;
    let mut clauses = Vec::new();
    let mut units = Vec::new();
    for rc in raw {
        match rc.literals[..] {
            [u] => units.push(u),
            [a, b] => clauses.push(Clause2::new(a, b)),
            _ => {
                return Err(Error::ClauseTooWide {
                    line: rc.line,
                    width: rc.literals.len(),
                })
            }
        }
    }
    Cnf2::new(num_vars, clauses, units)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn negation_flips_low_bit() {
        let x3 = Literal::positive(3);
        assert_eq!(x3.index(), 4);
        assert_eq!((!x3).index(), 5);
        assert_eq!(!!x3, x3);
        assert_eq!(Literal::from_dimacs(-3), Some(!x3));
        assert_eq!((!x3).to_dimacs(), -3);
    }

    #[test]
    fn parses_single_two_clause() {
        let f = parse_dimacs("p cnf 2 1\n1 -2 0\n").unwrap();
        assert_eq!(f.num_vars(), 2);
        assert_eq!(
            f.clauses(),
            &[Clause2::new(Literal::positive(1), Literal::negative(2))]
        );
        assert!(f.units().is_empty());
    }

    #[test]
    fn parses_unit_clause() {
        let f = parse_dimacs("p cnf 1 1\n1 0\n").unwrap();
        assert!(f.clauses().is_empty());
        assert_eq!(f.units(), &[Literal::positive(1)]);
    }

    #[test]
    fn parses_fixture_thirty_models() {
        let f = fixtures::thirty_models();
        assert_eq!(f.num_vars(), 9);
        assert_eq!(f.clauses().len(), 15);
        assert_eq!(
            f.clauses()[0],
            Clause2::new(Literal::negative(7), Literal::negative(6))
        );
    }

    #[test]
    fn keeps_unused_declared_variables() {
        let f = parse_dimacs("c hello\np cnf 5 1\n1 2 0\n").unwrap();
        assert_eq!(f.num_vars(), 5);
    }

    #[test]
    fn clauses_may_span_lines() {
        let f = parse_dimacs("p cnf 3 2\n1\n-2 0 2 3\n0\n").unwrap();
        assert_eq!(f.clauses().len(), 2);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            parse_dimacs("p cnf 3 1\n1 2 3 0\n"),
            Err(Error::ClauseTooWide { line: 2, width: 3 })
        ));
        assert!(matches!(
            parse_dimacs("p cnf 2 1\n1 3 0\n"),
            Err(Error::LiteralOutOfRange { literal: 3, .. })
        ));
        assert!(matches!(
            parse_dimacs("p cnf 2 1\n0\n"),
            Err(Error::EmptyClause { line: 2 })
        ));
        assert!(matches!(
            parse_dimacs("p dnf 2 1\n1 2 0\n"),
            Err(Error::MalformedHeader { line: 1, .. })
        ));
        assert!(matches!(
            parse_dimacs("p cnf x 1\n"),
            Err(Error::MalformedHeader { .. })
        ));
        assert!(matches!(
            parse_dimacs("1 2 0\n"),
            Err(Error::MissingHeader { line: 1 })
        ));
        assert!(matches!(
            parse_dimacs("p cnf 2 1\n1 a 0\n"),
            Err(Error::InvalidToken { .. })
        ));
        assert!(matches!(parse_dimacs(""), Err(Error::MalformedHeader { .. })));
    }

    #[test]
    fn normalize_degenerate_clause_becomes_unit() {
        let f = Cnf2::from_pairs(1, &[(1, 1)]).unwrap().normalize().unwrap();
        assert!(f.clauses().is_empty());
        assert_eq!(f.units(), &[Literal::positive(1)]);
    }

    #[test]
    fn normalize_drops_tautologies_and_duplicates() {
        let f = Cnf2::from_pairs(3, &[(1, -1), (2, 3), (3, 2)])
            .unwrap()
            .normalize()
            .unwrap();
        assert_eq!(
            f.clauses(),
            &[Clause2::new(Literal::positive(2), Literal::positive(3))]
        );
    }

    #[test]
    fn normalize_detects_clashing_units() {
        let f = Cnf2::new(1, vec![], vec![Literal::positive(1), Literal::negative(1)]).unwrap();
        assert_eq!(f.normalize(), Err(Contradiction { variable: 1 }));
    }

    #[test]
    fn evaluate_known_assignments() {
        // x3 = x6 = 1, everything else 0
        let a = Assignment::from_bitstring("001001000").unwrap();
        assert!(fixtures::thirty_models().evaluate(&a).unwrap());
        let a = Assignment::from_bitstring("1110110").unwrap();
        assert!(fixtures::four_models().evaluate(&a).unwrap());
    }

    #[test]
    fn evaluate_empty_formula_is_true() {
        let f = Cnf2::new(3, vec![], vec![]).unwrap();
        for bits in 0..8 {
            assert!(f.evaluate(&Assignment::from_bits(3, bits)).unwrap());
        }
    }

    #[test]
    fn evaluate_rejects_length_mismatch() {
        let f = Cnf2::new(3, vec![], vec![]).unwrap();
        assert_eq!(
            f.evaluate(&Assignment::all_false(2)),
            Err(Error::LengthMismatch {
                expected: 3,
                got: 2
            })
        );
    }

    #[test]
    fn evaluate_matches_literal_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let n = rng.random_range(1..=12usize);
            let m = rng.random_range(0..=2 * n);
            let lit = |rng: &mut ChaCha8Rng| {
                Literal::new(rng.random_range(1..=n), rng.random_bool(0.5))
            };
            let clauses = (0..m).map(|_| Clause2::new(lit(&mut rng), lit(&mut rng))).collect();
            let units = (0..rng.random_range(0..3)).map(|_| lit(&mut rng)).collect();
            let f = Cnf2::new(n, clauses, units).unwrap();
            let bits: u64 = rng.random_range(0..1u64 << n);
            let a = Assignment::from_bits(n, bits);
            let truth = |l: Literal| (bits >> (l.var() - 1) & 1 == 1) == l.is_positive();
            let expected = f.clauses().iter().all(|c| truth(c.first) || truth(c.second))
                && f.units().iter().all(|&u| truth(u));
            assert_eq!(f.evaluate(&a).unwrap(), expected);
        }
    }

    fn arb_cnf() -> impl Strategy<Value = Cnf2> {
        (1usize..10).prop_flat_map(|n| {
            let lit = (1..=n, any::<bool>()).prop_map(|(v, p)| Literal::new(v, p));
            (
                proptest::collection::vec((lit.clone(), lit.clone()), 0..20),
                proptest::collection::vec(lit, 0..3),
            )
                .prop_map(move |(pairs, units)| {
                    let clauses = pairs.into_iter().map(|(a, b)| Clause2::new(a, b)).collect();
                    Cnf2::new(n, clauses, units).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn dimacs_round_trip(f in arb_cnf()) {
            let back = parse_dimacs(&f.to_dimacs()).unwrap();
            let mut a: Vec<_> = f.clauses().to_vec();
            let mut b: Vec<_> = back.clauses().to_vec();
            a.sort();
            b.sort();
            prop_assert_eq!(a, b);
            prop_assert_eq!(f.units(), back.units());
            prop_assert_eq!(f.num_vars(), back.num_vars());
        }

        #[test]
        fn normalize_is_idempotent(f in arb_cnf()) {
            if let Ok(once) = f.normalize() {
                prop_assert_eq!(once.normalize().unwrap(), once.clone());
                for c in once.clauses() {
                    prop_assert!(!c.is_tautology());
                    prop_assert!(c.first != c.second);
                }
            }
        }
    }
}
