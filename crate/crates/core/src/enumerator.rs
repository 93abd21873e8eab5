//! Working-stack enumeration of all models of a 2-CNF.
//!
//! Rows are `{0,1,2}`-vectors over a set of poset positions (the core, or a
//! subset of it). The top row of a LIFO stack is either final (no 2 left)
//! or is split at a 2-position `c` into a son with `c↑ = 1, ω(c↑) = 0` and
//! a son with `c↓ = 0, ω(c↓) = 1`. Every son still contains a model, so the
//! tree has exactly one leaf per model and one fewer inner node.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::formula::{Assignment, Cnf2, Literal};
use crate::implication_graph::{strong_components, ImplicationDigraph};
use crate::involution_poset::{ElementId, InvolutionPoset, RigidSplit};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Trit {
    Zero,
    One,
    Two,
}

impl Trit {
    pub fn as_char(self) -> char {
        match self {
            Trit::Zero => '0',
            Trit::One => '1',
            Trit::Two => '2',
        }
    }
}

/// A ternary row. `ones` and `zeros` are disjoint subsets of `positions`;
/// the remaining positions hold the don't-care symbol.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TernaryRow {
    positions: ElementSet,
    ones: ElementSet,
    zeros: ElementSet,
}

impl TernaryRow {
    /// All-2 row over `positions`.
    pub fn blank(positions: ElementSet) -> TernaryRow {
        let w = positions.capacity();
        TernaryRow {
            positions,
            ones: ElementSet::new(w),
            zeros: ElementSet::new(w),
        }
    }

    pub fn from_parts(positions: ElementSet, ones: ElementSet, zeros: ElementSet) -> TernaryRow {
        debug_assert!(ones.is_subset(&positions) && zeros.is_subset(&positions));
        debug_assert!(ones.is_disjoint(&zeros));
        TernaryRow {
            positions,
            ones,
            zeros,
        }
    }

    pub fn positions(&self) -> &ElementSet {
        &self.positions
    }

    pub fn ones(&self) -> &ElementSet {
        &self.ones
    }

    pub fn zeros(&self) -> &ElementSet {
        &self.zeros
    }

    pub fn twos(&self) -> ElementSet {
        let mut t = self.positions.clone();
        t.difference_with(&self.ones);
        t.difference_with(&self.zeros);
        t
    }

    pub fn num_twos(&self) -> usize {
        self.positions.len() - self.ones.len() - self.zeros.len()
    }

    pub fn is_final(&self) -> bool {
        self.num_twos() == 0
    }

    pub fn value(&self, c: ElementId) -> Option<Trit> {
        if !self.positions.contains(c) {
            None
        } else if self.ones.contains(c) {
            Some(Trit::One)
        } else if self.zeros.contains(c) {
            Some(Trit::Zero)
        } else {
            Some(Trit::Two)
        }
    }

    /// The same row seen only on `positions ∩ keep`.
    pub fn restrict(&self, keep: &ElementSet) -> TernaryRow {
        TernaryRow {
            positions: &self.positions & keep,
            ones: &self.ones & keep,
            zeros: &self.zeros & keep,
        }
    }

    /// Pins the 2 at `c`. The first son sets `c↑` to 1 and `ω(c↑)` to 0, the
    /// second sets `c↓` to 0 and `ω(c↓)` to 1, both restricted to the row's
    /// positions.
    pub fn split_at(&self, c: ElementId, poset: &InvolutionPoset) -> Result<(TernaryRow, TernaryRow)> {
        if self.value(c) != Some(Trit::Two) {
            return Err(Error::NotATwo(c));
        }
        Ok(self.split_unchecked(c, poset))
    }

    pub(crate) fn split_unchecked(&self, c: ElementId, poset: &InvolutionPoset) -> (TernaryRow, TernaryRow) {
        let oc = poset.mirror(c);
        let mut one = self.clone();
        one.ones.union_with(&(poset.up(c) & &self.positions));
        // ω(c↑) = ω(c)↓
        one.zeros.union_with(&(poset.down(oc) & &self.positions));
        let mut zero = self.clone();
        zero.zeros.union_with(&(poset.down(c) & &self.positions));
        zero.ones.union_with(&(poset.up(oc) & &self.positions));
        (one, zero)
    }

    /// Filter/ideal/mirror/disjointness invariants relative to the row's
    /// own positions.
    pub fn is_consistent(&self, poset: &InvolutionPoset) -> bool {
        let p = &self.positions;
        self.ones.is_disjoint(&self.zeros)
            && self.ones.is_subset(p)
            && self.zeros.is_subset(p)
            && poset.is_filter_in(&self.ones, p)
            && poset.is_ideal_in(&self.zeros, p)
            && (&poset.mirror_set(&self.ones) & p).is_subset(&self.zeros)
            && (&poset.mirror_set(&self.zeros) & p).is_subset(&self.ones)
    }

    /// Characters in ascending position order.
    pub fn to_trit_string(&self) -> String {
        self.positions
            .iter()
            .map(|c| self.value(c).expect("position").as_char())
            .collect()
    }
}

/// Saturated start row over the core: `S` set to 1, `T` set to 0, closed
/// under the splitting rules. `None` signals a clash, i.e. no model.
///
/// Elements of the rigid filter are already 1 and of the rigid ideal
/// already 0; demanding the opposite is a clash.
pub fn initial_row(
    split: &RigidSplit,
    poset: &InvolutionPoset,
    force_true: &ElementSet,
    force_false: &ElementSet,
) -> Option<TernaryRow> {
    if !force_true.is_disjoint(&split.rigid_ideal) || !force_false.is_disjoint(&split.rigid_filter) {
        return None;
    }
    let core = &split.core;
    let mut ones = ElementSet::new(poset.len());
    for s in &(force_true & core) {
        ones.union_with(poset.up(s));
    }
    for t in &(force_false & core) {
        ones.union_with(poset.up(poset.mirror(t)));
    }
    ones.intersect_with(core);
    let zeros = poset.mirror_set(&ones);
    if !ones.is_disjoint(&zeros) {
        return None;
    }
    Some(TernaryRow::from_parts(core.clone(), ones, zeros))
}

/// Why an instance has no (constrained) model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnsatReason {
    /// Two unit clauses demand opposite values of this variable.
    ClashingUnits { variable: usize },
    /// The literal and its negation share a strong component.
    ComplementaryComponent { variable: usize },
    /// Units or explicit constraints contradict the forced values.
    ConstraintClash,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Satisfiable,
    Unsat(UnsatReason),
}

/// A normalized satisfiable 2-CNF with its poset and rigid split.
#[derive(Clone, Debug)]
pub struct Instance {
    formula: Cnf2,
    poset: InvolutionPoset,
    split: RigidSplit,
}

impl Instance {
    /// Normalizes, builds the implication digraph and the involution poset.
    pub fn prepare(f: &Cnf2) -> std::result::Result<Instance, UnsatReason> {
        let formula = f
            .normalize()
            .map_err(|c| UnsatReason::ClashingUnits { variable: c.variable })?;
        let partition = strong_components(&ImplicationDigraph::build(&formula));
        let poset = InvolutionPoset::build(partition).map_err(|e| match e {
            Error::Unsatisfiable { variable } => UnsatReason::ComplementaryComponent { variable },
            other => unreachable!("poset construction failed: {other}"),
        })?;
        let split = poset.rigid_split();
        Ok(Instance {
            formula,
            poset,
            split,
        })
    }

    pub fn formula(&self) -> &Cnf2 {
        &self.formula
    }

    pub fn num_vars(&self) -> usize {
        self.formula.num_vars()
    }

    pub fn poset(&self) -> &InvolutionPoset {
        &self.poset
    }

    pub fn split(&self) -> &RigidSplit {
        &self.split
    }

    fn elements(&self, lits: impl IntoIterator<Item = Literal>) -> ElementSet {
        ElementSet::from_ids(self.poset.len(), lits.into_iter().map(|l| self.poset.element_of(l)))
    }

    /// Start row with the formula's units and the given literals forced.
    pub fn start_row(&self, true_lits: &[Literal], false_lits: &[Literal]) -> Option<TernaryRow> {
        let s = self.elements(self.formula.units().iter().chain(true_lits).copied());
        let t = self.elements(false_lits.iter().copied());
        initial_row(&self.split, &self.poset, &s, &t)
    }

    /// Model encoded by a final core row.
    pub fn model_of(&self, row: &TernaryRow) -> Assignment {
        debug_assert!(row.is_final());
        let ones = row.ones() | &self.split.rigid_filter;
        self.poset.unpack(&ones)
    }
}

/// Counters of the search tree.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TreeStats {
    pub splits: u64,
    pub final_rows: u64,
    pub peak_stack: usize,
}

/// One unit of work of the row engine.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Step {
    Split {
        parent: TernaryRow,
        at: ElementId,
        one: TernaryRow,
        zero: TernaryRow,
    },
    Final(TernaryRow),
}

/// Picks the 2 whose up- and down-set cover the most remaining 2's.
fn choose_branch(poset: &InvolutionPoset, twos: &ElementSet) -> Option<ElementId> {
    let mut best: Option<(usize, ElementId)> = None;
    for c in twos {
        let score = poset.up(c).intersection_len(twos) + poset.down(c).intersection_len(twos);
        if best.is_none_or(|(s, _)| score > s) {
            best = Some((score, c));
        }
    }
    best.map(|(_, c)| c)
}

#[derive(Clone, Debug)]
struct RowEngine {
    instance: Option<Arc<Instance>>,
    stack: Vec<TernaryRow>,
    stats: TreeStats,
}

impl RowEngine {
    fn new(instance: Option<Arc<Instance>>, start: Option<TernaryRow>) -> RowEngine {
        let stack: Vec<TernaryRow> = start.into_iter().collect();
        RowEngine {
            instance,
            stats: TreeStats {
                peak_stack: stack.len(),
                ..TreeStats::default()
            },
            stack,
        }
    }

    fn step(&mut self) -> Option<Step> {
        let row = self.stack.pop()?;
        let poset = self.instance.as_ref().expect("rows imply an instance").poset();
        let twos = row.twos();
        match choose_branch(poset, &twos) {
            None => {
                self.stats.final_rows += 1;
                Some(Step::Final(row))
            }
            Some(c) => {
                let (one, zero) = row.split_unchecked(c, poset);
                self.stack.push(zero.clone());
                self.stack.push(one.clone());
                self.stats.splits += 1;
                self.stats.peak_stack = self.stats.peak_stack.max(self.stack.len());
                Some(Step::Split {
                    parent: row,
                    at: c,
                    one,
                    zero,
                })
            }
        }
    }

    fn next_final(&mut self) -> Option<TernaryRow> {
        loop {
            match self.step()? {
                Step::Final(row) => return Some(row),
                Step::Split { .. } => {}
            }
        }
    }
}

/// Lazy stream of all models. The status is decided before the first model.
#[derive(Clone, Debug)]
pub struct ModelEnumerator {
    engine: RowEngine,
    status: Status,
}

impl ModelEnumerator {
    pub fn new(instance: Arc<Instance>, start: Option<TernaryRow>) -> ModelEnumerator {
        let status = if start.is_some() {
            Status::Satisfiable
        } else {
            Status::Unsat(UnsatReason::ConstraintClash)
        };
        ModelEnumerator {
            engine: RowEngine::new(Some(instance), start),
            status,
        }
    }

    fn unsat(reason: UnsatReason) -> ModelEnumerator {
        ModelEnumerator {
            engine: RowEngine::new(None, None),
            status: Status::Unsat(reason),
        }
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn is_satisfiable(&self) -> bool {
        self.status == Status::Satisfiable
    }

    pub fn instance(&self) -> Option<&Arc<Instance>> {
        self.engine.instance.as_ref()
    }

    pub fn stats(&self) -> TreeStats {
        self.engine.stats
    }

    /// Advances by one split or one final row.
    pub fn step(&mut self) -> Option<Step> {
        self.engine.step()
    }
}

impl Iterator for ModelEnumerator {
    type Item = Assignment;

    fn next(&mut self) -> Option<Assignment> {
        let row = self.engine.next_final()?;
        Some(self.engine.instance.as_ref()?.model_of(&row))
    }
}

/// All models of `f`, units included.
pub fn enumerate_models(f: &Cnf2) -> ModelEnumerator {
    match Instance::prepare(f) {
        Ok(inst) => {
            let start = inst.start_row(&[], &[]);
            ModelEnumerator::new(Arc::new(inst), start)
        }
        Err(reason) => ModelEnumerator::unsat(reason),
    }
}

fn check_disjoint_vars(true_lits: &[Literal], false_lits: &[Literal]) -> Result<()> {
    let vars: BTreeSet<usize> = true_lits.iter().map(|l| l.var()).collect();
    match false_lits.iter().find(|l| vars.contains(&l.var())) {
        Some(l) => Err(Error::OverlappingConstraints { variable: l.var() }),
        None => Ok(()),
    }
}

fn check_range(f: &Cnf2, lits: &[Literal]) -> Result<()> {
    match lits.iter().find(|l| l.var() > f.num_vars()) {
        Some(l) => Err(Error::LiteralOutOfRange {
            literal: l.to_dimacs(),
            num_vars: f.num_vars(),
        }),
        None => Ok(()),
    }
}

/// Models with every literal of `true_lits` true and every literal of
/// `false_lits` false. The two lists must mention disjoint variables.
pub fn enumerate_constrained(
    f: &Cnf2,
    true_lits: &[Literal],
    false_lits: &[Literal],
) -> Result<ModelEnumerator> {
    check_range(f, true_lits)?;
    check_range(f, false_lits)?;
    check_disjoint_vars(true_lits, false_lits)?;
    Ok(match Instance::prepare(f) {
        Ok(inst) => {
            let start = inst.start_row(true_lits, false_lits);
            ModelEnumerator::new(Arc::new(inst), start)
        }
        Err(reason) => ModelEnumerator::unsat(reason),
    })
}

/// Restriction of a model to a chosen literal set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialModel {
    pub literals: Vec<Literal>,
    pub values: Vec<bool>,
}

impl PartialModel {
    pub fn get(&self, u: Literal) -> Option<bool> {
        self.literals.iter().position(|&l| l == u).map(|i| self.values[i])
    }

    /// `lit=value` pairs, DIMACS-signed.
    pub fn to_text(&self) -> String {
        self.literals
            .iter()
            .zip(&self.values)
            .map(|(l, &v)| format!("{}={}", l, u8::from(v)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Stream of distinct restrictions of models to a literal set. Only the
/// core positions of the chosen literals are ever pinned.
#[derive(Clone, Debug)]
pub struct PartialEnumerator {
    engine: RowEngine,
    literals: Vec<Literal>,
    status: Status,
}

impl PartialEnumerator {
    pub fn status(&self) -> Status {
        self.status
    }

    pub fn is_satisfiable(&self) -> bool {
        self.status == Status::Satisfiable
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn stats(&self) -> TreeStats {
        self.engine.stats
    }
}

impl Iterator for PartialEnumerator {
    type Item = PartialModel;

    fn next(&mut self) -> Option<PartialModel> {
        let row = self.engine.next_final()?;
        let inst = self.engine.instance.as_ref()?;
        let split = inst.split();
        let values = self
            .literals
            .iter()
            .map(|&l| {
                let e = inst.poset().element_of(l);
                split.rigid_filter.contains(e) || row.ones().contains(e)
            })
            .collect();
        Some(PartialModel {
            literals: self.literals.clone(),
            values,
        })
    }
}

/// Partial models over `vstar` (deduplicated, sorted).
pub fn enumerate_partial(f: &Cnf2, vstar: &[Literal]) -> Result<PartialEnumerator> {
    if vstar.is_empty() {
        return Err(Error::InvalidParameter("literal set must be nonempty".into()));
    }
    check_range(f, vstar)?;
    let literals: Vec<Literal> = vstar.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let (engine, status) = match Instance::prepare(f) {
        Ok(inst) => {
            let chosen = inst.elements(literals.iter().copied());
            match inst.start_row(&[], &[]) {
                Some(row) => {
                    let start = row.restrict(&chosen);
                    (RowEngine::new(Some(Arc::new(inst)), Some(start)), Status::Satisfiable)
                }
                None => (
                    RowEngine::new(None, None),
                    Status::Unsat(UnsatReason::ConstraintClash),
                ),
            }
        }
        Err(reason) => (RowEngine::new(None, None), Status::Unsat(reason)),
    };
    Ok(PartialEnumerator {
        engine,
        literals,
        status,
    })
}
