//! Compressed enumeration: disjoint `{0,1,2}`-cubes over a halfcore whose
//! union is the model set.
//!
//! A halfcore `H` picks one element of every mirror pair of the core, so a
//! bitstring on `H` determines a core bisection. For `c ∈ H` the four
//! conclusion sets record what `c = 1` resp. `c = 0` forces inside `H`.
//! A 2-position `s` is special when everything `s` could force is already
//! in place; such a 2 never needs pinning, and a row whose 2's are all
//! special is output as a cube of `2^#twos` models.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::bitset::ElementSet;
use crate::enumerator::{Instance, Status, TernaryRow, Trit, UnsatReason};
use crate::error::{Error, Result};
use crate::formula::{Assignment, Cnf2, Literal};
use crate::involution_poset::{ElementId, InvolutionPoset, RigidSplit};

/// One element of every `ω`-pair of the core.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halfcore {
    members: ElementSet,
}

impl Halfcore {
    /// Takes the smaller id of every pair.
    pub fn choose(split: &RigidSplit, poset: &InvolutionPoset) -> Halfcore {
        let members = ElementSet::from_ids(
            poset.len(),
            split.core.iter().filter(|&c| c < poset.mirror(c)),
        );
        Halfcore { members }
    }

    /// Validates a caller-supplied halfcore.
    pub fn from_elements(
        split: &RigidSplit,
        poset: &InvolutionPoset,
        members: ElementSet,
    ) -> Result<Halfcore> {
        let hc = Halfcore { members };
        if hc.is_valid(split, poset) {
            Ok(hc)
        } else {
            Err(Error::InvalidParameter(
                "not a halfcore: must pick exactly one element of every core pair".into(),
            ))
        }
    }

    pub fn is_valid(&self, split: &RigidSplit, poset: &InvolutionPoset) -> bool {
        let image = poset.mirror_set(&self.members);
        self.members.is_disjoint(&image) && (&self.members | &image) == split.core
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, c: ElementId) -> bool {
        self.members.contains(c)
    }
}

/// Conclusion sets per halfcore element:
/// `ones_if_one = (c↑ \ c) ∩ H`, `zeros_if_one = ω(c↑) ∩ H`,
/// `zeros_if_zero = (c↓ \ c) ∩ H`, `ones_if_zero = ω(c↓) ∩ H`.
#[derive(Clone, Debug)]
pub struct ConclusionTables {
    halfcore: ElementSet,
    ones_if_one: Vec<ElementSet>,
    zeros_if_one: Vec<ElementSet>,
    zeros_if_zero: Vec<ElementSet>,
    ones_if_zero: Vec<ElementSet>,
    // must be 0 resp. 1 for the element to be special
    need_zeros: Vec<ElementSet>,
    need_ones: Vec<ElementSet>,
}

impl ConclusionTables {
    pub fn build(hc: &Halfcore, poset: &InvolutionPoset) -> ConclusionTables {
        let w = poset.len();
        let hcs = hc.members();
        let empty = ElementSet::new(w);
        let mut t = ConclusionTables {
            halfcore: hcs.clone(),
            ones_if_one: vec![empty.clone(); w],
            zeros_if_one: vec![empty.clone(); w],
            zeros_if_zero: vec![empty.clone(); w],
            ones_if_zero: vec![empty.clone(); w],
            need_zeros: vec![empty.clone(); w],
            need_ones: vec![empty; w],
        };
        for c in hcs {
            let oc = poset.mirror(c);
            let mut c11 = poset.up(c) & hcs;
            c11.remove(c);
            let c10 = poset.down(oc) & hcs;
            let mut c00 = poset.down(c) & hcs;
            c00.remove(c);
            let c01 = poset.up(oc) & hcs;
            t.need_zeros[c] = &c00 | &c10;
            t.need_ones[c] = &c11 | &c01;
            t.ones_if_one[c] = c11;
            t.zeros_if_one[c] = c10;
            t.zeros_if_zero[c] = c00;
            t.ones_if_zero[c] = c01;
        }
        t
    }

    pub fn ones_if_one(&self, c: ElementId) -> &ElementSet {
        &self.ones_if_one[c]
    }

    pub fn zeros_if_one(&self, c: ElementId) -> &ElementSet {
        &self.zeros_if_one[c]
    }

    pub fn zeros_if_zero(&self, c: ElementId) -> &ElementSet {
        &self.zeros_if_zero[c]
    }

    pub fn ones_if_zero(&self, c: ElementId) -> &ElementSet {
        &self.ones_if_zero[c]
    }

    pub fn total_size(&self, c: ElementId) -> usize {
        self.ones_if_one[c].len() + self.zeros_if_one[c].len() + self.zeros_if_zero[c].len() + self.ones_if_zero[c].len()
    }

    pub fn is_totally_isolated(&self, c: ElementId) -> bool {
        self.halfcore.contains(c) && self.total_size(c) == 0
    }

    /// Halfcore elements whose four conclusion sets are empty.
    pub fn totally_isolated(&self) -> ElementSet {
        ElementSet::from_ids(
            self.halfcore.capacity(),
            self.halfcore.iter().filter(|&c| self.total_size(c) == 0),
        )
    }

    #[inline]
    fn is_special(&self, s: ElementId, row: &TernaryRow) -> bool {
        self.need_zeros[s].is_subset(row.zeros()) && self.need_ones[s].is_subset(row.ones())
    }

    /// 2-positions of `row` whose conclusions already hold.
    pub fn special_twos(&self, row: &TernaryRow) -> ElementSet {
        let twos = row.twos();
        ElementSet::from_ids(twos.capacity(), twos.iter().filter(|&s| self.is_special(s, row)))
    }

    /// `special_twos` of a son, given its father's special set which stays
    /// special.
    fn special_twos_from(&self, row: &TernaryRow, inherited: &ElementSet) -> ElementSet {
        let mut sp = inherited.clone();
        for s in &(&row.twos() - inherited) {
            if self.is_special(s, row) {
                sp.insert(s);
            }
        }
        sp
    }
}

pub fn special_twos(row: &TernaryRow, tables: &ConclusionTables) -> ElementSet {
    tables.special_twos(row)
}

/// A final row over the halfcore: all of its 2's are special.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelCube {
    row: TernaryRow,
    weight: BigUint,
}

impl ModelCube {
    fn new(row: TernaryRow) -> ModelCube {
        let weight = BigUint::one() << row.num_twos();
        ModelCube { row, weight }
    }

    pub fn row(&self) -> &TernaryRow {
        &self.row
    }

    pub fn num_twos(&self) -> usize {
        self.row.num_twos()
    }

    /// Number of models, `2^#twos`.
    pub fn weight(&self) -> &BigUint {
        &self.weight
    }

    /// Two cubes are disjoint iff some position is 0 in one and 1 in the other.
    pub fn is_disjoint_from(&self, other: &ModelCube) -> bool {
        !self.row.ones().is_disjoint(other.row.zeros())
            || !self.row.zeros().is_disjoint(other.row.ones())
    }

    /// Per-variable `0`/`1`/`2` characters. Variables sharing a strong
    /// component (or sitting in complementary ones) share one 2.
    pub fn to_variable_string(&self, instance: &Instance) -> String {
        let poset = instance.poset();
        let split = instance.split();
        (1..=instance.num_vars())
            .map(|v| {
                let e = poset.element_of(Literal::positive(v));
                if split.rigid_filter.contains(e) {
                    '1'
                } else if split.rigid_ideal.contains(e) {
                    '0'
                } else if let Some(t) = self.row.value(e) {
                    t.as_char()
                } else {
                    match self.row.value(poset.mirror(e)).expect("halfcore pair") {
                        Trit::Zero => '1',
                        Trit::One => '0',
                        Trit::Two => '2',
                    }
                }
            })
            .collect()
    }

    /// `bits #weight`.
    pub fn to_line(&self, instance: &Instance) -> String {
        format!("{} #{}", self.to_variable_string(instance), self.weight)
    }

    pub fn to_json(&self, instance: &Instance) -> String {
        #[derive(Serialize)]
        struct Line {
            bits: String,
            weight: String,
        }
        serde_json::to_string(&Line {
            bits: self.to_variable_string(instance),
            weight: self.weight.to_string(),
        })
        .expect("serializable")
    }
}

/// Rows of the compressed search carry their special set along.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeRow {
    pub row: TernaryRow,
    pub special_twos: ElementSet,
}

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum CubeStep {
    Split {
        parent: CubeRow,
        at: ElementId,
        one: CubeRow,
        zero: CubeRow,
    },
    Emit(ModelCube),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CubeStats {
    pub cubes: u64,
    pub splits: u64,
    pub total_twos: u64,
    pub peak_stack: usize,
}

/// Which nonspecial 2 gets pinned next.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SplitRule {
    /// First in the fixed split order.
    Static,
    /// Most conclusions still open among the row's 2's; the split order
    /// breaks ties.
    #[default]
    Dynamic,
}

fn rank_of(order: &[ElementId], w: usize) -> Vec<usize> {
    let mut rank = vec![usize::MAX; w];
    for (i, &c) in order.iter().enumerate() {
        rank[c] = i;
    }
    rank
}

/// Lazy stream of disjoint model cubes.
#[derive(Clone, Debug)]
pub struct CubeEnumerator {
    instance: Option<Arc<Instance>>,
    halfcore: Halfcore,
    tables: Option<ConclusionTables>,
    order: Vec<ElementId>,
    rank: Vec<usize>,
    rule: SplitRule,
    stack: Vec<CubeRow>,
    stats: CubeStats,
    status: Status,
}

impl CubeEnumerator {
    /// Uses [`Halfcore::choose`]; the split order sorts by total
    /// conclusion size, largest first.
    pub fn new(instance: Arc<Instance>) -> CubeEnumerator {
        let hc = Halfcore::choose(instance.split(), instance.poset());
        CubeEnumerator::with_halfcore(instance, hc, None)
    }

    /// Explicit halfcore and, optionally, an explicit split priority over
    /// its members. Members missing from `order` come last by id.
    pub fn with_halfcore(
        instance: Arc<Instance>,
        halfcore: Halfcore,
        order: Option<Vec<ElementId>>,
    ) -> CubeEnumerator {
        let w = instance.poset().len();
        let tables = ConclusionTables::build(&halfcore, instance.poset());
        let order = match order {
            Some(mut given) => {
                given.retain(|&c| halfcore.contains(c));
                let rest: Vec<ElementId> = halfcore.members().iter().filter(|c| !given.contains(c)).collect();
                given.extend(rest);
                given
            }
            None => {
                let mut o: Vec<ElementId> = halfcore.members().iter().collect();
                o.sort_by_key(|&c| (std::cmp::Reverse(tables.total_size(c)), c));
                o
            }
        };
        let (stack, status) = match instance.start_row(&[], &[]) {
            Some(row) => {
                let row = row.restrict(halfcore.members());
                let special_twos = tables.special_twos(&row);
                (vec![CubeRow { row, special_twos }], Status::Satisfiable)
            }
            None => (Vec::new(), Status::Unsat(UnsatReason::ConstraintClash)),
        };
        CubeEnumerator {
            stats: CubeStats {
                peak_stack: stack.len(),
                ..CubeStats::default()
            },
            instance: Some(instance),
            halfcore,
            tables: Some(tables),
            rank: rank_of(&order, w),
            order,
            rule: SplitRule::default(),
            stack,
            status,
        }
    }

    fn unsat(reason: UnsatReason, w: usize) -> CubeEnumerator {
        CubeEnumerator {
            instance: None,
            halfcore: Halfcore {
                members: ElementSet::new(w),
            },
            tables: None,
            order: Vec::new(),
            rank: Vec::new(),
            rule: SplitRule::default(),
            stack: Vec::new(),
            stats: CubeStats::default(),
            status: Status::Unsat(reason),
        }
    }

    pub fn with_rule(mut self, rule: SplitRule) -> CubeEnumerator {
        self.rule = rule;
        self
    }

    pub fn rule(&self) -> SplitRule {
        self.rule
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn is_satisfiable(&self) -> bool {
        self.status == Status::Satisfiable
    }

    pub fn instance(&self) -> Option<&Arc<Instance>> {
        self.instance.as_ref()
    }

    pub fn halfcore(&self) -> &Halfcore {
        &self.halfcore
    }

    pub fn tables(&self) -> Option<&ConclusionTables> {
        self.tables.as_ref()
    }

    pub fn stats(&self) -> CubeStats {
        self.stats
    }

    /// Advances by one split or one emitted cube.
    pub fn step(&mut self) -> Option<CubeStep> {
        let parent = self.stack.last()?.clone();
        Some(match self.advance()? {
            Advanced::Emit(cube) => CubeStep::Emit(cube),
            Advanced::Split(at) => {
                let n = self.stack.len();
                CubeStep::Split {
                    parent,
                    at,
                    one: self.stack[n - 1].clone(),
                    zero: self.stack[n - 2].clone(),
                }
            }
        })
    }

    fn choose(&self, top: &CubeRow) -> Option<ElementId> {
        let twos = top.row.twos();
        let free = &twos - &top.special_twos;
        if free.is_empty() {
            return None;
        }
        match self.rule {
            SplitRule::Static => self.order.iter().copied().find(|&c| free.contains(c)),
            SplitRule::Dynamic => {
                let tables = self.tables.as_ref().expect("rows imply tables");
                free.iter().max_by_key(|&c| {
                    (
                        tables.need_zeros[c].intersection_len(&twos) + tables.need_ones[c].intersection_len(&twos),
                        std::cmp::Reverse(self.rank[c]),
                    )
                })
            }
        }
    }

    fn advance(&mut self) -> Option<Advanced> {
        let top = self.stack.pop()?;
        let Some(at) = self.choose(&top) else {
            let cube = ModelCube::new(top.row);
            self.stats.cubes += 1;
            self.stats.total_twos += cube.num_twos() as u64;
            return Some(Advanced::Emit(cube));
        };
        let inst = self.instance.as_ref().expect("rows imply an instance");
        let tables = self.tables.as_ref().expect("rows imply tables");
        let (r1, r0) = top.row.split_unchecked(at, inst.poset());
        let zero = CubeRow {
            special_twos: tables.special_twos_from(&r0, &top.special_twos),
            row: r0,
        };
        let one = CubeRow {
            special_twos: tables.special_twos_from(&r1, &top.special_twos),
            row: r1,
        };
        self.stack.push(zero);
        self.stack.push(one);
        self.stats.splits += 1;
        self.stats.peak_stack = self.stats.peak_stack.max(self.stack.len());
        Some(Advanced::Split(at))
    }
}

enum Advanced {
    Split(ElementId),
    Emit(ModelCube),
}

impl Iterator for CubeEnumerator {
    type Item = ModelCube;

    fn next(&mut self) -> Option<ModelCube> {
        loop {
            if let Advanced::Emit(cube) = self.advance()? {
                return Some(cube);
            }
        }
    }
}

pub fn enumerate_cubes(f: &Cnf2) -> CubeEnumerator {
    match Instance::prepare(f) {
        Ok(inst) => CubeEnumerator::new(Arc::new(inst)),
        Err(reason) => CubeEnumerator::unsat(reason, 2 * f.num_vars()),
    }
}

/// Exact model count with the statistics of the compressed run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountReport {
    pub satisfiable: bool,
    #[serde(serialize_with = "serialize_biguint")]
    pub count: BigUint,
    pub cubes: u64,
    /// Plain mean of the number of 2's per cube.
    pub mean_twos: f64,
    pub poset_size: usize,
    pub largest_component: usize,
    pub rigid_size: usize,
    pub halfcore_size: usize,
    pub isolated_count: usize,
}

fn serialize_biguint<S: serde::Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

/// Sums cube weights; cubes are dropped as soon as they are counted.
pub fn count_models(f: &Cnf2) -> CountReport {
    count_with(enumerate_cubes(f))
}

pub fn count_with(mut cubes: CubeEnumerator) -> CountReport {
    let mut count = BigUint::zero();
    for cube in cubes.by_ref() {
        count += cube.weight();
    }
    let stats = cubes.stats();
    let (poset_size, largest_component, rigid_size) = match cubes.instance() {
        Some(inst) => (
            inst.poset().len(),
            inst.poset().partition().largest_component_size(),
            inst.split().rigid_filter.len() + inst.split().rigid_ideal.len(),
        ),
        None => (0, 0, 0),
    };
    CountReport {
        satisfiable: cubes.is_satisfiable(),
        count,
        cubes: stats.cubes,
        mean_twos: if stats.cubes == 0 {
            0.0
        } else {
            stats.total_twos as f64 / stats.cubes as f64
        },
        poset_size,
        largest_component,
        rigid_size,
        halfcore_size: cubes.halfcore().len(),
        isolated_count: cubes.tables().map_or(0, |t| t.totally_isolated().len()),
    }
}

/// Every model of a cube: each bitstring on the halfcore, extended to the
/// core through `ω` and to the whole poset through the rigid parts.
pub fn expand_cube<'a>(cube: &'a ModelCube, instance: &'a Instance) -> CubeExpansion<'a> {
    CubeExpansion {
        cube,
        instance,
        twos: cube.row.twos().iter().collect(),
        counter: Some(0),
    }
}

pub struct CubeExpansion<'a> {
    cube: &'a ModelCube,
    instance: &'a Instance,
    twos: Vec<ElementId>,
    // bit i of the counter is the value of twos[i]
    counter: Option<u128>,
}

impl Iterator for CubeExpansion<'_> {
    type Item = Assignment;

    fn next(&mut self) -> Option<Assignment> {
        let k = self.counter?;
        assert!(self.twos.len() < 128, "cube too large to expand");
        let poset = self.instance.poset();
        let mut hc_ones = self.cube.row.ones().clone();
        let mut hc_zeros = self.cube.row.zeros().clone();
        for (i, &s) in self.twos.iter().enumerate() {
            if k >> i & 1 == 1 {
                hc_ones.insert(s);
            } else {
                hc_zeros.insert(s);
            }
        }
        let mut ones = &hc_ones | &poset.mirror_set(&hc_zeros);
        ones.union_with(&self.instance.split().rigid_filter);
        let next = k + 1;
        self.counter = (next >> self.twos.len() == 0).then_some(next);
        Some(poset.unpack(&ones))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::harness::brute_force_models;
    use std::collections::BTreeSet;

    fn lit(v: i64) -> Literal {
        Literal::from_dimacs(v).unwrap()
    }

    fn el(inst: &Instance, v: i64) -> ElementId {
        inst.poset().element_of(lit(v))
    }

    fn set(inst: &Instance, vs: &[i64]) -> ElementSet {
        ElementSet::from_ids(inst.poset().len(), vs.iter().map(|&v| el(inst, v)))
    }

    const GIVEN_HALFCORE: [i64; 8] = [1, 2, 4, -5, 6, -7, -8, -9];

    fn thirty_models_with_given_halfcore() -> (Arc<Instance>, Halfcore) {
        let inst = Arc::new(Instance::prepare(&fixtures::thirty_models()).unwrap());
        let hc = Halfcore::from_elements(inst.split(), inst.poset(), set(&inst, &GIVEN_HALFCORE)).unwrap();
        (inst, hc)
    }

    #[test]
    fn default_halfcore_is_valid() {
        let inst = Instance::prepare(&fixtures::thirty_models()).unwrap();
        let hc = Halfcore::choose(inst.split(), inst.poset());
        assert_eq!(hc.len(), 8);
        assert!(hc.is_valid(inst.split(), inst.poset()));
        assert!(Halfcore::from_elements(inst.split(), inst.poset(), set(&inst, &[1, -1])).is_err());
    }

    #[test]
    fn empty_core_gives_empty_halfcore() {
        let inst = Instance::prepare(&Cnf2::from_pairs(2, &[(-1, 2), (-1, -2), (1, 2)]).unwrap()).unwrap();
        let hc = Halfcore::choose(inst.split(), inst.poset());
        assert!(hc.is_empty());
        let cubes: Vec<_> = CubeEnumerator::new(Arc::new(inst)).collect();
        assert_eq!(cubes.len(), 1);
        assert_eq!(cubes[0].num_twos(), 0);
    }

    #[test]
    fn conclusion_rows_for_x7_and_x2() {
        let (inst, hc) = thirty_models_with_given_halfcore();
        let t = ConclusionTables::build(&hc, inst.poset());
        let c = el(&inst, -7);
        assert_eq!(t.zeros_if_zero(c), &set(&inst, &[1, 2, 6]));
        assert_eq!(t.ones_if_zero(c), &set(&inst, &[-8, -9]));
        assert!(t.zeros_if_one(c).is_empty());
        assert!(t.ones_if_one(c).is_empty());
        assert_eq!(t.ones_if_one(el(&inst, 2)), &set(&inst, &[1, 4, -5, 6, -7, -9]));
    }

    #[test]
    fn totally_isolated_elements_have_empty_tables() {
        let inst = Instance::prepare(&Cnf2::from_pairs(3, &[(1, 2)]).unwrap()).unwrap();
        let hc = Halfcore::choose(inst.split(), inst.poset());
        let t = ConclusionTables::build(&hc, inst.poset());
        let x3 = if hc.contains(el(&inst, 3)) { el(&inst, 3) } else { el(&inst, -3) };
        assert!(t.is_totally_isolated(x3));
        assert!(t.zeros_if_zero(x3).is_empty() && t.ones_if_zero(x3).is_empty());
        assert!(t.zeros_if_one(x3).is_empty() && t.ones_if_one(x3).is_empty());
        assert_eq!(t.totally_isolated(), ElementSet::from_ids(inst.poset().len(), [x3]));
    }

    #[test]
    fn specials_after_first_zero_split() {
        let (inst, hc) = thirty_models_with_given_halfcore();
        let t = ConclusionTables::build(&hc, inst.poset());
        let blank = inst.start_row(&[], &[]).unwrap().restrict(hc.members());
        assert_eq!(special_twos(&blank, &t), t.totally_isolated());
        let (_, r2) = blank.split_at(el(&inst, -7), inst.poset()).unwrap();
        for (v, ch) in GIVEN_HALFCORE.iter().zip("00220011".chars()) {
            assert_eq!(r2.value(el(&inst, *v)).unwrap().as_char(), ch, "position {v}");
        }
        let sp = special_twos(&r2, &t);
        assert!(sp.contains(el(&inst, 4)));
        assert!(sp.contains(el(&inst, -5)));
        assert_eq!(sp, r2.twos());
    }

    #[test]
    fn given_split_order_reproduces_first_cube() {
        let (inst, hc) = thirty_models_with_given_halfcore();
        let order: Vec<ElementId> = [-7, 6, -9, 1, 4, -5, 2, -8].iter().map(|&v| el(&inst, v)).collect();
        let cubes: Vec<_> = CubeEnumerator::with_halfcore(inst.clone(), hc, Some(order))
            .with_rule(SplitRule::Static)
            .collect();
        let total: BigUint = cubes.iter().map(|c| c.weight().clone()).sum();
        assert_eq!(total, BigUint::from(30u32));
        let r1 = cubes
            .iter()
            .find(|c| c.to_variable_string(&inst) == "001220100")
            .expect("cube r1 present");
        assert_eq!(r1.weight(), &BigUint::from(4u32));
    }

    #[test]
    fn counts_of_fixtures() {
        let r = count_models(&fixtures::thirty_models());
        assert_eq!(r.count, BigUint::from(30u32));
        assert!(r.satisfiable);
        assert_eq!(r.poset_size, 18);
        assert_eq!(r.halfcore_size, 8);
        assert_eq!(r.rigid_size, 2);
        assert_eq!(count_models(&fixtures::four_models()).count, BigUint::from(4u32));
        let unsat = Cnf2::from_pairs(2, &[(-1, 2), (-2, 1), (-1, -2), (1, 2)]).unwrap();
        let r = count_models(&unsat);
        assert!(!r.satisfiable);
        assert_eq!(r.count, BigUint::zero());
        assert_eq!(r.cubes, 0);
    }

    #[test]
    fn both_split_rules_count_exactly() {
        for seed in 0..150 {
            let f = crate::harness::random_2cnf(12, 6 + seed as usize % 18, seed).unwrap();
            let brute = BigUint::from(brute_force_models(&f).unwrap().len());
            let Ok(inst) = Instance::prepare(&f) else {
                assert_eq!(brute, BigUint::from(0u32));
                continue;
            };
            let inst = Arc::new(inst);
            for rule in [SplitRule::Static, SplitRule::Dynamic] {
                let cubes = CubeEnumerator::new(inst.clone()).with_rule(rule);
                assert_eq!(count_with(cubes).count, brute, "seed {seed} {rule:?}");
            }
        }
    }

    #[test]
    fn expansion_covers_thirty_models() {
        let mut e = enumerate_cubes(&fixtures::thirty_models());
        let inst = e.instance().unwrap().clone();
        let cubes: Vec<_> = e.by_ref().collect();
        let mut all = Vec::new();
        for c in &cubes {
            let models: Vec<_> = expand_cube(c, &inst).collect();
            assert_eq!(BigUint::from(models.len()), *c.weight());
            all.extend(models);
        }
        let set: BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
        assert_eq!(set, brute_force_models(&fixtures::thirty_models()).unwrap().into_iter().collect());
        for (i, a) in cubes.iter().enumerate() {
            for b in &cubes[i + 1..] {
                assert!(a.is_disjoint_from(b));
            }
        }
    }

    #[test]
    fn sixteen_model_cube_expands() {
        // r4 = (2,0,1,2,2,1,0,2,0) over x1..x9, written over the given halfcore
        let (inst, hc) = thirty_models_with_given_halfcore();
        let ones = set(&inst, &[6, -7, -9]);
        let zeros = set(&inst, &[2]);
        let row = TernaryRow::from_parts(hc.members().clone(), ones, zeros);
        let cube = ModelCube::new(row);
        assert_eq!(cube.to_variable_string(&inst), "201221020");
        let models: Vec<_> = expand_cube(&cube, &inst).collect();
        assert_eq!(models.len(), 16);
        for m in &models {
            assert!(!m.value(2) && m.value(3) && m.value(6) && !m.value(7) && !m.value(9));
            assert!(inst.formula().evaluate(m).unwrap());
        }
    }

    #[test]
    fn cube_without_twos_is_one_model() {
        let inst = Instance::prepare(&fixtures::four_models()).unwrap();
        let hc = Halfcore::choose(inst.split(), inst.poset());
        let row = inst.start_row(&[lit(1), lit(2)], &[]).unwrap().restrict(hc.members());
        let cube = ModelCube::new(row);
        assert_eq!(cube.num_twos(), 0);
        assert_eq!(expand_cube(&cube, &inst).count(), 1);
    }

    #[test]
    fn output_formats() {
        let mut e = enumerate_cubes(&fixtures::four_models());
        let inst = e.instance().unwrap().clone();
        let c = e.next().unwrap();
        let line = c.to_line(&inst);
        assert!(line.contains(" #"));
        let v: serde_json::Value = serde_json::from_str(&c.to_json(&inst)).unwrap();
        assert_eq!(v["bits"].as_str().unwrap().len(), 7);
        assert_eq!(v["weight"].as_str().unwrap(), c.weight().to_string());
    }
}
