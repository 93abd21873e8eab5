//! The poset of strong components under reachability, with the involution
//! `ω` sending a component to the component of its negated literals.

use std::fmt::Write as _;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::formula::{Assignment, Literal};
use crate::implication_graph::{check_satisfiability, ComponentId, ComponentPartition};

pub type ElementId = ComponentId;

#[derive(Clone, Debug)]
pub struct InvolutionPoset {
    partition: ComponentPartition,
    mirror: Vec<ElementId>,
    up: Vec<ElementSet>,
    down: Vec<ElementSet>,
}

impl InvolutionPoset {
    /// Materializes `c↑` and `c↓` for every component as bitsets. Fails if
    /// some component contains complementary literals.
    pub fn build(partition: ComponentPartition) -> Result<InvolutionPoset> {
        if let Some(variable) = check_satisfiability(&partition).witness_conflict {
            return Err(Error::Unsatisfiable { variable });
        }
        let w = partition.num_components();
        let mirror: Vec<ElementId> = (0..w).map(|c| partition.mirror(c)).collect();

        // successors carry smaller ids, so one ascending pass closes `up`
        let mut up: Vec<ElementSet> = Vec::with_capacity(w);
        let mut preds: Vec<Vec<ElementId>> = vec![Vec::new(); w];
        for c in 0..w {
            let mut set = ElementSet::new(w);
            set.insert(c);
            for &d in partition.successors(c) {
                set.union_with(&up[d]);
                preds[d].push(c);
            }
            up.push(set);
        }
        let mut down: Vec<ElementSet> = vec![ElementSet::new(w); w];
        for c in (0..w).rev() {
            let mut set = ElementSet::new(w);
            set.insert(c);
            for &p in &preds[c] {
                set.union_with(&down[p]);
            }
            down[c] = set;
        }

        Ok(InvolutionPoset {
            partition,
            mirror,
            up,
            down,
        })
    }

    /// Number of elements `w`.
    pub fn len(&self) -> usize {
        self.mirror.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mirror.is_empty()
    }

    pub fn partition(&self) -> &ComponentPartition {
        &self.partition
    }

    pub fn num_vars(&self) -> usize {
        self.partition.num_vars()
    }

    pub fn mirror(&self, c: ElementId) -> ElementId {
        self.mirror[c]
    }

    pub fn mirror_set(&self, set: &ElementSet) -> ElementSet {
        ElementSet::from_ids(self.len(), set.iter().map(|c| self.mirror[c]))
    }

    pub fn leq(&self, c: ElementId, d: ElementId) -> bool {
        self.up[c].contains(d)
    }

    pub fn element_of(&self, u: Literal) -> ElementId {
        self.partition.component_of(u)
    }

    pub fn members(&self, c: ElementId) -> &[Literal] {
        self.partition.members(c)
    }

    /// `c↑`, including `c`.
    #[inline]
    pub fn up(&self, c: ElementId) -> &ElementSet {
        &self.up[c]
    }

    /// `c↓`, including `c`.
    #[inline]
    pub fn down(&self, c: ElementId) -> &ElementSet {
        &self.down[c]
    }

    pub fn up_set(&self, c: ElementId) -> Result<&ElementSet> {
        self.up.get(c).ok_or(Error::UnknownElement(c))
    }

    pub fn down_set(&self, c: ElementId) -> Result<&ElementSet> {
        self.down.get(c).ok_or(Error::UnknownElement(c))
    }

    /// Whether `set` is upward closed within `within`.
    pub fn is_filter_in(&self, set: &ElementSet, within: &ElementSet) -> bool {
        set.iter().all(|c| (&self.up[c] & within).is_subset(set))
    }

    /// Whether `set` is downward closed within `within`.
    pub fn is_ideal_in(&self, set: &ElementSet, within: &ElementSet) -> bool {
        set.iter().all(|c| (&self.down[c] & within).is_subset(set))
    }

    pub fn is_filter(&self, set: &ElementSet) -> bool {
        set.iter().all(|c| self.up[c].is_subset(set))
    }

    pub fn is_ideal(&self, set: &ElementSet) -> bool {
        set.iter().all(|c| self.down[c].is_subset(set))
    }

    /// Low elements (`c < ω(c)`) form the rigid ideal, their images the
    /// rigid filter, and the rest the core.
    pub fn rigid_split(&self) -> RigidSplit {
        let w = self.len();
        let mut rigid_ideal = ElementSet::new(w);
        for c in 0..w {
            if self.up[c].contains(self.mirror[c]) {
                rigid_ideal.insert(c);
            }
        }
        let rigid_filter = self.mirror_set(&rigid_ideal);
        let mut core = ElementSet::full(w);
        core.difference_with(&rigid_ideal);
        core.difference_with(&rigid_filter);

        for c in &core {
            // no d, ω(d) in the core lie both below c, nor both above it;
            // ω(c↓) = ω(c)↑ and the core is ω-closed
            let oc = self.mirror[c];
            let below = &(&self.down[c] & &self.up[oc]) & &core;
            let above = &(&self.up[c] & &self.down[oc]) & &core;
            assert!(
                below.is_empty() && above.is_empty(),
                "core configuration violated at element {c}"
            );
        }

        RigidSplit {
            rigid_filter,
            rigid_ideal,
            core,
        }
    }

    /// One bisection by shelling, always taking the maximal element of
    /// least id.
    pub fn shell_one_bisection(&self) -> Bisection {
        self.shell_with_priority(&[])
    }

    /// Shelling that prefers the first currently-maximal element of
    /// `priority`, falling back to the least maximal id.
    pub fn shell_with_priority(&self, priority: &[ElementId]) -> Bisection {
        let w = self.len();
        let mut remaining = ElementSet::full(w);
        let mut filter_part = ElementSet::new(w);
        let mut ideal_part = ElementSet::new(w);
        let is_maximal = |c: ElementId, rem: &ElementSet| self.up[c].intersection_len(rem) == 1;
        while let Some(lowest) = remaining.first() {
            let c = priority
                .iter()
                .copied()
                .find(|&c| remaining.contains(c) && is_maximal(c, &remaining))
                .unwrap_or(lowest);
            debug_assert!(is_maximal(c, &remaining));
            let oc = self.mirror[c];
            debug_assert!(remaining.contains(oc));
            filter_part.insert(c);
            ideal_part.insert(oc);
            remaining.remove(c);
            remaining.remove(oc);
        }
        Bisection {
            filter_part,
            ideal_part,
        }
    }

    /// Model encoded by the set of elements valued 1.
    pub fn unpack(&self, ones: &ElementSet) -> Assignment {
        let values = (1..=self.num_vars())
            .map(|v| ones.contains(self.element_of(Literal::positive(v))))
            .collect();
        Assignment::new(values)
    }

    /// Cover pairs `c ⋖ d` of the order.
    pub fn cover_relation(&self) -> Vec<(ElementId, ElementId)> {
        let w = self.len();
        let mut out = Vec::new();
        for c in 0..w {
            let mut strict = self.up[c].clone();
            strict.remove(c);
            let mut covers = strict.clone();
            for e in &strict {
                let mut above_e = self.up[e].clone();
                above_e.remove(e);
                covers.difference_with(&above_e);
            }
            out.extend(covers.iter().map(|d| (c, d)));
        }
        out
    }

    /// Component members, then one `c d` line per cover pair.
    pub fn to_hasse_text(&self) -> String {
        let mut out = String::new();
        for c in 0..self.len() {
            let _ = writeln!(out, "c {c} = {}", self.label(c));
        }
        for (c, d) in self.cover_relation() {
            let _ = writeln!(out, "{c} {d}");
        }
        out
    }

    /// `c ω(c)` per line.
    pub fn mirror_listing(&self) -> String {
        let mut out = String::new();
        for c in 0..self.len() {
            let _ = writeln!(out, "{c} {}", self.mirror[c]);
        }
        out
    }

    /// Members as a brace list of DIMACS literals.
    pub fn label(&self, c: ElementId) -> String {
        let parts: Vec<String> = self.members(c).iter().map(|l| l.to_string()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// The rigid filter, the rigid ideal, and the core in between.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidSplit {
    pub rigid_filter: ElementSet,
    pub rigid_ideal: ElementSet,
    pub core: ElementSet,
}

impl RigidSplit {
    pub fn core_size(&self) -> usize {
        self.core.len()
    }
}

/// A filter/ideal partition `(X, Y)` with `ω(X) = Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bisection {
    pub filter_part: ElementSet,
    pub ideal_part: ElementSet,
}

impl Bisection {
    pub fn is_valid(&self, poset: &InvolutionPoset) -> bool {
        let w = poset.len();
        self.filter_part.is_disjoint(&self.ideal_part)
            && (&self.filter_part | &self.ideal_part) == ElementSet::full(w)
            && poset.is_filter(&self.filter_part)
            && poset.is_ideal(&self.ideal_part)
            && poset.mirror_set(&self.filter_part) == self.ideal_part
    }
}
