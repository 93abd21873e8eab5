//! The implication digraph of a 2-CNF and its strong components.

use std::fmt::Write as _;

use crate::formula::{Cnf2, Literal};

pub type ComponentId = usize;

/// Digraph on the `2n` literals. Clause `a ∨ b` contributes `¬a → b` and
/// `¬b → a`. Parallel arcs are kept.
#[derive(Clone, Debug)]
pub struct ImplicationDigraph {
    num_vars: usize,
    adjacency: Vec<Vec<Literal>>,
    num_arcs: usize,
}

impl ImplicationDigraph {
    /// Unit clauses of `f` are ignored; callers route them as constraints.
    pub fn build(f: &Cnf2) -> ImplicationDigraph {
        let mut adjacency = vec![Vec::new(); 2 * f.num_vars()];
        for c in f.clauses() {
            adjacency[c.first.negate().index()].push(c.second);
            adjacency[c.second.negate().index()].push(c.first);
        }
        ImplicationDigraph {
            num_vars: f.num_vars(),
            num_arcs: 2 * f.clauses().len(),
            adjacency,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_vertices(&self) -> usize {
        self.adjacency.len()
    }

    pub fn num_arcs(&self) -> usize {
        self.num_arcs
    }

    pub fn successors(&self, u: Literal) -> &[Literal] {
        &self.adjacency[u.index()]
    }

    pub fn has_arc(&self, u: Literal, v: Literal) -> bool {
        self.successors(u).contains(&v)
    }

    pub fn arcs(&self) -> impl Iterator<Item = (Literal, Literal)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (Literal::from_index(u), v)))
    }

    /// One arc per line as signed DIMACS literals `u v`.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.arcs() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

/// Strong components of an implication digraph. Ids follow completion
/// order of Tarjan's algorithm, which is a reverse topological order: every
/// condensation arc goes from a larger id to a smaller one.
#[derive(Clone, Debug)]
pub struct ComponentPartition {
    num_vars: usize,
    component_of: Vec<ComponentId>,
    members: Vec<Vec<Literal>>,
    condensation: Vec<Vec<ComponentId>>,
}

impl ComponentPartition {
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_components(&self) -> usize {
        self.members.len()
    }

    pub fn component_of(&self, u: Literal) -> ComponentId {
        self.component_of[u.index()]
    }

    /// Members in ascending literal order.
    pub fn members(&self, c: ComponentId) -> &[Literal] {
        &self.members[c]
    }

    /// Deduplicated condensation successors.
    pub fn successors(&self, c: ComponentId) -> &[ComponentId] {
        &self.condensation[c]
    }

    /// The component holding the negations of `c`'s members.
    pub fn mirror(&self, c: ComponentId) -> ComponentId {
        self.component_of(self.members[c][0].negate())
    }

    pub fn largest_component_size(&self) -> usize {
        self.members.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn condensation_arcs(&self) -> impl Iterator<Item = (ComponentId, ComponentId)> + '_ {
        self.condensation
            .iter()
            .enumerate()
            .flat_map(|(c, ds)| ds.iter().map(move |&d| (c, d)))
    }

    /// Condensation arcs as `c d` lines.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (c, d) in self.condensation_arcs() {
            let _ = writeln!(out, "{c} {d}");
        }
        out
    }
}

/// Iterative Tarjan. Linear in vertices plus arcs.
pub fn strong_components(g: &ImplicationDigraph) -> ComponentPartition {
    const UNSEEN: usize = usize::MAX;
    let n = g.num_vertices();
    let mut order = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut component_of = vec![UNSEEN; n];
    let mut on_path: Vec<usize> = Vec::new();
    // (vertex, next successor position)
    let mut frames: Vec<(usize, usize)> = Vec::new();
    let mut members: Vec<Vec<Literal>> = Vec::new();
    let mut timer = 0;

    for root in 0..n {
        if order[root] != UNSEEN {
            continue;
        }
        order[root] = timer;
        low[root] = timer;
        timer += 1;
        on_path.push(root);
        frames.push((root, 0));

        while let Some(&mut (u, ref mut pos)) = frames.last_mut() {
            let succ = &g.adjacency[u];
            if *pos < succ.len() {
                let v = succ[*pos].index();
                *pos += 1;
                if order[v] == UNSEEN {
                    order[v] = timer;
                    low[v] = timer;
                    timer += 1;
                    on_path.push(v);
                    frames.push((v, 0));
                } else if component_of[v] == UNSEEN {
                    low[u] = low[u].min(order[v]);
                }
                continue;
            }
            frames.pop();
            if low[u] == order[u] {
                let id = members.len();
                let mut comp = Vec::new();
                loop {
                    let v = on_path.pop().expect("tarjan path underflow");
                    component_of[v] = id;
                    comp.push(Literal::from_index(v));
                    if v == u {
                        break;
                    }
                }
                comp.sort();
                members.push(comp);
            }
            if let Some(&(parent, _)) = frames.last() {
                low[parent] = low[parent].min(low[u]);
            }
        }
    }

    let mut condensation = vec![Vec::new(); members.len()];
    for (u, v) in g.arcs() {
        let (cu, cv) = (component_of[u.index()], component_of[v.index()]);
        if cu != cv {
            condensation[cu].push(cv);
        }
    }
    for succ in &mut condensation {
        succ.sort_unstable();
        succ.dedup();
    }

    ComponentPartition {
        num_vars: g.num_vars(),
        component_of,
        members,
        condensation,
    }
}

/// Outcome of the component test: satisfiable iff no component holds a
/// literal together with its negation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SatStatus {
    pub satisfiable: bool,
    pub witness_conflict: Option<usize>,
}

pub fn check_satisfiability(p: &ComponentPartition) -> SatStatus {
    let witness = (1..=p.num_vars()).find(|&v| {
        p.component_of(Literal::positive(v)) == p.component_of(Literal::negative(v))
    });
    SatStatus {
        satisfiable: witness.is_none(),
        witness_conflict: witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::formula::Assignment;
    use crate::harness::random_2cnf;
    use std::collections::BTreeSet;

    fn lit(v: i64) -> Literal {
        Literal::from_dimacs(v).unwrap()
    }

    /// Reachability by DFS from every vertex; independent of Tarjan.
    fn reachability(g: &ImplicationDigraph) -> Vec<Vec<bool>> {
        let n = g.num_vertices();
        (0..n)
            .map(|s| {
                let mut seen = vec![false; n];
                let mut stack = vec![s];
                seen[s] = true;
                while let Some(u) = stack.pop() {
                    for v in g.successors(Literal::from_index(u)) {
                        if !seen[v.index()] {
                            seen[v.index()] = true;
                            stack.push(v.index());
                        }
                    }
                }
                seen
            })
            .collect()
    }

    #[test]
    fn clause_yields_two_contrapositive_arcs() {
        let f = Cnf2::from_pairs(3, &[(1, -3)]).unwrap();
        let g = ImplicationDigraph::build(&f);
        assert!(g.has_arc(lit(-1), lit(-3)));
        assert!(g.has_arc(lit(3), lit(1)));
        assert_eq!(g.num_arcs(), 2);
        assert_eq!(g.to_edge_list(), "-1 -3\n3 1\n");
    }

    #[test]
    fn empty_formula_has_isolated_vertices() {
        let f = Cnf2::new(4, vec![], vec![]).unwrap();
        let g = ImplicationDigraph::build(&f);
        assert_eq!(g.num_vertices(), 8);
        assert_eq!(g.arcs().count(), 0);
        let p = strong_components(&g);
        assert_eq!(p.num_components(), 8);
        assert!(check_satisfiability(&p).satisfiable);
    }

    #[test]
    fn four_models_digraph_and_components() {
        let g = ImplicationDigraph::build(&fixtures::four_models());
        assert_eq!(g.num_vertices(), 14);
        assert_eq!(g.arcs().count(), 20);
        let p = strong_components(&g);
        let big: BTreeSet<Vec<Literal>> = (0..p.num_components())
            .map(|c| p.members(c).to_vec())
            .filter(|m| m.len() > 1)
            .collect();
        let mut a = vec![lit(1), lit(3), lit(-4)];
        let mut b = vec![lit(-1), lit(-3), lit(4)];
        a.sort();
        b.sort();
        assert_eq!(big, BTreeSet::from([a, b]));
        assert!(check_satisfiability(&p).satisfiable);
    }

    #[test]
    fn thirty_models_has_eighteen_singletons() {
        let p = strong_components(&ImplicationDigraph::build(&fixtures::thirty_models()));
        assert_eq!(p.num_components(), 18);
        assert_eq!(p.largest_component_size(), 1);
    }

    #[test]
    fn unsat_square_reports_least_variable() {
        let f = Cnf2::from_pairs(2, &[(-1, 2), (-2, 1), (-1, -2), (1, 2)]).unwrap();
        for bits in 0..4 {
            assert!(!f.evaluate(&Assignment::from_bits(2, bits)).unwrap());
        }
        let p = strong_components(&ImplicationDigraph::build(&f));
        assert_eq!(p.num_components(), 1);
        assert_eq!(
            check_satisfiability(&p),
            SatStatus {
                satisfiable: false,
                witness_conflict: Some(1)
            }
        );
    }

    #[test]
    fn random_instances_match_oracles() {
        for seed in 0..500u64 {
            let n = 2 + (seed as usize % 11);
            let t = 1 + (seed as usize * 7) % (2 * n);
            let f = random_2cnf(n, t, seed).unwrap();
            let g = ImplicationDigraph::build(&f);
            // skew symmetry
            for (u, v) in g.arcs() {
                assert!(g.has_arc(v.negate(), u.negate()));
            }
            let p = strong_components(&g);
            let reach = reachability(&g);
            for u in 0..g.num_vertices() {
                for v in 0..g.num_vertices() {
                    let same = p.component_of(Literal::from_index(u))
                        == p.component_of(Literal::from_index(v));
                    assert_eq!(same, reach[u][v] && reach[v][u]);
                }
            }
            for (c, d) in p.condensation_arcs() {
                assert!(c > d, "ids must be reverse topological");
            }
            for c in 0..p.num_components() {
                let mirrored: BTreeSet<Literal> =
                    p.members(c).iter().map(|l| l.negate()).collect();
                let m = p.mirror(c);
                assert_eq!(mirrored, p.members(m).iter().copied().collect());
            }
            let brute = (0..1u64 << n).any(|b| f.evaluate(&Assignment::from_bits(n, b)).unwrap());
            assert_eq!(check_satisfiability(&p).satisfiable, brute, "seed {seed}");
        }
    }
}
