//! Orderability via dominance digraphs.
//!
//! For a pair `(x, y)` the vertices are the pair restrictions that yield
//! `x P y` somewhere (the set `P+`). Whenever one vertex yields `x P y` and
//! another does not within the same context, the first must sit strictly
//! above the second in any admissible ordering, giving an arc. A total
//! preorder meeting all arcs exists iff the digraph is acyclic.

use std::collections::BTreeMap;

use crate::ccr::Ccr;
use crate::error::Result;
use crate::profiles::PairRestriction;

use super::{find_cycle, Axiom, AxiomReport, EvaluatedSpace, Witness};

/// One profile of a context group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContextMember {
    /// Index into [`PairAnalysis::vertices`].
    pub vertex: usize,
    /// Whether the rule outputs `x P y` on this profile.
    pub yields: bool,
    /// Index of the profile in the evaluated space.
    pub profile: usize,
}

/// The `P+` members of one context. Only contexts where some members yield
/// and others do not are kept, since the rest constrain nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextGroup {
    pub members: Vec<ContextMember>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairAnalysis {
    pub x: usize,
    pub y: usize,
    /// `P+`, in order of first appearance in the space.
    pub vertices: Vec<PairRestriction>,
    pub contexts: Vec<ContextGroup>,
}

impl PairAnalysis {
    /// Whether `rank` (one value per vertex, lower is weaker) satisfies the
    /// orderability condition on every context.
    pub fn respects(&self, rank: &[usize]) -> bool {
        self.contexts.iter().all(|g| {
            g.members
                .iter()
                .all(|a| !a.yields || g.members.iter().all(|b| b.yields || rank[b.vertex] < rank[a.vertex]))
        })
    }
}

pub fn analyze_pair(space: &EvaluatedSpace, x: usize, y: usize) -> PairAnalysis {
    let restriction = space.restriction_ids(x, y);
    let context = space.context_ids(x, y);
    let yields: Vec<bool> = space.outputs().iter().map(|r| r.strictly(x, y)).collect();

    let mut vertex_of: Vec<Option<usize>> = Vec::new();
    let mut vertices = Vec::new();
    for i in 0..space.len() {
        let id = restriction[i];
        if id >= vertex_of.len() {
            vertex_of.resize(id + 1, None);
        }
        if yields[i] && vertex_of[id].is_none() {
            vertex_of[id] = Some(vertices.len());
            vertices.push(space.profile(i).restrict(x, y).expect("valid pair"));
        }
    }

    let mut groups: BTreeMap<usize, Vec<ContextMember>> = BTreeMap::new();
    for i in 0..space.len() {
        if let Some(vertex) = vertex_of.get(restriction[i]).copied().flatten() {
            groups.entry(context[i]).or_default().push(ContextMember {
                vertex,
                yields: yields[i],
                profile: i,
            });
        }
    }
    let contexts = groups
        .into_values()
        .filter(|m| m.iter().any(|c| c.yields) && m.iter().any(|c| !c.yields))
        .map(|members| ContextGroup { members })
        .collect();
    PairAnalysis {
        x,
        y,
        vertices,
        contexts,
    }
}

/// Arc `from -> to`: `from` must rank strictly above `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DominanceArc {
    pub from: usize,
    pub to: usize,
    /// First context found forcing the arc: a profile where `from` yields
    /// and one where `to` does not.
    pub winner_profile: usize,
    pub loser_profile: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominanceDigraph {
    pub vertex_count: usize,
    pub arcs: Vec<DominanceArc>,
}

impl DominanceDigraph {
    pub fn arc(&self, from: usize, to: usize) -> Option<&DominanceArc> {
        self.arcs.iter().find(|a| a.from == from && a.to == to)
    }

    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        let mut adj = vec![false; self.vertex_count * self.vertex_count];
        for a in &self.arcs {
            adj[a.from * self.vertex_count + a.to] = true;
        }
        find_cycle(self.vertex_count, |a, b| adj[a * self.vertex_count + b])
    }

    /// Vertices from weakest to strongest, or `None` if there is a cycle.
    pub fn weakest_first(&self) -> Option<Vec<usize>> {
        let n = self.vertex_count;
        let mut indegree = vec![0usize; n];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for a in &self.arcs {
            indegree[a.from] += 1;
            out[a.to].push(a.from);
        }
        // repeatedly take the smallest vertex that dominates nothing left
        let mut ready: std::collections::BTreeSet<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for &w in &out[v] {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    ready.insert(w);
                }
            }
        }
        (order.len() == n).then_some(order)
    }
}

pub fn dominance_digraph(analysis: &PairAnalysis) -> DominanceDigraph {
    let mut arcs: BTreeMap<(usize, usize), DominanceArc> = BTreeMap::new();
    for g in &analysis.contexts {
        for a in g.members.iter().filter(|m| m.yields) {
            for b in g.members.iter().filter(|m| !m.yields) {
                arcs.entry((a.vertex, b.vertex)).or_insert(DominanceArc {
                    from: a.vertex,
                    to: b.vertex,
                    winner_profile: a.profile,
                    loser_profile: b.profile,
                });
            }
        }
    }
    DominanceDigraph {
        vertex_count: analysis.vertices.len(),
        arcs: arcs.into_values().collect(),
    }
}

/// Admissible ordering of `P+(x, y)`, weakest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairOrdering {
    pub x: usize,
    pub y: usize,
    pub order: Vec<PairRestriction>,
}

#[derive(Debug, Clone)]
pub struct OrderabilityReport {
    pub report: AxiomReport,
    /// One entry per ordered pair whose digraph is acyclic.
    pub orderings: Vec<PairOrdering>,
}

/// Decides orderability on the space. A failure witness lists, for each arc
/// of a dominance cycle, the winning profile followed by the losing one.
pub fn check_orderability(space: &EvaluatedSpace) -> OrderabilityReport {
    let mut orderings = Vec::new();
    let mut witness = None;
    for (x, y) in space.ordered_pairs() {
        let analysis = analyze_pair(space, x, y);
        let digraph = dominance_digraph(&analysis);
        match digraph.weakest_first() {
            Some(order) => orderings.push(PairOrdering {
                x,
                y,
                order: order.into_iter().map(|v| analysis.vertices[v].clone()).collect(),
            }),
            None if witness.is_none() => {
                let cycle = digraph.find_cycle().expect("not topologically sortable");
                let mut profiles = Vec::new();
                for i in 0..cycle.len() {
                    let arc = digraph.arc(cycle[i], cycle[(i + 1) % cycle.len()]).expect("cycle arc");
                    profiles.push(space.profile(arc.winner_profile).clone());
                    profiles.push(space.profile(arc.loser_profile).clone());
                }
                let mut w = Witness::new(profiles, vec![x, y]);
                let names: Vec<String> = cycle.iter().map(|&v| analysis.vertices[v].digest()).collect();
                w.detail = Some(format!("dominance cycle {} -> {}", names.join(" -> "), names[0]));
                witness = Some(w);
            }
            None => {}
        }
    }
    let report = match witness {
        Some(w) => AxiomReport::fails(Axiom::Orderability, w),
        None => AxiomReport::holds(Axiom::Orderability),
    };
    OrderabilityReport { report, orderings }
}

/// Confirms that consecutive (winner, loser) profile pairs form a dominance
/// cycle under `f`.
pub(super) fn replay_cycle(f: &dyn Ccr, w: &Witness) -> Result<bool> {
    let &[x, y] = w.candidates.as_slice() else {
        return Ok(false);
    };
    let arcs: Vec<_> = w.profiles.chunks(2).collect();
    if arcs.len() < 2 || !w.profiles.len().is_multiple_of(2) {
        return Ok(false);
    }
    for (i, arc) in arcs.iter().enumerate() {
        let (win, lose) = (&arc[0], &arc[1]);
        let next_win = &arcs[(i + 1) % arcs.len()][0];
        if win.context(x, y)? != lose.context(x, y)?
            || lose.restrict(x, y)? != next_win.restrict(x, y)?
            || win.restrict(x, y)? == lose.restrict(x, y)?
            || !f.evaluate(win)?.strictly(x, y)
            || f.evaluate(lose)?.strictly(x, y)
        {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ccr::{Dodgson, Majority, MajorityDodgson};
    use crate::figures;

    #[test]
    fn dodgson_examples_form_a_two_cycle() {
        for f in [&Dodgson as &dyn Ccr, &MajorityDodgson] {
            let space = EvaluatedSpace::from_profiles(f, figures::dodgson_profiles().to_vec()).unwrap();
            let (x, z) = (0, 2);
            let analysis = analyze_pair(&space, z, x);
            let digraph = dominance_digraph(&analysis);
            let cycle = digraph.find_cycle().expect("cycle");
            assert_eq!(cycle.len(), 2, "{}", f.name());
            let report = check_orderability(&space).report;
            assert!(!report.passed());
            assert!(replay_cycle(f, report.witness.as_ref().unwrap()).unwrap());
        }
    }

    #[test]
    fn iia_rules_have_no_arcs() {
        let c = std::sync::Arc::new(crate::relations::CandidateSet::letters(3).unwrap());
        let space = crate::profiles::ProfileSpace::new(c, 2, false).unwrap();
        let s = EvaluatedSpace::from_space(&Majority, &space, u128::MAX).unwrap();
        for (x, y) in s.ordered_pairs() {
            assert!(dominance_digraph(&analyze_pair(&s, x, y)).arcs.is_empty());
        }
        assert!(check_orderability(&s).report.passed());
    }
}
