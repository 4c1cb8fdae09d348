//! Ranked Pairs over weighted majority graphs.
//!
//! [`ranked_pairs_locked`] runs the locking procedure for one tie-breaker.
//! [`ranked_pairs_all`] intersects the locked sets over every tie-breaker by
//! exploring, group by group, every order of each maximal equal-weight group
//! of edges. Orders across groups are forced by weight.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::margins::{margin_graph, ratio_graph, RatioOptions, WeightedGraph};
use crate::profiles::Profile;
use crate::relations::Relation;

use super::{unanimous_indifference, Ccr, Measure};

/// Strict priority over ordered pairs; earlier entries win ties.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TieBreaker {
    n: usize,
    rank: Vec<usize>,
}

impl TieBreaker {
    pub fn new(n: usize, order: &[(usize, usize)]) -> Result<Self> {
        let mut rank = vec![usize::MAX; n * n];
        for (pos, &(x, y)) in order.iter().enumerate() {
            if x >= n || y >= n || x == y || rank[x * n + y] != usize::MAX {
                return Err(Error::InvalidGraph(format!("bad tie-breaker entry ({x},{y})")));
            }
            rank[x * n + y] = pos;
        }
        let covered = (0..n).all(|x| (0..n).all(|y| x == y || rank[x * n + y] != usize::MAX));
        if !covered {
            return Err(Error::InvalidGraph("tie-breaker must list every ordered pair".into()));
        }
        Ok(Self { n, rank })
    }

    /// Pairs in row-major order.
    pub fn lexicographic(n: usize) -> Self {
        let order: Vec<(usize, usize)> = (0..n)
            .flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
            .collect();
        Self::new(n, &order).expect("row-major order covers every pair")
    }

    pub fn rank(&self, x: usize, y: usize) -> usize {
        self.rank[x * self.n + y]
    }
}

fn creates_cycle(locked: &Relation, x: usize, y: usize) -> bool {
    x == y || locked.reachable_from(y) & (1 << x) != 0
}

/// Locks edges by descending weight, then by tie-breaker priority, skipping
/// any edge that would close a cycle. Returns the locked edges only.
pub fn ranked_pairs_locked<W: Copy + Ord>(g: &WeightedGraph<W>, t: &TieBreaker) -> Relation {
    let mut edges = g.edges();
    edges.sort_by(|a, b| b.2.cmp(&a.2).then(t.rank(a.0, a.1).cmp(&t.rank(b.0, b.1))));
    let mut locked = Relation::empty(g.n());
    for (x, y, _) in edges {
        if !creates_cycle(&locked, x, y) {
            locked.insert(x, y);
        }
    }
    locked
}

/// Edges locked under every tie-breaker.
pub fn ranked_pairs_all<W: Copy + Ord>(g: &WeightedGraph<W>) -> Relation {
    let mut edges = g.edges();
    edges.sort_by_key(|e| std::cmp::Reverse(e.2));
    let mut states: HashSet<Relation> = HashSet::from([Relation::empty(g.n())]);
    let mut start = 0;
    while start < edges.len() {
        let end = (start..edges.len())
            .find(|&i| edges[i].2 != edges[start].2)
            .unwrap_or(edges.len());
        let group: Vec<(usize, usize)> = edges[start..end].iter().map(|&(x, y, _)| (x, y)).collect();
        let mut next = HashSet::new();
        for state in &states {
            let mut seen = HashMap::new();
            lock_group(*state, &group, (1u64 << group.len()) - 1, &mut seen, &mut next);
        }
        states = next;
        start = end;
    }
    states
        .into_iter()
        .reduce(|acc, s| acc.intersection(&s))
        .unwrap_or_else(|| Relation::empty(g.n()))
}

/// Explores every order of the edges in `remaining`, memoized on the pair
/// (locked set, remaining edges) so each reachable state is expanded once.
fn lock_group(
    locked: Relation,
    group: &[(usize, usize)],
    remaining: u64,
    seen: &mut HashMap<(Relation, u64), ()>,
    out: &mut HashSet<Relation>,
) {
    if seen.insert((locked, remaining), ()).is_some() {
        return;
    }
    if remaining == 0 {
        out.insert(locked);
        return;
    }
    for (i, &(x, y)) in group.iter().enumerate() {
        if remaining & (1 << i) == 0 {
            continue;
        }
        let mut next = locked;
        if !creates_cycle(&locked, x, y) {
            next.insert(x, y);
        }
        lock_group(next, group, remaining & !(1 << i), seen, out);
    }
}

/// Weak part of the Ranked Pairs rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum RankedPairsPolicy {
    /// `x f y` iff `y -> x` is not locked; always complete.
    CompleteClosure,
    /// Locked edges plus unanimously indifferent pairs.
    #[default]
    ParetoIndifference,
}

impl RankedPairsPolicy {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "complete-closure" => Ok(Self::CompleteClosure),
            "pareto-indifference" => Ok(Self::ParetoIndifference),
            other => Err(Error::Parse(format!("unknown ranked pairs policy `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RankedPairs {
    pub policy: RankedPairsPolicy,
    pub measure: Measure,
}

impl RankedPairs {
    pub fn strict_part(&self, p: &Profile) -> Relation {
        match self.measure {
            Measure::Margin => ranked_pairs_all(&margin_graph(p)),
            Measure::Ratio => ranked_pairs_all(&ratio_graph(p, RatioOptions::default())),
        }
    }
}

impl Ccr for RankedPairs {
    fn name(&self) -> String {
        let policy = match self.policy {
            RankedPairsPolicy::CompleteClosure => "complete-closure",
            RankedPairsPolicy::ParetoIndifference => "pareto-indifference",
        };
        format!("ranked-pairs({}, {policy})", self.measure)
    }

    fn evaluate(&self, p: &Profile) -> Result<Relation> {
        let locked = self.strict_part(p);
        Ok(match self.policy {
            RankedPairsPolicy::CompleteClosure => Relation::from_fn(p.candidate_count(), |x, y| !locked.contains(y, x)),
            RankedPairsPolicy::ParetoIndifference => locked.union(&unanimous_indifference(p)),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::margins::MarginGraph;
    use crate::relations::permutations;

    /// Intersection over every order of all edges, ignoring weights' grouping.
    fn brute_force(g: &MarginGraph) -> Relation {
        let n = g.n();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
            .collect();
        let edges: Vec<(usize, usize)> = g.edges().iter().map(|&(x, y, _)| (x, y)).collect();
        let mut acc: Option<Relation> = None;
        for perm in permutations(edges.len()) {
            let mut order: Vec<(usize, usize)> = perm.iter().map(|&i| edges[i]).collect();
            order.extend(pairs.iter().filter(|p| !edges.contains(p)));
            let locked = ranked_pairs_locked(g, &TieBreaker::new(n, &order).unwrap());
            acc = Some(acc.map_or(locked, |a| a.intersection(&locked)));
        }
        acc.unwrap_or_else(|| Relation::empty(n))
    }

    #[test]
    fn grouped_search_matches_all_edge_orders() {
        // every tournament on 4 candidates with weights in {1, 3}
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for code in 0..4u32.pow(6) {
            let mut spec = Vec::new();
            let mut c = code;
            for &(x, y) in &pairs {
                let (dir, w) = (c % 2, if (c / 2) % 2 == 0 { 1 } else { 3 });
                c /= 4;
                spec.push(if dir == 0 { (x, y, w) } else { (y, x, w) });
            }
            let g = MarginGraph::from_margins(4, &spec).unwrap();
            if code % 37 == 0 {
                assert_eq!(ranked_pairs_all(&g), brute_force(&g), "{spec:?}");
            }
            let all = ranked_pairs_all(&g);
            assert!(all.is_subset(&g.majority_relation()));
            assert!(all.is_acyclic());
        }
    }

    #[test]
    fn distinct_weights_ignore_the_tie_breaker() {
        let g = MarginGraph::from_margins(3, &[(0, 1, 5), (1, 2, 3), (2, 0, 1)]).unwrap();
        let reversed = TieBreaker::new(3, &[(2, 1), (2, 0), (1, 2), (1, 0), (0, 2), (0, 1)]).unwrap();
        assert_eq!(ranked_pairs_locked(&g, &reversed), ranked_pairs_all(&g));
    }

    #[test]
    fn acyclic_graphs_lock_everything() {
        let g = MarginGraph::from_margins(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
        assert_eq!(ranked_pairs_all(&g), g.majority_relation());
    }

    #[test]
    fn incomplete_tie_breakers_are_rejected() {
        assert!(TieBreaker::new(3, &[(0, 1)]).is_err());
    }
}
