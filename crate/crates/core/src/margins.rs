//! Margin and ratio measures, weighted majority graphs, majority paths and
//! splitting numbers.
//!
//! A [`WeightedGraph`] stores a weight for every ordered pair; `x -> y` is an
//! edge iff `w(x, y) > w(y, x)`. For margins that is `w(x, y) > 0`, for ratios
//! it is `w(x, y) > 1`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profiles::{PairRestriction, PairSymbol, Preprofile, Profile};
use crate::relations::{CandidateSet, Relation, WeakOrder};

/// Anything that can report how many voters strictly prefer `x` to `y`.
pub trait PairwiseCounts {
    fn voter_count(&self) -> usize;
    fn candidate_count(&self) -> usize;
    fn support(&self, x: usize, y: usize) -> usize;
}

impl PairwiseCounts for Profile {
    fn voter_count(&self) -> usize {
        Profile::voter_count(self)
    }

    fn candidate_count(&self) -> usize {
        Profile::candidate_count(self)
    }

    fn support(&self, x: usize, y: usize) -> usize {
        self.ballots().iter().filter(|b| b.prefers(x, y)).count()
    }
}

impl PairwiseCounts for Preprofile {
    fn voter_count(&self) -> usize {
        Preprofile::voter_count(self)
    }

    fn candidate_count(&self) -> usize {
        Preprofile::candidate_count(self)
    }

    fn support(&self, x: usize, y: usize) -> usize {
        self.relations().iter().filter(|r| r.strictly(x, y)).count()
    }
}

pub fn margin<P: PairwiseCounts + ?Sized>(p: &P, x: usize, y: usize) -> i64 {
    p.support(x, y) as i64 - p.support(y, x) as i64
}

/// Margin of the restriction's own pair, oriented as the restriction is.
pub fn restriction_margin(r: &PairRestriction) -> i64 {
    let (s, o) = restriction_counts(r);
    s as i64 - o as i64
}

fn restriction_counts(r: &PairRestriction) -> (usize, usize) {
    let s = r.symbols().iter().filter(|&&s| s == PairSymbol::XOverY).count();
    let o = r.symbols().iter().filter(|&&s| s == PairSymbol::YOverX).count();
    (s, o)
}

/// Exact positive rational used by the ratio measure and the multiplicative group.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatioValue(Ratio<i64>);

impl RatioValue {
    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 || numer == 0 || (numer < 0) != (denom < 0) {
            return Err(Error::Parse(format!("{numer}/{denom} is not a positive rational")));
        }
        Ok(Self(Ratio::new(numer, denom)))
    }

    pub fn integer(n: i64) -> Self {
        Self::new(n, 1).expect("positive integer")
    }

    pub fn one() -> Self {
        Self(Ratio::from_integer(1))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn recip(&self) -> Self {
        Self(self.0.recip())
    }

    pub fn inner(&self) -> Ratio<i64> {
        self.0
    }

    pub fn from_inner(r: Ratio<i64>) -> Result<Self> {
        Self::new(*r.numer(), *r.denom())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid rational `{text}`"));
        match text.split_once('/') {
            Some((n, d)) => Self::new(
                n.trim().parse().map_err(|_| bad())?,
                d.trim().parse().map_err(|_| bad())?,
            ),
            None => Self::new(text.trim().parse().map_err(|_| bad())?, 1),
        }
    }
}

impl std::ops::Mul for RatioValue {
    type Output = RatioValue;

    fn mul(self, rhs: Self) -> Self {
        Self(self.0 * rhs.0)
    }
}

impl fmt::Display for RatioValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for RatioValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Ratio measure options.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct RatioOptions {
    /// Unopposed support scores `|V| + support` instead of `|V|`.
    pub refined: bool,
}

fn ratio_from_counts(support: usize, opposition: usize, voters: usize, opts: RatioOptions) -> RatioValue {
    let v = voters as i64;
    match (support, opposition) {
        (0, 0) => RatioValue::one(),
        (s, 0) => RatioValue::integer(if opts.refined { v + s as i64 } else { v }),
        (0, o) => RatioValue::integer(if opts.refined { v + o as i64 } else { v }).recip(),
        (s, o) => RatioValue::new(s as i64, o as i64).expect("positive counts"),
    }
}

pub fn ratio<P: PairwiseCounts + ?Sized>(p: &P, x: usize, y: usize) -> RatioValue {
    ratio_with(p, x, y, RatioOptions::default())
}

pub fn ratio_with<P: PairwiseCounts + ?Sized>(p: &P, x: usize, y: usize, opts: RatioOptions) -> RatioValue {
    ratio_from_counts(p.support(x, y), p.support(y, x), p.voter_count(), opts)
}

pub fn restriction_ratio(r: &PairRestriction, opts: RatioOptions) -> RatioValue {
    let (s, o) = restriction_counts(r);
    ratio_from_counts(s, o, r.voter_count(), opts)
}

/// Every value the ratio measure can take with `voters` voters, ascending.
pub fn possible_ratio_values(voters: usize, opts: RatioOptions) -> Vec<RatioValue> {
    let mut set = BTreeSet::new();
    for s in 0..=voters {
        for o in 0..=voters - s {
            set.insert(ratio_from_counts(s, o, voters, opts));
        }
    }
    set.into_iter().collect()
}

/// Weighted directed graph on `0..n`; `x -> y` is an edge iff `w(x,y) > w(y,x)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeightedGraph<W> {
    n: usize,
    weights: Vec<W>,
}

pub type MarginGraph = WeightedGraph<i64>;
pub type RatioGraph = WeightedGraph<RatioValue>;

impl<W: Copy + Ord> WeightedGraph<W> {
    pub fn from_fn(n: usize, mut weight: impl FnMut(usize, usize) -> W) -> Self {
        let mut weights = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                weights.push(weight(x, y));
            }
        }
        Self { n, weights }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn weight(&self, x: usize, y: usize) -> W {
        self.weights[x * self.n + y]
    }

    /// Sets `w(x,y)` and `w(y,x)` together.
    pub fn set_pair(&mut self, x: usize, y: usize, forward: W, backward: W) {
        self.weights[x * self.n + y] = forward;
        self.weights[y * self.n + x] = backward;
    }

    #[inline]
    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        x != y && self.weight(x, y) > self.weight(y, x)
    }

    /// Edges in row-major order.
    pub fn edges(&self) -> Vec<(usize, usize, W)> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in 0..self.n {
                if self.has_edge(x, y) {
                    out.push((x, y, self.weight(x, y)));
                }
            }
        }
        out
    }

    /// The majority relation: the edge set as a strict relation.
    pub fn majority_relation(&self) -> Relation {
        Relation::from_fn(self.n, |x, y| self.has_edge(x, y))
    }

    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut inv = vec![0; self.n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        Self::from_fn(self.n, |x, y| self.weight(inv[x], inv[y]))
    }

    /// Minimum edge weight along `path`.
    pub fn splitting_number(&self, path: &MajorityPath) -> W {
        path.vertices
            .windows(2)
            .map(|w| self.weight(w[0], w[1]))
            .min()
            .expect("a path has at least one edge")
    }

    /// Every majority path from `from` to `to`; with `from == to`, every
    /// majority cycle through `from`.
    pub fn majority_paths(&self, from: usize, to: usize) -> Vec<MajorityPath> {
        let mut out = Vec::new();
        let mut stack = vec![from];
        let mut used = 1u64 << from;
        self.extend_paths(to, &mut stack, &mut used, &mut out);
        out
    }

    fn extend_paths(&self, to: usize, stack: &mut Vec<usize>, used: &mut u64, out: &mut Vec<MajorityPath>) {
        let last = *stack.last().unwrap();
        for next in 0..self.n {
            if !self.has_edge(last, next) {
                continue;
            }
            if next == to {
                let mut vertices = stack.clone();
                vertices.push(next);
                out.push(MajorityPath { vertices });
            } else if *used & (1 << next) == 0 {
                stack.push(next);
                *used |= 1 << next;
                self.extend_paths(to, stack, used, out);
                *used &= !(1 << next);
                stack.pop();
            }
        }
    }

    /// Largest splitting number over majority paths from `from` to `to`.
    pub fn max_split(&self, from: usize, to: usize) -> Option<W> {
        self.majority_paths(from, to)
            .iter()
            .map(|p| self.splitting_number(p))
            .max()
    }

    /// Bottleneck strengths: entry `[a][b]` is the largest splitting number of
    /// a majority path from `a` to `b`, or `None` without a path.
    #[allow(clippy::needless_range_loop)]
    pub fn widest_paths(&self) -> Vec<Vec<Option<W>>> {
        let n = self.n;
        let mut s: Vec<Vec<Option<W>>> = (0..n)
            .map(|x| (0..n).map(|y| self.has_edge(x, y).then(|| self.weight(x, y))).collect())
            .collect();
        for k in 0..n {
            for i in 0..n {
                let Some(ik) = s[i][k] else { continue };
                for j in 0..n {
                    if let Some(kj) = s[k][j] {
                        let through = ik.min(kj);
                        if s[i][j].is_none_or(|cur| through > cur) {
                            s[i][j] = Some(through);
                        }
                    }
                }
            }
        }
        s
    }

    /// Every majority cycle, each listed once starting from its least vertex.
    pub fn majority_cycles(&self) -> Vec<MajorityPath> {
        let mut out = Vec::new();
        for start in 0..self.n {
            let mut stack = vec![start];
            // vertices below `start` are excluded so each cycle appears once
            let mut used = (1u64 << start) | ((1u64 << start) - 1);
            self.extend_paths(start, &mut stack, &mut used, &mut out);
        }
        out
    }
}

impl MarginGraph {
    /// Validates antisymmetry: `w(x,y) = -w(y,x)` and a zero diagonal.
    pub fn from_margins(n: usize, margins: &[(usize, usize, i64)]) -> Result<Self> {
        let mut g = Self::from_fn(n, |_, _| 0);
        for &(x, y, w) in margins {
            if x >= n || y >= n {
                return Err(Error::InvalidGraph(format!("edge ({x},{y}) out of range")));
            }
            if x == y {
                return Err(Error::InvalidGraph("self-loop".into()));
            }
            if w <= 0 {
                return Err(Error::InvalidGraph(format!(
                    "edge ({x},{y}) has nonpositive weight {w}"
                )));
            }
            if g.weight(x, y) != 0 {
                return Err(Error::InvalidGraph(format!("pair ({x},{y}) given twice")));
            }
            g.set_pair(x, y, w, -w);
        }
        Ok(g)
    }

    pub fn from_json(text: &str) -> Result<(Arc<CandidateSet>, Self)> {
        let file: GraphFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let candidates = Arc::new(CandidateSet::new(file.nodes)?);
        let edges = file
            .edges
            .iter()
            .map(|e| Ok((candidates.index_of(&e.from)?, candidates.index_of(&e.to)?, e.weight)))
            .collect::<Result<Vec<_>>>()?;
        let g = Self::from_margins(candidates.len(), &edges)?;
        Ok((candidates, g))
    }

    pub fn to_json(&self, candidates: &CandidateSet) -> String {
        let file = GraphFile {
            nodes: candidates.names().to_vec(),
            edges: self
                .edges()
                .into_iter()
                .map(|(x, y, w)| GraphEdge {
                    from: candidates.name(x).to_string(),
                    to: candidates.name(y).to_string(),
                    weight: w,
                })
                .collect(),
        };
        serde_json::to_string(&file).expect("graph serialization is infallible")
    }
}

impl<W: Copy + Ord + fmt::Display> WeightedGraph<W> {
    pub fn to_dot(&self, candidates: &CandidateSet) -> String {
        let mut out = String::from("digraph margins {\n");
        for x in 0..self.n {
            out.push_str(&format!("  \"{}\";\n", candidates.name(x)));
        }
        for (x, y, w) in self.edges() {
            out.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
                candidates.name(x),
                candidates.name(y),
                w
            ));
        }
        out.push_str("}\n");
        out
    }
}

impl<W: fmt::Debug> fmt::Debug for WeightedGraph<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[W]> = self.weights.chunks(self.n.max(1)).collect();
        f.debug_struct("WeightedGraph").field("weights", &rows).finish()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct GraphFile {
    nodes: Vec<String>,
    edges: Vec<GraphEdge>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct GraphEdge {
    from: String,
    to: String,
    weight: i64,
}

/// Sequence `z1 ... zn` of vertices joined by majority edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MajorityPath {
    pub vertices: Vec<usize>,
}

impl MajorityPath {
    pub fn is_cycle(&self) -> bool {
        self.vertices.first() == self.vertices.last()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }
}

pub fn margin_graph<P: PairwiseCounts + ?Sized>(p: &P) -> MarginGraph {
    let n = p.candidate_count();
    let mut support = vec![0i64; n * n];
    for x in 0..n {
        for y in 0..n {
            if x != y {
                support[x * n + y] = p.support(x, y) as i64;
            }
        }
    }
    WeightedGraph::from_fn(n, |x, y| support[x * n + y] - support[y * n + x])
}

pub fn ratio_graph<P: PairwiseCounts + ?Sized>(p: &P, opts: RatioOptions) -> RatioGraph {
    WeightedGraph::from_fn(p.candidate_count(), |x, y| {
        if x == y {
            RatioValue::one()
        } else {
            ratio_with(p, x, y, opts)
        }
    })
}

/// Majority relation of a profile or preprofile: `x -> y` iff margin is positive.
pub fn majority_relation<P: PairwiseCounts + ?Sized>(p: &P) -> Relation {
    margin_graph(p).majority_relation()
}

/// Largest splitting number of a majority path from `from` to `to`, or 0.
pub fn max_split_over_paths(g: &MarginGraph, from: usize, to: usize) -> i64 {
    g.max_split(from, to).unwrap_or(0)
}

/// Builds a profile whose margin graph is `g`.
///
/// One base voter fixes parities; every remaining unit of margin is added by
/// a pair of mutually reversing ballots that differ only on one pair.
pub fn realize_margin_graph(candidates: Arc<CandidateSet>, g: &MarginGraph) -> Result<Profile> {
    let n = candidates.len();
    if g.n() != n {
        return Err(Error::CandidateMismatch);
    }
    let parities: BTreeSet<i64> = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .map(|(x, y)| g.weight(x, y).rem_euclid(2))
        .collect();
    if parities.len() > 1 {
        return Err(Error::InvalidGraph(
            "margins of mixed parity cannot come from one profile".into(),
        ));
    }
    let odd = parities.contains(&1);
    let mut ballots = Vec::new();
    let mut current = MarginGraph::from_fn(n, |_, _| 0);
    if odd {
        let base = WeakOrder::linear(&(0..n).collect::<Vec<_>>())?;
        ballots.push(base);
        current = margin_graph(&Profile::new(candidates.clone(), ballots.clone())?);
    }
    for x in 0..n {
        for y in x + 1..n {
            let mut deficit = g.weight(x, y) - current.weight(x, y);
            let (a, b) = if deficit >= 0 { (x, y) } else { (y, x) };
            deficit = deficit.abs();
            debug_assert_eq!(deficit % 2, 0);
            let rest: Vec<usize> = (0..n).filter(|&c| c != a && c != b).collect();
            let mut first = vec![a, b];
            first.extend(&rest);
            let mut second: Vec<usize> = rest.iter().rev().copied().collect();
            second.extend([a, b]);
            for _ in 0..deficit / 2 {
                ballots.push(WeakOrder::linear(&first)?);
                ballots.push(WeakOrder::linear(&second)?);
            }
        }
    }
    if ballots.is_empty() {
        ballots.push(WeakOrder::indifferent(n));
    }
    Profile::new(candidates, ballots)
}
