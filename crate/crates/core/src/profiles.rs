//! Voter profiles, pair restrictions and pair-deleted contexts, profile
//! spaces, and the voter and candidate permutation actions.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::relations::{check_permutation, CandidateSet, Relation, WeakOrder};

/// Voter-indexed assignment of weak orders over a shared candidate set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Profile {
    candidates: Arc<CandidateSet>,
    ballots: Vec<WeakOrder>,
}

impl Profile {
    pub fn new(candidates: Arc<CandidateSet>, ballots: Vec<WeakOrder>) -> Result<Self> {
        if ballots.is_empty() {
            return Err(Error::NoVoters);
        }
        if ballots.iter().any(|b| b.n() != candidates.len()) {
            return Err(Error::CandidateMismatch);
        }
        Ok(Self { candidates, ballots })
    }

    /// Builds a profile from `(count, ranking)` pairs, where a ranking reads
    /// like `a>b~c>d` (`>` separates classes, `~` joins tied candidates).
    pub fn from_rankings(candidates: Arc<CandidateSet>, rows: &[(usize, &str)]) -> Result<Self> {
        let mut ballots = Vec::new();
        for &(count, text) in rows {
            let ballot = parse_ranking(&candidates, text)?;
            ballots.extend(std::iter::repeat_n(ballot, count));
        }
        Self::new(candidates, ballots)
    }

    pub fn candidates(&self) -> &Arc<CandidateSet> {
        &self.candidates
    }

    pub fn candidate_count(&self) -> usize {
        self.candidates.len()
    }

    pub fn voter_count(&self) -> usize {
        self.ballots.len()
    }

    pub fn ballot(&self, voter: usize) -> WeakOrder {
        self.ballots[voter]
    }

    pub fn ballots(&self) -> &[WeakOrder] {
        &self.ballots
    }

    pub fn is_linear(&self) -> bool {
        self.ballots.iter().all(WeakOrder::is_linear)
    }

    /// Runs of identical consecutive ballots as `(ballot, count)`.
    pub fn ballot_types(&self) -> Vec<(WeakOrder, usize)> {
        let mut out: Vec<(WeakOrder, usize)> = Vec::new();
        for &b in &self.ballots {
            match out.last_mut() {
                Some((last, count)) if *last == b => *count += 1,
                _ => out.push((b, 1)),
            }
        }
        out
    }

    /// Distinct ballots with their total counts, in first-appearance order.
    pub fn ballot_multiset(&self) -> Vec<(WeakOrder, usize)> {
        let mut out: Vec<(WeakOrder, usize)> = Vec::new();
        for &b in &self.ballots {
            match out.iter_mut().find(|(w, _)| *w == b) {
                Some((_, count)) => *count += 1,
                None => out.push((b, 1)),
            }
        }
        out
    }

    fn check_pair(&self, x: usize, y: usize) -> Result<()> {
        self.candidates.check_index(x)?;
        self.candidates.check_index(y)?;
        if x == y {
            return Err(Error::DiagonalPair);
        }
        Ok(())
    }

    /// Per-voter projection onto the pair `{x, y}`, oriented as `(x, y)`.
    pub fn restrict(&self, x: usize, y: usize) -> Result<PairRestriction> {
        self.check_pair(x, y)?;
        Ok(PairRestriction {
            x,
            y,
            symbols: self.ballots.iter().map(|b| PairSymbol::of(b, x, y)).collect(),
        })
    }

    /// Every voter's relation with `(x, y)` and `(y, x)` removed.
    pub fn context(&self, x: usize, y: usize) -> Result<Preprofile> {
        self.check_pair(x, y)?;
        Ok(Preprofile {
            relations: self
                .ballots
                .iter()
                .map(|b| {
                    let mut r = b.relation();
                    r.remove(x, y);
                    r.remove(y, x);
                    r
                })
                .collect(),
        })
    }

    /// Inverse of [`Profile::context`] together with [`Profile::restrict`].
    pub fn recombine(
        candidates: Arc<CandidateSet>,
        context: &Preprofile,
        restriction: &PairRestriction,
    ) -> Result<Self> {
        if context.voter_count() != restriction.voter_count() {
            return Err(Error::InvalidBallot(
                "context and restriction disagree on voters".into(),
            ));
        }
        let (x, y) = restriction.pair();
        let ballots = context
            .relations
            .iter()
            .zip(&restriction.symbols)
            .map(|(r, s)| {
                let mut r = *r;
                match s {
                    PairSymbol::XOverY => r.insert(x, y),
                    PairSymbol::YOverX => r.insert(y, x),
                    PairSymbol::Tie => {
                        r.insert(x, y);
                        r.insert(y, x);
                    }
                }
                WeakOrder::from_relation(r)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(candidates, ballots)
    }

    /// `R^τ(i) = R(τ(i))`.
    pub fn permute_voters(&self, tau: &[usize]) -> Result<Self> {
        check_permutation(tau, self.voter_count())?;
        Ok(Self {
            candidates: self.candidates.clone(),
            ballots: tau.iter().map(|&t| self.ballots[t]).collect(),
        })
    }

    /// Relabels every ballot by the candidate permutation `pi`.
    pub fn permute_candidates(&self, pi: &[usize]) -> Result<Self> {
        check_permutation(pi, self.candidate_count())?;
        Ok(Self {
            candidates: self.candidates.clone(),
            ballots: self.ballots.iter().map(|b| b.permute(pi)).collect(),
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ProfileFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.into_profile()
    }

    pub fn to_file(&self) -> ProfileFile {
        ProfileFile {
            candidates: self.candidates.names().to_vec(),
            ballots: self
                .ballot_types()
                .into_iter()
                .map(|(b, count)| BallotEntry {
                    count,
                    ranking: b
                        .classes()
                        .iter()
                        .map(|class| class.iter().map(|&c| self.candidates.name(c).to_string()).collect())
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("profile serialization is infallible")
    }
}

impl fmt::Debug for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .ballot_types()
            .into_iter()
            .map(|(b, count)| format!("{count}:{}", b.display_with(&self.candidates)))
            .collect();
        write!(f, "Profile[{}]", rows.join(", "))
    }
}

/// Parses `a>b~c` style rankings.
pub fn parse_ranking(candidates: &CandidateSet, text: &str) -> Result<WeakOrder> {
    let classes = text
        .split('>')
        .map(|class| {
            class
                .split('~')
                .map(|name| candidates.index_of(name.trim()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    WeakOrder::from_classes(candidates.len(), &classes)
}

/// On-disk profile format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileFile {
    pub candidates: Vec<String>,
    pub ballots: Vec<BallotEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallotEntry {
    pub count: usize,
    pub ranking: Vec<Vec<String>>,
}

impl ProfileFile {
    pub fn into_profile(self) -> Result<Profile> {
        let candidates = Arc::new(CandidateSet::new(self.candidates)?);
        let mut ballots = Vec::new();
        for (i, entry) in self.ballots.iter().enumerate() {
            let at = |msg: String| Error::InvalidBallot(format!("ballot {}: {msg}", i + 1));
            if entry.count == 0 {
                return Err(at("count must be positive".into()));
            }
            let classes = entry
                .ranking
                .iter()
                .map(|class| {
                    class
                        .iter()
                        .map(|name| candidates.index_of(name))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()
                .map_err(|e| at(e.to_string()))?;
            let ballot = WeakOrder::from_classes(candidates.len(), &classes).map_err(|e| at(e.to_string()))?;
            ballots.extend(std::iter::repeat_n(ballot, entry.count));
        }
        Profile::new(candidates, ballots)
    }
}

/// How one voter ranks the pair `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairSymbol {
    XOverY,
    YOverX,
    Tie,
}

impl PairSymbol {
    pub fn of(ballot: &WeakOrder, x: usize, y: usize) -> Self {
        if ballot.prefers(x, y) {
            PairSymbol::XOverY
        } else if ballot.prefers(y, x) {
            PairSymbol::YOverX
        } else {
            PairSymbol::Tie
        }
    }

    pub fn swapped(self) -> Self {
        match self {
            PairSymbol::XOverY => PairSymbol::YOverX,
            PairSymbol::YOverX => PairSymbol::XOverY,
            PairSymbol::Tie => PairSymbol::Tie,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            PairSymbol::XOverY => '>',
            PairSymbol::YOverX => '<',
            PairSymbol::Tie => '=',
        }
    }

    pub fn from_char(c: char) -> Result<Self> {
        match c {
            '>' => Ok(PairSymbol::XOverY),
            '<' => Ok(PairSymbol::YOverX),
            '=' => Ok(PairSymbol::Tie),
            other => Err(Error::Parse(format!("unknown pair symbol `{other}`"))),
        }
    }
}

/// Profile restricted to one pair, oriented as `(x, y)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairRestriction {
    x: usize,
    y: usize,
    symbols: Vec<PairSymbol>,
}

impl PairRestriction {
    pub fn new(x: usize, y: usize, symbols: Vec<PairSymbol>) -> Result<Self> {
        if x == y {
            return Err(Error::DiagonalPair);
        }
        if symbols.is_empty() {
            return Err(Error::NoVoters);
        }
        Ok(Self { x, y, symbols })
    }

    pub fn pair(&self) -> (usize, usize) {
        (self.x, self.y)
    }

    pub fn symbols(&self) -> &[PairSymbol] {
        &self.symbols
    }

    pub fn voter_count(&self) -> usize {
        self.symbols.len()
    }

    /// The same information oriented as `(y, x)`.
    pub fn swapped(&self) -> Self {
        Self {
            x: self.y,
            y: self.x,
            symbols: self.symbols.iter().map(|s| s.swapped()).collect(),
        }
    }

    /// Compact per-voter string such as `><=`.
    pub fn digest(&self) -> String {
        self.symbols.iter().map(|s| s.as_char()).collect()
    }

    pub fn from_digest(x: usize, y: usize, digest: &str) -> Result<Self> {
        Self::new(x, y, digest.chars().map(PairSymbol::from_char).collect::<Result<_>>()?)
    }

    /// Base-3 code of the symbol sequence, voter 0 most significant.
    pub fn code(&self) -> u64 {
        self.symbols.iter().fold(0, |acc, s| acc * 3 + *s as u64)
    }
}

impl fmt::Debug for PairRestriction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})[{}]", self.x, self.y, self.digest())
    }
}

/// Voter-indexed assignment of arbitrary relations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Preprofile {
    relations: Vec<Relation>,
}

impl Preprofile {
    pub fn new(relations: Vec<Relation>) -> Result<Self> {
        let Some(first) = relations.first() else {
            return Err(Error::NoVoters);
        };
        if relations.iter().any(|r| r.n() != first.n()) {
            return Err(Error::CandidateMismatch);
        }
        Ok(Self { relations })
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn voter_count(&self) -> usize {
        self.relations.len()
    }

    pub fn candidate_count(&self) -> usize {
        self.relations[0].n()
    }

    /// Per-voter relation bits in hex, joined by `.`.
    pub fn digest(&self) -> String {
        self.relations
            .iter()
            .map(|r| format!("{:x}", r.bits()))
            .collect::<Vec<_>>()
            .join(".")
    }

    pub fn from_digest(n: usize, digest: &str) -> Result<Self> {
        let relations = digest
            .split('.')
            .map(|part| {
                let bits = u64::from_str_radix(part, 16).map_err(|e| Error::Parse(e.to_string()))?;
                Relation::from_bits(n, bits)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(relations)
    }
}

impl fmt::Debug for Preprofile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Preprofile[{}]", self.digest())
    }
}

/// Every weak order on `n` candidates, lexicographic in the rank vector.
pub fn enumerate_weak_orders(n: usize) -> Vec<WeakOrder> {
    fn extend(ranks: &mut Vec<usize>, n: usize, out: &mut Vec<WeakOrder>) {
        if ranks.len() == n {
            let max = ranks.iter().copied().max().unwrap_or(0);
            if (0..=max).all(|r| ranks.contains(&r)) {
                out.push(WeakOrder::from_ranks(ranks));
            }
            return;
        }
        for r in 0..n {
            ranks.push(r);
            extend(ranks, n, out);
            ranks.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(n), n, &mut out);
    out
}

pub fn enumerate_linear_orders(n: usize) -> Vec<WeakOrder> {
    enumerate_weak_orders(n)
        .into_iter()
        .filter(WeakOrder::is_linear)
        .collect()
}

/// All profiles over fixed candidates and voter count, indexed
/// lexicographically by per-voter ballot indices (voter 0 most significant).
#[derive(Debug, Clone)]
pub struct ProfileSpace {
    candidates: Arc<CandidateSet>,
    voters: usize,
    orders: Vec<WeakOrder>,
    linear_only: bool,
}

impl ProfileSpace {
    pub fn new(candidates: Arc<CandidateSet>, voters: usize, linear_only: bool) -> Result<Self> {
        if voters == 0 {
            return Err(Error::NoVoters);
        }
        let orders = if linear_only {
            enumerate_linear_orders(candidates.len())
        } else {
            enumerate_weak_orders(candidates.len())
        };
        Ok(Self {
            candidates,
            voters,
            orders,
            linear_only,
        })
    }

    pub fn candidates(&self) -> &Arc<CandidateSet> {
        &self.candidates
    }

    pub fn voters(&self) -> usize {
        self.voters
    }

    pub fn linear_only(&self) -> bool {
        self.linear_only
    }

    pub fn orders(&self) -> &[WeakOrder] {
        &self.orders
    }

    /// Number of profiles, saturating at `u128::MAX`.
    pub fn size(&self) -> u128 {
        (self.orders.len() as u128).saturating_pow(self.voters as u32)
    }

    /// Profile at `index`; panics if out of range.
    pub fn profile(&self, mut index: usize) -> Profile {
        let base = self.orders.len();
        let mut ballots = vec![self.orders[0]; self.voters];
        for slot in ballots.iter_mut().rev() {
            *slot = self.orders[index % base];
            index /= base;
        }
        assert_eq!(index, 0, "profile index out of range");
        Profile {
            candidates: self.candidates.clone(),
            ballots,
        }
    }

    /// Materializes every profile, refusing spaces above `limit`.
    pub fn profiles(&self, limit: u128) -> Result<Vec<Profile>> {
        let size = self.size();
        if size > limit {
            return Err(Error::SpaceTooLarge { size, limit });
        }
        Ok((0..size as usize).map(|i| self.profile(i)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Arc<CandidateSet> {
        Arc::new(CandidateSet::letters(3).unwrap())
    }

    fn ordered_bell(n: usize) -> usize {
        // a(n) = sum_{k=1..n} C(n,k) a(n-k)
        let mut a = vec![1usize; n + 1];
        for m in 1..=n {
            let mut binom = 1usize;
            let mut total = 0;
            for k in 1..=m {
                binom = binom * (m - k + 1) / k;
                total += binom * a[m - k];
            }
            a[m] = total;
        }
        a[n]
    }

    #[test]
    fn weak_order_counts_match_ordered_bell_numbers() {
        for n in 1..=5 {
            let orders = enumerate_weak_orders(n);
            assert_eq!(orders.len(), ordered_bell(n), "n = {n}");
            let mut sorted = orders.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), orders.len());
        }
        assert_eq!(enumerate_weak_orders(3).len(), 13);
        assert_eq!(enumerate_linear_orders(3).len(), 6);
    }

    #[test]
    fn space_sizes() {
        let ab = Arc::new(CandidateSet::letters(2).unwrap());
        assert_eq!(ProfileSpace::new(ab, 2, false).unwrap().size(), 9);
        assert_eq!(ProfileSpace::new(abc(), 2, false).unwrap().size(), 169);
        assert_eq!(ProfileSpace::new(abc(), 2, true).unwrap().size(), 36);
    }

    #[test]
    fn space_profiles_are_distinct_and_ordered() {
        let space = ProfileSpace::new(abc(), 2, false).unwrap();
        let all = space.profiles(1_000).unwrap();
        let mut set = std::collections::HashSet::new();
        for p in &all {
            assert!(set.insert(p.clone()));
        }
        assert_eq!(all[1].ballot(0), space.orders()[0]);
        assert_eq!(all[1].ballot(1), space.orders()[1]);
        assert_eq!(all[13].ballot(0), space.orders()[1]);
    }

    #[test]
    fn restriction_of_both_fig1_profiles() {
        let left = Profile::from_rankings(abc(), &[(1, "a>b>c"), (1, "b>a>c"), (1, "a>b>c")]).unwrap();
        let right = Profile::from_rankings(abc(), &[(1, "a>b>c"), (1, "b>c>a"), (1, "c>a>b")]).unwrap();
        let expected = vec![PairSymbol::XOverY, PairSymbol::YOverX, PairSymbol::XOverY];
        assert_eq!(left.restrict(0, 1).unwrap().symbols(), expected.as_slice());
        assert_eq!(left.restrict(0, 1).unwrap(), right.restrict(0, 1).unwrap());
        assert_ne!(left.context(0, 1).unwrap(), right.context(0, 1).unwrap());
        assert!(left.restrict(1, 1).is_err());
    }

    #[test]
    fn swapping_voters_in_fig1_left() {
        let left = Profile::from_rankings(abc(), &[(1, "a>b>c"), (1, "b>a>c"), (1, "a>b>c")]).unwrap();
        let swapped = left.permute_voters(&[1, 0, 2]).unwrap();
        let expected = Profile::from_rankings(abc(), &[(1, "b>a>c"), (2, "a>b>c")]).unwrap();
        assert_eq!(swapped, expected);
    }

    #[test]
    fn candidate_transposition() {
        let p = Profile::from_rankings(abc(), &[(1, "a>b>c")]).unwrap();
        let q = p.permute_candidates(&[1, 0, 2]).unwrap();
        assert_eq!(q, Profile::from_rankings(abc(), &[(1, "b>a>c")]).unwrap());
        assert_eq!(q.permute_candidates(&[1, 0, 2]).unwrap(), p);
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"candidates":["a","b","c"],"ballots":[{"count":4,"ranking":[["a"],["b","c"]]},{"count":1,"ranking":[["c"],["a"],["b"]]}]}"#;
        let p = Profile::from_json(text).unwrap();
        assert_eq!(p.voter_count(), 5);
        assert_eq!(p.to_json(), text);
        assert!(Profile::from_json(r#"{"candidates":["a","b"],"ballots":[{"count":1,"ranking":[["a"]]}]}"#).is_err());
        assert!(Profile::from_json(r#"{"candidates":["a","a"],"ballots":[]}"#).is_err());
    }

    #[test]
    fn digests_round_trip() {
        let p = Profile::from_rankings(abc(), &[(1, "a>b~c"), (1, "c>a>b")]).unwrap();
        let ctx = p.context(0, 2).unwrap();
        assert_eq!(Preprofile::from_digest(3, &ctx.digest()).unwrap(), ctx);
        let r = p.restrict(0, 2).unwrap();
        assert_eq!(PairRestriction::from_digest(0, 2, &r.digest()).unwrap(), r);
    }
}
