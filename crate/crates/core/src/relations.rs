//! Finite binary relations over a small candidate set.
//!
//! A [`Relation`] is a dense boolean matrix packed into a `u64`, so candidate
//! sets are capped at [`MAX_CANDIDATES`]. Membership is defined on the
//! diagonal too; reflexivity is a property to check, never an assumption.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_CANDIDATES: usize = 8;

const STRIDE: usize = 8;
const ROW_MASK: u64 = 0xff;

/// Ordered list of distinct candidate identifiers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct CandidateSet {
    names: Vec<String>,
}

impl CandidateSet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::EmptyCandidates);
        }
        if names.len() > MAX_CANDIDATES {
            return Err(Error::TooManyCandidates {
                max: MAX_CANDIDATES,
                got: names.len(),
            });
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::DuplicateCandidate(name.clone()));
            }
        }
        Ok(Self { names })
    }

    /// Candidates named `a`, `b`, `c`, ...
    pub fn letters(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string()))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownCandidate(name.to_string()))
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.len() {
            Ok(())
        } else {
            Err(Error::CandidateOutOfRange { index, n: self.len() })
        }
    }
}

impl TryFrom<Vec<String>> for CandidateSet {
    type Error = Error;

    fn try_from(names: Vec<String>) -> Result<Self> {
        Self::new(names)
    }
}

impl From<CandidateSet> for Vec<String> {
    fn from(set: CandidateSet) -> Self {
        set.names
    }
}

/// Order-theoretic properties checkable with [`Relation::check_property`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    Reflexive,
    Complete,
    Transitive,
    /// No cycle in the strict part.
    Acyclic,
    /// Negative transitivity of the strict part.
    NegativelyTransitive,
    /// Transitivity of the strict part.
    QuasiTransitive,
}

impl Property {
    pub const ALL: [Property; 6] = [
        Property::Reflexive,
        Property::Complete,
        Property::Transitive,
        Property::Acyclic,
        Property::NegativelyTransitive,
        Property::QuasiTransitive,
    ];
}

/// Strict part, indifference part and noncomparability part of a relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decomposition {
    pub strict: Relation,
    pub indifference: Relation,
    pub noncomparability: Relation,
}

/// Binary relation on `0..n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    n: u8,
    bits: u64,
}

#[inline]
fn bit(x: usize, y: usize) -> u64 {
    1u64 << (x * STRIDE + y)
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        assert!(
            n <= MAX_CANDIDATES,
            "relation over more than {MAX_CANDIDATES} candidates"
        );
        Self { n: n as u8, bits: 0 }
    }

    /// Every ordered pair, diagonal included.
    pub fn full(n: usize) -> Self {
        let mut r = Self::empty(n);
        r.bits = Self::universe_bits(n);
        r
    }

    pub fn diagonal(n: usize) -> Self {
        let mut r = Self::empty(n);
        for x in 0..n {
            r.bits |= bit(x, x);
        }
        r
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(n: usize, pairs: I) -> Self {
        let mut r = Self::empty(n);
        for (x, y) in pairs {
            r.insert(x, y);
        }
        r
    }

    /// Builds the relation whose membership is given by `pred`.
    pub fn from_fn(n: usize, mut pred: impl FnMut(usize, usize) -> bool) -> Self {
        let mut r = Self::empty(n);
        for x in 0..n {
            for y in 0..n {
                if pred(x, y) {
                    r.bits |= bit(x, y);
                }
            }
        }
        r
    }

    /// Reconstructs a relation from its raw bit encoding, as produced by [`Relation::bits`].
    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        if n > MAX_CANDIDATES {
            return Err(Error::TooManyCandidates {
                max: MAX_CANDIDATES,
                got: n,
            });
        }
        if bits & !Self::universe_bits(n) != 0 {
            return Err(Error::Parse(format!(
                "relation bits {bits:#x} out of range for {n} candidates"
            )));
        }
        Ok(Self { n: n as u8, bits })
    }

    fn universe_bits(n: usize) -> u64 {
        let row = if n == STRIDE { ROW_MASK } else { (1u64 << n) - 1 };
        (0..n).fold(0, |acc, x| acc | (row << (x * STRIDE)))
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.bits & bit(x, y) != 0
    }

    pub fn insert(&mut self, x: usize, y: usize) {
        assert!(x < self.n() && y < self.n(), "pair ({x},{y}) out of range");
        self.bits |= bit(x, y);
    }

    pub fn remove(&mut self, x: usize, y: usize) {
        self.bits &= !bit(x, y);
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Ordered pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n();
        (0..n)
            .flat_map(move |x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| self.contains(x, y))
    }

    #[inline]
    fn row(&self, x: usize) -> u64 {
        (self.bits >> (x * STRIDE)) & ROW_MASK
    }

    pub fn union(&self, other: &Relation) -> Relation {
        debug_assert_eq!(self.n, other.n);
        Relation {
            n: self.n,
            bits: self.bits | other.bits,
        }
    }

    pub fn intersection(&self, other: &Relation) -> Relation {
        debug_assert_eq!(self.n, other.n);
        Relation {
            n: self.n,
            bits: self.bits & other.bits,
        }
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn inverse(&self) -> Relation {
        Relation::from_fn(self.n(), |x, y| self.contains(y, x))
    }

    /// `x P y` iff `x R y` and not `y R x`.
    #[inline]
    pub fn strictly(&self, x: usize, y: usize) -> bool {
        self.contains(x, y) && !self.contains(y, x)
    }

    #[inline]
    pub fn indifferent(&self, x: usize, y: usize) -> bool {
        self.contains(x, y) && self.contains(y, x)
    }

    #[inline]
    pub fn incomparable(&self, x: usize, y: usize) -> bool {
        !self.contains(x, y) && !self.contains(y, x)
    }

    pub fn strict_part(&self) -> Relation {
        Relation {
            n: self.n,
            bits: self.bits & !self.inverse().bits,
        }
    }

    pub fn decompose(&self) -> Decomposition {
        let inv = self.inverse().bits;
        let universe = Self::universe_bits(self.n());
        Decomposition {
            strict: Relation {
                n: self.n,
                bits: self.bits & !inv,
            },
            indifference: Relation {
                n: self.n,
                bits: self.bits & inv,
            },
            noncomparability: Relation {
                n: self.n,
                bits: universe & !self.bits & !inv,
            },
        }
    }

    /// Image of the relation under the candidate permutation `perm`.
    pub fn permute(&self, perm: &[usize]) -> Relation {
        debug_assert_eq!(perm.len(), self.n());
        let mut out = Relation::empty(self.n());
        for (x, y) in self.pairs() {
            out.bits |= bit(perm[x], perm[y]);
        }
        out
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n()).all(|x| self.contains(x, x))
    }

    /// Every pair of distinct candidates is related in some direction.
    pub fn is_complete(&self) -> bool {
        let n = self.n();
        (0..n).all(|x| (x + 1..n).all(|y| self.contains(x, y) || self.contains(y, x)))
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.n();
        (0..n).all(|x| {
            let row = self.row(x);
            (0..n).filter(|&y| row & (1 << y) != 0).all(|y| self.row(y) & !row == 0)
        })
    }

    /// The strict part has no cycle.
    pub fn is_acyclic(&self) -> bool {
        let closure = self.strict_part().transitive_closure();
        (0..self.n()).all(|x| !closure.contains(x, x))
    }

    /// The strict part is negatively transitive.
    pub fn is_negatively_transitive(&self) -> bool {
        let p = self.strict_part();
        let n = self.n();
        for x in 0..n {
            for y in 0..n {
                if p.contains(x, y) {
                    continue;
                }
                for z in 0..n {
                    if !p.contains(y, z) && p.contains(x, z) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The strict part is transitive.
    pub fn is_quasi_transitive(&self) -> bool {
        self.strict_part().is_transitive()
    }

    pub fn check_property(&self, prop: Property) -> bool {
        match prop {
            Property::Reflexive => self.is_reflexive(),
            Property::Complete => self.is_complete(),
            Property::Transitive => self.is_transitive(),
            Property::Acyclic => self.is_acyclic(),
            Property::NegativelyTransitive => self.is_negatively_transitive(),
            Property::QuasiTransitive => self.is_quasi_transitive(),
        }
    }

    pub fn transitive_closure(&self) -> Relation {
        let n = self.n();
        let mut rows: Vec<u64> = (0..n).map(|x| self.row(x)).collect();
        for k in 0..n {
            for x in 0..n {
                if rows[x] & (1 << k) != 0 {
                    rows[x] |= rows[k];
                }
            }
        }
        let bits = rows.iter().enumerate().fold(0, |acc, (x, r)| acc | (r << (x * STRIDE)));
        Relation { n: self.n, bits }
    }

    /// Candidates reachable from `from` by one or more steps.
    pub fn reachable_from(&self, from: usize) -> u64 {
        let mut seen = 0u64;
        let mut frontier = self.row(from);
        while frontier & !seen != 0 {
            let fresh = frontier & !seen;
            seen |= fresh;
            frontier = 0;
            for y in 0..self.n() {
                if fresh & (1 << y) != 0 {
                    frontier |= self.row(y);
                }
            }
        }
        seen
    }

    /// Renders the relation as a list of pairs using candidate names.
    pub fn display_with(&self, candidates: &CandidateSet) -> String {
        let parts: Vec<String> = self
            .pairs()
            .map(|(x, y)| format!("{}{}", candidates.name(x), candidates.name(y)))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

/// Transitive and complete relation, kept as its underlying [`Relation`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeakOrder(Relation);

impl WeakOrder {
    pub fn from_relation(r: Relation) -> Result<Self> {
        if r.is_complete() && r.is_transitive() && r.is_reflexive() {
            Ok(Self(r))
        } else {
            Err(Error::NotAWeakOrder)
        }
    }

    /// Builds a weak order from indifference classes listed best first.
    pub fn from_classes(n: usize, classes: &[Vec<usize>]) -> Result<Self> {
        let ranks = ranks_from_classes(n, classes)?;
        Ok(Self::from_ranks(&ranks))
    }

    /// Linear order listing candidates best first.
    pub fn linear(order: &[usize]) -> Result<Self> {
        let classes: Vec<Vec<usize>> = order.iter().map(|&c| vec![c]).collect();
        Self::from_classes(order.len(), &classes)
    }

    /// `ranks[c]` is the class index of candidate `c`, lower is better.
    pub fn from_ranks(ranks: &[usize]) -> Self {
        let n = ranks.len();
        Self(Relation::from_fn(n, |x, y| ranks[x] <= ranks[y]))
    }

    /// Complete indifference.
    pub fn indifferent(n: usize) -> Self {
        Self(Relation::full(n))
    }

    pub fn relation(&self) -> Relation {
        self.0
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    #[inline]
    pub fn prefers(&self, x: usize, y: usize) -> bool {
        self.0.strictly(x, y)
    }

    #[inline]
    pub fn weakly_prefers(&self, x: usize, y: usize) -> bool {
        self.0.contains(x, y)
    }

    #[inline]
    pub fn indifferent_between(&self, x: usize, y: usize) -> bool {
        self.0.indifferent(x, y)
    }

    /// Number of candidates strictly above `c`.
    pub fn above(&self, c: usize) -> usize {
        (0..self.n()).filter(|&d| self.prefers(d, c)).count()
    }

    /// Indifference classes, best first, each in index order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&c| (self.above(c), c));
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for c in order {
            match classes.last_mut() {
                Some(last) if self.indifferent_between(last[0], c) => last.push(c),
                _ => classes.push(vec![c]),
            }
        }
        classes
    }

    pub fn is_linear(&self) -> bool {
        let n = self.n();
        (0..n).all(|x| (x + 1..n).all(|y| !self.indifferent_between(x, y)))
    }

    /// Candidates best first; only meaningful for linear orders.
    pub fn linear_sequence(&self) -> Vec<usize> {
        self.classes().into_iter().flatten().collect()
    }

    pub fn permute(&self, perm: &[usize]) -> WeakOrder {
        WeakOrder(self.0.permute(perm))
    }

    pub fn display_with(&self, candidates: &CandidateSet) -> String {
        self.classes()
            .iter()
            .map(|class| class.iter().map(|&c| candidates.name(c)).collect::<Vec<_>>().join("~"))
            .collect::<Vec<_>>()
            .join(">")
    }
}

impl fmt::Debug for WeakOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeakOrder{:?}", self.classes())
    }
}

fn ranks_from_classes(n: usize, classes: &[Vec<usize>]) -> Result<Vec<usize>> {
    let mut ranks = vec![usize::MAX; n];
    for (rank, class) in classes.iter().enumerate() {
        if class.is_empty() {
            return Err(Error::InvalidBallot("empty indifference class".into()));
        }
        for &c in class {
            if c >= n {
                return Err(Error::CandidateOutOfRange { index: c, n });
            }
            if ranks[c] != usize::MAX {
                return Err(Error::InvalidBallot(format!("candidate {c} listed twice")));
            }
            ranks[c] = rank;
        }
    }
    if let Some(missing) = ranks.iter().position(|&r| r == usize::MAX) {
        return Err(Error::InvalidBallot(format!("candidate {missing} missing")));
    }
    Ok(ranks)
}

/// Checks that `perm` is a bijection on `0..n`.
pub fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::NotAPermutation(n));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::NotAPermutation(n));
        }
        seen[p] = true;
    }
    Ok(())
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: usize = 0;
    const B: usize = 1;
    const C: usize = 2;

    #[test]
    fn linear_order_decomposes_into_strict_part_and_diagonal() {
        let r = WeakOrder::linear(&[A, B, C]).unwrap().relation();
        let d = r.decompose();
        assert_eq!(d.strict, Relation::from_pairs(3, [(A, B), (B, C), (A, C)]));
        assert_eq!(d.indifference, Relation::diagonal(3));
        assert!(d.noncomparability.is_empty());
    }

    #[test]
    fn missing_diagonal_is_noncomparability() {
        let r = Relation::from_pairs(2, [(A, B), (B, A)]);
        let d = r.decompose();
        assert!(d.strict.is_empty());
        assert!(d.indifference.contains(A, B) && d.indifference.contains(B, A));
        assert!(d.noncomparability.contains(A, A) && d.noncomparability.contains(B, B));
    }

    #[test]
    fn indifference_chain_without_comparability() {
        // x I y, y I z, x N z
        let mut r = Relation::diagonal(3);
        for (x, y) in [(0, 1), (1, 0), (1, 2), (2, 1)] {
            r.insert(x, y);
        }
        let d = r.decompose();
        assert!(d.strict.is_empty());
        assert_eq!(d.noncomparability, Relation::from_pairs(3, [(0, 2), (2, 0)]));
        assert!(r.is_negatively_transitive());
        assert!(!r.is_complete());
        assert!(!r.is_transitive());
    }

    #[test]
    fn three_cycle_is_not_acyclic() {
        let r = Relation::from_pairs(3, [(A, B), (B, C), (C, A)]);
        assert!(!r.is_acyclic());
        assert!(!r.is_quasi_transitive());
    }

    #[test]
    fn closure_of_locked_chain() {
        let r = Relation::from_pairs(3, [(A, B), (B, C)]);
        assert_eq!(
            r.transitive_closure(),
            Relation::from_pairs(3, [(A, B), (B, C), (A, C)])
        );
        let t = r.transitive_closure();
        assert_eq!(t.transitive_closure(), t);
    }

    #[test]
    fn every_relation_on_three_candidates() {
        for bits in 0u64..512 {
            let r = Relation::from_fn(3, |x, y| bits & (1 << (x * 3 + y)) != 0);
            let d = r.decompose();
            for x in 0..3 {
                for y in 0..3 {
                    if x == y {
                        continue;
                    }
                    let count = [
                        d.strict.contains(x, y),
                        d.strict.contains(y, x),
                        d.indifference.contains(x, y),
                        d.noncomparability.contains(x, y),
                    ]
                    .iter()
                    .filter(|&&b| b)
                    .count();
                    assert_eq!(count, 1);
                }
            }
            assert_eq!(d.strict.union(&d.indifference), r);
            if r.is_transitive() && r.is_complete() {
                assert!(r.is_negatively_transitive());
                assert!(r.is_quasi_transitive());
            }
            let t = r.transitive_closure();
            assert!(r.is_subset(&t));
            assert!(t.is_transitive());
            assert_eq!(t.transitive_closure(), t);
            if r.strict_part().is_acyclic() && r.strict_part() == r {
                assert!(t.is_acyclic());
            }
        }
    }

    #[test]
    fn weak_order_classes_round_trip() {
        let w = WeakOrder::from_classes(4, &[vec![2], vec![0, 3], vec![1]]).unwrap();
        assert_eq!(w.classes(), vec![vec![2], vec![0, 3], vec![1]]);
        assert!(w.prefers(2, 0));
        assert!(w.indifferent_between(0, 3));
        assert!(!w.is_linear());
        assert_eq!(WeakOrder::from_relation(w.relation()).unwrap(), w);
    }

    #[test]
    fn rejects_malformed_classes() {
        assert!(WeakOrder::from_classes(3, &[vec![0], vec![1]]).is_err());
        assert!(WeakOrder::from_classes(2, &[vec![0, 1], vec![1]]).is_err());
        assert!(WeakOrder::from_classes(2, &[vec![0], vec![], vec![1]]).is_err());
    }

    #[test]
    fn permutations_are_lexicographic() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p[0], vec![0, 1, 2]);
        assert_eq!(p[5], vec![2, 1, 0]);
    }

    #[test]
    fn candidate_set_rejects_duplicates() {
        assert!(CandidateSet::new(["a", "a"]).is_err());
        assert!(CandidateSet::new(Vec::<String>::new()).is_err());
        assert_eq!(CandidateSet::letters(3).unwrap().index_of("c").unwrap(), 2);
    }
}
