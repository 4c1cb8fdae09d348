//! Advantage and standard tables over totally ordered groups.
//!
//! A [`Rationalization`] materializes both functions on the restrictions and
//! contexts of a finite profile space. `x P y` must hold exactly when the
//! advantage of `x` over `y` exceeds the standard for that context.

mod closed_forms;
mod construct;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

pub use closed_forms::{
    closed_form, gillies_standard, ranked_pairs_margin_standard, ranked_pairs_ratio_standard,
    split_cycle_margin_standard, split_cycle_ratio_standard, AnyRationalization, ClosedForm,
};
pub use construct::construct_rationalization;

use crate::axioms::EvaluatedSpace;
use crate::error::{Error, Result};
use crate::margins::RatioValue;
use crate::profiles::{PairRestriction, Preprofile};
use crate::relations::CandidateSet;

/// A totally ordered group: the order is translation invariant.
pub trait OrderedGroup: Copy + Ord + fmt::Debug + fmt::Display + Send + Sync + 'static {
    const TAG: &'static str;
    fn identity() -> Self;
    fn compose(self, other: Self) -> Self;
    fn inverse(self) -> Self;
    fn to_json(self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

/// The integers under addition.
impl OrderedGroup for i64 {
    const TAG: &'static str = "integer-additive";

    fn identity() -> Self {
        0
    }

    fn compose(self, other: Self) -> Self {
        self + other
    }

    fn inverse(self) -> Self {
        -self
    }

    fn to_json(self) -> Value {
        json!(self)
    }

    fn from_json(v: &Value) -> Result<Self> {
        v.as_i64()
            .ok_or_else(|| Error::Parse(format!("expected an integer, got {v}")))
    }
}

/// The positive rationals under multiplication.
impl OrderedGroup for RatioValue {
    const TAG: &'static str = "positive-rational-multiplicative";

    fn identity() -> Self {
        RatioValue::one()
    }

    fn compose(self, other: Self) -> Self {
        self * other
    }

    fn inverse(self) -> Self {
        self.recip()
    }

    fn to_json(self) -> Value {
        json!(self.to_string())
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => RatioValue::parse(s),
            Value::Number(_) => RatioValue::parse(&v.to_string()),
            _ => Err(Error::Parse(format!("expected a rational, got {v}"))),
        }
    }
}

/// Advantage and standard tables valued in `G`.
///
/// Advantages are keyed by an oriented restriction: the entry for a
/// restriction oriented as `(x, y)` is the advantage of `x` over `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rationalization<G> {
    candidates: Arc<CandidateSet>,
    advantage: HashMap<PairRestriction, G>,
    standard: HashMap<(usize, usize), HashMap<Preprofile, G>>,
}

impl<G: OrderedGroup> Rationalization<G> {
    pub fn new(candidates: Arc<CandidateSet>) -> Self {
        Self {
            candidates,
            advantage: HashMap::new(),
            standard: HashMap::new(),
        }
    }

    /// Tabulates `advantage` and `standard` on every restriction and context
    /// arising in `space`. Each key is evaluated once.
    pub fn tabulate(
        space: &EvaluatedSpace,
        advantage: impl Fn(&PairRestriction) -> G + Sync,
        standard: impl Fn(usize, usize, &Preprofile) -> G + Sync,
    ) -> Self {
        let mut r = Self::new(space.candidates().clone());
        for (x, y) in space.ordered_pairs() {
            let mut restrictions = Vec::new();
            let mut contexts = Vec::new();
            for p in space.profiles() {
                restrictions.push(p.restrict(x, y).expect("valid pair"));
                contexts.push(p.context(x, y).expect("valid pair"));
            }
            restrictions.sort();
            restrictions.dedup();
            contexts.sort();
            contexts.dedup();
            let adv: Vec<(PairRestriction, G)> = restrictions
                .into_par_iter()
                .map(|q| {
                    let a = advantage(&q);
                    (q, a)
                })
                .collect();
            r.advantage.extend(adv);
            let std: Vec<(Preprofile, G)> = contexts
                .into_par_iter()
                .map(|c| {
                    let s = standard(x, y, &c);
                    (c, s)
                })
                .collect();
            r.standard.entry((x, y)).or_default().extend(std);
        }
        r
    }

    pub fn candidates(&self) -> &Arc<CandidateSet> {
        &self.candidates
    }

    pub fn set_advantage(&mut self, q: PairRestriction, value: G) {
        self.advantage.insert(q, value);
    }

    pub fn set_standard(&mut self, x: usize, y: usize, context: Preprofile, value: G) {
        self.standard.entry((x, y)).or_default().insert(context, value);
    }

    pub fn advantage(&self, q: &PairRestriction) -> Option<G> {
        self.advantage.get(q).copied()
    }

    pub fn standard(&self, x: usize, y: usize, context: &Preprofile) -> Option<G> {
        self.standard.get(&(x, y))?.get(context).copied()
    }

    pub fn advantage_len(&self) -> usize {
        self.advantage.len()
    }

    pub fn standard_len(&self) -> usize {
        self.standard.values().map(HashMap::len).sum()
    }

    fn standard_entries(&self) -> Vec<(usize, usize, &Preprofile, G)> {
        let mut out: Vec<_> = self
            .standard
            .iter()
            .flat_map(|(&(x, y), m)| m.iter().map(move |(c, &v)| (x, y, c, v)))
            .collect();
        out.sort_by(|a, b| (a.0, a.1, a.2).cmp(&(b.0, b.1, b.2)));
        out
    }

    /// Every advantage and standard value.
    pub fn values(&self) -> impl Iterator<Item = G> + '_ {
        self.advantage
            .values()
            .chain(self.standard.values().flat_map(HashMap::values))
            .copied()
    }

    pub fn to_json(&self) -> Value {
        let name = |c: usize| self.candidates.name(c).to_string();
        let mut adv: Vec<_> = self.advantage.iter().collect();
        adv.sort_by(|a, b| a.0.cmp(b.0));
        json!({
            "group": G::TAG,
            "candidates": self.candidates.names(),
            "advantage": adv.into_iter().map(|(q, v)| {
                let (x, y) = q.pair();
                json!({"x": name(x), "y": name(y), "restriction": q.digest(), "value": v.to_json()})
            }).collect::<Vec<_>>(),
            "standard": self.standard_entries().into_iter().map(|(x, y, c, v)| {
                json!({"x": name(x), "y": name(y), "context": c.digest(), "value": v.to_json()})
            }).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("rationalization: {what}"));
        if v["group"].as_str() != Some(G::TAG) {
            return Err(bad(&format!("expected group `{}`", G::TAG)));
        }
        let candidates: Arc<CandidateSet> =
            Arc::new(serde_json::from_value(v["candidates"].clone()).map_err(|e| Error::Parse(e.to_string()))?);
        let n = candidates.len();
        let index = |e: &Value, key: &str| -> Result<usize> {
            candidates.index_of(e[key].as_str().ok_or_else(|| bad(&format!("missing `{key}`")))?)
        };
        let mut r = Self::new(candidates.clone());
        for e in v["advantage"].as_array().ok_or_else(|| bad("missing `advantage`"))? {
            let digest = e["restriction"].as_str().ok_or_else(|| bad("missing `restriction`"))?;
            let q = PairRestriction::from_digest(index(e, "x")?, index(e, "y")?, digest)?;
            r.set_advantage(q, G::from_json(&e["value"])?);
        }
        for e in v["standard"].as_array().ok_or_else(|| bad("missing `standard`"))? {
            let digest = e["context"].as_str().ok_or_else(|| bad("missing `context`"))?;
            let c = Preprofile::from_digest(n, digest)?;
            r.set_standard(index(e, "x")?, index(e, "y")?, c, G::from_json(&e["value"])?);
        }
        Ok(r)
    }
}

/// First violated condition found by [`verify_rationalization`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerificationFailure {
    /// Advantages of `x` over `y` and of `y` over `x` are not inverse.
    NotInverse { restriction: PairRestriction },
    /// A standard lies below the identity.
    StandardBelowIdentity { x: usize, y: usize, context: Preprofile },
    /// The rule's strict preference disagrees with the comparison.
    Mismatch {
        profile: usize,
        x: usize,
        y: usize,
        advantage: String,
        standard: String,
        strict: bool,
    },
}

impl fmt::Display for VerificationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerificationFailure::NotInverse { restriction } => {
                write!(f, "advantages on {restriction:?} are not inverse")
            }
            VerificationFailure::StandardBelowIdentity { x, y, context } => {
                write!(f, "standard for ({x},{y}) in {context:?} is below the identity")
            }
            VerificationFailure::Mismatch {
                profile,
                x,
                y,
                advantage,
                standard,
                strict,
            } => write!(
                f,
                "profile {profile}, pair ({x},{y}): advantage {advantage} vs standard {standard}, but strict = {strict}"
            ),
        }
    }
}

/// Checks the inverse and identity conditions on the tables and the
/// biconditional on every profile and ordered pair of the space. A missing
/// table entry is a coverage error.
pub fn verify_rationalization<G: OrderedGroup>(
    r: &Rationalization<G>,
    space: &EvaluatedSpace,
) -> Result<Option<VerificationFailure>> {
    let mut keys: Vec<&PairRestriction> = r.advantage.keys().collect();
    keys.sort();
    for q in keys {
        let back = r
            .advantage(&q.swapped())
            .ok_or_else(|| Error::Coverage(format!("advantage {:?}", q.swapped())))?;
        if r.advantage[q] != back.inverse() {
            return Ok(Some(VerificationFailure::NotInverse { restriction: q.clone() }));
        }
    }
    for (x, y, c, v) in r.standard_entries() {
        if v < G::identity() {
            return Ok(Some(VerificationFailure::StandardBelowIdentity {
                x,
                y,
                context: c.clone(),
            }));
        }
    }
    let pairs = space.ordered_pairs();
    (0..space.len())
        .into_par_iter()
        .map(|i| -> Result<Option<VerificationFailure>> {
            let p = space.profile(i);
            let out = space.output(i);
            for &(x, y) in &pairs {
                let q = p.restrict(x, y)?;
                let c = p.context(x, y)?;
                let a = r
                    .advantage(&q)
                    .ok_or_else(|| Error::Coverage(format!("advantage {q:?}")))?;
                let s = r
                    .standard(x, y, &c)
                    .ok_or_else(|| Error::Coverage(format!("standard ({x},{y}) {c:?}")))?;
                let strict = out.strictly(x, y);
                if (a > s) != strict {
                    return Ok(Some(VerificationFailure::Mismatch {
                        profile: i,
                        x,
                        y,
                        advantage: a.to_string(),
                        standard: s.to_string(),
                        strict,
                    }));
                }
            }
            Ok(None)
        })
        .find_map_first(|r| r.transpose())
        .transpose()
}
