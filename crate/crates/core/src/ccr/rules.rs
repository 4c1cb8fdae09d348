use crate::error::{Error, Result};
use crate::margins::majority_relation;
use crate::profiles::Profile;
use crate::relations::Relation;

use super::Ccr;

/// Pairs on which every voter is indifferent, diagonal included.
pub fn unanimous_indifference(p: &Profile) -> Relation {
    Relation::from_fn(p.candidate_count(), |x, y| {
        p.ballots().iter().all(|b| b.indifferent_between(x, y))
    })
}

/// `x f y` iff the margin of `x` over `y` is nonnegative.
#[derive(Debug, Clone, Copy)]
pub struct Majority;

impl Ccr for Majority {
    fn name(&self) -> String {
        "majority".into()
    }

    fn evaluate(&self, p: &Profile) -> Result<Relation> {
        let beats = majority_relation(p);
        Ok(Relation::from_fn(p.candidate_count(), |x, y| !beats.contains(y, x)))
    }
}

/// `x f y` iff every voter weakly prefers `x` to `y`.
#[derive(Debug, Clone, Copy)]
pub struct Unanimity;

impl Ccr for Unanimity {
    fn name(&self) -> String {
        "unanimity".into()
    }

    fn evaluate(&self, p: &Profile) -> Result<Relation> {
        Ok(Relation::from_fn(p.candidate_count(), |x, y| {
            p.ballots().iter().all(|b| b.weakly_prefers(x, y))
        }))
    }
}

/// Copies the ballot of one voter.
#[derive(Debug, Clone, Copy)]
pub struct Dictatorship(pub usize);

impl Ccr for Dictatorship {
    fn name(&self) -> String {
        format!("dictatorship({})", self.0)
    }

    fn evaluate(&self, p: &Profile) -> Result<Relation> {
        if self.0 >= p.voter_count() {
            return Err(Error::VoterOutOfRange {
                index: self.0,
                voters: p.voter_count(),
            });
        }
        Ok(p.ballot(self.0).relation())
    }
}

/// Wins minus losses in the majority relation.
pub fn copeland_scores(beats: &Relation) -> Vec<i64> {
    let n = beats.n();
    (0..n)
        .map(|x| {
            (0..n)
                .map(|y| beats.contains(x, y) as i64 - beats.contains(y, x) as i64)
                .sum()
        })
        .collect()
}

/// `x f y` iff the Copeland score of `x` is at least that of `y`.
#[derive(Debug, Clone, Copy)]
pub struct Copeland;

impl Ccr for Copeland {
    fn name(&self) -> String {
        "copeland".into()
    }

    fn evaluate(&self, p: &Profile) -> Result<Relation> {
        let scores = copeland_scores(&majority_relation(p));
        Ok(Relation::from_fn(p.candidate_count(), |x, y| scores[x] >= scores[y]))
    }
}

/// Gillies covering over the strict majority relation `beats`.
///
/// `x` covers `y` when `x` beats `y` and everything beating `x` beats `y`;
/// `x` and `y` are indifferent when they beat and are beaten by exactly the
/// same candidates. All other pairs are noncomparable.
pub fn covering_relation(beats: &Relation) -> Relation {
    let n = beats.n();
    Relation::from_fn(n, |x, y| {
        let covers = beats.contains(x, y) && (0..n).all(|v| !beats.contains(v, x) || beats.contains(v, y));
        let twins = (0..n)
            .all(|v| beats.contains(v, x) == beats.contains(v, y) && beats.contains(x, v) == beats.contains(y, v));
        covers || twins
    })
}

#[derive(Debug, Clone, Copy)]
pub struct GilliesCovering;

impl Ccr for GilliesCovering {
    fn name(&self) -> String {
        "gillies".into()
    }

    fn evaluate(&self, p: &Profile) -> Result<Relation> {
        Ok(covering_relation(&majority_relation(p)))
    }
}
