//! Dodgson scores and the two Dodgson rules.
//!
//! Only swaps that raise the scored candidate change its margins, so a
//! solution is a choice of raise amount per voter: raising `x` by `k` places
//! costs `k` and moves `x` past the `k` candidates directly above it. The
//! search picks, per ballot type, how many voters raise by at least `j` for
//! each `j`, and prunes by cost bounds and a memo of visited states.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::margins::{margin, margin_graph};
use crate::profiles::Profile;
use crate::relations::Relation;

use super::Ccr;

struct BallotType {
    count: usize,
    /// Candidates above the scored one, nearest first.
    above: Vec<usize>,
}

struct Search<'a> {
    types: &'a [BallotType],
    best: usize,
    memo: HashMap<(usize, Vec<usize>), usize>,
}

impl Search<'_> {
    fn run(&mut self, t: usize, need: &mut Vec<usize>, cost: usize) {
        let bound = cost + need.iter().copied().max().unwrap_or(0);
        if bound >= self.best {
            return;
        }
        if need.iter().all(|&d| d == 0) {
            self.best = cost;
            return;
        }
        if t == self.types.len() {
            return;
        }
        match self.memo.get(&(t, need.clone())) {
            Some(&seen) if seen <= cost => return,
            _ => {
                self.memo.insert((t, need.clone()), cost);
            }
        }
        let ty = &self.types[t];
        // suffix[j]: largest remaining need among candidates j.. above
        let mut suffix = vec![0; ty.above.len() + 1];
        for j in (0..ty.above.len()).rev() {
            suffix[j] = suffix[j + 1].max(need[ty.above[j]]);
        }
        let mut levels = Vec::with_capacity(ty.above.len());
        self.choose(t, need, cost, &suffix, &mut levels, ty.count);
    }

    /// `levels[j]` voters of this type raise past the `j+1` nearest candidates.
    fn choose(
        &mut self,
        t: usize,
        need: &mut Vec<usize>,
        cost: usize,
        suffix: &[usize],
        levels: &mut Vec<usize>,
        cap: usize,
    ) {
        let ty = &self.types[t];
        let j = levels.len();
        let limit = if j < ty.above.len() { cap.min(suffix[j]) } else { 0 };
        if limit == 0 {
            let saved: Vec<(usize, usize)> = levels
                .iter()
                .enumerate()
                .map(|(k, &c)| {
                    let cand = ty.above[k];
                    let before = need[cand];
                    need[cand] = before.saturating_sub(c);
                    (cand, before)
                })
                .collect();
            let spent: usize = levels.iter().sum();
            self.run(t + 1, need, cost + spent);
            for (cand, before) in saved {
                need[cand] = before;
            }
            return;
        }
        for c in (0..=limit).rev() {
            levels.push(c);
            self.choose(t, need, cost, suffix, levels, c);
            levels.pop();
        }
    }
}

fn require_linear(p: &Profile, rule: &str) -> Result<()> {
    if p.is_linear() {
        Ok(())
    } else {
        Err(Error::NonLinearBallot { rule: rule.into() })
    }
}

/// Fewest adjacent swaps in ballots that make `x` beat every other candidate.
pub fn dodgson_score(p: &Profile, x: usize) -> Result<usize> {
    require_linear(p, "dodgson")?;
    p.candidates().check_index(x)?;
    let n = p.candidate_count();
    let mut need = vec![0usize; n];
    for (y, slot) in need.iter_mut().enumerate() {
        if y != x {
            let m = margin(p, x, y);
            if m <= 0 {
                *slot = (-m) as usize / 2 + 1;
            }
        }
    }
    let types: Vec<BallotType> = p
        .ballot_multiset()
        .into_iter()
        .map(|(b, count)| {
            let seq = b.linear_sequence();
            let pos = seq.iter().position(|&c| c == x).expect("x is ranked");
            BallotType {
                count,
                above: seq[..pos].iter().rev().copied().collect(),
            }
        })
        .filter(|t| !t.above.is_empty())
        .collect();
    // raising x to the top everywhere always succeeds
    let ceiling: usize = types.iter().map(|t| t.count * t.above.len()).sum();
    let mut search = Search {
        types: &types,
        best: ceiling + 1,
        memo: HashMap::new(),
    };
    search.run(0, &mut need, 0);
    Ok(search.best.min(ceiling))
}

pub fn dodgson_scores(p: &Profile) -> Result<Vec<usize>> {
    (0..p.candidate_count()).map(|x| dodgson_score(p, x)).collect()
}

/// `x f y` iff the Dodgson score of `x` is at most that of `y`.
#[derive(Debug, Clone, Copy)]
pub struct Dodgson;

impl Ccr for Dodgson {
    fn name(&self) -> String {
        "dodgson".into()
    }

    fn linear_only(&self) -> bool {
        true
    }

    fn evaluate(&self, p: &Profile) -> Result<Relation> {
        let s = dodgson_scores(p)?;
        Ok(Relation::from_fn(p.candidate_count(), |x, y| s[x] <= s[y]))
    }
}

/// `x g y` iff the scores tie, or `x` scores no worse and beats `y` head to head.
#[derive(Debug, Clone, Copy)]
pub struct MajorityDodgson;

impl Ccr for MajorityDodgson {
    fn name(&self) -> String {
        "majority-dodgson".into()
    }

    fn linear_only(&self) -> bool {
        true
    }

    fn evaluate(&self, p: &Profile) -> Result<Relation> {
        let s = dodgson_scores(p)?;
        let g = margin_graph(p);
        Ok(Relation::from_fn(p.candidate_count(), |x, y| {
            s[x] == s[y] || (s[x] <= s[y] && g.weight(x, y) > 0)
        }))
    }
}
