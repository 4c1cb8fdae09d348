//! Exhaustive axiom checking over finite profile collections.
//!
//! A rule is first evaluated on every profile of an [`EvaluatedSpace`]; the
//! checkers then only read the cached outputs. Every failed check carries a
//! [`Witness`] that [`replay`] can re-verify against the rule.

mod orderability;
mod pairwise;
mod power;
mod unary;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

pub use orderability::{
    analyze_pair, check_orderability, dominance_digraph, ContextGroup, ContextMember, DominanceArc, DominanceDigraph,
    OrderabilityReport, PairAnalysis, PairOrdering,
};
pub use pairwise::check_pairwise_axiom;
pub use power::{find_decisive_coalitions, find_power_holders, CoalitionKind, PowerKind};
pub use unary::check_unary_axiom;

use crate::ccr::Ccr;
use crate::error::{Error, Result};
use crate::profiles::{PairSymbol, Profile, ProfileSpace};
use crate::relations::{CandidateSet, Relation};

/// Largest space materialized without explicit confirmation.
pub const DEFAULT_SPACE_LIMIT: u128 = 10_000_000;

/// A finite list of profiles together with a rule's output on each.
pub struct EvaluatedSpace {
    candidates: Arc<CandidateSet>,
    profiles: Vec<Profile>,
    outputs: Vec<Relation>,
}

impl EvaluatedSpace {
    /// Evaluates `f` on every profile of `space`.
    pub fn from_space(f: &dyn Ccr, space: &ProfileSpace, limit: u128) -> Result<Self> {
        let profiles = space.profiles(limit)?;
        Self::from_profiles(f, profiles)
    }

    /// Evaluates `f` on an explicit list of profiles over one candidate set.
    pub fn from_profiles(f: &dyn Ccr, profiles: Vec<Profile>) -> Result<Self> {
        let candidates = profiles.first().ok_or(Error::NoVoters)?.candidates().clone();
        if profiles.iter().any(|p| p.candidates() != &candidates) {
            return Err(Error::CandidateMismatch);
        }
        let outputs = profiles.par_iter().map(|p| f.evaluate(p)).collect::<Result<Vec<_>>>()?;
        Ok(Self {
            candidates,
            profiles,
            outputs,
        })
    }

    pub fn candidates(&self) -> &Arc<CandidateSet> {
        &self.candidates
    }

    pub fn candidate_count(&self) -> usize {
        self.candidates.len()
    }

    pub fn len(&self) -> usize {
        self.profiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.profiles.is_empty()
    }

    pub fn profiles(&self) -> &[Profile] {
        &self.profiles
    }

    pub fn profile(&self, i: usize) -> &Profile {
        &self.profiles[i]
    }

    pub fn output(&self, i: usize) -> &Relation {
        &self.outputs[i]
    }

    pub fn outputs(&self) -> &[Relation] {
        &self.outputs
    }

    /// Ordered pairs of distinct candidates, row-major.
    pub fn ordered_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.candidate_count();
        (0..n)
            .flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
            .collect()
    }

    /// Dense ids of each profile's restriction to `(x, y)`, numbered in order
    /// of first appearance.
    pub(crate) fn restriction_ids(&self, x: usize, y: usize) -> Vec<usize> {
        let keys: Vec<Vec<PairSymbol>> = self
            .profiles
            .par_iter()
            .map(|p| p.ballots().iter().map(|b| PairSymbol::of(b, x, y)).collect())
            .collect();
        intern(keys)
    }

    /// Dense ids of each profile's `(x, y)` context, numbered in order of first
    /// appearance.
    pub(crate) fn context_ids(&self, x: usize, y: usize) -> Vec<usize> {
        let mask = !((1u64 << (x * 8 + y)) | (1u64 << (y * 8 + x)));
        let keys: Vec<Vec<u64>> = self
            .profiles
            .par_iter()
            .map(|p| p.ballots().iter().map(|b| b.relation().bits() & mask).collect())
            .collect();
        intern(keys)
    }
}

fn intern<K: std::hash::Hash + Eq>(keys: Vec<K>) -> Vec<usize> {
    let mut ids: HashMap<K, usize> = HashMap::new();
    keys.into_iter()
        .map(|k| {
            let next = ids.len();
            *ids.entry(k).or_insert(next)
        })
        .collect()
}

/// Some directed cycle of the digraph on `0..n` with arcs `arc(a, b)`,
/// listed in arc order.
pub(crate) fn find_cycle(n: usize, arc: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    // 0 unvisited, 1 on the stack, 2 finished
    let mut state = vec![0u8; n];
    let mut stack: Vec<usize> = Vec::new();
    fn visit(
        v: usize,
        n: usize,
        arc: &dyn Fn(usize, usize) -> bool,
        state: &mut [u8],
        stack: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        state[v] = 1;
        stack.push(v);
        for w in 0..n {
            if !arc(v, w) {
                continue;
            }
            match state[w] {
                1 => {
                    let start = stack.iter().position(|&u| u == w).expect("on stack");
                    return Some(stack[start..].to_vec());
                }
                0 => {
                    if let Some(c) = visit(w, n, arc, state, stack) {
                        return Some(c);
                    }
                }
                _ => {}
            }
        }
        stack.pop();
        state[v] = 2;
        None
    }
    (0..n).find_map(|v| {
        if state[v] == 0 {
            visit(v, n, &arc, &mut state, &mut stack)
        } else {
            None
        }
    })
}

/// Axioms decidable by [`check_axiom`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    Iia,
    WeakIia,
    PnWeakIia,
    PiWeakIia,
    Pareto,
    StrongPareto,
    ParetoIndifference,
    /// Strict non-imposition.
    Sni,
    Anonymity,
    Neutrality,
    Completeness,
    Transitivity,
    Acyclicity,
    NegativeTransitivity,
    QuasiTransitivity,
    Orderability,
}

impl Axiom {
    pub const ALL: [Axiom; 16] = [
        Axiom::Iia,
        Axiom::WeakIia,
        Axiom::PnWeakIia,
        Axiom::PiWeakIia,
        Axiom::Pareto,
        Axiom::StrongPareto,
        Axiom::ParetoIndifference,
        Axiom::Sni,
        Axiom::Anonymity,
        Axiom::Neutrality,
        Axiom::Completeness,
        Axiom::Transitivity,
        Axiom::Acyclicity,
        Axiom::NegativeTransitivity,
        Axiom::QuasiTransitivity,
        Axiom::Orderability,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Iia => "iia",
            Axiom::WeakIia => "weak-iia",
            Axiom::PnWeakIia => "pn-weak-iia",
            Axiom::PiWeakIia => "pi-weak-iia",
            Axiom::Pareto => "pareto",
            Axiom::StrongPareto => "strong-pareto",
            Axiom::ParetoIndifference => "pareto-indifference",
            Axiom::Sni => "sni",
            Axiom::Anonymity => "anonymity",
            Axiom::Neutrality => "neutrality",
            Axiom::Completeness => "completeness",
            Axiom::Transitivity => "transitivity",
            Axiom::Acyclicity => "acyclicity",
            Axiom::NegativeTransitivity => "negative-transitivity",
            Axiom::QuasiTransitivity => "quasi-transitivity",
            Axiom::Orderability => "orderability",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|a| a.name() == text)
            .ok_or_else(|| Error::Parse(format!("unknown axiom `{text}`")))
    }

    pub fn is_pairwise(self) -> bool {
        matches!(self, Axiom::Iia | Axiom::WeakIia | Axiom::PnWeakIia | Axiom::PiWeakIia)
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Holds,
    Fails,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
        }
    }
}

/// Counterexample data attached to a failed check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub profiles: Vec<Profile>,
    /// The violating candidates: a pair, or a longer tuple for transitivity
    /// and cycle failures.
    pub candidates: Vec<usize>,
    /// Candidate or voter permutation for neutrality and anonymity.
    pub permutation: Option<Vec<usize>>,
    pub detail: Option<String>,
}

impl Witness {
    pub fn new(profiles: Vec<Profile>, candidates: Vec<usize>) -> Self {
        Self {
            profiles,
            candidates,
            permutation: None,
            detail: None,
        }
    }

    pub fn to_json(&self, names: &CandidateSet) -> Value {
        let mut obj = json!({
            "profiles": self.profiles.iter().map(|p| serde_json::to_value(p.to_file()).expect("serializable")).collect::<Vec<_>>(),
            "pair": self.candidates.iter().map(|&c| names.name(c)).collect::<Vec<_>>(),
        });
        if let Some(perm) = &self.permutation {
            obj["permutation"] = json!(perm);
        }
        if let Some(detail) = &self.detail {
            obj["detail"] = json!(detail);
        }
        obj
    }
}

/// Outcome of one axiom check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

impl AxiomReport {
    pub fn holds(axiom: Axiom) -> Self {
        Self {
            axiom,
            verdict: Verdict::Holds,
            witness: None,
        }
    }

    pub fn fails(axiom: Axiom, witness: Witness) -> Self {
        Self {
            axiom,
            verdict: Verdict::Fails,
            witness: Some(witness),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn to_json(&self, names: &CandidateSet) -> Value {
        json!({
            "axiom": self.axiom.name(),
            "verdict": self.verdict.as_str(),
            "witness": self.witness.as_ref().map(|w| w.to_json(names)),
        })
    }
}

/// Runs any axiom check on an evaluated space.
pub fn check_axiom(f: &dyn Ccr, axiom: Axiom, space: &EvaluatedSpace) -> Result<AxiomReport> {
    if axiom.is_pairwise() {
        Ok(check_pairwise_axiom(axiom, space))
    } else if axiom == Axiom::Orderability {
        Ok(check_orderability(space).report)
    } else {
        check_unary_axiom(f, axiom, space)
    }
}

/// Re-evaluates `f` on the witness and confirms the violation.
///
/// Strict non-imposition fails existentially, so its replay rescans
/// `universe` for a profile with the missing strict preference.
pub fn replay(f: &dyn Ccr, report: &AxiomReport, universe: &[Profile]) -> Result<bool> {
    let Some(w) = &report.witness else {
        return Ok(false);
    };
    let out = |p: &Profile| f.evaluate(p);
    Ok(match report.axiom {
        Axiom::Iia | Axiom::WeakIia | Axiom::PnWeakIia | Axiom::PiWeakIia => {
            let [r, r2] = w.profiles.as_slice() else {
                return Ok(false);
            };
            let &[x, y] = w.candidates.as_slice() else {
                return Ok(false);
            };
            if r.restrict(x, y)? != r2.restrict(x, y)? {
                return Ok(false);
            }
            let (a, b) = (out(r)?, out(r2)?);
            match report.axiom {
                Axiom::Iia => a.contains(x, y) != b.contains(x, y),
                Axiom::WeakIia => a.strictly(x, y) && b.strictly(y, x),
                Axiom::PnWeakIia => a.strictly(x, y) && !(b.strictly(x, y) || b.incomparable(x, y)),
                _ => a.strictly(x, y) && !(b.strictly(x, y) || b.indifferent(x, y)),
            }
        }
        Axiom::Sni => {
            let &[x, y] = w.candidates.as_slice() else {
                return Ok(false);
            };
            let mut none = true;
            for p in universe {
                if out(p)?.strictly(x, y) {
                    none = false;
                    break;
                }
            }
            none
        }
        Axiom::Orderability => orderability::replay_cycle(f, w)?,
        _ => unary::replay(f, report.axiom, w)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ccr::Measure;
    use crate::ccr::{Copeland, Dictatorship, GilliesCovering, Majority, SplitCycle, Unanimity};

    fn space(f: &dyn Ccr, n: usize, v: usize) -> EvaluatedSpace {
        let c = Arc::new(CandidateSet::letters(n).unwrap());
        EvaluatedSpace::from_space(f, &ProfileSpace::new(c, v, false).unwrap(), DEFAULT_SPACE_LIMIT).unwrap()
    }

    #[test]
    fn majority_satisfies_iia_but_not_acyclicity() {
        let s = space(&Majority, 3, 3);
        assert!(check_axiom(&Majority, Axiom::Iia, &s).unwrap().passed());
        let acyclic = check_axiom(&Majority, Axiom::Acyclicity, &s).unwrap();
        assert!(!acyclic.passed());
        assert!(replay(&Majority, &acyclic, s.profiles()).unwrap());
    }

    #[test]
    fn copeland_fails_weak_iia_with_two_voters() {
        let s = space(&Copeland, 3, 2);
        let report = check_axiom(&Copeland, Axiom::WeakIia, &s).unwrap();
        assert!(!report.passed());
        assert!(replay(&Copeland, &report, s.profiles()).unwrap());
        assert!(check_orderability(&s).report.passed());
    }

    #[test]
    fn covering_axioms_with_three_voters() {
        let s = space(&GilliesCovering, 3, 3);
        for axiom in [
            Axiom::PnWeakIia,
            Axiom::StrongPareto,
            Axiom::ParetoIndifference,
            Axiom::Anonymity,
            Axiom::Neutrality,
            Axiom::Transitivity,
        ] {
            assert!(check_axiom(&GilliesCovering, axiom, &s).unwrap().passed(), "{axiom}");
        }
        let complete = check_axiom(&GilliesCovering, Axiom::Completeness, &s).unwrap();
        assert!(!complete.passed());
        assert!(replay(&GilliesCovering, &complete, s.profiles()).unwrap());
    }

    #[test]
    fn power_holders_of_simple_rules() {
        let s = space(&Dictatorship(1), 3, 2);
        assert_eq!(find_power_holders(&s, PowerKind::Dictator), vec![1]);
        let s = space(&Unanimity, 3, 2);
        assert_eq!(find_power_holders(&s, PowerKind::Vetoer), vec![0, 1]);
        assert_eq!(
            find_decisive_coalitions(&s, CoalitionKind::WeaklyDecisive),
            vec![vec![0, 1]]
        );
        let sc = SplitCycle {
            measure: Measure::Margin,
        };
        let s = space(&sc, 3, 3);
        assert!(find_power_holders(&s, PowerKind::Vetoer).is_empty());
        let s = space(&Majority, 3, 3);
        assert_eq!(
            find_decisive_coalitions(&s, CoalitionKind::WeaklyDecisive),
            vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 1, 2]]
        );
    }

    #[test]
    fn report_json_shape() {
        let s = space(&Copeland, 3, 2);
        let report = check_axiom(&Copeland, Axiom::WeakIia, &s).unwrap();
        let v = report.to_json(s.candidates());
        assert_eq!(v["axiom"], "weak-iia");
        assert_eq!(v["verdict"], "fails");
        assert_eq!(v["witness"]["profiles"].as_array().unwrap().len(), 2);
        assert_eq!(v["witness"]["pair"].as_array().unwrap().len(), 2);
    }
}
