//! Explicit advantage and standard functions for the majority rule, Gillies
//! covering, Ranked Pairs and Split Cycle.

use serde_json::Value;

use crate::axioms::EvaluatedSpace;
use crate::ccr::{ranked_pairs_all, Measure, RuleKind};
use crate::error::{Error, Result};
use crate::margins::{
    majority_relation, margin_graph, possible_ratio_values, ratio_graph, restriction_margin, restriction_ratio,
    RatioOptions, RatioValue,
};
use crate::profiles::Preprofile;

use super::{verify_rationalization, OrderedGroup, Rationalization, VerificationFailure};

/// 0 when every candidate beating `x` in the context also beats `y`,
/// `|V|` otherwise.
pub fn gillies_standard(ctx: &Preprofile, x: usize, y: usize) -> i64 {
    let beats = majority_relation(ctx);
    let covered = (0..ctx.candidate_count())
        .filter(|&v| v != x && v != y)
        .all(|v| !beats.contains(v, x) || beats.contains(v, y));
    if covered {
        0
    } else {
        ctx.voter_count() as i64
    }
}

/// Least `k - 1` such that an added edge `x -> y` of weight `k` is locked.
/// Weights above every context weight lock first, so the search ends.
pub fn ranked_pairs_margin_standard(ctx: &Preprofile, x: usize, y: usize) -> i64 {
    let g = margin_graph(ctx);
    let top = g.edges().iter().map(|e| e.2).max().unwrap_or(0);
    for k in 1..=top + 1 {
        let mut h = g.clone();
        h.set_pair(x, y, k, -k);
        if ranked_pairs_all(&h).contains(x, y) {
            return k - 1;
        }
    }
    unreachable!("an edge heavier than all others is always locked")
}

/// Least `k - m` over possible ratio values `k` whose added edge `x -> y` is
/// locked, where `m` is the smallest gap between possible values.
///
/// When no value locks (the heaviest value `|V|` ties a cycle through
/// `x -> y`), the standard is `|V|`, which no advantage exceeds.
pub fn ranked_pairs_ratio_standard(ctx: &Preprofile, x: usize, y: usize) -> RatioValue {
    let opts = RatioOptions::default();
    let values = possible_ratio_values(ctx.voter_count(), opts);
    let gap = values.windows(2).map(|w| w[1].inner() - w[0].inner()).min();
    let g = ratio_graph(ctx, opts);
    for &k in values.iter().filter(|&&k| k > RatioValue::one()) {
        let mut h = g.clone();
        h.set_pair(x, y, k, k.recip());
        if ranked_pairs_all(&h).contains(x, y) {
            let gap = gap.expect("two distinct values");
            return RatioValue::from_inner(k.inner() - gap).expect("k exceeds 1 by at least the gap");
        }
    }
    *values.last().expect("nonempty")
}

/// Largest splitting number of a majority path from `y` to `x`, or 0.
pub fn split_cycle_margin_standard(ctx: &Preprofile, x: usize, y: usize) -> i64 {
    margin_graph(ctx).max_split(y, x).unwrap_or(0)
}

/// Ratio version of [`split_cycle_margin_standard`]; 1 without a path.
pub fn split_cycle_ratio_standard(ctx: &Preprofile, x: usize, y: usize) -> RatioValue {
    ratio_graph(ctx, RatioOptions::default())
        .max_split(y, x)
        .unwrap_or_else(RatioValue::one)
}

/// A built-in rationalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedForm {
    /// Advantage is the measure, standard the identity.
    Majority {
        measure: Measure,
    },
    Gillies,
    RankedPairs {
        measure: Measure,
    },
    SplitCycle {
        measure: Measure,
    },
}

impl ClosedForm {
    /// The closed form matching a rule, if it has one.
    pub fn for_rule(rule: RuleKind) -> Option<Self> {
        Some(match rule {
            RuleKind::Majority => ClosedForm::Majority {
                measure: Measure::Margin,
            },
            RuleKind::Gillies => ClosedForm::Gillies,
            RuleKind::RankedPairs { measure, .. } => ClosedForm::RankedPairs { measure },
            RuleKind::SplitCycle { measure } => ClosedForm::SplitCycle { measure },
            _ => return None,
        })
    }
}

/// A rationalization in either built-in group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyRationalization {
    Integer(Rationalization<i64>),
    Ratio(Rationalization<RatioValue>),
}

impl AnyRationalization {
    pub fn verify(&self, space: &EvaluatedSpace) -> Result<Option<VerificationFailure>> {
        match self {
            AnyRationalization::Integer(r) => verify_rationalization(r, space),
            AnyRationalization::Ratio(r) => verify_rationalization(r, space),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnyRationalization::Integer(r) => r.to_json(),
            AnyRationalization::Ratio(r) => r.to_json(),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        match v["group"].as_str() {
            Some(<i64 as OrderedGroup>::TAG) => Ok(AnyRationalization::Integer(Rationalization::from_json(v)?)),
            Some(<RatioValue as OrderedGroup>::TAG) => Ok(AnyRationalization::Ratio(Rationalization::from_json(v)?)),
            _ => Err(Error::Parse("rationalization: unknown group".into())),
        }
    }

    /// Numbers of advantage and standard entries.
    pub fn table_sizes(&self) -> (usize, usize) {
        match self {
            AnyRationalization::Integer(r) => (r.advantage_len(), r.standard_len()),
            AnyRationalization::Ratio(r) => (r.advantage_len(), r.standard_len()),
        }
    }

    pub fn group_tag(&self) -> &'static str {
        match self {
            AnyRationalization::Integer(_) => <i64 as OrderedGroup>::TAG,
            AnyRationalization::Ratio(_) => <RatioValue as OrderedGroup>::TAG,
        }
    }
}

/// Tabulates a closed form over the restrictions and contexts of `space`.
pub fn closed_form(form: ClosedForm, space: &EvaluatedSpace) -> AnyRationalization {
    let ratio_adv = |q: &_| restriction_ratio(q, RatioOptions::default());
    match form {
        ClosedForm::Majority {
            measure: Measure::Margin,
        } => AnyRationalization::Integer(Rationalization::tabulate(space, restriction_margin, |_, _, _| 0)),
        ClosedForm::Majority {
            measure: Measure::Ratio,
        } => AnyRationalization::Ratio(Rationalization::tabulate(space, ratio_adv, |_, _, _| RatioValue::one())),
        ClosedForm::Gillies => {
            AnyRationalization::Integer(Rationalization::tabulate(space, restriction_margin, |x, y, c| {
                gillies_standard(c, x, y)
            }))
        }
        ClosedForm::RankedPairs {
            measure: Measure::Margin,
        } => AnyRationalization::Integer(Rationalization::tabulate(space, restriction_margin, |x, y, c| {
            ranked_pairs_margin_standard(c, x, y)
        })),
        ClosedForm::RankedPairs {
            measure: Measure::Ratio,
        } => AnyRationalization::Ratio(Rationalization::tabulate(space, ratio_adv, |x, y, c| {
            ranked_pairs_ratio_standard(c, x, y)
        })),
        ClosedForm::SplitCycle {
            measure: Measure::Margin,
        } => AnyRationalization::Integer(Rationalization::tabulate(space, restriction_margin, |x, y, c| {
            split_cycle_margin_standard(c, x, y)
        })),
        ClosedForm::SplitCycle {
            measure: Measure::Ratio,
        } => AnyRationalization::Ratio(Rationalization::tabulate(space, ratio_adv, |x, y, c| {
            split_cycle_ratio_standard(c, x, y)
        })),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::figures;
    use crate::margins::realize_margin_graph;
    use crate::relations::CandidateSet;
    use std::sync::Arc;

    fn context_of_graph(g: &crate::margins::MarginGraph, x: usize, y: usize) -> Preprofile {
        let c = Arc::new(CandidateSet::letters(g.n()).unwrap());
        realize_margin_graph(c, g).unwrap().context(x, y).unwrap()
    }

    #[test]
    fn gillies_standard_examples() {
        let (a, b, c) = (0, 1, 2);
        assert_eq!(
            gillies_standard(&context_of_graph(&figures::fig3_graph(), a, b), a, b),
            0
        );
        let p = figures::fig4_profile();
        assert_eq!(gillies_standard(&p.context(b, c).unwrap(), b, c), 10);
        let two = crate::profiles::Profile::from_rankings(Arc::new(CandidateSet::letters(2).unwrap()), &[(3, "a>b")])
            .unwrap();
        assert_eq!(gillies_standard(&two.context(a, b).unwrap(), a, b), 0);
    }

    #[test]
    fn ranked_pairs_standard_in_fig5_context() {
        // context edges b->c (3) and c->a (1): weight 1 ties c->a and may
        // be processed after it, weight 2 locks
        let p = figures::fig5_profile();
        let ctx = p.context(0, 1).unwrap();
        assert_eq!(ranked_pairs_margin_standard(&ctx, 0, 1), 1);
    }

    #[test]
    fn ranked_pairs_standard_with_two_candidates() {
        let p = crate::profiles::Profile::from_rankings(Arc::new(CandidateSet::letters(2).unwrap()), &[(2, "a>b")])
            .unwrap();
        assert_eq!(ranked_pairs_margin_standard(&p.context(0, 1).unwrap(), 0, 1), 0);
        assert_eq!(
            ranked_pairs_ratio_standard(&p.context(0, 1).unwrap(), 0, 1),
            RatioValue::new(3, 2).unwrap()
        );
    }

    #[test]
    fn split_cycle_standard_examples() {
        let (a, b, d) = (0, 1, 3);
        assert_eq!(
            split_cycle_margin_standard(&context_of_graph(&figures::fig7_graph(), a, d), a, d),
            3
        );
        let p = figures::fig6_profile();
        assert_eq!(split_cycle_margin_standard(&p.context(a, b).unwrap(), a, b), 1);
        let two = crate::profiles::Profile::from_rankings(Arc::new(CandidateSet::letters(2).unwrap()), &[(1, "a>b")])
            .unwrap();
        assert_eq!(split_cycle_margin_standard(&two.context(a, b).unwrap(), a, b), 0);
        assert_eq!(
            split_cycle_ratio_standard(&two.context(a, b).unwrap(), a, b),
            RatioValue::one()
        );
    }
}
