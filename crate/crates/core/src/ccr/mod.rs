//! Collective choice rules behind one interface.
//!
//! Every rule maps a [`Profile`] to a social [`Relation`]. Rules whose weak
//! part would otherwise be unspecified add the pairs on which every voter is
//! indifferent (the diagonal included).

mod baigent;
mod dodgson;
mod ranked_pairs;
mod rules;
mod split_cycle;

use std::fmt;
use std::sync::Arc;

pub use baigent::BaigentWitness;
pub use dodgson::{dodgson_score, dodgson_scores, Dodgson, MajorityDodgson};
pub use ranked_pairs::{ranked_pairs_all, ranked_pairs_locked, RankedPairs, RankedPairsPolicy, TieBreaker};
pub use rules::{
    copeland_scores, covering_relation, unanimous_indifference, Copeland, Dictatorship, GilliesCovering, Majority,
    Unanimity,
};
pub use split_cycle::{split_cycle_defeats, split_cycle_defeats_by_cycles, SplitCycle};

use crate::error::{Error, Result};
use crate::margins::MarginGraph;
use crate::profiles::Profile;
use crate::relations::Relation;

/// A collective choice rule.
pub trait Ccr: Send + Sync {
    fn name(&self) -> String;

    /// Rules defined only on profiles of linear ballots.
    fn linear_only(&self) -> bool {
        false
    }

    fn evaluate(&self, profile: &Profile) -> Result<Relation>;
}

pub type CcrHandle = Arc<dyn Ccr>;

/// How strength of majority preference is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Measure {
    #[default]
    Margin,
    Ratio,
}

impl Measure {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "margin" => Ok(Measure::Margin),
            "ratio" => Ok(Measure::Ratio),
            other => Err(Error::Parse(format!("unknown measure `{other}`"))),
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Measure::Margin => "margin",
            Measure::Ratio => "ratio",
        })
    }
}

/// Named rule with its parameters, buildable into a [`CcrHandle`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleKind {
    Majority,
    Unanimity,
    Dictatorship(usize),
    Copeland,
    Gillies,
    RankedPairs {
        policy: RankedPairsPolicy,
        measure: Measure,
    },
    SplitCycle {
        measure: Measure,
    },
    Dodgson,
    MajorityDodgson,
    /// `relaxed` drops the voter and candidate minimums.
    BaigentWitness {
        relaxed: bool,
    },
}

impl RuleKind {
    pub fn build(self) -> CcrHandle {
        match self {
            RuleKind::Majority => Arc::new(Majority),
            RuleKind::Unanimity => Arc::new(Unanimity),
            RuleKind::Dictatorship(i) => Arc::new(Dictatorship(i)),
            RuleKind::Copeland => Arc::new(Copeland),
            RuleKind::Gillies => Arc::new(GilliesCovering),
            RuleKind::RankedPairs { policy, measure } => Arc::new(RankedPairs { policy, measure }),
            RuleKind::SplitCycle { measure } => Arc::new(SplitCycle { measure }),
            RuleKind::Dodgson => Arc::new(Dodgson),
            RuleKind::MajorityDodgson => Arc::new(MajorityDodgson),
            RuleKind::BaigentWitness { relaxed } => Arc::new(BaigentWitness { relaxed }),
        }
    }

    /// Parses a rule name as accepted on the command line.
    pub fn parse(name: &str, measure: Measure, policy: RankedPairsPolicy, dictator: usize) -> Result<Self> {
        Ok(match name {
            "majority" => RuleKind::Majority,
            "unanimity" => RuleKind::Unanimity,
            "dictatorship" => RuleKind::Dictatorship(dictator),
            "copeland" => RuleKind::Copeland,
            "gillies" | "covering" => RuleKind::Gillies,
            "ranked-pairs" => RuleKind::RankedPairs { policy, measure },
            "split-cycle" => RuleKind::SplitCycle { measure },
            "dodgson" => RuleKind::Dodgson,
            "majority-dodgson" => RuleKind::MajorityDodgson,
            "baigent-witness" => RuleKind::BaigentWitness { relaxed: false },
            other => return Err(Error::Parse(format!("unknown rule `{other}`"))),
        })
    }

    pub const NAMES: [&'static str; 10] = [
        "majority",
        "unanimity",
        "dictatorship",
        "copeland",
        "gillies",
        "ranked-pairs",
        "split-cycle",
        "dodgson",
        "majority-dodgson",
        "baigent-witness",
    ];

    /// Strict social preference computed from a margin graph alone, for the
    /// rules where that is determined.
    pub fn strict_part_of_graph(self, g: &MarginGraph) -> Result<Relation> {
        let beats = g.majority_relation();
        Ok(match self {
            RuleKind::Majority => beats,
            RuleKind::Copeland => {
                let s = copeland_scores(&beats);
                Relation::from_fn(g.n(), |x, y| s[x] > s[y])
            }
            RuleKind::Gillies => covering_relation(&beats).strict_part(),
            RuleKind::RankedPairs {
                measure: Measure::Margin,
                ..
            } => ranked_pairs_all(g),
            RuleKind::SplitCycle {
                measure: Measure::Margin,
            } => split_cycle_defeats(g),
            _ => {
                return Err(Error::InvalidGraph(format!(
                    "{} cannot be computed from a margin graph",
                    self.build().name()
                )))
            }
        })
    }

    /// Rules whose strict part depends only on the margin graph.
    pub fn margin_graph_only(self) -> bool {
        matches!(
            self,
            RuleKind::Majority
                | RuleKind::Copeland
                | RuleKind::Gillies
                | RuleKind::RankedPairs {
                    measure: Measure::Margin,
                    ..
                }
                | RuleKind::SplitCycle {
                    measure: Measure::Margin
                }
        )
    }
}

/// Registry rules defined on every weak-order profile, for exhaustive sweeps.
pub fn registry() -> Vec<RuleKind> {
    let mut out = vec![
        RuleKind::Majority,
        RuleKind::Unanimity,
        RuleKind::Dictatorship(0),
        RuleKind::Copeland,
        RuleKind::Gillies,
    ];
    for measure in [Measure::Margin, Measure::Ratio] {
        for policy in [
            RankedPairsPolicy::ParetoIndifference,
            RankedPairsPolicy::CompleteClosure,
        ] {
            out.push(RuleKind::RankedPairs { policy, measure });
        }
        out.push(RuleKind::SplitCycle { measure });
    }
    out.push(RuleKind::BaigentWitness { relaxed: true });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::figures;
    use crate::margins::{margin_graph, MarginGraph};
    use crate::relations::CandidateSet;

    fn strict(r: &Relation) -> Vec<(usize, usize)> {
        r.strict_part().pairs().collect()
    }

    #[test]
    fn majority_on_latin_square_is_cyclic() {
        let (_, right) = figures::fig1_profiles();
        let r = Majority.evaluate(&right).unwrap();
        assert_eq!(strict(&r), vec![(0, 1), (1, 2), (2, 0)]);
    }

    #[test]
    fn unanimity_and_dictatorship() {
        let abc = Arc::new(CandidateSet::letters(3).unwrap());
        let p = Profile::from_rankings(abc.clone(), &[(1, "a>b>c"), (1, "b>a>c")]).unwrap();
        let u = Unanimity.evaluate(&p).unwrap();
        assert!(u.incomparable(0, 1));
        assert!(u.strictly(0, 2) && u.strictly(1, 2));
        let q = Profile::from_rankings(abc, &[(1, "a>b>c"), (1, "a~b>c")]).unwrap();
        assert!(Unanimity.evaluate(&q).unwrap().contains(0, 1));
        assert_eq!(Dictatorship(1).evaluate(&p).unwrap(), p.ballot(1).relation());
        assert!(Dictatorship(2).evaluate(&p).is_err());
    }

    #[test]
    fn copeland_scores_on_reference_profiles() {
        assert_eq!(
            copeland_scores(&margin_graph(&figures::fig5_profile()).majority_relation()),
            vec![0, 0, 0]
        );
        let fig4 = figures::fig4_profile();
        assert_eq!(
            copeland_scores(&margin_graph(&fig4).majority_relation()),
            vec![1, 0, -1]
        );
        assert_eq!(strict(&Copeland.evaluate(&fig4).unwrap()), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(Copeland.evaluate(&figures::fig5_profile()).unwrap(), Relation::full(3));
    }

    #[test]
    fn covering_on_reference_graphs() {
        let cover = |g: &MarginGraph| covering_relation(&g.majority_relation());
        assert_eq!(strict(&cover(&figures::fig3_graph())), vec![(0, 1)]);
        let fig4 = GilliesCovering.evaluate(&figures::fig4_profile()).unwrap();
        assert_eq!(strict(&fig4), vec![(0, 1)]);
        assert!(fig4.incomparable(1, 2) && fig4.incomparable(0, 2));
        assert_eq!(strict(&cover(&figures::fig7_graph())), vec![(3, 2)]);
    }

    #[test]
    fn ranked_pairs_on_reference_graphs() {
        let fig5 = margin_graph(&figures::fig5_profile());
        assert_eq!(
            ranked_pairs_all(&fig5).pairs().collect::<Vec<_>>(),
            vec![(0, 1), (1, 2)]
        );
        let fig7 = figures::fig7_graph();
        let (a, b, c, d) = (0, 1, 2, 3);
        let expected = Relation::from_pairs(4, [(d, c), (d, b), (c, b), (a, c), (a, d)]);
        assert_eq!(ranked_pairs_all(&fig7), expected);
        assert_eq!(ranked_pairs_locked(&fig7, &TieBreaker::lexicographic(4)), expected);
    }

    #[test]
    fn symmetric_ties_cancel() {
        // a->b and b->c and c->a all weight 2: every edge is dropped by some order
        let g = MarginGraph::from_margins(3, &[(0, 1, 2), (1, 2, 2), (2, 0, 2)]).unwrap();
        assert!(ranked_pairs_all(&g).is_empty());
        assert_eq!(ranked_pairs_locked(&g, &TieBreaker::lexicographic(3)).len(), 2);
    }

    #[test]
    fn split_cycle_on_reference_graphs() {
        let (a, b, c, d) = (0, 1, 2, 3);
        let fig7 = figures::fig7_graph();
        let expected = Relation::from_pairs(4, [(a, c), (c, b), (d, b), (d, c)]);
        assert_eq!(split_cycle_defeats(&fig7), expected);
        assert_eq!(split_cycle_defeats_by_cycles(&fig7), expected);
        let mut with_ad = expected;
        with_ad.insert(a, d);
        assert_eq!(ranked_pairs_all(&fig7), with_ad);
        let fig6 = figures::fig6_graph();
        assert_eq!(split_cycle_defeats(&fig6), Relation::from_pairs(3, [(0, 1), (1, 2)]));
    }

    #[test]
    fn rule_names_parse() {
        for name in RuleKind::NAMES {
            assert!(RuleKind::parse(name, Measure::Margin, RankedPairsPolicy::ParetoIndifference, 0).is_ok());
        }
        assert!(RuleKind::parse("borda", Measure::Margin, RankedPairsPolicy::ParetoIndifference, 0).is_err());
    }
}
