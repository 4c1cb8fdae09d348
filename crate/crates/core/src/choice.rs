//! Choice functions induced by a social relation and their consistency
//! conditions. Feasible sets are bitmasks over candidate indices.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::relations::Relation;

/// Feasible set of candidates, bit `i` for candidate `i`.
pub type Subset = u32;

pub fn subset_of(candidates: &[usize]) -> Subset {
    candidates.iter().fold(0, |acc, &c| acc | (1 << c))
}

pub fn members(s: Subset) -> Vec<usize> {
    (0..Subset::BITS as usize).filter(|&i| s & (1 << i) != 0).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChoiceMode {
    /// Elements no feasible candidate strictly beats.
    Maximal,
    /// Elements weakly preferred to every feasible candidate.
    Greatest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChoiceFunction {
    pub base: Relation,
    pub mode: ChoiceMode,
}

impl ChoiceFunction {
    pub fn maximal(base: Relation) -> Self {
        Self {
            base,
            mode: ChoiceMode::Maximal,
        }
    }

    pub fn greatest(base: Relation) -> Self {
        Self {
            base,
            mode: ChoiceMode::Greatest,
        }
    }

    /// The chosen subset of `y`. Maximal choice can be empty when the strict
    /// part has a cycle inside `y`; greatest choice whenever `y` has an
    /// incomparable pair.
    pub fn choose(&self, y: Subset) -> Subset {
        let r = &self.base;
        members(y)
            .into_iter()
            .filter(|&x| {
                members(y).into_iter().all(|z| match self.mode {
                    ChoiceMode::Maximal => !r.strictly(z, x),
                    ChoiceMode::Greatest => r.contains(x, z),
                })
            })
            .fold(0, |acc, x| acc | (1 << x))
    }

    pub fn choose_from(&self, y: &[usize]) -> Vec<usize> {
        members(self.choose(subset_of(y)))
    }

    fn all_sets(&self) -> Subset {
        ((1u64 << self.base.n()) - 1) as Subset
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChoiceCondition {
    /// `C(Y1 ∪ Y2) = C(C(Y1) ∪ C(Y2))`.
    PathIndependence,
    /// Sen's β: for `Y ⊆ Z` with `C(Y) ∩ C(Z)` nonempty, `C(Y) ⊆ C(Z)`.
    Beta,
    /// Generalized Condorcet axiom: an element chosen from every pair it
    /// forms within `Y` is chosen from `Y`.
    Gca,
}

impl ChoiceCondition {
    pub const ALL: [ChoiceCondition; 3] = [
        ChoiceCondition::PathIndependence,
        ChoiceCondition::Beta,
        ChoiceCondition::Gca,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ChoiceCondition::PathIndependence => "path-independence",
            ChoiceCondition::Beta => "beta",
            ChoiceCondition::Gca => "gca",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == text)
            .ok_or_else(|| Error::Parse(format!("unknown choice condition `{text}`")))
    }
}

impl fmt::Display for ChoiceCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of a choice condition check. The witness is `(Y1, Y2)` for path
/// independence, `(Y, Z)` for β and `(Y, {x})` for the Condorcet axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChoiceReport {
    pub condition: ChoiceCondition,
    pub witness: Option<(Subset, Subset)>,
}

impl ChoiceReport {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Checks the condition over every applicable pair of nonempty subsets.
pub fn check_choice_condition(c: &ChoiceFunction, condition: ChoiceCondition) -> ChoiceReport {
    let all = c.all_sets();
    let chosen: Vec<Subset> = (0..=all).map(|s| c.choose(s)).collect();
    let at = |s: Subset| chosen[s as usize];
    let violation = |a: Subset| -> Option<(Subset, Subset)> {
        match condition {
            ChoiceCondition::PathIndependence => (1..=all).find(|&b| at(a | b) != at(at(a) | at(b))).map(|b| (a, b)),
            ChoiceCondition::Beta => (1..=all)
                .filter(|&z| a & z == a)
                .find(|&z| at(a) & at(z) != 0 && at(a) & !at(z) != 0)
                .map(|z| (a, z)),
            ChoiceCondition::Gca => members(a)
                .into_iter()
                .find(|&x| {
                    let bit = 1 << x;
                    members(a).iter().all(|&y| at(bit | (1 << y)) & bit != 0) && at(a) & bit == 0
                })
                .map(|x| (a, 1 << x)),
        }
    };
    let witness = (1..=all).into_par_iter().find_map_first(violation);
    ChoiceReport { condition, witness }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ccr::{Ccr, GilliesCovering, Measure, SplitCycle};
    use crate::figures;

    const A: usize = 0;
    const B: usize = 1;
    const C: usize = 2;

    #[test]
    fn covering_choice_in_fig4() {
        let r = GilliesCovering.evaluate(&figures::fig4_profile()).unwrap();
        let m = ChoiceFunction::maximal(r);
        assert_eq!(m.choose_from(&[B, C]), vec![B, C]);
        assert_eq!(m.choose_from(&[A, B, C]), vec![A, C]);
        let beta = check_choice_condition(&m, ChoiceCondition::Beta);
        assert_eq!(beta.witness, Some((subset_of(&[B, C]), subset_of(&[A, B, C]))));
        assert!(check_choice_condition(&m, ChoiceCondition::PathIndependence).holds());
    }

    #[test]
    fn split_cycle_choice_in_fig6_is_path_dependent() {
        let sc = SplitCycle {
            measure: Measure::Margin,
        };
        let m = ChoiceFunction::maximal(sc.evaluate(&figures::fig6_profile()).unwrap());
        assert_eq!(m.choose_from(&[A, B, C]), vec![A]);
        assert_eq!(m.choose_from(&[A, B]), vec![A]);
        assert!(m.choose_from(&[A, C]).contains(&C));
        let report = check_choice_condition(&m, ChoiceCondition::PathIndependence);
        assert!(!report.holds());
    }

    #[test]
    fn singletons_and_greatest_within_maximal() {
        let r = crate::relations::WeakOrder::from_classes(3, &[vec![A, B], vec![C]])
            .unwrap()
            .relation();
        let m = ChoiceFunction::maximal(r);
        let g = ChoiceFunction::greatest(r);
        for y in 1..8u32 {
            assert_eq!(g.choose(y) & !m.choose(y), 0);
        }
        assert_eq!(m.choose(subset_of(&[B])), subset_of(&[B]));
    }
}
