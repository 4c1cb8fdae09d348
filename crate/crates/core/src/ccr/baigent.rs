//! A transitive, anonymous, neutral, Pareto, weak-IIA rule that is not
//! orderable once there are at least five voters and three candidates.
//!
//! Two ballot shapes produce a linear social order, everything else falls
//! back to the unanimity rule:
//!
//! * all voters but one share a linear ballot `A`, and the remaining voter
//!   casts `A` with its top two swapped: the output is `A`;
//! * a block `C1` casts a linear ballot `A` and a strictly smaller block
//!   `C2` of at least two voters casts `A` with its bottom two swapped: the
//!   output is `A`.

use crate::error::{Error, Result};
use crate::profiles::Profile;
use crate::relations::{Relation, WeakOrder};

use super::{Ccr, Unanimity};

#[derive(Debug, Clone, Copy)]
pub struct BaigentWitness {
    /// Skip the `|V| >= 5`, `|X| >= 3` check so the rule can be swept over
    /// smaller spaces.
    pub relaxed: bool,
}

fn swapped_at(order: &[usize], i: usize) -> Vec<usize> {
    let mut out = order.to_vec();
    out.swap(i, i + 1);
    out
}

/// The linear order chosen by one of the two special shapes, if any.
fn special_order(p: &Profile) -> Option<WeakOrder> {
    if !p.is_linear() || p.candidate_count() < 2 {
        return None;
    }
    let types = p.ballot_multiset();
    let [(first, n1), (second, n2)] = types.as_slice() else {
        return None;
    };
    let (major, minor, n_major, n_minor) = if n1 >= n2 {
        (first, second, *n1, *n2)
    } else {
        (second, first, *n2, *n1)
    };
    let a = major.linear_sequence();
    let b = minor.linear_sequence();
    let n = a.len();
    let single_deviant = n_minor == 1 && n_major >= 2 && b == swapped_at(&a, 0);
    let smaller_block = n_minor > 1 && n_major > n_minor && b == swapped_at(&a, n - 2);
    (single_deviant || smaller_block).then_some(*major)
}

impl Ccr for BaigentWitness {
    fn name(&self) -> String {
        "baigent-witness".into()
    }

    fn evaluate(&self, p: &Profile) -> Result<Relation> {
        if !self.relaxed && (p.voter_count() < 5 || p.candidate_count() < 3) {
            return Err(Error::Cardinality {
                rule: self.name(),
                requirement: "at least 5 voters and 3 candidates".into(),
            });
        }
        match special_order(p) {
            Some(order) => Ok(order.relation()),
            None => Unanimity.evaluate(p),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::CandidateSet;
    use std::sync::Arc;

    fn xyz() -> Arc<CandidateSet> {
        Arc::new(CandidateSet::new(["x", "y", "z"]).unwrap())
    }

    const RULE: BaigentWitness = BaigentWitness { relaxed: false };

    #[test]
    fn the_four_profiles_of_the_non_orderability_argument() {
        let (x, y) = (0, 1);
        // three voters x>y, two voters y>x, pair on top
        let r1 = Profile::from_rankings(xyz(), &[(3, "x>y>z"), (2, "y>x>z")]).unwrap();
        let f1 = RULE.evaluate(&r1).unwrap();
        assert!(f1.incomparable(x, y));
        // four against one, pair on top
        let r2 = Profile::from_rankings(xyz(), &[(4, "x>y>z"), (1, "y>x>z")]).unwrap();
        assert!(RULE.evaluate(&r2).unwrap().strictly(x, y));
        // three against two, pair at the bottom
        let r3 = Profile::from_rankings(xyz(), &[(3, "z>x>y"), (2, "z>y>x")]).unwrap();
        assert!(RULE.evaluate(&r3).unwrap().strictly(x, y));
        // four against one, pair at the bottom
        let r4 = Profile::from_rankings(xyz(), &[(4, "z>x>y"), (1, "z>y>x")]).unwrap();
        assert!(RULE.evaluate(&r4).unwrap().incomparable(x, y));
    }

    #[test]
    fn voter_order_does_not_matter() {
        let p = Profile::from_rankings(xyz(), &[(2, "x>y>z"), (1, "y>x>z"), (2, "x>y>z")]).unwrap();
        assert_eq!(
            RULE.evaluate(&p).unwrap(),
            WeakOrder::linear(&[0, 1, 2]).unwrap().relation()
        );
    }

    #[test]
    fn small_spaces_need_the_relaxed_rule() {
        let p = Profile::from_rankings(xyz(), &[(2, "x>y>z")]).unwrap();
        assert!(RULE.evaluate(&p).is_err());
        assert!(BaigentWitness { relaxed: true }.evaluate(&p).is_ok());
    }
}
