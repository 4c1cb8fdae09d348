use std::collections::HashMap;

use crate::axioms::{check_orderability, check_pairwise_axiom, Axiom, EvaluatedSpace};
use crate::error::{Error, Result};
use crate::profiles::{PairRestriction, Preprofile};

use super::Rationalization;

/// Builds an integer-valued rationalization of the rule evaluated on
/// `space`, or reports which of weak IIA and orderability fails.
///
/// Each `P+(x, y)` is layered by its admissible ordering, one restriction per
/// layer: the `i`-th weakest gets advantage `i` for `x` over `y` and `-i` for
/// `y` over `x`; restrictions in neither `P+(x, y)` nor `P+(y, x)` get 0. The
/// standard for a context is one less than the lowest layer yielding `x P y`
/// there, or the layer count when none does.
pub fn construct_rationalization(space: &EvaluatedSpace) -> Result<Rationalization<i64>> {
    let weak_iia = check_pairwise_axiom(Axiom::WeakIia, space);
    if !weak_iia.passed() {
        return Err(Error::NotRationalizable(Box::new(weak_iia)));
    }
    let orderability = check_orderability(space);
    if !orderability.report.passed() {
        return Err(Error::NotRationalizable(Box::new(orderability.report)));
    }

    let mut r = Rationalization::new(space.candidates().clone());
    let mut layer: HashMap<PairRestriction, i64> = HashMap::new();
    let mut layers: HashMap<(usize, usize), i64> = HashMap::new();
    for ordering in &orderability.orderings {
        layers.insert((ordering.x, ordering.y), ordering.order.len() as i64);
        for (i, q) in ordering.order.iter().enumerate() {
            let level = i as i64 + 1;
            layer.insert(q.clone(), level);
            r.set_advantage(q.clone(), level);
            r.set_advantage(q.swapped(), -level);
        }
    }

    for (x, y) in space.ordered_pairs() {
        let mut lowest: HashMap<Preprofile, i64> = HashMap::new();
        for (i, p) in space.profiles().iter().enumerate() {
            let q = p.restrict(x, y)?;
            if r.advantage(&q).is_none() {
                r.set_advantage(q.swapped(), 0);
                r.set_advantage(q.clone(), 0);
            }
            let entry = lowest.entry(p.context(x, y)?).or_insert(i64::MAX);
            if space.output(i).strictly(x, y) {
                *entry = (*entry).min(layer[&q]);
            }
        }
        let n = layers[&(x, y)];
        for (context, j) in lowest {
            r.set_standard(x, y, context, if j == i64::MAX { n } else { j - 1 });
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asmodel::verify_rationalization;
    use crate::ccr::{Ccr, Copeland, GilliesCovering, Majority};
    use crate::profiles::ProfileSpace;
    use crate::relations::CandidateSet;
    use std::sync::Arc;

    fn space(f: &dyn Ccr, v: usize) -> EvaluatedSpace {
        let c = Arc::new(CandidateSet::letters(3).unwrap());
        EvaluatedSpace::from_space(f, &ProfileSpace::new(c, v, false).unwrap(), u128::MAX).unwrap()
    }

    #[test]
    fn majority_and_covering_are_rationalized() {
        for (f, v) in [(&Majority as &dyn Ccr, 3), (&GilliesCovering, 2)] {
            let s = space(f, v);
            let r = construct_rationalization(&s).unwrap();
            assert_eq!(verify_rationalization(&r, &s).unwrap(), None, "{}", f.name());
        }
    }

    #[test]
    fn copeland_is_rejected_by_weak_iia() {
        let s = space(&Copeland, 2);
        match construct_rationalization(&s) {
            Err(Error::NotRationalizable(report)) => assert_eq!(report.axiom, Axiom::WeakIia),
            other => panic!("unexpected {other:?}"),
        }
    }
}
