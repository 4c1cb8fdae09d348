use crate::relations::Relation;

use super::{Axiom, AxiomReport, EvaluatedSpace, Witness};

/// `r2` violates the consequent given that `r` has `x P y` (or, for IIA,
/// given `r`'s verdict on `x f y`).
fn violates(axiom: Axiom, r: &Relation, r2: &Relation, x: usize, y: usize) -> bool {
    match axiom {
        Axiom::Iia => r.contains(x, y) != r2.contains(x, y),
        Axiom::WeakIia => r.strictly(x, y) && r2.strictly(y, x),
        Axiom::PnWeakIia => r.strictly(x, y) && !(r2.strictly(x, y) || r2.incomparable(x, y)),
        Axiom::PiWeakIia => r.strictly(x, y) && !(r2.strictly(x, y) || r2.indifferent(x, y)),
        _ => unreachable!("not a pairwise axiom"),
    }
}

/// Checks IIA or one of its weakenings within every group of profiles that
/// agree on a pair. Pairs are scanned row-major and groups in order of first
/// appearance; the first violation found is the witness.
pub fn check_pairwise_axiom(axiom: Axiom, space: &EvaluatedSpace) -> AxiomReport {
    assert!(axiom.is_pairwise(), "{axiom} is not pairwise");
    for (x, y) in space.ordered_pairs() {
        let ids = space.restriction_ids(x, y);
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for (i, &id) in ids.iter().enumerate() {
            if id == groups.len() {
                groups.push(Vec::new());
            }
            groups[id].push(i);
        }
        for members in &groups {
            let anchor = match axiom {
                Axiom::Iia => members.first().copied(),
                _ => members.iter().copied().find(|&i| space.output(i).strictly(x, y)),
            };
            let Some(a) = anchor else { continue };
            let hit = members
                .iter()
                .copied()
                .find(|&b| violates(axiom, space.output(a), space.output(b), x, y));
            if let Some(b) = hit {
                let witness = Witness::new(vec![space.profile(a).clone(), space.profile(b).clone()], vec![x, y]);
                return AxiomReport::fails(axiom, witness);
            }
        }
    }
    AxiomReport::holds(axiom)
}
