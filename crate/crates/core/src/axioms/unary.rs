use rayon::prelude::*;

use crate::ccr::Ccr;
use crate::error::Result;
use crate::profiles::Profile;
use crate::relations::Relation;

use super::{find_cycle, Axiom, AxiomReport, EvaluatedSpace, Witness};

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
}

/// Violated pair or triple of a per-profile condition that needs only the
/// profile and the rule's output on it.
fn local_violation(axiom: Axiom, p: &Profile, out: &Relation) -> Option<Vec<usize>> {
    let n = p.candidate_count();
    match axiom {
        Axiom::Pareto | Axiom::StrongPareto | Axiom::ParetoIndifference | Axiom::Completeness => pairs(n)
            .find(|&(x, y)| pair_violated(axiom, p, out, x, y))
            .map(|(x, y)| vec![x, y]),
        Axiom::Transitivity | Axiom::QuasiTransitivity | Axiom::NegativeTransitivity => triples(n)
            .find(|&(x, y, z)| triple_violated(axiom, out, x, y, z))
            .map(|(x, y, z)| vec![x, y, z]),
        Axiom::Acyclicity => {
            let strict = out.strict_part();
            find_cycle(n, |a, b| strict.contains(a, b))
        }
        _ => None,
    }
}

fn triple_violated(axiom: Axiom, out: &Relation, x: usize, y: usize, z: usize) -> bool {
    match axiom {
        Axiom::Transitivity => out.contains(x, y) && out.contains(y, z) && !out.contains(x, z),
        Axiom::QuasiTransitivity => out.strictly(x, y) && out.strictly(y, z) && !out.strictly(x, z),
        Axiom::NegativeTransitivity => !out.strictly(x, y) && !out.strictly(y, z) && out.strictly(x, z),
        _ => false,
    }
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |x| (0..n).flat_map(move |y| (0..n).map(move |z| (x, y, z))))
}

/// Voter or candidate permutations generating the whole symmetric group:
/// the transposition of the first two and the cyclic shift.
fn generators(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k >= 2 {
        let mut swap: Vec<usize> = (0..k).collect();
        swap.swap(0, 1);
        out.push(swap);
    }
    if k >= 3 {
        out.push((0..k).map(|i| (i + 1) % k).collect());
    }
    out
}

/// The image of `p` under `perm` and whether the rule commutes with it.
fn symmetry_image(f: &dyn Ccr, axiom: Axiom, p: &Profile, out: &Relation, perm: &[usize]) -> Result<(Profile, bool)> {
    Ok(if axiom == Axiom::Anonymity {
        let image = p.permute_voters(perm)?;
        let ok = f.evaluate(&image)? == *out;
        (image, ok)
    } else {
        let image = p.permute_candidates(perm)?;
        let ok = f.evaluate(&image)? == out.permute(perm);
        (image, ok)
    })
}

fn symmetry_violation(f: &dyn Ccr, axiom: Axiom, p: &Profile, out: &Relation) -> Result<Option<(Profile, Vec<usize>)>> {
    let k = if axiom == Axiom::Anonymity {
        p.voter_count()
    } else {
        p.candidate_count()
    };
    for perm in generators(k) {
        let (image, ok) = symmetry_image(f, axiom, p, out, &perm)?;
        if !ok {
            return Ok(Some((image, perm)));
        }
    }
    Ok(None)
}

/// Checks a condition on single profiles, or a symmetry condition. Symmetry
/// is tested against the two generators of the permutation group only, which
/// suffices: if the rule commutes with each generator it commutes with every
/// product of them.
pub fn check_unary_axiom(f: &dyn Ccr, axiom: Axiom, space: &EvaluatedSpace) -> Result<AxiomReport> {
    let n = space.candidate_count();
    let witness: Option<Witness> = match axiom {
        Axiom::Sni => pairs(n)
            .find(|&(x, y)| !space.outputs().iter().any(|r| r.strictly(x, y)))
            .map(|(x, y)| Witness::new(Vec::new(), vec![x, y])),
        Axiom::Anonymity | Axiom::Neutrality => {
            let found = (0..space.len())
                .into_par_iter()
                .map(|i| symmetry_violation(f, axiom, space.profile(i), space.output(i)).map(|v| v.map(|v| (i, v))))
                .find_map_first(|r| r.transpose())
                .transpose()?;
            found.map(|(i, (image, perm))| {
                let mut w = Witness::new(vec![space.profile(i).clone(), image], Vec::new());
                w.permutation = Some(perm);
                w
            })
        }
        _ => (0..space.len()).into_par_iter().find_map_first(|i| {
            local_violation(axiom, space.profile(i), space.output(i))
                .map(|cands| Witness::new(vec![space.profile(i).clone()], cands))
        }),
    };
    Ok(match witness {
        Some(w) => AxiomReport::fails(axiom, w),
        None => AxiomReport::holds(axiom),
    })
}

pub(super) fn replay(f: &dyn Ccr, axiom: Axiom, w: &Witness) -> Result<bool> {
    match axiom {
        Axiom::Anonymity | Axiom::Neutrality => {
            let ([p, image], Some(perm)) = (w.profiles.as_slice(), &w.permutation) else {
                return Ok(false);
            };
            let out = f.evaluate(p)?;
            let (expected, ok) = symmetry_image(f, axiom, p, &out, perm)?;
            Ok(expected == *image && !ok)
        }
        _ => {
            let [p] = w.profiles.as_slice() else { return Ok(false) };
            let out = f.evaluate(p)?;
            let n = p.candidate_count();
            let c = &w.candidates;
            Ok(match (axiom, c.as_slice()) {
                (Axiom::Acyclicity, cycle) if !cycle.is_empty() && cycle.iter().all(|&c| c < n) => {
                    let strict = out.strict_part();
                    (0..cycle.len()).all(|i| strict.contains(cycle[i], cycle[(i + 1) % cycle.len()]))
                }
                (_, &[x, y]) if x < n && y < n => pair_violated(axiom, p, &out, x, y),
                (_, &[x, y, z]) if x < n && y < n && z < n => triple_violated(axiom, &out, x, y, z),
                _ => false,
            })
        }
    }
}

fn pair_violated(axiom: Axiom, p: &Profile, out: &Relation, x: usize, y: usize) -> bool {
    let b = p.ballots();
    x != y
        && match axiom {
            Axiom::Pareto => b.iter().all(|w| w.prefers(x, y)) && !out.strictly(x, y),
            Axiom::StrongPareto => {
                b.iter().all(|w| w.weakly_prefers(x, y)) && b.iter().any(|w| w.prefers(x, y)) && !out.strictly(x, y)
            }
            Axiom::ParetoIndifference => b.iter().all(|w| w.indifferent_between(x, y)) && !out.indifferent(x, y),
            Axiom::Completeness => out.incomparable(x, y),
            _ => false,
        }
}
