use std::collections::HashSet;

use rayon::prelude::*;

use super::EvaluatedSpace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PowerKind {
    /// `x P_i y` forces `x P y`.
    Dictator,
    /// `x P_i y` forces `y P x`.
    InverseDictator,
    /// `x P_i y` forces `x f y`.
    WeakDictator,
    /// `x P_i y` rules out `y P x`.
    Vetoer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoalitionKind {
    /// Unanimous strict preference of the coalition forces `x f y`.
    WeaklyDecisive,
    /// As above, but only when every voter outside the coalition opposes.
    AlmostWeaklyDecisive,
}

/// For each profile and ordered pair: voters with `x P_i y`, voters with
/// `y P_i x`, and the output relation's verdicts.
fn pair_masks(space: &EvaluatedSpace, i: usize) -> impl Iterator<Item = (u64, u64, usize, usize)> + '_ {
    let p = space.profile(i);
    space.ordered_pairs().into_iter().map(move |(x, y)| {
        let mut pro = 0u64;
        let mut con = 0u64;
        for (v, b) in p.ballots().iter().enumerate() {
            if b.prefers(x, y) {
                pro |= 1 << v;
            } else if b.prefers(y, x) {
                con |= 1 << v;
            }
        }
        (pro, con, x, y)
    })
}

fn voter_count(space: &EvaluatedSpace) -> usize {
    space.profiles().first().map_or(0, |p| p.voter_count())
}

/// Voters holding the given power over every profile of the space.
pub fn find_power_holders(space: &EvaluatedSpace, kind: PowerKind) -> Vec<usize> {
    let v = voter_count(space);
    assert!(v <= 64, "at most 64 voters");
    let disqualified = (0..space.len())
        .into_par_iter()
        .map(|i| {
            let out = space.output(i);
            pair_masks(space, i)
                .filter(|&(_, _, x, y)| match kind {
                    PowerKind::Dictator => !out.strictly(x, y),
                    PowerKind::InverseDictator => !out.strictly(y, x),
                    PowerKind::WeakDictator => !out.contains(x, y),
                    PowerKind::Vetoer => out.strictly(y, x),
                })
                .fold(0u64, |acc, (pro, ..)| acc | pro)
        })
        .reduce(|| 0, |a, b| a | b);
    (0..v).filter(|&i| disqualified & (1 << i) == 0).collect()
}

/// Nonempty coalitions with the given power, ordered by their bitmask.
pub fn find_decisive_coalitions(space: &EvaluatedSpace, kind: CoalitionKind) -> Vec<Vec<usize>> {
    let v = voter_count(space);
    assert!(v < 32, "coalition enumeration needs fewer than 32 voters");
    let everyone = (1u64 << v) - 1;
    // supporter sets whose unanimous preference failed to secure `x f y`
    let failures: HashSet<u64> = (0..space.len())
        .into_par_iter()
        .map(|i| {
            let out = space.output(i);
            pair_masks(space, i)
                .filter(|&(pro, con, x, y)| {
                    !out.contains(x, y) && (kind == CoalitionKind::WeaklyDecisive || pro | con == everyone)
                })
                .map(|(pro, ..)| pro)
                .collect::<HashSet<u64>>()
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    (1..=everyone)
        .filter(|&c| match kind {
            CoalitionKind::WeaklyDecisive => !failures.iter().any(|&s| s & c == c),
            CoalitionKind::AlmostWeaklyDecisive => !failures.contains(&c),
        })
        .map(|c| (0..v).filter(|&i| c & (1 << i) != 0).collect())
        .collect()
}
