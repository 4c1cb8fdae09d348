use std::sync::Arc;

use proptest::prelude::*;

use advstd::asmodel::OrderedGroup;
use advstd::ccr::{
    covering_relation, dodgson_score, ranked_pairs_all, ranked_pairs_locked, split_cycle_defeats,
    split_cycle_defeats_by_cycles, Ccr, GilliesCovering, Measure, RankedPairs, RankedPairsPolicy, SplitCycle,
    TieBreaker,
};
use advstd::choice::{check_choice_condition, ChoiceCondition, ChoiceFunction};
use advstd::margins::{margin, margin_graph, ratio, realize_margin_graph, MarginGraph, RatioValue};
use advstd::profiles::{enumerate_linear_orders, enumerate_weak_orders, Profile};
use advstd::relations::{permutations, CandidateSet, Relation};

fn profile_with(n: usize, voters: usize, linear: bool) -> impl Strategy<Value = Profile> {
    let orders = if linear {
        enumerate_linear_orders(n)
    } else {
        enumerate_weak_orders(n)
    };
    let count = orders.len();
    prop::collection::vec(0..count, voters).prop_map(move |picks| {
        let c = Arc::new(CandidateSet::letters(n).unwrap());
        Profile::new(c, picks.iter().map(|&i| orders[i]).collect()).unwrap()
    })
}

fn profile() -> impl Strategy<Value = Profile> {
    (2usize..=4, 1usize..=7).prop_flat_map(|(n, v)| profile_with(n, v, false))
}

fn linear_profile() -> impl Strategy<Value = Profile> {
    (2usize..=4, 1usize..=6).prop_flat_map(|(n, v)| profile_with(n, v, true))
}

fn graph() -> impl Strategy<Value = MarginGraph> {
    (1usize..=5).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(-6i64..=6, pairs).prop_map(move |weights| {
            let mut edges = Vec::new();
            let mut it = weights.into_iter();
            for x in 0..n {
                for y in x + 1..n {
                    match it.next().unwrap() {
                        w if w > 0 => edges.push((x, y, w)),
                        w if w < 0 => edges.push((y, x, -w)),
                        _ => {}
                    }
                }
            }
            MarginGraph::from_margins(n, &edges).unwrap()
        })
    })
}

fn relation(n: usize) -> impl Strategy<Value = Relation> {
    prop::collection::vec(any::<bool>(), n * n)
        .prop_map(move |bits| Relation::from_fn(n, |x, y| x == y || bits[x * n + y]))
}

fn strict_pairs(r: &Relation) -> Vec<(usize, usize)> {
    r.strict_part().pairs().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn voter_permutations_compose(p in profile(), seed in any::<u64>()) {
        let perms = permutations(p.voter_count());
        let tau = &perms[seed as usize % perms.len()];
        let mut inverse = vec![0; tau.len()];
        for (i, &t) in tau.iter().enumerate() {
            inverse[t] = i;
        }
        let back = p.permute_voters(tau).unwrap().permute_voters(&inverse).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn candidate_permutations_commute_with_margins(p in profile(), seed in any::<u64>()) {
        let n = p.candidate_count();
        let perms = permutations(n);
        let pi = &perms[seed as usize % perms.len()];
        let q = p.permute_candidates(pi).unwrap();
        for x in 0..n {
            for y in 0..n {
                prop_assert_eq!(margin(&q, pi[x], pi[y]), margin(&p, x, y));
            }
        }
    }

    #[test]
    fn restriction_and_context_recombine(p in profile()) {
        let n = p.candidate_count();
        for x in 0..n {
            for y in (0..n).filter(|&y| y != x) {
                let back = Profile::recombine(
                    p.candidates().clone(),
                    &p.context(x, y).unwrap(),
                    &p.restrict(x, y).unwrap(),
                ).unwrap();
                prop_assert_eq!(&back, &p);
            }
        }
    }

    #[test]
    fn margins_are_antisymmetric_and_ratios_reciprocal(p in profile()) {
        let n = p.candidate_count();
        for x in 0..n {
            for y in 0..n {
                prop_assert_eq!(margin(&p, x, y), -margin(&p, y, x));
                prop_assert_eq!(ratio(&p, x, y) * ratio(&p, y, x), RatioValue::one());
            }
        }
    }

    #[test]
    fn ranked_pairs_locks_an_acyclic_subset(g in graph(), seed in any::<u64>()) {
        let n = g.n();
        let edges = g.edges();
        let mut order: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y))).collect();
        // a seeded rotation gives a varying tie-breaker
        if !order.is_empty() {
            let k = seed as usize % order.len();
            order.rotate_left(k);
        }
        let t = TieBreaker::new(n, &order).unwrap();
        let locked = ranked_pairs_locked(&g, &t);
        prop_assert!(locked.is_acyclic());
        prop_assert!(locked.pairs().all(|(x, y)| edges.iter().any(|&(a, b, _)| (a, b) == (x, y))));
        prop_assert!(ranked_pairs_all(&g).is_subset(&locked));
    }

    #[test]
    fn split_cycle_definitions_agree(g in graph()) {
        let sc = split_cycle_defeats(&g);
        prop_assert_eq!(sc, split_cycle_defeats_by_cycles(&g));
        prop_assert!(sc.is_acyclic());
    }

    #[test]
    fn covering_is_transitive(p in profile()) {
        let r = GilliesCovering.evaluate(&p).unwrap();
        prop_assert!(r.strict_part().is_transitive());
        prop_assert!(covering_relation(&margin_graph(&p).majority_relation()).strict_part().is_transitive());
    }

    #[test]
    fn graph_rules_depend_only_on_the_margin_graph(p in profile()) {
        let g = margin_graph(&p);
        let Ok(q) = realize_margin_graph(p.candidates().clone(), &g) else {
            return Ok(());
        };
        prop_assert_eq!(margin_graph(&q), g);
        let rp = RankedPairs { policy: RankedPairsPolicy::ParetoIndifference, measure: Measure::Margin };
        let sc = SplitCycle { measure: Measure::Margin };
        prop_assert_eq!(strict_pairs(&rp.evaluate(&p).unwrap()), strict_pairs(&rp.evaluate(&q).unwrap()));
        prop_assert_eq!(strict_pairs(&sc.evaluate(&p).unwrap()), strict_pairs(&sc.evaluate(&q).unwrap()));
        prop_assert_eq!(
            strict_pairs(&GilliesCovering.evaluate(&p).unwrap()),
            strict_pairs(&GilliesCovering.evaluate(&q).unwrap())
        );
    }

    #[test]
    fn dodgson_zero_exactly_for_condorcet_winners(p in linear_profile()) {
        let n = p.candidate_count();
        for x in 0..n {
            let winner = (0..n).filter(|&y| y != x).all(|y| margin(&p, x, y) > 0);
            prop_assert_eq!(dodgson_score(&p, x).unwrap() == 0, winner);
        }
    }

    #[test]
    fn profile_json_is_canonical(p in profile()) {
        let text = p.to_json();
        let back = Profile::from_json(&text).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(back.to_json(), text);
    }

    #[test]
    fn integer_group_laws(a in -1000i64..1000, b in -1000i64..1000, c in -1000i64..1000) {
        group_laws(a, b, c)?;
    }

    #[test]
    fn ratio_group_laws(a in (1i64..50, 1i64..50), b in (1i64..50, 1i64..50), c in (1i64..50, 1i64..50)) {
        let v = |(p, q): (i64, i64)| RatioValue::new(p, q).unwrap();
        group_laws(v(a), v(b), v(c))?;
    }

    #[test]
    fn quasi_transitive_base_gives_path_independence(r in (2usize..=5).prop_flat_map(relation)) {
        prop_assume!(r.is_quasi_transitive());
        let m = ChoiceFunction::maximal(r);
        prop_assert!(check_choice_condition(&m, ChoiceCondition::PathIndependence).holds());
    }

    #[test]
    fn maximal_choice_sees_only_the_strict_part(
        (r, extra) in (2usize..=5).prop_flat_map(|n| (relation(n), relation(n)))
    ) {
        // same strict part, different indifference and noncomparability
        let n = r.n();
        let p = r.strict_part();
        let free = |x, y| !p.contains(x, y) && !p.contains(y, x);
        let sym = Relation::from_fn(n, |x, y| free(x, y) && extra.contains(x, y) && extra.contains(y, x));
        let other = r.strict_part().union(&sym).union(&Relation::diagonal(n));
        prop_assert_eq!(other.strict_part(), r.strict_part());
        let (a, b) = (ChoiceFunction::maximal(r), ChoiceFunction::maximal(other));
        for y in 1..(1u32 << n) {
            prop_assert_eq!(a.choose(y), b.choose(y));
        }
    }
}

fn group_laws<G: OrderedGroup>(a: G, b: G, c: G) -> Result<(), TestCaseError> {
    let e = G::identity();
    prop_assert_eq!(a.compose(b).compose(c), a.compose(b.compose(c)));
    prop_assert_eq!(a.compose(e), a);
    prop_assert_eq!(a.compose(a.inverse()), e);
    if a <= b {
        prop_assert!(a.compose(c) <= b.compose(c));
        prop_assert!(c.compose(a) <= c.compose(b));
    }
    if e < a {
        prop_assert!(a.inverse() < e);
    }
    Ok(())
}
