//! Reference profiles and margin graphs used by the `figures` command and
//! the test suites.

use std::sync::Arc;

use crate::margins::MarginGraph;
use crate::profiles::Profile;
use crate::relations::CandidateSet;

fn letters(n: usize) -> Arc<CandidateSet> {
    Arc::new(CandidateSet::letters(n).expect("small candidate set"))
}

fn build(candidates: Arc<CandidateSet>, rows: &[(usize, &str)]) -> Profile {
    Profile::from_rankings(candidates, rows).expect("well-formed reference profile")
}

/// Two profiles agreeing on `{a, b}`: one with a clear winner, one cyclic.
pub fn fig1_profiles() -> (Profile, Profile) {
    let left = build(letters(3), &[(1, "a>b>c"), (1, "b>a>c"), (1, "a>b>c")]);
    let right = build(letters(3), &[(1, "a>b>c"), (1, "b>c>a"), (1, "c>a>b")]);
    (left, right)
}

/// Majority graph on `a..d` with a four-cycle and two chords, all weight 1.
pub fn fig3_graph() -> MarginGraph {
    let (a, b, c, d) = (0, 1, 2, 3);
    MarginGraph::from_margins(4, &[(a, b, 1), (b, c, 1), (c, d, 1), (d, a, 1), (d, b, 1), (a, c, 1)])
        .expect("valid graph")
}

/// Covering is not negatively transitive here and maximal choice violates β.
pub fn fig4_profile() -> Profile {
    build(letters(3), &[(5, "a>b>c"), (2, "b>c>a"), (3, "c>a>b")])
}

/// Three-cycle with margins 5, 3, 1.
pub fn fig5_profile() -> Profile {
    build(letters(3), &[(4, "a>b>c"), (2, "b>c>a"), (3, "c>a>b")])
}

/// Three-cycle with margins 3, 3, 1.
pub fn fig6_graph() -> MarginGraph {
    MarginGraph::from_margins(3, &[(0, 1, 3), (1, 2, 3), (2, 0, 1)]).expect("valid graph")
}

/// A profile realizing [`fig6_graph`].
pub fn fig6_profile() -> Profile {
    build(letters(3), &[(3, "a>b>c"), (2, "b>c>a"), (2, "c>a>b")])
}

/// Four-candidate graph where Ranked Pairs and Split Cycle differ on `{a, d}`.
pub fn fig7_graph() -> MarginGraph {
    let (a, b, c, d) = (0, 1, 2, 3);
    MarginGraph::from_margins(4, &[(a, c, 9), (d, b, 5), (b, a, 3), (c, b, 7), (d, c, 11), (a, d, 1)])
        .expect("valid graph")
}

/// Candidates `x, y, z, w` of the 43-voter Dodgson profiles.
pub fn xyzw() -> Arc<CandidateSet> {
    Arc::new(CandidateSet::new(["x", "y", "z", "w"]).expect("distinct names"))
}

const DODGSON_COUNTS: [usize; 7] = [3, 2, 9, 5, 9, 13, 2];

fn dodgson_profile(second: &str, seventh: &str) -> Profile {
    dodgson_variant(&["y>x>z>w", second, "y>w>z>x", "x>z>y>w", "x>y>w>z", "z>x>w>y", seventh])
}

fn dodgson_variant(columns: &[&str; 7]) -> Profile {
    let rows: Vec<(usize, &str)> = DODGSON_COUNTS.iter().copied().zip(columns.iter().copied()).collect();
    build(xyzw(), &rows)
}

/// The four 43-voter profiles `R, R', S, S'`.
///
/// `R` and `R'` share the `{x, z}` context, as do `S` and `S'`; `R` and `S`
/// agree on `{x, z}`, as do `R'` and `S'`.
pub fn dodgson_profiles() -> [Profile; 4] {
    [
        dodgson_profile("y>x>z>w", "z>x>w>y"),
        dodgson_profile("y>z>x>w", "x>z>w>y"),
        dodgson_profile("x>z>w>y", "y>z>x>w"),
        dodgson_profile("z>x>w>y", "y>x>z>w"),
    ]
}
