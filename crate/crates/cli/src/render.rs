//! Plain-text and JSON rendering shared by the subcommands.

use serde_json::{json, Value};

use advstd::axioms::{AxiomReport, Witness};
use advstd::choice::{members, Subset};
use advstd::margins::MarginGraph;
use advstd::profiles::Profile;
use advstd::relations::{CandidateSet, Relation};

/// `P`, `I` and `N` pair lists of a relation, each unordered pair once.
pub struct Parts {
    pub strict: Vec<(usize, usize)>,
    pub indifferent: Vec<(usize, usize)>,
    pub noncomparable: Vec<(usize, usize)>,
}

pub fn parts(r: &Relation) -> Parts {
    let n = r.n();
    let mut out = Parts {
        strict: Vec::new(),
        indifferent: Vec::new(),
        noncomparable: Vec::new(),
    };
    for x in 0..n {
        for y in 0..n {
            if r.strictly(x, y) {
                out.strict.push((x, y));
            } else if x < y && r.indifferent(x, y) {
                out.indifferent.push((x, y));
            } else if x < y && r.incomparable(x, y) {
                out.noncomparable.push((x, y));
            }
        }
    }
    out
}

pub fn pair_list(c: &CandidateSet, pairs: &[(usize, usize)], symbol: char) -> String {
    let items: Vec<String> = pairs
        .iter()
        .map(|&(x, y)| format!("{}{symbol}{}", c.name(x), c.name(y)))
        .collect();
    format!("{{{}}}", items.join(", "))
}

pub fn relation_lines(c: &CandidateSet, r: &Relation, indent: &str) -> String {
    let p = parts(r);
    format!(
        "{indent}P: {}\n{indent}I: {}\n{indent}N: {}\n",
        pair_list(c, &p.strict, 'P'),
        pair_list(c, &p.indifferent, 'I'),
        pair_list(c, &p.noncomparable, 'N'),
    )
}

fn named_pairs(c: &CandidateSet, pairs: &[(usize, usize)]) -> Value {
    json!(pairs.iter().map(|&(x, y)| [c.name(x), c.name(y)]).collect::<Vec<_>>())
}

pub fn relation_json(c: &CandidateSet, r: &Relation) -> Value {
    let p = parts(r);
    json!({
        "strict": named_pairs(c, &p.strict),
        "indifferent": named_pairs(c, &p.indifferent),
        "noncomparable": named_pairs(c, &p.noncomparable),
    })
}

/// Ballot runs as `count  ranking` lines.
pub fn profile_lines(p: &Profile, indent: &str) -> String {
    p.ballot_types()
        .iter()
        .map(|(b, count)| format!("{indent}{count:>3}  {}\n", b.display_with(p.candidates())))
        .collect()
}

pub fn margin_lines(c: &CandidateSet, g: &MarginGraph, indent: &str) -> String {
    g.edges()
        .iter()
        .map(|&(x, y, w)| format!("{indent}{} -> {}  {w}\n", c.name(x), c.name(y)))
        .collect()
}

pub fn margins_json(c: &CandidateSet, g: &MarginGraph) -> Value {
    json!(g
        .edges()
        .iter()
        .map(|&(x, y, w)| json!({"from": c.name(x), "to": c.name(y), "weight": w}))
        .collect::<Vec<_>>())
}

pub fn subset(c: &CandidateSet, s: Subset) -> String {
    let names: Vec<&str> = members(s).into_iter().map(|i| c.name(i)).collect();
    format!("{{{}}}", names.join(", "))
}

/// How the relation orders `x` and `y`: `xPy`, `yPx`, `xIy` or `xNy`.
pub fn verdict(c: &CandidateSet, r: &Relation, x: usize, y: usize) -> String {
    let (a, b) = (c.name(x), c.name(y));
    if r.strictly(x, y) {
        format!("{a}P{b}")
    } else if r.strictly(y, x) {
        format!("{b}P{a}")
    } else if r.indifferent(x, y) {
        format!("{a}I{b}")
    } else {
        format!("{a}N{b}")
    }
}

pub fn witness_lines(c: &CandidateSet, w: &Witness, indent: &str) -> String {
    let mut out = String::new();
    let names: Vec<&str> = w.candidates.iter().map(|&i| c.name(i)).collect();
    if !names.is_empty() {
        out.push_str(&format!("{indent}candidates: {}\n", names.join(", ")));
    }
    if let Some(perm) = &w.permutation {
        let perm: Vec<String> = perm.iter().map(|i| i.to_string()).collect();
        out.push_str(&format!("{indent}permutation: {}\n", perm.join(" ")));
    }
    if let Some(detail) = &w.detail {
        out.push_str(&format!("{indent}{detail}\n"));
    }
    for (i, p) in w.profiles.iter().enumerate() {
        out.push_str(&format!("{indent}profile {}:\n", i + 1));
        out.push_str(&profile_lines(p, &format!("{indent}  ")));
    }
    out
}

pub fn report_lines(c: &CandidateSet, r: &AxiomReport) -> String {
    let mark = if r.passed() { '✓' } else { '✗' };
    let mut out = format!("{mark} {}\n", r.axiom);
    if let Some(w) = &r.witness {
        out.push_str(&witness_lines(c, w, "    "));
    }
    out
}
