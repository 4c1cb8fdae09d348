//! Text reproductions of the reference figures and examples. Output is
//! compared byte for byte against the files in `tests/golden`.

use std::fmt::Write;
use std::sync::Arc;

use advstd::axioms::{check_orderability, check_unary_axiom, Axiom, EvaluatedSpace};
use advstd::ccr::{
    dodgson_scores, ranked_pairs_all, Ccr, Dodgson, GilliesCovering, Majority, MajorityDodgson, Measure, RankedPairs,
    RankedPairsPolicy, SplitCycle,
};
use advstd::choice::{check_choice_condition, subset_of, ChoiceCondition, ChoiceFunction};
use advstd::figures;
use advstd::margins::{margin_graph, realize_margin_graph};
use advstd::profiles::Profile;
use advstd::relations::CandidateSet;
use advstd::Result;

use crate::render::{margin_lines, pair_list, parts, profile_lines, relation_lines, subset, verdict};

pub const IDS: [&str; 8] = ["fig1", "fig3", "fig4", "fig5", "fig6", "fig7", "ex3.8", "ex3.9"];

/// Renders a figure, or `None` for an unknown id.
pub fn render(id: &str) -> Option<Result<String>> {
    Some(match id {
        "fig1" => fig1(),
        "fig3" => fig3(),
        "fig4" => fig4(),
        "fig5" => fig5(),
        "fig6" => fig6(),
        "fig7" => fig7(),
        "ex3.8" => ex3_8(),
        "ex3.9" => ex3_9(),
        _ => return None,
    })
}

const A: usize = 0;
const B: usize = 1;
const C: usize = 2;
const D: usize = 3;

fn letters(n: usize) -> Arc<CandidateSet> {
    Arc::new(CandidateSet::letters(n).expect("small candidate set"))
}

fn section(out: &mut String, title: &str) {
    let _ = writeln!(out, "{title}:");
}

fn fig1() -> Result<String> {
    let (left, right) = figures::fig1_profiles();
    let c = left.candidates().clone();
    let mut out = String::from("fig1: majority rule on two profiles that agree on {a, b}\n");
    for (name, p) in [("left", &left), ("right", &right)] {
        section(&mut out, &format!("{name} profile"));
        out.push_str(&profile_lines(p, "  "));
        section(&mut out, &format!("{name} majority relation"));
        let r = Majority.evaluate(p)?;
        out.push_str(&relation_lines(&c, &r, "  "));
        let _ = writeln!(out, "  acyclic: {}", yes_no(r.is_acyclic()));
    }
    let same = left.restrict(A, B)? == right.restrict(A, B)?;
    let _ = writeln!(out, "restrictions to {{a, b}} equal: {}", yes_no(same));
    Ok(out)
}

fn fig3() -> Result<String> {
    let g = figures::fig3_graph();
    let c = letters(g.n());
    let mut out = String::from("fig3: covering on a four-candidate majority graph\n");
    section(&mut out, "margin graph");
    out.push_str(&margin_lines(&c, &g, "  "));
    let p = realize_margin_graph(c.clone(), &g)?;
    let r = GilliesCovering.evaluate(&p)?;
    section(&mut out, "covering relation");
    out.push_str(&relation_lines(&c, &r, "  "));
    let space = EvaluatedSpace::from_profiles(&GilliesCovering, vec![p])?;
    let report = check_unary_axiom(&GilliesCovering, Axiom::Completeness, &space)?;
    let pair = report.witness.map(|w| w.candidates).unwrap_or_default();
    let _ = writeln!(out, "completeness: {}", failing_pair(&c, &pair));
    Ok(out)
}

fn fig4() -> Result<String> {
    let p = figures::fig4_profile();
    let c = p.candidates().clone();
    let mut out = String::from("fig4: covering, maximal choice and negative transitivity\n");
    section(&mut out, "profile");
    out.push_str(&profile_lines(&p, "  "));
    section(&mut out, "margin graph");
    out.push_str(&margin_lines(&c, &margin_graph(&p), "  "));
    let r = GilliesCovering.evaluate(&p)?;
    section(&mut out, "covering relation");
    out.push_str(&relation_lines(&c, &r, "  "));
    let m = ChoiceFunction::maximal(r);
    section(&mut out, "maximal choice");
    for y in [subset_of(&[B, C]), subset_of(&[A, B, C])] {
        let _ = writeln!(out, "  M({}) = {}", subset(&c, y), subset(&c, m.choose(y)));
    }
    if let Some((y, z)) = check_choice_condition(&m, ChoiceCondition::Beta).witness {
        let _ = writeln!(out, "beta: fails on {} inside {}", subset(&c, y), subset(&c, z));
    }
    let space = EvaluatedSpace::from_profiles(&GilliesCovering, vec![p])?;
    let report = check_unary_axiom(&GilliesCovering, Axiom::NegativeTransitivity, &space)?;
    if let Some(w) = report.witness {
        if let &[x, y, z] = w.candidates.as_slice() {
            let (x, y, z) = (c.name(x), c.name(y), c.name(z));
            let _ = writeln!(
                out,
                "negative transitivity: fails, not {x}P{y} and not {y}P{z} but {x}P{z}"
            );
        }
    } else {
        out.push_str("negative transitivity: holds\n");
    }
    Ok(out)
}

fn fig5() -> Result<String> {
    let p = figures::fig5_profile();
    let c = p.candidates().clone();
    let g = margin_graph(&p);
    let mut out = String::from("fig5: ranked pairs on a three-cycle\n");
    section(&mut out, "profile");
    out.push_str(&profile_lines(&p, "  "));
    section(&mut out, "margin graph");
    out.push_str(&margin_lines(&c, &g, "  "));
    let _ = writeln!(
        out,
        "locked under every tie-breaker: {}",
        strict(&c, &ranked_pairs_all(&g))
    );
    let rp = RankedPairs {
        policy: RankedPairsPolicy::ParetoIndifference,
        measure: Measure::Margin,
    };
    section(&mut out, "ranked pairs relation");
    out.push_str(&relation_lines(&c, &rp.evaluate(&p)?, "  "));
    Ok(out)
}

fn fig6() -> Result<String> {
    let p = figures::fig6_profile();
    let c = p.candidates().clone();
    let mut out = String::from("fig6: split cycle choice is path dependent\n");
    section(&mut out, "margin graph");
    out.push_str(&margin_lines(&c, &figures::fig6_graph(), "  "));
    section(&mut out, "realizing profile");
    out.push_str(&profile_lines(&p, "  "));
    let sc = SplitCycle {
        measure: Measure::Margin,
    };
    let r = sc.evaluate(&p)?;
    section(&mut out, "split cycle relation");
    out.push_str(&relation_lines(&c, &r, "  "));
    let m = ChoiceFunction::maximal(r);
    section(&mut out, "choice");
    for y in [
        subset_of(&[A, B, C]),
        subset_of(&[A, B]),
        subset_of(&[A, C]),
        subset_of(&[B, C]),
    ] {
        let _ = writeln!(out, "  C({}) = {}", subset(&c, y), subset(&c, m.choose(y)));
    }
    if let Some((y1, y2)) = check_choice_condition(&m, ChoiceCondition::PathIndependence).witness {
        let (union, recombined) = (y1 | y2, m.choose(y1) | m.choose(y2));
        let _ = writeln!(
            out,
            "path independence: fails, C({}) = {} but C({}) = {}",
            subset(&c, union),
            subset(&c, m.choose(union)),
            subset(&c, recombined),
            subset(&c, m.choose(recombined)),
        );
    }
    Ok(out)
}

fn fig7() -> Result<String> {
    let g = figures::fig7_graph();
    let c = letters(g.n());
    let mut out = String::from("fig7: split cycle and ranked pairs differ on {a, d}\n");
    out.push_str("note: the weights of a -> c (9) and d -> b (5) are reconstructed\n");
    section(&mut out, "margin graph");
    out.push_str(&margin_lines(&c, &g, "  "));
    let sc = advstd::ccr::split_cycle_defeats(&g);
    let rp = ranked_pairs_all(&g);
    let _ = writeln!(out, "split cycle: {}", strict(&c, &sc));
    let _ = writeln!(out, "ranked pairs: {}", strict(&c, &rp));
    let extra: Vec<(usize, usize)> = rp.pairs().filter(|&(x, y)| !sc.contains(x, y)).collect();
    let _ = writeln!(out, "ranked pairs only: {}", pair_list(&c, &extra, 'P'));
    let _ = writeln!(out, "a -> d margin: {}", g.weight(A, D));
    Ok(out)
}

const DODGSON_NAMES: [&str; 4] = ["R", "R'", "S", "S'"];

fn dodgson_header(out: &mut String, profiles: &[Profile; 4]) {
    let c = profiles[0].candidates();
    for (name, p) in DODGSON_NAMES.iter().zip(profiles) {
        section(out, &format!("profile {name}"));
        out.push_str(&profile_lines(p, "  "));
        let g = margin_graph(p);
        let listed: Vec<String> = g
            .edges()
            .iter()
            .map(|&(x, y, w)| {
                let ahead = p.ballots().iter().filter(|b| b.prefers(x, y)).count();
                let behind = p.ballots().iter().filter(|b| b.prefers(y, x)).count();
                format!("{}{}={ahead}-{behind}={w}", c.name(x), c.name(y))
            })
            .collect();
        let _ = writeln!(out, "  margins: {}", listed.join(" "));
    }
}

/// For each arc of the dominance cycle on `(z, x)`, which profiles force it.
fn cycle_lines(f: &dyn Ccr, profiles: &[Profile; 4]) -> Result<String> {
    let space = EvaluatedSpace::from_profiles(f, profiles.to_vec())?;
    let report = check_orderability(&space).report;
    let mut out = String::new();
    let Some(w) = report.witness else {
        out.push_str("orderability: holds\n");
        return Ok(out);
    };
    let c = profiles[0].candidates();
    let name = |p: &Profile| profiles.iter().position(|q| q == p).map_or("?", |i| DODGSON_NAMES[i]);
    let (x, y) = (c.name(w.candidates[0]), c.name(w.candidates[1]));
    let _ = writeln!(out, "orderability: fails on ({x}, {y})");
    for arc in w.profiles.chunks(2) {
        let _ = writeln!(
            out,
            "  {} yields {x}P{y}, {} does not, same context",
            name(&arc[0]),
            name(&arc[1])
        );
    }
    Ok(out)
}

fn ex3_8() -> Result<String> {
    let profiles = figures::dodgson_profiles();
    let c = profiles[0].candidates().clone();
    let (x, z) = (0, 2);
    let mut out = String::from("ex3.8: Dodgson on four 43-voter profiles\n");
    dodgson_header(&mut out, &profiles);
    section(&mut out, "dodgson");
    for (name, p) in DODGSON_NAMES.iter().zip(&profiles) {
        let scores = dodgson_scores(p)?;
        let listed: Vec<String> = scores
            .iter()
            .enumerate()
            .map(|(i, s)| format!("{}={s}", c.name(i)))
            .collect();
        let r = Dodgson.evaluate(p)?;
        let _ = writeln!(
            out,
            "  {name:<2}  scores {}  verdict {}",
            listed.join(" "),
            verdict(&c, &r, x, z)
        );
    }
    out.push_str(&cycle_lines(&Dodgson, &profiles)?);
    Ok(out)
}

fn ex3_9() -> Result<String> {
    let profiles = figures::dodgson_profiles();
    let c = profiles[0].candidates().clone();
    let (x, z) = (0, 2);
    let mut out = String::from("ex3.9: majority Dodgson on the same profiles\n");
    section(&mut out, "majority dodgson");
    for (name, p) in DODGSON_NAMES.iter().zip(&profiles) {
        let r = MajorityDodgson.evaluate(p)?;
        let _ = writeln!(out, "  {name:<2}  verdict {}", verdict(&c, &r, x, z));
    }
    let space = EvaluatedSpace::from_profiles(&MajorityDodgson, profiles.to_vec())?;
    let weak_iia = advstd::axioms::check_pairwise_axiom(Axiom::WeakIia, &space);
    let _ = writeln!(out, "weak iia on these profiles: {}", weak_iia.verdict.as_str());
    out.push_str(&cycle_lines(&MajorityDodgson, &profiles)?);
    Ok(out)
}

fn strict(c: &CandidateSet, r: &advstd::relations::Relation) -> String {
    pair_list(c, &parts(r).strict, 'P')
}

fn failing_pair(c: &CandidateSet, pair: &[usize]) -> String {
    match pair {
        &[x, y] => format!("fails, {}N{}", c.name(x), c.name(y)),
        _ => "holds".into(),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
