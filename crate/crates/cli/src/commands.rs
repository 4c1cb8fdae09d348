use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde_json::{json, Value};

use advstd::asmodel::{
    closed_form, construct_rationalization, gillies_standard, ranked_pairs_margin_standard,
    ranked_pairs_ratio_standard, split_cycle_margin_standard, split_cycle_ratio_standard, AnyRationalization,
    ClosedForm, OrderedGroup,
};
use advstd::axioms::{
    check_axiom, find_decisive_coalitions, find_power_holders, Axiom, AxiomReport, CoalitionKind, EvaluatedSpace,
    PowerKind, DEFAULT_SPACE_LIMIT,
};
use advstd::ccr::{dodgson_scores, Ccr, Measure, RuleKind};
use advstd::margins::{margin_graph, restriction_margin, restriction_ratio, MarginGraph, RatioOptions, RatioValue};
use advstd::profiles::{PairRestriction, Preprofile, Profile, ProfileSpace};
use advstd::relations::CandidateSet;
use advstd::Error;

use crate::render::{margin_lines, margins_json, relation_json, relation_lines, report_lines};
use crate::{AxiomsArgs, Failure, FiguresArgs, Format, RationalizeArgs, SearchArgs, SpaceArgs, TallyArgs};

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(2, format!("{}: {e}", path.display())))
}

fn in_file(path: &Path) -> impl Fn(Error) -> Failure + '_ {
    move |e| Failure::new(2, format!("{}: {e}", path.display()))
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print_json(v: &Value) {
    emit(&(serde_json::to_string_pretty(v).expect("json values serialize") + "\n"));
}

/// Advantage and standard of one ordered pair under a closed form.
struct PairRow {
    x: usize,
    y: usize,
    advantage: String,
    standard: String,
    strict: bool,
}

fn rows<G: OrderedGroup>(
    p: &Profile,
    advantage: impl Fn(&PairRestriction) -> G,
    standard: impl Fn(usize, usize, &Preprofile) -> G,
) -> advstd::Result<Vec<PairRow>> {
    let n = p.candidate_count();
    let mut out = Vec::new();
    for x in 0..n {
        for y in (0..n).filter(|&y| y != x) {
            let a = advantage(&p.restrict(x, y)?);
            let s = standard(x, y, &p.context(x, y)?);
            out.push(PairRow {
                x,
                y,
                advantage: a.to_string(),
                standard: s.to_string(),
                strict: a > s,
            });
        }
    }
    Ok(out)
}

fn diagnostics(form: ClosedForm, p: &Profile) -> advstd::Result<Vec<PairRow>> {
    let ratio = |q: &PairRestriction| restriction_ratio(q, RatioOptions::default());
    let one = |_: usize, _: usize, _: &Preprofile| RatioValue::one();
    match form {
        ClosedForm::Majority {
            measure: Measure::Margin,
        } => rows(p, restriction_margin, |_, _, _| 0),
        ClosedForm::Majority {
            measure: Measure::Ratio,
        } => rows(p, ratio, one),
        ClosedForm::Gillies => rows(p, restriction_margin, |x, y, c| gillies_standard(c, x, y)),
        ClosedForm::RankedPairs {
            measure: Measure::Margin,
        } => rows(p, restriction_margin, |x, y, c| ranked_pairs_margin_standard(c, x, y)),
        ClosedForm::RankedPairs {
            measure: Measure::Ratio,
        } => rows(p, ratio, |x, y, c| ranked_pairs_ratio_standard(c, x, y)),
        ClosedForm::SplitCycle {
            measure: Measure::Margin,
        } => rows(p, restriction_margin, |x, y, c| split_cycle_margin_standard(c, x, y)),
        ClosedForm::SplitCycle {
            measure: Measure::Ratio,
        } => rows(p, ratio, |x, y, c| split_cycle_ratio_standard(c, x, y)),
    }
}

pub fn tally(args: &TallyArgs) -> Outcome {
    let rule = args.rule.rule()?;
    let text = read(&args.input)?;
    if args.graph {
        return tally_graph(args, rule, &text);
    }
    let p = Profile::from_json(&text).map_err(in_file(&args.input))?;
    let c = p.candidates().clone();
    let f = rule.build();
    let r = f.evaluate(&p).map_err(in_file(&args.input))?;
    let g = margin_graph(&p);
    let scores = match rule {
        RuleKind::Dodgson | RuleKind::MajorityDodgson => Some(dodgson_scores(&p)?),
        _ => None,
    };
    let diag = ClosedForm::for_rule(rule)
        .map(|form| diagnostics(form, &p))
        .transpose()?;

    match args.format {
        Format::Json => {
            let mut v = json!({
                "rule": f.name(),
                "candidates": c.names(),
                "voters": p.voter_count(),
                "relation": relation_json(&c, &r),
                "margins": margins_json(&c, &g),
            });
            if let Some(scores) = &scores {
                v["dodgson_scores"] =
                    Value::Object(c.names().iter().cloned().zip(scores.iter().map(|s| json!(s))).collect());
            }
            if let Some(diag) = &diag {
                v["diagnostics"] = json!(diag
                    .iter()
                    .map(|d| json!({
                        "x": c.name(d.x),
                        "y": c.name(d.y),
                        "advantage": d.advantage,
                        "standard": d.standard,
                        "strict": d.strict,
                    }))
                    .collect::<Vec<_>>());
            }
            if args.dot {
                v["dot"] = json!(g.to_dot(&c));
            }
            print_json(&v);
        }
        Format::Text => {
            let mut out = format!("rule: {}\nvoters: {}\n", f.name(), p.voter_count());
            out.push_str(&relation_lines(&c, &r, ""));
            out.push_str("margins:\n");
            out.push_str(&margin_lines(&c, &g, "  "));
            if let Some(scores) = &scores {
                let listed: Vec<String> = scores
                    .iter()
                    .enumerate()
                    .map(|(i, s)| format!("{}={s}", c.name(i)))
                    .collect();
                let _ = writeln!(out, "dodgson scores: {}", listed.join(" "));
            }
            if let Some(diag) = &diag {
                out.push_str("advantage and standard:\n");
                for d in diag {
                    let _ = writeln!(
                        out,
                        "  {} over {}: advantage {}, standard {}{}",
                        c.name(d.x),
                        c.name(d.y),
                        d.advantage,
                        d.standard,
                        if d.strict { ", strict" } else { "" }
                    );
                }
            }
            if args.dot {
                out.push_str(&g.to_dot(&c));
            }
            emit(&out);
        }
    }
    Ok(0)
}

fn tally_graph(args: &TallyArgs, rule: RuleKind, text: &str) -> Outcome {
    let (c, g) = MarginGraph::from_json(text).map_err(in_file(&args.input))?;
    let strict = rule.strict_part_of_graph(&g)?;
    let name = rule.build().name();
    match args.format {
        Format::Json => {
            let mut v = json!({
                "rule": name,
                "candidates": c.names(),
                "strict": relation_json(&c, &strict)["strict"],
                "margins": margins_json(&c, &g),
            });
            if args.dot {
                v["dot"] = json!(g.to_dot(&c));
            }
            print_json(&v);
        }
        Format::Text => {
            let mut out = format!("rule: {name}\n");
            let listed = crate::render::pair_list(&c, &crate::render::parts(&strict).strict, 'P');
            let _ = writeln!(out, "P: {listed}");
            out.push_str("the margin graph determines the strict part only\n");
            out.push_str("margins:\n");
            out.push_str(&margin_lines(&c, &g, "  "));
            if args.dot {
                out.push_str(&g.to_dot(&c));
            }
            emit(&out);
        }
    }
    Ok(0)
}

fn profile_space(f: &dyn Ccr, s: &SpaceArgs) -> Result<ProfileSpace, Failure> {
    if s.voters == 0 {
        return Err(Failure::new(3, "at least one voter is required"));
    }
    let c = Arc::new(CandidateSet::letters(s.candidates)?);
    Ok(ProfileSpace::new(c, s.voters, s.linear || f.linear_only())?)
}

fn evaluate_space(f: &dyn Ccr, s: &SpaceArgs) -> Result<EvaluatedSpace, Failure> {
    let space = profile_space(f, s)?;
    let size = space.size();
    if size > DEFAULT_SPACE_LIMIT && !s.yes {
        return Err(Failure::new(
            3,
            format!("the space has {size} profiles, above {DEFAULT_SPACE_LIMIT}; pass --yes to proceed"),
        ));
    }
    let limit = if s.yes { u128::MAX } else { DEFAULT_SPACE_LIMIT };
    Ok(EvaluatedSpace::from_space(f, &space, limit)?)
}

fn space_summary(space: &EvaluatedSpace, s: &SpaceArgs, f: &dyn Ccr) -> String {
    let kind = if s.linear || f.linear_only() {
        "linear orders"
    } else {
        "weak orders"
    };
    format!(
        "space: {} candidates, {} voters, {kind}, {} profiles\n",
        s.candidates,
        s.voters,
        space.len()
    )
}

fn space_json(space: &EvaluatedSpace, s: &SpaceArgs, f: &dyn Ccr) -> Value {
    json!({
        "candidates": s.candidates,
        "voters": s.voters,
        "linear_only": s.linear || f.linear_only(),
        "profiles": space.len(),
    })
}

fn voter_list(voters: &[usize]) -> String {
    if voters.is_empty() {
        return "none".into();
    }
    voters.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
}

pub fn axioms(args: &AxiomsArgs) -> Outcome {
    let rule = args.rule.rule()?;
    let f = rule.build();
    let list: Vec<Axiom> = if args.all || args.axioms.is_empty() {
        Axiom::ALL.to_vec()
    } else {
        args.axioms
            .iter()
            .map(|a| Axiom::parse(a))
            .collect::<advstd::Result<_>>()?
    };
    let space = evaluate_space(&*f, &args.space)?;
    let c = space.candidates().clone();
    let reports = list
        .iter()
        .map(|&a| check_axiom(&*f, a, &space))
        .collect::<advstd::Result<Vec<AxiomReport>>>()?;
    let powers = [
        ("dictators", PowerKind::Dictator),
        ("inverse dictators", PowerKind::InverseDictator),
        ("weak dictators", PowerKind::WeakDictator),
        ("vetoers", PowerKind::Vetoer),
    ];

    match args.format {
        Format::Json => {
            let mut v = json!({
                "rule": f.name(),
                "space": space_json(&space, &args.space, &*f),
                "reports": reports.iter().map(|r| r.to_json(&c)).collect::<Vec<_>>(),
            });
            if args.powers {
                let mut obj = serde_json::Map::new();
                for (name, kind) in powers {
                    obj.insert(name.replace(' ', "_"), json!(find_power_holders(&space, kind)));
                }
                obj.insert(
                    "weakly_decisive".into(),
                    json!(find_decisive_coalitions(&space, CoalitionKind::WeaklyDecisive)),
                );
                v["powers"] = Value::Object(obj);
            }
            print_json(&v);
        }
        Format::Text => {
            let mut out = format!("rule: {}\n", f.name());
            out.push_str(&space_summary(&space, &args.space, &*f));
            for r in &reports {
                out.push_str(&report_lines(&c, r));
            }
            if args.powers {
                for (name, kind) in powers {
                    let _ = writeln!(out, "{name}: {}", voter_list(&find_power_holders(&space, kind)));
                }
                let coalitions: Vec<String> = find_decisive_coalitions(&space, CoalitionKind::WeaklyDecisive)
                    .iter()
                    .map(|c| format!("{{{}}}", voter_list(c)))
                    .collect();
                let _ = writeln!(out, "weakly decisive coalitions: {}", coalitions.join(" "));
            }
            let failed = reports.iter().filter(|r| !r.passed()).count();
            let _ = writeln!(out, "{} of {} axioms hold", reports.len() - failed, reports.len());
            emit(&out);
        }
    }
    Ok(if reports.iter().all(AxiomReport::passed) { 0 } else { 1 })
}

pub fn rationalize(args: &RationalizeArgs) -> Outcome {
    let rule = args.rule.rule()?;
    let f = rule.build();
    let space = evaluate_space(&*f, &args.space)?;
    let c = space.candidates().clone();
    let (origin, r) = if let Some(path) = &args.verify {
        let v: Value =
            serde_json::from_str(&read(path)?).map_err(|e| Failure::new(2, format!("{}: {e}", path.display())))?;
        ("imported", AnyRationalization::from_json(&v).map_err(in_file(path))?)
    } else if args.closed_form {
        let form = ClosedForm::for_rule(rule)
            .ok_or_else(|| Failure::new(2, format!("{} has no closed-form rationalization", f.name())))?;
        ("closed form", closed_form(form, &space))
    } else {
        match construct_rationalization(&space) {
            Ok(r) => ("constructed", AnyRationalization::Integer(r)),
            Err(Error::NotRationalizable(report)) => {
                match args.format {
                    Format::Json => print_json(&json!({
                        "rule": f.name(),
                        "space": space_json(&space, &args.space, &*f),
                        "rationalizable": false,
                        "report": report.to_json(&c),
                    })),
                    Format::Text => {
                        let mut out = format!("rule: {}\n", f.name());
                        out.push_str(&space_summary(&space, &args.space, &*f));
                        out.push_str("not rationalizable:\n");
                        out.push_str(&report_lines(&c, &report));
                        emit(&out);
                    }
                }
                return Ok(1);
            }
            Err(e) => return Err(e.into()),
        }
    };
    let failure = match r.verify(&space) {
        Ok(failure) => failure.map(|f| f.to_string()),
        Err(Error::Coverage(entry)) => Some(format!("no entry for {entry}")),
        Err(e) => return Err(e.into()),
    };
    if let Some(path) = &args.out {
        let text = serde_json::to_string_pretty(&r.to_json()).expect("json values serialize");
        fs::write(path, text + "\n").map_err(|e| Failure::new(2, format!("{}: {e}", path.display())))?;
    }
    let (advantages, standards) = r.table_sizes();
    match args.format {
        Format::Json => print_json(&json!({
            "rule": f.name(),
            "space": space_json(&space, &args.space, &*f),
            "rationalizable": true,
            "origin": origin,
            "group": r.group_tag(),
            "advantage_entries": advantages,
            "standard_entries": standards,
            "verified": failure.is_none(),
            "failure": failure,
        })),
        Format::Text => {
            let mut out = format!("rule: {}\n", f.name());
            out.push_str(&space_summary(&space, &args.space, &*f));
            let _ = writeln!(
                out,
                "rationalization: {origin}, {}, {advantages} advantage and {standards} standard entries",
                r.group_tag()
            );
            match &failure {
                None => out.push_str("verification: holds\n"),
                Some(why) => {
                    let _ = writeln!(out, "verification: fails, {why}");
                }
            }
            emit(&out);
        }
    }
    Ok(if failure.is_none() { 0 } else { 1 })
}

pub fn search(args: &SearchArgs) -> Outcome {
    let rule = args.rule.rule()?;
    let f = rule.build();
    let axiom = Axiom::parse(&args.axiom)?;
    let space = match args.samples {
        Some(0) => return Err(Failure::new(2, "--samples must be positive")),
        Some(n) => {
            let ps = profile_space(&*f, &args.space)?;
            let mut rng = StdRng::seed_from_u64(args.seed);
            let profiles = (0..n)
                .map(|_| {
                    let ballots = (0..ps.voters())
                        .map(|_| *ps.orders().choose(&mut rng).expect("nonempty order list"))
                        .collect();
                    Profile::new(ps.candidates().clone(), ballots)
                })
                .collect::<advstd::Result<Vec<_>>>()?;
            EvaluatedSpace::from_profiles(&*f, profiles)?
        }
        None => evaluate_space(&*f, &args.space)?,
    };
    let report = check_axiom(&*f, axiom, &space)?;
    if report.passed() {
        emit(&format!(
            "no counterexample to {axiom} among {} profiles\n",
            space.len()
        ));
        Ok(0)
    } else {
        print_json(&report.to_json(space.candidates()));
        Ok(1)
    }
}

pub fn figures(args: &FiguresArgs) -> Outcome {
    match crate::figures::render(&args.id) {
        None => Err(Failure::new(
            4,
            format!(
                "unknown figure `{}`; known: {}",
                args.id,
                crate::figures::IDS.join(", ")
            ),
        )),
        Some(text) => {
            emit(&text?);
            Ok(0)
        }
    }
}
