use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn advstd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_advstd"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn data(name: &str) -> String {
    format!("tests/data/{name}")
}

#[test]
fn figures_match_golden_files() {
    for id in ["fig1", "fig3", "fig4", "fig5", "fig6", "fig7", "ex3.8", "ex3.9"] {
        let o = advstd(&["figures", id]);
        assert_eq!(code(&o), 0, "{id}");
        let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join(format!("tests/golden/{id}.txt"));
        let expected = std::fs::read_to_string(golden).expect("golden file");
        assert_eq!(stdout(&o), expected, "{id}");
    }
}

#[test]
fn golden_files_pin_key_results() {
    let read =
        |id: &str| std::fs::read_to_string(format!("{}/tests/golden/{id}.txt", env!("CARGO_MANIFEST_DIR"))).unwrap();
    assert!(read("fig3").contains("  P: {aPb}\n"));
    assert!(read("fig4").contains("M({b, c}) = {b, c}"));
    assert!(read("fig4").contains("M({a, b, c}) = {a, c}"));
    assert!(read("fig5").contains("  P: {aPb, bPc}\n"));
    assert!(read("fig6").contains("  P: {aPb, bPc}\n"));
    let fig7 = read("fig7");
    assert!(fig7.contains("split cycle: {aPc, cPb, dPb, dPc}"));
    assert!(fig7.contains("ranked pairs only: {aPd}"));
    let ex38 = read("ex3.8");
    assert!(ex38.contains("xy=29-14=15 xw=34-9=25 yz=23-20=3 yw=28-15=13 zx=24-19=5 zw=25-18=7"));
    assert!(ex38.contains("R   scores x=3 y=8 z=4 w=24  verdict xPz"));
    let ex39 = read("ex3.9");
    for line in [
        "R   verdict xNz",
        "R'  verdict zPx",
        "S   verdict zPx",
        "S'  verdict xNz",
    ] {
        assert!(ex39.contains(line), "{line}");
    }
}

#[test]
fn unknown_figure_exits_4() {
    let o = advstd(&["figures", "fig2"]);
    assert_eq!(code(&o), 4);
}

#[test]
fn tally_ranked_pairs_on_fig5() {
    let o = advstd(&["tally", &data("fig5.json"), "--ccr", "ranked-pairs"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("P: {aPb, bPc}\n"));
    assert!(out.contains("a over b: advantage 5, standard 1, strict"));
}

#[test]
fn tally_split_cycle_on_fig7_graph() {
    let o = advstd(&["tally", &data("fig7_graph.json"), "--graph", "--ccr", "split-cycle"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("P: {aPc, cPb, dPb, dPc}\n"));
}

#[test]
fn tally_rejects_graph_input_for_dodgson() {
    let o = advstd(&["tally", &data("fig7_graph.json"), "--graph", "--ccr", "dodgson"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn tally_dodgson_json() {
    let o = advstd(&["tally", &data("dodgson_r.json"), "--ccr", "dodgson", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["dodgson_scores"]["x"], 3);
    assert_eq!(v["dodgson_scores"]["z"], 4);
    let strict = v["relation"]["strict"].as_array().unwrap();
    assert!(strict.contains(&serde_json::json!(["x", "z"])));
}

#[test]
fn parse_and_validation_errors_exit_2() {
    let o = advstd(&["tally", &data("unknown_candidate.json"), "--ccr", "majority"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("ballot 2"));
    let o = advstd(&["tally", &data("tied.json"), "--ccr", "dodgson"]);
    assert_eq!(code(&o), 2);
    let o = advstd(&["tally", &data("fig5.json"), "--ccr", "borda"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn copeland_split_verdict() {
    let o = advstd(&[
        "axioms",
        "--ccr",
        "copeland",
        "--X",
        "3",
        "--V",
        "2",
        "--axiom",
        "orderability",
    ]);
    assert_eq!(code(&o), 0);
    let o = advstd(&[
        "axioms", "--ccr", "copeland", "--X", "3", "--V", "2", "--axiom", "weak-iia",
    ]);
    assert_eq!(code(&o), 1);
}

#[test]
fn gillies_axioms_json() {
    let o = advstd(&[
        "axioms", "--ccr", "gillies", "--X", "3", "--V", "3", "--all", "--format", "json",
    ]);
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let verdict = |name: &str| {
        v["reports"]
            .as_array()
            .unwrap()
            .iter()
            .find(|r| r["axiom"] == name)
            .map(|r| r["verdict"].as_str().unwrap().to_string())
            .unwrap()
    };
    for name in ["transitivity", "strong-pareto", "pn-weak-iia", "orderability"] {
        assert_eq!(verdict(name), "holds", "{name}");
    }
    assert_eq!(verdict("completeness"), "fails");
}

#[test]
fn infeasible_bounds_exit_3() {
    assert_eq!(
        code(&advstd(&["axioms", "--ccr", "majority", "--X", "4", "--V", "6"])),
        3
    );
    assert_eq!(
        code(&advstd(&["axioms", "--ccr", "majority", "--X", "9", "--V", "1"])),
        3
    );
    assert_eq!(
        code(&advstd(&["axioms", "--ccr", "majority", "--X", "3", "--V", "0"])),
        3
    );
}

#[test]
fn rationalization_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let file: PathBuf = dir.path().join("gillies.json");
    let path = file.to_str().unwrap();
    let o = advstd(&["rationalize", "--ccr", "gillies", "--X", "3", "--V", "3", "--out", path]);
    assert_eq!(code(&o), 0);
    let o = advstd(&[
        "rationalize",
        "--ccr",
        "gillies",
        "--X",
        "3",
        "--V",
        "3",
        "--verify",
        path,
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("verification: holds"));
    // majority strictly ranks a Condorcet cycle, covering does not
    let o = advstd(&[
        "rationalize",
        "--ccr",
        "majority",
        "--X",
        "3",
        "--V",
        "3",
        "--verify",
        path,
    ]);
    assert_eq!(code(&o), 1);
}

#[test]
fn rationalize_rejects_copeland() {
    let o = advstd(&["rationalize", "--ccr", "copeland", "--X", "3", "--V", "2"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("weak-iia"));
}

#[test]
fn closed_forms_verify() {
    for (rule, measure) in [
        ("split-cycle", "ratio"),
        ("ranked-pairs", "margin"),
        ("majority", "margin"),
    ] {
        let o = advstd(&[
            "rationalize",
            "--ccr",
            rule,
            "--measure",
            measure,
            "--X",
            "3",
            "--V",
            "2",
            "--closed-form",
        ]);
        assert_eq!(code(&o), 0, "{rule}");
    }
}

#[test]
fn search_finds_condorcet_cycle() {
    let o = advstd(&[
        "search",
        "--ccr",
        "majority",
        "--axiom",
        "acyclicity",
        "--X",
        "3",
        "--V",
        "3",
    ]);
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "fails");
    let o = advstd(&[
        "search",
        "--ccr",
        "split-cycle",
        "--axiom",
        "acyclicity",
        "--X",
        "4",
        "--V",
        "5",
        "--samples",
        "300",
    ]);
    assert_eq!(code(&o), 0);
}
