//! End-to-end tests of the `hatgame` binary: subcommand behavior, exit
//! codes, artifact round-trips, and output determinism.

use hatgame_cli::artifact::{
    parse_patterns_csv, ComplexityDoc, DominanceDoc, MatrixDoc, MinDasDoc, SetsDoc, SolutionDoc,
    ValueDoc,
};
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hatgame"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 stdout")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hatgame-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn classify_anchor_points() {
    let out = run(&["classify", "--probs", "0.7,0.2,0.1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("region: A (formula 1)"));
    assert!(text.contains("optimal winning probability: 0.758"));

    let out = run(&["classify", "--probs", "0.35,0.33,0.32"]);
    assert!(stdout(&out).contains("region: C"));

    // boundary report at the uniform point, exact mode
    let out = run(&["classify", "--probs", "1/3,1/3,1/3"]);
    let text = stdout(&out);
    assert!(text.contains("region: C"));
    assert!(text.contains("tied formulas: 1, 2, 3"));
    assert!(text.contains("5/9"));
}

#[test]
fn solve_exact_mode_region_b() {
    let out = run(&["solve", "--probs", "1/2,1/3,1/6", "--mode", "exhaustive"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("optimal winning probability: 47/72"));
    assert!(text.contains("optimal set(s): 3"));
    assert!(text.contains("4 5 7 8 9 11 15 18 22 23 25 26"));
    assert!(text.contains("1 2 7 12 14 15 17 19 21 23 24 26"));
    assert!(text.contains("3 5 6 10 11 16 17 19 20 21 25 26"));
}

#[test]
fn solve_closed_form_artifact() {
    let path = tmp("solution.json");
    let out = run(&[
        "solve",
        "--probs",
        "0.1,0.2,0.7",
        "--mode",
        "closed-form",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("region: A"));
    assert!(text.contains("0.758"));
    let doc: SolutionDoc = hatgame_cli::artifact::read_json(&path).unwrap();
    assert_eq!(doc.mode, "closed-form");
    assert_eq!(doc.optimal.len(), 1);
    let region = doc.region.expect("closed form reports the region");
    assert_eq!(region.label, "A");
    assert_eq!(region.permutation, vec![2, 1, 0]);
    match doc.value {
        ValueDoc::Float(v) => assert!((v - 0.758).abs() < 1e-12),
        other => panic!("expected float value, got {other:?}"),
    }
}

#[test]
fn enumerate_artifact_round_trip_and_determinism() {
    let path1 = tmp("sets1.json");
    let path2 = tmp("sets2.json");
    let base = [
        "enumerate",
        "--players",
        "3",
        "--colors",
        "3",
        "--size",
        "12",
        "--probs",
        "7/10,2/10,1/10",
    ];
    let out = run(&[&base[..], &["--out", path1.to_str().unwrap()]].concat());
    assert!(out.status.success());
    assert!(stdout(&out).contains("found 324 adequate set(s)"));

    // identical invocation, then once more with a capped worker pool
    run(&[&base[..], &["--out", path2.to_str().unwrap()]].concat());
    let body1 = std::fs::read(&path1).unwrap();
    let body2 = std::fs::read(&path2).unwrap();
    assert_eq!(body1, body2, "artifact bytes must not vary between runs");

    let path3 = tmp("sets3.json");
    let out = bin()
        .args([&base[..], &["--out", path3.to_str().unwrap()]].concat())
        .env("HATGAME_MAX_WORKERS", "1")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(body1, std::fs::read(&path3).unwrap());

    let doc: SetsDoc = hatgame_cli::artifact::read_json(&path1).unwrap();
    assert_eq!(doc.count, 324);
    assert_eq!(doc.das, 12);
    let sets = doc.to_sets("sets1.json").unwrap();
    assert_eq!(sets.len(), 324);
    // mass of the first optimal set is carried in the artifact, exactly
    let first_optimal = doc
        .sets
        .iter()
        .find(|r| r.codes == [4, 5, 7, 8, 9, 13, 14, 16, 17, 18, 20, 24])
        .expect("published set present");
    assert_eq!(
        first_optimal.phi.as_ref().unwrap(),
        &ValueDoc::Exact("121/500".into())
    );
}

#[test]
fn enumerate_small_shape_lists_sets() {
    let out = run(&[
        "enumerate",
        "--players",
        "3",
        "--colors",
        "2",
        "--size",
        "2",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    for pair in ["0 7", "1 6", "2 5", "3 4"] {
        assert!(text.contains(pair));
    }
}

#[test]
fn weak_diagnostic_reports_agreement() {
    let out = run(&["enumerate", "--size", "12", "--weak-diagnostic"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains(
        "no size-12 set passes the outside-only condition while failing the normative one"
    ));
}

#[test]
fn exit_codes() {
    // invalid input: probabilities do not sum to 1
    let out = run(&["classify", "--probs", "0.5,0.4,0.2"]);
    assert_eq!(out.status.code(), Some(1));

    // invalid input: malformed flag value
    let out = run(&["classify", "--probs", "a,b,c"]);
    assert_eq!(out.status.code(), Some(1));

    // capacity: 2^5 = 32 configurations exceeds the enumeration bound
    let out = run(&[
        "enumerate",
        "--players",
        "5",
        "--colors",
        "2",
        "--size",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(2));

    // usage: unknown subcommand and unknown flag
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["classify", "--probs", "1/3,1/3,1/3", "--bogus"]);
    assert_eq!(out.status.code(), Some(1));

    // min-das handles 32 configurations, enumerate does not
    let out = run(&["min-das", "--players", "5", "--colors", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["min-das", "--players", "6", "--colors", "2"]);
    assert_eq!(out.status.code(), Some(2));

    // help exits 0
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn strategy_grid_matches_published_table() {
    let out = run(&[
        "strategy",
        "--set",
        "0,2,6,13,14,16,17,18,22,23,25,26",
        "--probs",
        "0.35,0.33,0.32",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let expected = "\t00\t01\t02\t10\t11\t12\t20\t21\t22\n\
                    1\t1\t\t\t\t0\t0\t\t0\t0\n\
                    2\t1\t\t\t\t0\t0\t\t0\t0\n\
                    3\t1\t\t\t\t0\t0\t\t0\t0\n";
    assert!(text.contains(expected), "grid missing from:\n{text}");
    assert!(text.contains("winning probability: 0.5649"));

    // non-adequate input is a precondition error
    let out = run(&["strategy", "--set", "0,1,2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn strategy_from_artifact_and_matrix_doc() {
    let sets_path = tmp("sets-for-strategy.json");
    run(&[
        "enumerate",
        "--size",
        "12",
        "--out",
        sets_path.to_str().unwrap(),
    ]);
    let matrix_path = tmp("matrix.json");
    let out = run(&[
        "strategy",
        "--from",
        sets_path.to_str().unwrap(),
        "--index",
        "3",
        "--probs",
        "1/3,1/3,1/3",
        "--out",
        matrix_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("winning probability: 5/9"));
    let doc: MatrixDoc = hatgame_cli::artifact::read_json(&matrix_path).unwrap();
    assert_eq!(doc.cells.len(), 3);
    assert_eq!(doc.cells[0].len(), 9);
    assert!(doc
        .cells
        .iter()
        .flatten()
        .all(|&c| (-1..3).contains(&(c as i32))));
    assert_eq!(doc.win_probability, Some(ValueDoc::Exact("5/9".into())));

    // out-of-range index
    let out = run(&[
        "strategy",
        "--from",
        sets_path.to_str().unwrap(),
        "--index",
        "400",
    ]);
    assert_eq!(out.status.code(), Some(1));

    // malformed artifact file gives a parse diagnostic
    let broken = tmp("broken.json");
    std::fs::write(&broken, "{\"schema\": ").unwrap();
    let out = run(&[
        "strategy",
        "--from",
        broken.to_str().unwrap(),
        "--index",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.contains("line"),
        "diagnostics should cite a location: {err}"
    );
}

#[test]
fn simulate_is_reproducible() {
    let args = [
        "simulate",
        "--set",
        "4,5,7,8,9,13,14,16,17,18,20,24",
        "--probs",
        "0.7,0.2,0.1",
        "--trials",
        "200000",
        "--seed",
        "11",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("of 200000 trials (seed 11)"));

    let out = run(&[
        "simulate",
        "--set",
        "0,7",
        "--players",
        "3",
        "--colors",
        "2",
        "--probs",
        "0.5,0.5",
        "--trials",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn min_das_artifact() {
    let path = tmp("mindas.json");
    let out = run(&[
        "min-das",
        "--players",
        "5",
        "--colors",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("minimal adequate set size: 7"));
    assert!(text.contains("uniform winning probability: 25/32"));
    let doc: MinDasDoc = hatgame_cli::artifact::read_json(&path).unwrap();
    assert_eq!(doc.das, 7);
    assert_eq!(doc.witness.len(), 7);
    assert_eq!(doc.uniform_win_probability, ValueDoc::Exact("25/32".into()));
}

#[test]
fn complexity_output_and_artifact() {
    let path = tmp("complexity.json");
    let out = run(&[
        "complexity",
        "--players",
        "3",
        "--colors",
        "3",
        "--das",
        "12",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("18014398509481984 (1.80144E+16)"));
    assert!(text.contains("281474976710656 (2.81475E+14)"));
    assert!(text.contains("17383860"));
    let doc: ComplexityDoc = hatgame_cli::artifact::read_json(&path).unwrap();
    assert_eq!(doc.adequate, "17383860");

    let out = run(&[
        "complexity",
        "--players",
        "1",
        "--colors",
        "2",
        "--das",
        "1",
    ]);
    let text = stdout(&out);
    assert!(text.contains("brute force:   3 (3)"));
    assert!(text.contains("reduced scan:  1 (1)"));
    assert!(text.contains("adequate sets: 2 (2)"));
}

#[test]
fn patterns_csv_export() {
    let path = tmp("patterns.csv");
    let out = run(&["patterns", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("324 sets of size 12, 75 distinct patterns"));
    let body = std::fs::read_to_string(&path).unwrap();
    let mut lines = body.lines();
    assert_eq!(lines.next().unwrap(), "00,01,02,03,10,11,12,20,21,30,index");
    assert_eq!(body.lines().count(), 76); // header + 75 rows
    let rows = parse_patterns_csv("patterns.csv", &body).unwrap();
    assert_eq!(rows.len(), 75);
    assert!(rows.contains(&vec![0, 1, 2, 1, 3, 2, 1, 1, 1, 0]));
    // rows are sorted and the index column counts from 1
    let last = body.lines().last().unwrap();
    assert!(last.ends_with(",75"));
}

#[test]
fn dominance_artifact() {
    let path = tmp("dominance.json");
    let out = run(&["dominance", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("minimal (dominant) patterns: 3"));
    assert!(text.contains("0 1 2 1 3 2 1 1 1 0"));
    assert!(text.contains("1 2 1 0 1 4 1 1 1 0"));
    assert!(text.contains("1 3 3 1 0 0 0 3 0 1"));
    let doc: DominanceDoc = hatgame_cli::artifact::read_json(&path).unwrap();
    assert_eq!(doc.minimal.len(), 3);
    assert_eq!(doc.patterns.len(), 75);
    assert_eq!(doc.set_count, 324);
    assert!(doc.patterns.iter().all(|p| p.dominator < 3));
    assert_eq!(
        doc.patterns.iter().map(|p| p.multiplicity).sum::<usize>(),
        324
    );
}

#[test]
fn region_map_export() {
    let path = tmp("map.csv");
    let curves = tmp("curves.csv");
    let out = run(&[
        "region-map",
        "--p-steps",
        "16",
        "--r-steps",
        "8",
        "--out",
        path.to_str().unwrap(),
        "--curves-out",
        curves.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let body = std::fs::read_to_string(&path).unwrap();
    assert_eq!(body.lines().next().unwrap(), "p,r,label,psi");
    // all three regions appear on a reasonable grid
    assert!(body.contains(",A,"));
    assert!(body.contains(",B,"));
    assert!(body.contains(",C,"));
    let curves_body = std::fs::read_to_string(&curves).unwrap();
    assert_eq!(
        curves_body.lines().next().unwrap(),
        "p,ab_curve,bc_curve,r_lower,r_upper,ab_active,bc_active,alpha"
    );
    assert_eq!(curves_body.lines().count(), 18); // header + 17 p values

    // deterministic output
    let path2 = tmp("map2.csv");
    run(&[
        "region-map",
        "--p-steps",
        "16",
        "--r-steps",
        "8",
        "--out",
        path2.to_str().unwrap(),
    ]);
    assert_eq!(body, std::fs::read_to_string(&path2).unwrap());
}
