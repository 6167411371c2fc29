use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn qhom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhom")).args(args).output().expect("qhom runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name);
    p.to_string_lossy().into_owned()
}

fn scratch(name: &str, contents: &str) -> String {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid json on stdout")
}

#[test]
fn homology_groups() {
    let o = qhom(&["homology", "--quandle", "R4", "--theory", "quandle", "--degree", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "Z^2 (+) Z_2 (+) Z_2");

    let o = qhom(&["homology", "-q", "R3", "--degree", "3", "--json"]);
    let v = json(&o);
    assert_eq!(v["group"], "Z_3");
    assert_eq!(v["free_rank"], 0);
    assert_eq!(v["torsion"], serde_json::json!([3]));
}

#[test]
fn class_of_chain_file() {
    let chain = scratch("r3_shadow.txt", "-1 (0,1,2)\n-1 (0,0,1)\n-1 (0,2,0)\n");
    let o = qhom(&["class", "-q", "R3", "--chain", &chain]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("order: 3"), "{}", stdout(&o));

    let v = json(&qhom(&["class", "-q", "R3", "--chain", &chain, "--json"]));
    assert_eq!(v["order"], "3");
    assert_eq!(v["zero"], false);

    let via_homology = json(&qhom(&["homology", "-q", "R3", "--degree", "3", "--chain", &chain, "--json"]));
    assert_eq!(via_homology["class"], v["class"]);
}

#[test]
fn non_cycle_is_input_error() {
    let chain = scratch("not_a_cycle.txt", "1 (0,1)\n");
    let o = qhom(&["class", "-q", "R3", "--chain", &chain]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a cycle"));
}

#[test]
fn colorings_of_link_7_2_5() {
    let path = fixture("link_7_2_5.json");
    let o = qhom(&["colorings", "-q", "R4", "-d", &path]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("colorings: 16"));

    let v = json(&qhom(&["colorings", "-q", "R4", "-d", &path, "--json"]));
    let list = v.as_array().unwrap();
    assert_eq!(list.len(), 16);
    assert!(list.iter().all(|r| r["arcs"].is_object() && r["class"].is_object()));
}

#[test]
fn shadow_colorings_carry_regions() {
    let v = json(&qhom(&["colorings", "-q", "R3", "-d", "@trefoil", "--mode", "shadow", "--json"]));
    let list = v.as_array().unwrap();
    assert_eq!(list.len(), 27);
    assert!(list.iter().all(|r| r["regions"].as_object().unwrap().len() == 5));
}

#[test]
fn periodicity_reports_candidates() {
    let o = qhom(&["periodicity", "-q", "R4", "-d", &fixture("link_7_2_5.json"), "--primes", "2,3,5,7"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("CANDIDATE: {2}"));

    let o = qhom(&["periodicity", "-q", "R4", "-d", "@link_7_2_5", "--primes", "2"]);
    assert_eq!(o.status.code(), Some(0));

    let o = qhom(&["periodicity", "-q", "R4", "-d", "@link_7_2_5", "--primes", "4"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn tangle_obstruction_exit_codes() {
    let args = ["tangle-obstruction", "-q", "R3", "-t", "@cut_trefoil_tangle", "--mode", "shadow"];
    let o = qhom(&[&args[..], &["-l", "@pretzel_3_2_-3"]].concat());
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("OBSTRUCTED"));

    let o = qhom(&[&args[..], &["-l", "@trefoil_left", "--json"]].concat());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["verdict"], "INCONCLUSIVE");

    let o = qhom(&[&args[..], &["-l", "@twist4_tangle"]].concat());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn four_move_bounds() {
    let o = qhom(&["four-move-bound", "-l", "@hopf", "-l", "@unlink2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("INFINITE"));

    let v = json(&qhom(&["four-move-bound", "-l", &fixture("pretzel_4_4.json"), "-l", "@unlink2", "--json"]));
    assert_eq!(v["bound"], 2);

    let o = qhom(&["four-move-bound", "-l", "@hopf"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn quandle_files() {
    let good = scratch("r3.json", r#"{"name":"R3","order":3,"table":[[0,2,1],[2,1,0],[1,0,2]]}"#);
    let o = qhom(&["quandle-verify", "-q", &good]);
    assert_eq!(o.status.code(), Some(0));
    let o = qhom(&["homology", "-q", &good, "--degree", "3"]);
    assert_eq!(stdout(&o).trim(), "Z_3");

    let bad = scratch("bad.json", r#"{"name":"bad","order":2,"table":[[1,1],[0,0]]}"#);
    let o = qhom(&["quandle-verify", "-q", &bad, "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["passed"], false);
    assert!(!v["violations"].as_array().unwrap().is_empty());
    assert_eq!(qhom(&["homology", "-q", &bad, "--degree", "2"]).status.code(), Some(1));
}

#[test]
fn input_errors_exit_one() {
    for args in [
        vec!["homology", "-q", "R99", "--degree", "2"],
        vec!["homology", "-q", "R4"],
        vec!["homology", "-q", "/no/such/file.json", "--degree", "2"],
        vec!["colorings", "-q", "R3", "-d", "@no_such_fixture"],
        vec!["colorings", "-q", "R3", "-d", "@trefoil", "--mode", "loud"],
        vec!["frobnicate"],
    ] {
        let o = qhom(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
    let bad = scratch("bad_diagram.json", r#"{"kind":"link","crossings":[[1,2,3]]}"#);
    assert_eq!(qhom(&["colorings", "-q", "R3", "-d", &bad]).status.code(), Some(1));
    assert_eq!(qhom(&["--help"]).status.code(), Some(0));
}

#[test]
fn text_and_json_agree() {
    let o = qhom(&["periodicity", "-q", "R4", "-d", "@link_7_2_5", "--primes", "2,3", "--json"]);
    let v = json(&o);
    assert_eq!(v["colorings"], 16);
    let statuses: Vec<&str> = v["primes"].as_array().unwrap().iter().map(|p| p["status"].as_str().unwrap()).collect();
    assert_eq!(statuses, ["CANDIDATE", "EXCLUDED"]);
    let text = stdout(&qhom(&["periodicity", "-q", "R4", "-d", "@link_7_2_5", "--primes", "2,3"]));
    assert!(text.contains("p = 2: CANDIDATE") && text.contains("p = 3: EXCLUDED"));
}
