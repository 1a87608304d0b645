use std::process::{Command, Output};

use xseries::iso::is_isomorphic_with;
use xseries::{build, GroupExpr, Guards};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xseries"))
        .args(args)
        .env_remove("XSERIES_GUARDS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn x_series_of_sd443() {
    let o = run(&["series", "sd(4,4,3)", "--kind", "X"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "X: [16, 4, 1]\n");
}

#[test]
fn trivial_group_series() {
    let o = run(&["series", "C1", "--kind", "X"]);
    assert_eq!(stdout(&o), "X: [1]\n");
}

#[test]
fn several_kinds_in_order() {
    let o = run(&["series", "Q8", "--kind", "gamma", "--kind", "X", "--kind", "good:both"]);
    let out = stdout(&o);
    let keys: Vec<&str> = out.lines().map(|l| l.split(':').next().unwrap()).collect();
    assert_eq!(keys, ["LowerCentral", "X", "Good"]);
    assert!(out.contains("X: [8, 2, 2, 1]"), "{out}");
}

#[test]
fn dot_node_counts() {
    let count = |expr: &str| {
        let o = run(&["lattice", expr, "--dot"]);
        assert!(o.status.success());
        stdout(&o).lines().filter(|l| l.contains("[label=")).count()
    };
    assert_eq!(count("Q8"), 6);
    assert_eq!(count("sd(4,4,3)"), 13);
}

#[test]
fn lattice_json_lists_every_subgroup() {
    let o = run(&["lattice", "sd(4,4,3)", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["subgroups"], 15);
    assert_eq!(v["classes"], 13);
    assert_eq!(v["nodes"].as_array().unwrap().len(), 15);
}

#[test]
fn center_of_q8_has_no_complement() {
    let o = run(&["complements", "Q8", "a^2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("complements: none"), "{}", stdout(&o));
    let o = run(&["complements", "Q8", "a^2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["complements"], serde_json::json!([]));
    assert_eq!(v["condition_holds"], false);
}

#[test]
fn complements_accept_indices_and_labels() {
    let by_label = stdout(&run(&["complements", "C2 x C4", "L.a", "--json"]));
    let by_index = stdout(&run(&["complements", "C2 x C4", "4", "--json"]));
    assert_eq!(by_label, by_index);
    let v: serde_json::Value = serde_json::from_str(&by_label).unwrap();
    assert_eq!(v["complements"].as_array().unwrap().len(), 2);
}

#[test]
fn quotient_table() {
    let o = run(&["quotient", "sd(4,4,3)", "b^2 a^2", "--json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["quotient_order"], 8);
    assert_eq!(v["rows"][2]["of_quotient"], 2);
    assert_eq!(v["rows"][2]["image"], 1);
}

#[test]
fn condition_variants() {
    let o = run(&["condition", "C2 x C4", "(1, a^2)", "--which", "pure"]);
    assert!(stdout(&o).contains("purity: fails"), "{}", stdout(&o));
    let o = run(&["condition", "Heis3", "c", "--which", "agemo"]);
    assert!(stdout(&o).contains("agemo condition: holds"));
    let o = run(&["condition", "Heis3", "c", "--which", "pure"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["condition", "Q8", "a", "--which", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn parse_errors_exit_2_with_caret() {
    let o = run(&["series", "C4 x Q9"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("unknown group `Q9`"), "{err}");
    assert!(err.contains("       ^^"), "{err}");
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["complements", "Q8", "99"]).status.code(), Some(2));
}

#[test]
fn guards_exit_3() {
    assert_eq!(run(&["show", "L(2,4)"]).status.code(), Some(3));
    assert_eq!(run(&["show", "C64", "--max-order", "32"]).status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_xseries"))
        .args(["lattice", "C2 x C2 x C2 x C2"])
        .env("XSERIES_GUARDS", "lattice=8")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn show_round_trips() {
    for src in ["sd(4,4,3)", "C2 x (C4 x Q8)", "wr(C2,2)", "L(3,2)", "Heis3"] {
        let o = run(&["show", src]);
        let first = stdout(&o).lines().next().unwrap().to_string();
        let a = build(&src.parse::<GroupExpr>().unwrap()).unwrap();
        let b = build(&first.parse::<GroupExpr>().unwrap()).unwrap();
        let guards = Guards {
            iso_max_order: 128,
            ..Guards::default()
        };
        assert!(is_isomorphic_with(&a, &b, &guards).unwrap().is_some(), "{src} -> {first}");
    }
}

#[test]
fn json_is_stable() {
    let a = stdout(&run(&["series", "sd(4,4,3)", "--json"]));
    let b = stdout(&run(&["series", "sd(4,4,3)", "--json"]));
    assert_eq!(a, b);
    let compact: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(
        compact.to_string(),
        r#"{"group":"sd(4,4,3)","order":16,"p":2,"series":{"Frattini":[16,4,1],"LowerCentral":[16,2,1],"X":[16,4,1]}}"#
    );
    let keys: Vec<usize> = ["\"X\"", "\"Frattini\"", "\"LowerCentral\""].iter().map(|k| a.find(k).unwrap()).collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]), "{a}");
}

#[test]
fn verify_one_group() {
    let o = run(&["verify", "sd(4,4,3)"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("pass  quotient-counterexample"));
    let o = run(&["verify", "sd(4,4,3)", "--check", "x-descending", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["results"].as_array().unwrap().len(), 1);
    assert_eq!(v["results"][0]["status"], "pass");
    assert_eq!(run(&["verify", "Q8", "--check", "no-such-check"]).status.code(), Some(2));
}

#[test]
fn verify_small_sweep() {
    let o = run(&["verify", "--sweep", "8"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains(" 0 failed"), "{out}");
    let o = run(&["verify", "--sweep", "1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(v[0]["order"], 1);
}

#[test]
fn budget_marks_partial() {
    let o = run(&["verify", "C2 x C2 x C2 x C2 x C2", "--budget", "0", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["partial"], true);
    assert!(o.status.success());
}

#[test]
fn catalog_listing() {
    let o = run(&["catalog-list"]);
    let out = stdout(&o);
    for name in ["Q8", "D16", "SD16", "M16", "Heis3"] {
        assert!(out.contains(name), "{name}");
    }
}
