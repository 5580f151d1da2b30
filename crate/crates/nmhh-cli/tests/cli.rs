use std::process::{Command, Output};

use serde_json::Value;

fn nmhh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nmhh")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn phi_example() {
    let out = nmhh(&["phi", "--m", "3", "--max-n", "6"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["command"], "phi");
    assert_eq!(v["params"]["m"], 3);
    assert_eq!(v["result"], serde_json::json!([1, 2, 3, 4, 5, 6, 7]));
}

#[test]
fn hh_example_and_group_schema() {
    let out = nmhh(&["hh", "--m", "3", "--target", "N", "--ring", "Q", "--max-n", "4"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["result"]["ranks"], serde_json::json!([2, 2, 3, 5, 7]));
    assert_eq!(v["result"]["groups"][2], serde_json::json!({"free_rank": 3, "torsion": []}));

    let v = json_of(&nmhh(&["hh", "--m", "2", "--ring", "Z", "--max-n", "2", "--bigraded"]));
    assert_eq!(v["result"]["groups"][2], serde_json::json!({"free_rank": 1, "torsion": [2]}));
    assert!(v["result"]["bigraded"].as_array().unwrap().len() >= 4);
}

#[test]
fn bv_suite_exits_zero() {
    let out = nmhh(&["verify", "--suite", "bv", "--m", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["result"]["pass"], true);
}

#[test]
fn failed_verification_exits_one() {
    let out = nmhh(&["verify", "--suite", "homotopy", "--m", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["result"]["pass"], false);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["frobnicate"],
        vec!["phi", "--m", "3"],
        vec!["hh", "--m", "3", "--max-n", "2", "--ring", "Fp:4"],
        vec!["cup", "--m", "3", "--x", "a(9,[1])", "--y", "1"],
        vec!["verify", "--suite", "nope"],
    ] {
        let out = nmhh(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn output_is_deterministic() {
    let strip = |mut v: Value| {
        v["result"].as_object_mut().unwrap().remove("wall_time_secs");
        v
    };
    let args = ["verify", "--suite", "phi", "--m", "3"];
    assert_eq!(strip(json_of(&nmhh(&args))), strip(json_of(&nmhh(&args))));
    let args = ["bracket", "--m", "3", "--x", "a(1,[1,1])", "--y", "a(1,[2,1])"];
    assert_eq!(nmhh(&args).stdout, nmhh(&args).stdout);
}

#[test]
fn products_and_brackets() {
    let v = json_of(&nmhh(&["bracket", "--m", "3", "--x", "a(1,[1,1])", "--y", "a(1,[2,1])", "--method", "closed_form"]));
    assert_eq!(v["result"], "a(1,[2,1,1,1])");
    let v = json_of(&nmhh(&["cup", "--m", "2", "--ring", "Z", "--x", "f(1)", "--y", "g(2)"]));
    assert_eq!(v["result"], "g(3)");
    let v = json_of(&nmhh(&["cup", "--m", "3", "--x", "a(1,[1])", "--y", "a(1,[2])"]));
    assert_eq!(v["result"], "0");
}

#[test]
fn csv_and_latex() {
    let out = nmhh(&["tangent", "--m", "3", "--format", "csv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "m,hh1,normalizer,tangent\n3,2,6,5\n");
    let out = nmhh(&["e2", "--m", "3", "--max-n", "3", "--format", "latex"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with("\\begin{tabular}") && s.ends_with("\\end{tabular}\n"));
    let out = nmhh(&["cup", "--m", "3", "--x", "a(1,[1])", "--y", "1", "--format", "csv"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("\"a(1,[1])\""), "{s}");
}
