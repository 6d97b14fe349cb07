use std::path::{Path, PathBuf};

use bollobas::cli::{run_with, EXIT_CAP, EXIT_INPUT, EXIT_OK, EXIT_VIOLATED};
use bollobas::constructions::example1;
use bollobas::{serialize_family, GroundSet};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("bollobas").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn example1_n2(dir: &Path) -> PathBuf {
    write(dir, "example1_n2.json", &serialize_family(&example1(&GroundSet::new(2))))
}

fn json(out: &str) -> serde_json::Value {
    serde_json::from_str(out).unwrap()
}

#[test]
fn check_t14_on_example1() {
    let dir = tempfile::tempdir().unwrap();
    let f = example1_n2(dir.path());
    let (code, out, _) = run(&["check", "--theorem", "T1.4", "--json", f.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["lhs"]["exact"], "3/1");
    assert_eq!(v["rhs"]["exact"], "3/1");
    assert_eq!(v["holds"], true);
}

#[test]
fn text_and_json_carry_the_same_values() {
    let dir = tempfile::tempdir().unwrap();
    let f = example1_n2(dir.path());
    let (_, text, _) = run(&["sum", "--kind", "plain", f.to_str().unwrap()]);
    let (_, js, _) = run(&["sum", "--kind", "plain", "--json", f.to_str().unwrap()]);
    let v = json(&js);
    assert_eq!(v["sum"]["exact"], "3/1");
    assert!(text.contains("3/1"), "{text}");
}

#[test]
fn search_skew_augmented() {
    let (code, out, _) = run(&["search", "--system", "skew", "--kind", "augmented", "--n", "2", "--json"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["max_sum"]["exact"], "1/1");
}

#[test]
fn search_uniform_restriction() {
    let (code, out, _) = run(&["search", "--system", "bollobas", "--kind", "plain", "--n", "3", "--a", "1", "--b", "2", "--json"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["m"], 3);
}

#[test]
fn validate_reversed_example1() {
    let dir = tempfile::tempdir().unwrap();
    let rev = example1(&GroundSet::new(2)).reversed();
    let f = write(dir.path(), "rev.json", &serialize_family(&rev));
    let (code, out, _) = run(&["validate", "--system", "skew", "--json", f.to_str().unwrap()]);
    assert_eq!(code, EXIT_VIOLATED);
    let v = json(&out);
    assert_eq!(v["valid"], false);
    assert_eq!((v["witness"]["i"].clone(), v["witness"]["j"].clone()), (1.into(), 2.into()));

    let (code, _, _) = run(&["validate", "--system", "bollobas", f.to_str().unwrap()]);
    assert_eq!(code, EXIT_VIOLATED);
}

#[test]
fn validate_antichain_reads_a_sets() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "chain.json",
        r#"{"n": 2, "pairs": [{"A": [1], "B": [2]}, {"A": [1, 2], "B": []}]}"#,
    );
    let (code, out, _) = run(&["validate", "--system", "antichain", f.to_str().unwrap()]);
    assert_eq!(code, EXIT_VIOLATED, "{out}");
}

#[test]
fn bound_defaults_and_relaxed() {
    let (code, out, _) = run(&["bound", "--theorem", "T1.8", "--n", "5", "--json"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["bound"]["exact"], "3/1");
    assert_eq!(v["blocks"], serde_json::json!([2, 3]));

    let (_, out, _) = run(&["bound", "--theorem", "T1.7", "--blocks", "1,2", "--json"]);
    let v = json(&out);
    assert_eq!(v["bound"]["exact"], "6/1");
    assert_eq!(v["relaxed"]["exact"], "25/4");

    let (_, out, _) = run(&["bound", "--theorem", "C1.3", "--a", "2", "--b", "1", "--json"]);
    assert_eq!(json(&out)["bound"]["exact"], "3/1");

    let (_, out, _) = run(&["bound", "--theorem", "L3.1", "--l", "2", "--blocks", "2,3", "--json"]);
    assert_eq!(json(&out)["bound"]["exact"], "3/1");
}

#[test]
fn check_infers_uniform_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = run(&["construct", "--which", "uniform", "--a", "2", "--b", "1", "-o", dir.path().join("u.json").to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let (code, out, _) = run(&["check", "--theorem", "C1.3", "--json", dir.path().join("u.json").to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!((v["lhs"]["exact"].clone(), v["rhs"]["exact"].clone()), ("3/1".into(), "3/1".into()));
}

#[test]
fn construct_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("e2.json");
    let (code, _, _) = run(&["construct", "--which", "example2", "--n", "4", "-o", out_path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let (code, out, _) = run(&["check", "--theorem", "T1.8", "--json", out_path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["lhs"]["exact"], "3/1");

    let (code, stdout, _) = run(&["construct", "--which", "uniform-partitioned", "--a", "1,1", "--b", "1,1"]);
    assert_eq!(code, EXIT_OK);
    let f = bollobas::parse_family(&stdout).unwrap();
    assert_eq!(f.m(), 4);
}

#[test]
fn check_outside_system_class_is_a_precondition_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = example1_n2(dir.path());
    let (code, out, _) = run(&["check", "--theorem", "T1.2", "--json", f.to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert_eq!(json(&out)["holds"], serde_json::Value::Null);
}

#[test]
fn simulate_exact_and_mc() {
    let dir = tempfile::tempdir().unwrap();
    let f = example1_n2(dir.path());
    let (code, out, _) = run(&["simulate", "--proof", "thm15", "--mode", "exact", "--json", f.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["union_mass"]["exact"], "1/1");
    assert_eq!(v["disjoint"], true);

    let args = ["simulate", "--proof", "thm15", "--mode", "mc", "--samples", "20000", "--seed", "5", "--json", f.to_str().unwrap()];
    let (code, first, _) = run(&args);
    assert_eq!(code, EXIT_OK);
    let (_, second, _) = run(&args);
    assert_eq!(first, second);
    assert_eq!(json(&first)["seed"], 5);

    let (code, _, err) = run(&["simulate", "--proof", "lemma31", "--mode", "exact", f.to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("--l"), "{err}");
}

#[test]
fn simulate_rejects_non_skew_family() {
    let dir = tempfile::tempdir().unwrap();
    let rev = example1(&GroundSet::new(2)).reversed();
    let f = write(dir.path(), "rev.json", &serialize_family(&rev));
    let (code, _, err) = run(&["simulate", "--proof", "thm15", "--mode", "exact", f.to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("skew"), "{err}");
}

#[test]
fn usage_and_input_errors() {
    let (code, _, err) = run(&["frobnicate"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("Usage"), "{err}");
    let (code, _, _) = run(&["sum", "--kind", "plain", "--bogus", "x.json"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = run(&["sum", "--kind", "plain", "/nonexistent/family.json"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = run(&["bound", "--theorem", "T9.9", "--n", "3"]);
    assert_eq!(code, EXIT_INPUT);

    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"n": 2, "pairs": [{"A": [1], "B": [1]}]}"#);
    let (code, _, err) = run(&["sum", "--kind", "plain", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("pair 1"), "{err}");
}

#[test]
fn caps_give_exit_3() {
    let (code, _, _) = run(&["search", "--system", "skew", "--kind", "plain", "--n", "5"]);
    assert_eq!(code, EXIT_CAP);
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("simulate"));
}
