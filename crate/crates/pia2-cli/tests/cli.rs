use std::path::Path;
use std::process::Command;

use pia2::ainf::all_symbols;
use pia2::functors::{g_functor, PantsCategory};
use pia2::linalg::Field;
use pia2_cli::json::{terms_json, F1Json, FunctorJson, ImageJson, TableJson};
use tempfile::TempDir;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("pia2").chain(args.iter().copied());
    let code = pia2_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn read_table(p: &str) -> TableJson {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["--help"]).0, 0);
    assert_eq!(run(&["--version"]).0, 0);
    assert_eq!(run(&[]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["minimal-model", "--field", "f3"]).0, 2);
    let (code, _, err) = run(&["minimal-model", "--algebra", "a2"]);
    assert_eq!(code, 2);
    assert!(err.contains("--backend matrix"), "{err}");
    let (code, _, err) = run(&["minimal-model", "--backend", "matrix", "--window", "10"]);
    assert_eq!(code, 2);
    assert!(err.contains("at least 16"), "{err}");
    assert_eq!(run(&["minimal-model", "--field", "q"]).0, 2);
    assert_eq!(run(&["verify", "--which", "kappa", "--algebra", "a2", "--backend", "matrix"]).0, 2);
}

#[test]
fn tables_from_both_backends_and_the_closed_form_agree() {
    let dir = TempDir::new().unwrap();
    let (s, m, e) = (path(&dir, "s.json"), path(&dir, "m.json"), path(&dir, "e.json"));
    let (code, out, _) = run(&["minimal-model", "--arity-max", "5", "--degree-max", "3", "-o", &s]);
    assert_eq!(code, 0);
    assert!(out.contains("m5:"), "{out}");
    assert_eq!(run(&["minimal-model", "--backend", "matrix", "--arity-max", "5", "--degree-max", "3", "-o", &m]).0, 0);
    assert_eq!(run(&["expected-table", "--arity-max", "5", "--degree-max", "3", "-o", &e]).0, 0);
    let bytes = |p: &str| std::fs::read(p).unwrap();
    assert_eq!(bytes(&s), bytes(&m));
    assert_eq!(bytes(&s), bytes(&e));
    let (code, out, _) = run(&["diff", &s, &e]);
    assert_eq!((code, out.starts_with("PASS")), (0, true), "{out}");
}

#[test]
fn json_goes_to_stdout_without_output() {
    let (code, out, err) = run(&["minimal-model", "--arity-max", "2", "--degree-max", "0"]);
    assert_eq!(code, 0);
    let t: TableJson = serde_json::from_str(&out).unwrap();
    assert_eq!(t.meta.algebra, "pia2");
    assert!(t.entries.iter().all(|e| e.arity == 2 && e.degree == 0));
    assert!(err.contains("nonzero operations"));
    // arity 1 has no operations to report
    let (_, out, _) = run(&["minimal-model", "--arity-max", "1"]);
    assert!(serde_json::from_str::<TableJson>(&out).unwrap().entries.is_empty());
}

#[test]
fn diff_reports_missing_and_changed_entries() {
    let dir = TempDir::new().unwrap();
    let (a, b, c) = (path(&dir, "a.json"), path(&dir, "b.json"), path(&dir, "c.json"));
    run(&["minimal-model", "--arity-max", "4", "--degree-max", "2", "-o", &a]);
    let mut t = read_table(&a);
    let dropped = t.entries.remove(3);
    std::fs::write(&b, serde_json::to_string(&t).unwrap()).unwrap();
    let report = path(&dir, "r.json");
    let (code, out, _) = run(&["diff", &a, &b, "--report", &report]);
    assert_eq!(code, 1);
    assert!(out.contains(&dropped.inputs.join(", ")), "{out}");
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r[0]["status"], "fail");
    assert_eq!(r[0]["violations"].as_array().unwrap().len(), 1);

    // the support is unchanged when only a coefficient moves
    let mut t = read_table(&a);
    let term = t.entries[0].output[0].clone();
    t.entries[0].output.push(pia2_cli::json::TermJson { symbol: term.symbol.clone() + "x", ..term });
    std::fs::write(&c, serde_json::to_string(&t).unwrap()).unwrap();
    assert_eq!(run(&["diff", &a, &c]).0, 2, "unknown symbol is malformed input");

    // different bounds are a failed comparison, not a usage error
    let d = path(&dir, "d.json");
    run(&["minimal-model", "--arity-max", "3", "--degree-max", "2", "-o", &d]);
    let (code, out, _) = run(&["diff", &a, &d]);
    assert_eq!(code, 1);
    assert!(out.contains("bounds differ"), "{out}");

    std::fs::write(&c, "{ not json").unwrap();
    assert_eq!(run(&["diff", &a, &c]).0, 2);
    assert_eq!(run(&["diff", &a, &path(&dir, "missing.json")]).0, 2);
}

#[test]
fn verify_lines_and_exit_codes() {
    let (code, out, _) = run(&["verify", "--which", "stasheff", "--arity-max", "5", "--degree-max", "3"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("PASS stasheff"), "{out}");
    let (code, out, _) = run(&["verify", "--which", "unital", "--backend", "matrix", "--field", "q", "--degree-max", "2"]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = run(&["verify", "--which", "contraction", "--algebra", "a2", "--backend", "matrix"]);
    assert_eq!(code, 0, "{out}");

    // the listed forms miss some operations and G breaks on two tuples
    let dir = TempDir::new().unwrap();
    let report = path(&dir, "all.json");
    let (code, out, _) = run(&["verify", "--which", "all", "-o", &report]);
    assert_eq!(code, 1);
    for line in ["PASS stasheff", "PASS kappa", "FAIL classification ", "PASS classification-extended", "PASS functor iota1", "FAIL functor G"] {
        assert!(out.contains(line), "missing {line:?} in\n{out}");
    }
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let failing: Vec<&str> = r.as_array().unwrap().iter().filter(|x| x["status"] == "fail").map(|x| x["check"].as_str().unwrap()).collect();
    assert_eq!(failing, ["classification", "functor G"]);
}

#[test]
fn exported_categories() {
    let (code, out, _) = run(&["export-category", "--name", "delta", "--arity-max", "5"]);
    assert_eq!(code, 0);
    let t: TableJson = serde_json::from_str(&out).unwrap();
    assert_eq!(t.entries.len(), 3);
    assert!(t.entries.iter().all(|e| e.arity == 3 && e.output[0].symbol.starts_with("1_")));

    let (code, out, _) = run(&["export-category", "--name", "fukaya", "--grading", "2,0,0,0", "--arity-max", "4"]);
    assert_eq!(code, 0);
    let t: TableJson = serde_json::from_str(&out).unwrap();
    assert_eq!(t.meta.algebra, "fukaya:2,0,0,0");
    assert_eq!(t.entries.iter().filter(|e| e.arity == 4).count(), 4);
    assert_eq!(run(&["export-category", "--name", "fukaya", "--grading", "1,1,1"]).0, 2);

    let (_, out, _) = run(&["export-category", "--name", "simples", "--arity-max", "4", "--degree-max", "2"]);
    let t: TableJson = serde_json::from_str(&out).unwrap();
    assert!(t.entries.iter().all(|e| e.arity == 2));

    let (code, out, _) = run(&["export-category", "--name", "pants", "--arity-max", "3", "--degree-max", "1"]);
    assert_eq!(code, 0);
    let t: TableJson = serde_json::from_str(&out).unwrap();
    let m3: Vec<_> = t.entries.iter().filter(|e| e.arity == 3).collect();
    assert_eq!(m3.len(), 6, "{m3:?}");

    let (code, out, _) = run(&["export-category", "--name", "pia2-prime", "--arity-max", "2", "--degree-max", "0"]);
    assert_eq!(code, 0);
    let t: TableJson = serde_json::from_str(&out).unwrap();
    assert!(t.entries.iter().any(|e| e.objects.contains(&"P".to_string())));
    assert_eq!(run(&["export-category", "--name", "simples", "--field", "q", "--backend", "matrix"]).0, 2);
}

fn functor_file(dir: &TempDir, name: &str, body: &str) -> String {
    let p = path(dir, name);
    std::fs::write(&p, body).unwrap();
    p
}

const IOTA1: &str = r#"{
  "source": "delta",
  "target": "pia2",
  "object_map": {"A": "S2", "B": "P1", "C": "S1"},
  "F1": [
    {"from": "alpha", "to": "j1"},
    {"from": "beta", "to": "p1"},
    {"from": "gamma", "to": [{"coeff": "1", "symbol": "b.u1^0"}]}
  ]
}"#;

#[test]
fn functor_files() {
    let dir = TempDir::new().unwrap();
    let good = functor_file(&dir, "iota1.json", IOTA1);
    let (code, out, _) = run(&["verify-functor", "--file", &good, "--arity-max", "6"]);
    assert_eq!(code, 0, "{out}");

    // sending gamma to zero breaks the triangle
    let bad = functor_file(&dir, "bad.json", &IOTA1.replace(r#"[{"coeff": "1", "symbol": "b.u1^0"}]"#, r#""0""#));
    let (code, out, _) = run(&["verify-functor", "--file", &bad]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL"), "{out}");

    let unknown = functor_file(&dir, "unknown.json", &IOTA1.replace("\"j1\"", "\"j7\""));
    assert_eq!(run(&["verify-functor", "--file", &unknown]).0, 2);
    let target = functor_file(&dir, "target.json", &IOTA1.replace("\"pia2\"", "\"pia3\""));
    assert_eq!(run(&["verify-functor", "--file", &target]).0, 2);
    assert_eq!(run(&["verify-functor", "--file", &good, "--field", "q", "--backend", "matrix"]).0, 2);

    let kappa1 = r#"{
      "name": "kappa1",
      "source": "fukaya:2,0,0,0",
      "target": "pia2",
      "object_map": {"X1": "S1", "X2": "S1", "X3": "P2", "X4": "P1"},
      "F1": [
        {"from": "f1", "to": "u1^1"},
        {"from": "f2", "to": "j2"},
        {"from": "f3", "to": "(21)"},
        {"from": "f4", "to": "p1"}
      ]
    }"#;
    let k = functor_file(&dir, "kappa1.json", kappa1);
    assert_eq!(run(&["verify-functor", "--file", &k]).0, 0);

    let simples = r#"{
      "source": "simples",
      "target": "pia2",
      "object_map": {"S1": "S1", "S2": "S2"},
      "F1": [
        {"from": "u1^1", "to": "u1^1"}, {"from": "u2^1", "to": "u2^1"},
        {"from": "b.u1^0", "to": "b.u1^0"}, {"from": "a.u2^0", "to": "a.u2^0"}
      ]
    }"#;
    let s = functor_file(&dir, "simples.json", simples);
    let (code, out, _) = run(&["verify-functor", "--file", &s, "--degree-max", "1", "--arity-max", "3"]);
    assert_eq!(code, 0, "{out}");
    // at degree 2 the product u1 u1 lands outside the given components
    let (code, _, err) = run(&["verify-functor", "--file", &s, "--degree-max", "2", "--arity-max", "3"]);
    assert_eq!(code, 2);
    assert!(err.contains("undefined on u1^2"), "{err}");

    // G written out as a file fails on the same two tuples as the built-in check;
    // products of the paths in scope stay below exponent 4
    let g = g_functor();
    let f1 = all_symbols(&PantsCategory::new(Field::F2, 4), 9)
        .iter()
        .map(|s| F1Json { from: s.to_string(), to: ImageJson::Terms(terms_json(&g.f1(s).unwrap())) })
        .collect();
    let object_map = [("X0", "S1"), ("X1", "S2"), ("X2", "P")].map(|(a, b)| (a.to_string(), b.to_string())).into_iter().collect();
    let j = FunctorJson { f1, higher: vec![], name: Some("G".into()), object_map, source: "pants".into(), target: "pia2-prime".into() };
    let gf = functor_file(&dir, "g.json", &serde_json::to_string(&j).unwrap());
    let (code, out, _) = run(&["verify-functor", "--file", &gf, "--arity-max", "3", "--degree-max", "1"]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("[u12, u01, u20]: got 1_P1, expected 1_P"), "{out}");
}

#[test]
fn binary_honours_thread_cap() {
    let bin = env!("CARGO_BIN_EXE_pia2");
    let go = |threads: Option<&str>| {
        let mut c = Command::new(bin);
        c.args(["minimal-model", "--arity-max", "4", "--degree-max", "2"]);
        if let Some(t) = threads {
            c.env("PIA2_THREADS", t);
        }
        let o = c.output().unwrap();
        assert!(o.status.success());
        o.stdout
    };
    let one = go(Some("1"));
    assert_eq!(one, go(None));
    assert_eq!(one, go(Some("not a number")));
    let o = Command::new(bin).arg("nonsense").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(Path::new(bin).exists());
}
