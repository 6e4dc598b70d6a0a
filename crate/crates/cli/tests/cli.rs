use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_fourmove"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args, None);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn status(args: &[&str], stdin: Option<&str>) -> i32 {
    run(args, stdin).status.code().unwrap()
}

#[test]
fn expand_figure4_word() {
    let out = stdout(&["expand", "--word", "a2^-1 a1 a2^-1 a1^-1 a2 a1 a2 a1^-1", "--m", "2", "--D", "3"]);
    assert_eq!(out, "1 + X1X2X2 + X2X2X1\n");
    assert_eq!(stdout(&["expand", "--word", "a1^-1 a2^-1 a1 a2", "--D", "2"]), "1 + X1X2 + X2X1\n");
    assert_eq!(stdout(&["expand", "--word", "1", "--m", "2", "--D", "4"]), "1\n");
}

#[test]
fn mu_and_lk() {
    assert_eq!(stdout(&["mu", "--catalog", "milnor_chain(3)", "--seq", "1,2", "--target", "3", "--q", "5"]), "1\n");
    assert_eq!(stdout(&["mu", "--catalog", "milnor_chain(4)", "--seq", "2,1,3", "--target", "4", "--q", "6"]), "0\n");
    assert_eq!(stdout(&["mu", "--catalog", "hopf", "--seq", "1", "--target", "2"]), "1\n");
    assert_eq!(stdout(&["lk", "--catalog", "hopf"]), "  0   1\n  1   0\n");
    assert_eq!(stdout(&["lk", "--catalog", "trefoil"]), "  3\n");
}

#[test]
fn check_text_snapshot() {
    let out = stdout(&["check", "--catalog", "hopf"]);
    let expected = "\
link: hopf
q = 5, degree bound B = 4
component 1: E([a1, eta(lambda1)]) = 1 + X1X2 + X2X1 + X1X1X2 + X1X2X1 + X2X1X2 + X2X2X1 + X1X1X1X2 + X1X1X2X1 + X1X2X1X2 + X1X2X2X1 + X2X2X1X2 + X2X2X2X1
  (I) holds
  (II) violated
      X1X2X2:0  X1X1X2:1
  (III) violated
      X1X2X1X2:1  X2X1X2X1:0
      X1X1X1X2:1  X1X2X1X1:0
      X2X2X2X1:1  X2X1X2X2:0
  (IV) holds
  (V) violated
      X1X2:1
      X2X1:1
";
    assert!(out.starts_with(expected), "{out}");
    assert!(out.ends_with("verdict: OBSTRUCTED\n"));
}

#[test]
fn no_obstruction_never_claims_triviality() {
    let out = stdout(&["check", "--catalog", "trivial(3)"]);
    assert!(out.contains("verdict: NO_OBSTRUCTION_FOUND"));
    assert!(!out.contains("4-trivial"));
    assert!(out.contains("necessary conditions only"));
}

#[test]
fn json_report_schema() {
    let out = stdout(&["check", "--catalog", "figure4_welded", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["verdict", "q", "degree_bound", "components"]);
    assert_eq!(v["q"], 5);
    assert_eq!(v["degree_bound"], 4);
    let c2 = &v["components"][1];
    assert_eq!(c2["i"], 2);
    for id in ["I", "II", "III", "IV", "V"] {
        assert!(c2["conditions"][id]["holds"].is_boolean());
    }
    assert_eq!(c2["conditions"]["II"]["witnesses"][0]["monomials"], serde_json::json!(["X1X2X2", "X2X1X1"]));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["check", "--catalog", "milnor_chain(4)", "--q", "6", "--format", "json"][..],
        &["check", "--catalog", "figure4_welded", "--sequential"][..],
        &["selftest", "--trials", "30", "--seed", "9"][..],
    ] {
        assert_eq!(stdout(args), stdout(args), "{args:?}");
    }
    assert_eq!(
        stdout(&["check", "--catalog", "milnor_chain(5)", "--q", "7"]),
        stdout(&["check", "--catalog", "milnor_chain(5)", "--q", "7", "--sequential"])
    );
}

#[test]
fn stdin_file_and_catalog_agree() {
    let doc = stdout(&["catalog", "show", "figure4_welded"]);
    assert_eq!(
        doc,
        "{\"name\":\"figure4_welded\",\"components\":[[{\"over\":[2,1],\"sign\":-1},{\"over\":[2,1],\"sign\":1}],[{\"over\":[1,1],\"sign\":1},{\"over\":[1,2],\"sign\":-1}]]}\n"
    );
    let piped = run(&["check"], Some(&doc));
    assert!(piped.status.success());
    let dir = std::env::temp_dir().join(format!("fourmove-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("f4.json");
    std::fs::write(&path, &doc).unwrap();
    let from_file = stdout(&["check", "--file", path.to_str().unwrap()]);
    assert_eq!(String::from_utf8(piped.stdout).unwrap(), from_file);
    assert_eq!(from_file, stdout(&["check", "--catalog", "figure4_welded"]));
}

#[test]
fn import_gauss_emits_link_json() {
    let out = run(&["import-gauss", "--name", "hopf"], Some("O1+ U2+\nU1+ O2+\n"));
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), stdout(&["catalog", "show", "hopf"]));
    assert_eq!(status(&["import-gauss"], Some("O1+ U1-")), 3);
    assert_eq!(status(&["import-gauss"], Some("Q1+")), 2);
}

#[test]
fn longitudes_words() {
    let out = stdout(&["longitudes", "--catalog", "figure4_welded", "--q", "5"]);
    assert_eq!(out, "lambda1 = 1\n  eta5(lambda1) = 1\nlambda2 = x1_1 x1_2^-1\n  eta5(lambda2) = a1 a2 a1^-1 a2^-1\n");
    assert_eq!(stdout(&["longitudes", "--catalog", "hopf"]), "lambda1 = x2_1\nlambda2 = x1_1\n");
}

#[test]
fn exit_codes() {
    assert_eq!(status(&["check", "--catalog", "figure4_welded"], None), 0);
    assert_eq!(status(&["check", "--catalog", "figure4_welded", "--fail-on-obstructed"], None), 10);
    assert_eq!(status(&["check", "--catalog", "trivial(2)", "--fail-on-obstructed"], None), 0);
    assert_eq!(status(&["check"], Some("{not json")), 2);
    assert_eq!(status(&["check"], Some(r#"{"components":[[{"over":[1,3],"sign":1}]]}"#)), 3);
    assert_eq!(status(&["check"], Some(r#"{"components":[[{"over":[1,1],"sign":2}]]}"#)), 3);
    assert_eq!(status(&["check", "--catalog", "hopf", "--q", "4"], None), 4);
    assert_eq!(status(&["check", "--catalog", "hopf", "--D", "3"], None), 4);
    assert_eq!(status(&["mu", "--catalog", "hopf", "--seq", "1,2,1,2,1", "--target", "1", "--q", "5"], None), 4);
    assert_eq!(status(&["check", "--catalog", "no_such_link"], None), 3);
    assert_eq!(status(&["expand", "--word", "a1 b2", "--D", "2"], None), 2);
    assert_eq!(status(&["check", "--file", "/nonexistent/link.json"], None), 2);
}

#[test]
fn semantic_errors_name_the_position() {
    let out = run(&["check"], Some(r#"{"components":[[],[{"over":[1,3],"sign":1}]]}"#));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("(1:3)") && err.contains("component 2"), "{err}");
}

#[test]
fn catalog_listing() {
    let list = stdout(&["catalog", "list"]);
    for name in ["trivial(1)", "trivial(4)", "hopf", "trefoil", "figure4_welded", "milnor_chain(3)", "milnor_chain(6)"] {
        assert!(list.lines().any(|l| l.starts_with(name)), "{name}");
    }
    let json: serde_json::Value = serde_json::from_str(&stdout(&["catalog", "list", "--format", "json"])).unwrap();
    assert!(json.as_array().unwrap().len() >= 13);
}

#[test]
fn selftest_reports_seed() {
    let out = stdout(&["selftest", "--trials", "50", "--m", "3", "--seed", "42"]);
    assert_eq!(out, "relator self-test: 50 trials, m = 3, seed = 42: 0 failures\n");
}
