use std::path::PathBuf;
use std::process::{Command, Output};

fn imv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_imv"))
        .args(args)
        .env_remove("IMV_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn sample(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("algebras");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = imv(&full);
    (
        code(&o),
        serde_json::from_str(&stdout(&o)).expect("JSON output"),
    )
}

#[test]
fn tautology_exit_codes() {
    assert_eq!(code(&imv(&["check-taut", "~D X + X"])), 0);
    let o = imv(&["check-taut", "X + ~X"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("X = [0, 1]"));
    let o = imv(&["check-taut", "X + + Y"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("byte 4"));
}

#[test]
fn tautology_json() {
    let (c, v) = json(&["check-taut", "X + ~X"]);
    assert_eq!(c, 1);
    assert_eq!(v["status"], "invalid");
    assert_eq!(v["counterexample"]["X"], "[0, 1]");
    let (c, v) = json(&["check-taut", "D X -> X"]);
    assert_eq!(c, 0);
    assert_eq!(v["status"], "valid");
    assert!(v["counterexample"].is_null());
}

#[test]
fn equations() {
    assert_eq!(code(&imv(&["check-eq", "D(x + y)", "D x + D y"])), 0);
    assert_eq!(code(&imv(&["check-eq", "D x + (i * N x * ~D x)", "x"])), 0);
    let o = imv(&["check-eq", "~(~x + y) + y", "~(~y + x) + x"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("sides:"));
    assert_eq!(
        code(&imv(&[
            "check-eq",
            "--mv",
            "~(~x + y) + y",
            "~(~y + x) + x"
        ])),
        0
    );
    assert_eq!(code(&imv(&["check-eq", "--mv", "D x", "x"])), 2);
}

#[test]
fn consequence_and_deduction_exponent() {
    let (c, v) = json(&["consequence", "--premise", "X", "X * X", "--k-max", "16"]);
    assert_eq!(c, 0);
    assert_eq!(v["local_deduction_k"], 2);
    let (c, v) = json(&["consequence", "--premise", "X + X", "X", "--k-max", "4"]);
    assert_eq!(c, 1);
    assert!(v["local_deduction_k"].is_null());
    assert_eq!(code(&imv(&["consequence", "D X + ~D X"])), 0);
}

#[test]
fn evaluation() {
    let o = imv(&["eval", "i * N X", "--assign", "X=[1/4,3/4]"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "[0, 3/4]");
    let o = imv(&["eval", "i * N X", "--assign", "X=[0.25,3/4]"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("decimal"));
    assert_eq!(code(&imv(&["eval", "X + Y", "--assign", "X=1/2"])), 2);
    assert_eq!(code(&imv(&["eval", "X", "--assign", "X=[3/4,1/4]"])), 2);
    let o = imv(&[
        "eval",
        "X + Y",
        "--assign",
        "X=1/2",
        "--assign",
        "Y=[0, 1/3]",
    ]);
    assert_eq!(stdout(&o).trim(), "[1/2, 5/6]");
}

#[test]
fn normal_forms() {
    let (c, v) = json(&["normalize", "D(X -> i) + N X"]);
    assert_eq!(c, 0);
    assert_eq!(v["legs"]["delta"], "~Z_1 + 0 + Z_1");
    assert_eq!(v["variables"][0]["variable"], "X");
    assert_eq!(v["variables"][0]["lower"], "Y_1");
    let (_, v) = json(&["normalize", "D X * N Y", "--leg", "nabla"]);
    assert_eq!(v["legs"]["nabla"], "Y_1 * Z_2");
    assert!(v["legs"].get("delta").is_none());
}

#[test]
fn oracle_and_budget() {
    assert_eq!(
        code(&imv(&[
            "oracle",
            "D(x + y)",
            "--equals",
            "D x + D y",
            "--chain",
            "3"
        ])),
        0
    );
    let (c, v) = json(&["oracle", "X + ~X", "--chain", "1"]);
    assert_eq!(c, 1);
    assert_eq!(v["counterexample"]["X"], "[0, 1]");
    assert_eq!(code(&imv(&["oracle", "--mv", "X + ~X", "--chain", "5"])), 0);
    let o = Command::new(env!("CARGO_BIN_EXE_imv"))
        .args(["oracle", "a + b + c", "--chain", "3"])
        .env("IMV_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
    let o = Command::new(env!("CARGO_BIN_EXE_imv"))
        .args(["oracle", "a", "--chain", "3"])
        .env("IMV_BUDGET", "many")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn usage_errors() {
    assert_eq!(code(&imv(&[])), 2);
    assert_eq!(code(&imv(&["frobnicate"])), 2);
    assert_eq!(code(&imv(&["--format", "xml", "check-taut", "X"])), 2);
    assert_eq!(code(&imv(&["check-taut", "D"])), 2);
}

#[test]
fn hilbert_example_from_file() {
    let path = sample("hilbert3.json");
    assert_eq!(code(&imv(&["functor", "validate", &path])), 0);
    let o = imv(&["functor", "equiv", &path]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("missing [0, a]"));
    let (c, v) = json(&["functor", "equiv", &path]);
    assert_eq!(c, 1);
    assert_eq!(v["center_generates"], false);
    assert_eq!(v["interval_size"], 6);
    assert_eq!(v["generated"].as_array().unwrap().len(), 5);
    assert_eq!(v["missing"], serde_json::json!(["[0, a]"]));
}

#[test]
fn functor_builtins() {
    assert_eq!(code(&imv(&["functor", "equiv", "builtin:mv4"])), 0);
    assert_eq!(
        code(&imv(&[
            "functor",
            "equiv",
            "builtin:godel5",
            "--term",
            "meet(join(i, y), z)"
        ])),
        0
    );
    assert_eq!(
        code(&imv(&[
            "functor",
            "equiv",
            "builtin:mv2",
            "--term",
            "oplus(y, odot(i, z))"
        ])),
        1
    );
    assert_eq!(
        code(&imv(&[
            "functor",
            "equiv",
            "builtin:mv2",
            "--term",
            "frob(y)"
        ])),
        2
    );
    assert_eq!(code(&imv(&["functor", "axioms", "builtin:godel3"])), 0);
    assert_eq!(code(&imv(&["functor", "validate", "builtin:nothing"])), 2);
    let (c, v) = json(&["functor", "build", "builtin:godel3"]);
    assert_eq!(c, 0);
    assert_eq!(v["carrier"].as_array().unwrap().len(), 6);
    assert_eq!(v["ops"]["imp"]["table"]["[a, 1],[a, a]"], "[a, 1]");
}

#[test]
fn axioms_from_files() {
    let alg = sample("hilbert3.json");
    let theory = sample("hilbert3-theory.json");
    let (c, v) = json(&["functor", "axioms", &alg, "--theory", &theory]);
    assert_eq!(c, 0);
    assert_eq!(v["holds"], true);
    let axioms = v["axioms"].as_array().unwrap();
    assert!(axioms.iter().all(|a| a["counterexample"].is_null()));
    assert!(axioms.iter().any(|a| a["axiom"] == "imp(D x, N x) = 1"));
    let (c, v) = json(&["functor", "axioms", &sample("implication-signature.json")]);
    assert_eq!(c, 0);
    assert_eq!(v["axioms"].as_array().unwrap().len(), 14);
}

#[test]
fn invalid_algebra_files() {
    let dir = std::env::temp_dir().join(format!("imv-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let text = std::fs::read_to_string(sample("hilbert3.json")).unwrap();
    let plus = dir.join("plus.json");
    std::fs::write(&plus, text.replace(r#"["-", "+"]"#, r#"["+", "+"]"#)).unwrap();
    let plus = plus.to_string_lossy().into_owned();
    let o = imv(&["functor", "validate", &plus]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("not monotone in argument 1"));
    assert_eq!(code(&imv(&["functor", "build", &plus])), 1);
    let broken = dir.join("broken.json");
    std::fs::write(&broken, text.replace(r#""1,1": "1""#, r#""1,1": "b""#)).unwrap();
    assert_eq!(
        code(&imv(&["functor", "validate", &broken.to_string_lossy()])),
        2
    );
    assert_eq!(
        code(&imv(&["functor", "validate", "/nonexistent/algebra.json"])),
        2
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_output_is_stable_and_codes_ignore_format() {
    let cases: [&[&str]; 6] = [
        &["check-taut", "X + ~X"],
        &["check-eq", "~(~x + y) + y", "~(~y + x) + x"],
        &["consequence", "--premise", "X + X", "X"],
        &["normalize", "D(X * ~Y) -> N Y"],
        &["oracle", "X * Y + ~Z", "--chain", "2"],
        &["functor", "equiv", "builtin:hilbert3"],
    ];
    for args in cases {
        let mut with_json = vec!["--format", "json"];
        with_json.extend_from_slice(args);
        let first = imv(&with_json);
        let second = imv(&with_json);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        assert_eq!(code(&first), code(&imv(args)), "{args:?}");
    }
}
