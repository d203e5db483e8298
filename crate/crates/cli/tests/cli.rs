use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

const KITE: &str = r#"{"dim":2,"vertices":[["-1","0"],["2","0"],["0","1"],["0","-1"]]}"#;

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_valuation-lab"))
        .args(args)
        .env_remove("VALUATION_LAB_SEED")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn json_of(out: &Output) -> Value {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    assert_eq!(text.lines().count(), 1, "one JSON document per run: {text:?}");
    serde_json::from_str(&text).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn moment_of_kite() {
    let out = run(&["compute", "moment", "--input", KITE], None);
    assert_eq!(code(&out), 0);
    assert_eq!(json_of(&out), json!({"value": ["1", "0"]}));

    // the same polytope from stdin and from a file
    let out = run(&["compute", "moment"], Some(KITE));
    assert_eq!(json_of(&out), json!({"value": ["1", "0"]}));
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("kite.json");
    std::fs::write(&path, KITE).unwrap();
    let out = run(&["compute", "volume", "--input", path.to_str().unwrap()], None);
    assert_eq!(json_of(&out), json!({"value": "3"}));
}

#[test]
fn other_functionals() {
    let out = run(&["compute", "euler", "--input", KITE], None);
    assert_eq!(json_of(&out), json!({"value": "1"}));
    // hand integral over the unit square [-1,1]^2: diag(4/3, 4/3)
    let square = r#"{"dim":2,"vertices":[["-1","-1"],["1","-1"],["1","1"],["-1","1"]]}"#;
    let out = run(&["compute", "moment-matrix", "--input", square], None);
    assert_eq!(json_of(&out), json!({"value": [["4/3", "0"], ["0", "4/3"]]}));
    // polar of the square is the cross with area 2
    let out = run(&["compute", "mu", "--mu", "polar-V", "--input", square], None);
    assert_eq!(json_of(&out), json!({"value": "2"}));
}

#[test]
fn valuation_check_passes() {
    let out = run(&["check", "valuation", "--target", "V", "--trials", "100", "--dim", "2", "--seed", "7"], None);
    assert_eq!(code(&out), 0);
    let doc = json_of(&out);
    assert_eq!(doc["passed"], json!(true));
    assert_eq!(doc["seed"], json!(7));
    assert_eq!(doc["trials"], json!(100));
}

#[test]
fn failing_check_exits_one() {
    let out = run(&["check", "equivariance", "--mu", "m", "--mode", "vl_signum_covariant", "--trials", "30"], None);
    assert_eq!(code(&out), 1);
    let doc = json_of(&out);
    assert_eq!(doc["passed"], json!(false));
    assert!(doc["counterexample"].is_object());
}

#[test]
fn vector_fit() {
    let out = run(&["fit", "vector", "--dim", "2", "--mu", "2*m-5*rot-polar-m"], None);
    assert_eq!(code(&out), 0);
    let doc = json_of(&out);
    assert_eq!(doc["coefficients"], json!(["2", "-5"]));
    assert_eq!(doc["residual_ok"], json!(true));
}

#[test]
fn fit_with_supplied_sets() {
    let dir = std::path::Path::new(env!("CARGO_TARGET_TMPDIR"));
    let train = dir.join("train.json");
    let holdout = dir.join("holdout.json");
    // cube and cross separate 3*chi + 1/2*V + 2*polar-V only with a third polytope
    let cube = r#"{"dim":2,"vertices":[["-1","-1"],["1","-1"],["1","1"],["-1","1"]]}"#;
    let cross = r#"{"dim":2,"vertices":[["-1","0"],["1","0"],["0","1"],["0","-1"]]}"#;
    let wide = r#"{"dim":2,"vertices":[["-2","-1"],["2","-1"],["2","1"],["-2","1"]]}"#;
    std::fs::write(&train, format!("[{cube},{cross},{wide}]")).unwrap();
    std::fs::write(&holdout, format!("[{KITE}]")).unwrap();
    let args = ["fit", "scalar", "--mu", "3*chi+1/2*V+2*polar-V"];
    let out =
        run(&[&args[..], &["--train", train.to_str().unwrap(), "--holdout", holdout.to_str().unwrap()]].concat(), None);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json_of(&out)["coefficients"], json!(["3", "1/2", "2"]));
}

#[test]
fn input_errors_exit_two() {
    let cases: [(&[&str], Option<&str>, &str); 5] = [
        (&["compute", "volume"], Some("{not json"), "parse_error"),
        (&["compute", "volume", "--input", r#"{"dim":3,"vertices":[["1","2"]]}"#], None, "dimension_mismatch"),
        (&["polar", "--input", r#"{"dim":2,"vertices":[["1","1"],["2","1"],["1","2"]]}"#], None, "origin_not_interior"),
        (&["check", "homogeneity", "--mu", "V", "--degree", "1/2"], None, "unsupported_exponent"),
        (&["frobnicate"], None, "usage"),
    ];
    for (args, stdin, expected) in cases {
        let out = run(args, stdin);
        assert_eq!(code(&out), 2, "{args:?}");
        let doc = json_of(&out);
        assert_eq!(doc["error"], json!(expected), "{args:?}");
        assert!(doc["detail"].is_string());
    }
}

#[test]
fn generated_and_polar_output_round_trips() {
    for args in [
        &["generate", "cube", "--dim", "3"][..],
        &["generate", "cross", "--dim", "4"],
        &["generate", "random", "--dim", "3", "--seed", "11"],
        &["generate", "double-pyramid", "--params", "1,2,1,3,1/2,-1"],
        &["generate", "double-pyramid", "--dim", "3", "--seed", "5"],
    ] {
        let out = run(args, None);
        assert_eq!(code(&out), 0, "{args:?}");
        let first = String::from_utf8(out.stdout).unwrap();
        // polar twice is the identity, and the printed form is canonical
        let once = run(&["polar"], Some(&first));
        let twice = run(&["polar"], Some(std::str::from_utf8(&once.stdout).unwrap()));
        assert_eq!(String::from_utf8(twice.stdout).unwrap(), first, "{args:?}");
        let volume = run(&["compute", "volume"], Some(&first));
        assert_eq!(code(&volume), 0);
    }
}

#[test]
fn deterministic_under_seed() {
    let commands: [&[&str]; 4] = [
        &["check", "equivariance", "--mu", "M2", "--mode", "gl_covariant", "--trials", "20", "--seed", "9"],
        &["check", "valuation", "--mu", "V+V", "--trials", "20", "--seed", "3"],
        &["generate", "random", "--dim", "2", "--seed", "42"],
        &["fit", "matrix", "--mu", "7*M2", "--seed", "2"],
    ];
    for args in commands {
        let a = run(args, None);
        let b = run(args, None);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status, b.status);
    }
}

#[test]
fn seed_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_valuation-lab"))
        .args(["check", "valuation", "--mu", "chi", "--trials", "5"])
        .env("VALUATION_LAB_SEED", "123")
        .output()
        .unwrap();
    assert_eq!(json_of(&out)["seed"], json!(123));
}

#[test]
fn functional_and_segment_checks() {
    let out = run(&["check", "functional-eq", "--trials", "50"], None);
    assert_eq!(code(&out), 0);
    let out = run(&["check", "functional-eq", "--homogeneous", "--trials", "50"], None);
    assert_eq!(code(&out), 0);
    let out = run(&["check", "functional-eq", "--k", "5", "--kt", "-2", "--trials", "50"], None);
    assert_eq!(code(&out), 0);
    // area in the plane has degree 2, not 3
    let out = run(&["check", "homogeneity", "--mu", "V", "--degree", "2", "--trials", "20"], None);
    assert_eq!(code(&out), 0);
    let out = run(&["check", "homogeneity", "--mu", "V", "--degree", "3", "--trials", "20"], None);
    assert_eq!(code(&out), 1);
    for (parity, degree) in [("even", "2"), ("odd", "3"), ("odd", "0"), ("even", "-2")] {
        let out = run(&["check", "dim1", "--parity", parity, "--degree", degree, "--trials", "30"], None);
        assert_eq!(code(&out), 0, "{parity} {degree}");
    }
}
