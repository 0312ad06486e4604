use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn koszulab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_koszulab"))
        .args(args)
        .env_remove("KOSZULAB_THREADS")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn proreg_json_certificate() {
    let o = koszulab(&["proreg", "--ring", "F32003[x,y]", "--seq", "x,y", "--rmax", "3", "--smax", "6", "--json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["verdict"], "certified");
    let ws = v["witnesses"].as_array().unwrap();
    assert_eq!(ws.len(), 6);
    for w in ws {
        assert_eq!(w["s"].as_u64().unwrap(), w["r"].as_u64().unwrap() + 1);
    }
}

#[test]
fn proreg_exhausted_bounds_are_undecided() {
    let o = koszulab(&["proreg", "--ring", "F32003[x]", "--seq", "x", "--rmax", "2", "--smax", "2"]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("verdict: undecided"));
}

#[test]
fn duality_for_an_embedded_point() {
    let base = ["duality", "--ring", "F32003[x,y]", "--module", "coker [[x^2, x*y]]"];
    // degree -6 still carries a transient class at stage 8
    let o = koszulab(&[&base[..], &["--window", "-6..0", "--stage-max", "8", "--json"]].concat());
    assert_eq!(code(&o), 3, "{}", stdout(&o));
    assert_eq!(json(&o)["unstable_degrees"], serde_json::json!([-6]));

    let o = koszulab(&[&base[..], &["--window", "-6..0", "--stage-max", "10"]].concat());
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).ends_with("duality: pass\n"));

    let o = koszulab(&[&base[..], &["--window", "-5..0", "--stage-max", "8", "--json"]].concat());
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    assert!(v["entries"].as_array().unwrap().iter().all(|e| e["pass"] == true));
}

#[test]
fn syntax_errors_point_at_the_input() {
    let o = koszulab(&["gb", "--ring", "Q[x,y,]", "--ideal", "x"]);
    assert_eq!(code(&o), 2);
    let err = stderr(&o);
    assert!(err.contains("--ring") && err.contains("position 6"), "{err}");
    assert!(err.lines().last().unwrap().ends_with("      ^"), "{err}");

    let o = koszulab(&["nf", "--ring", "Q[x,y]", "--ideal", "x", "--poly", "x+w"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("unknown variable `w` at position 2"));

    let o = koszulab(&["proreg", "--ring", "Q[x]", "--seq", "x", "--rmax", "0"]);
    assert_eq!(code(&o), 2);
    let o = koszulab(&["localcoh", "--ring", "Q[x]", "--module", "R", "--index", "1", "--window", "3..1", "--stage-max", "2"]);
    assert_eq!(code(&o), 2);
    let o = koszulab(&["hilbert", "--ring", "Q[x]"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn thread_cap_is_validated() {
    let run = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_koszulab"))
            .args(["gb", "--ring", "Q[x,y]", "--ideal", "x^2, x*y"])
            .env("KOSZULAB_THREADS", v)
            .output()
            .unwrap()
    };
    assert_eq!(code(&run("1")), 0);
    assert_eq!(code(&run("3")), 0);
    assert_eq!(code(&run("0")), 2);
    assert_eq!(code(&run("many")), 2);
}

fn verify_stdin(cert: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_koszulab"))
        .args(["verify", "--cert", "-", "--json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(cert).unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn certificates_round_trip_through_verify() {
    let o = koszulab(&["proreg", "--ring", "F32003[x,y,z]/(x*z, y*z)", "--seq", "x, y", "--rmax", "3", "--json"]);
    assert_eq!(code(&o), 0);
    let v = verify_stdin(&o.stdout);
    assert_eq!(code(&v), 0, "{}", stderr(&v));
    assert_eq!(json(&v)["kind"], "proreg");
    assert_eq!(json(&v)["valid"], true);

    let o = koszulab(&["essnull", "--ring", "F32003[x,y]", "--seq", "x^2, x*y", "--rmax", "3", "--json"]);
    assert_eq!(code(&o), 0);
    let v = verify_stdin(&o.stdout);
    assert_eq!(code(&v), 0, "{}", stderr(&v));
    assert_eq!(json(&v)["kind"], "essnull");

    let undecided = koszulab(&["proreg", "--ring", "F32003[x]", "--seq", "x", "--rmax", "2", "--smax", "2", "--json"]);
    assert_eq!(code(&verify_stdin(&undecided.stdout)), 3);
}

#[test]
fn tampered_certificates_are_rejected() {
    let o = koszulab(&["proreg", "--ring", "F32003[x,y]", "--seq", "x,y", "--rmax", "2", "--json"]);
    let mut v = json(&o);
    v["witnesses"][0]["s"] = 3.into();
    let out = verify_stdin(v.to_string().as_bytes());
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["valid"], false);

    let out = verify_stdin(b"{\"not\": \"a certificate\"}");
    assert_eq!(code(&out), 2);
}

#[test]
fn text_and_json_agree() {
    let cases: [&[&str]; 4] = [
        &["proreg", "--ring", "F32003[x,y]", "--seq", "x^2, x*y", "--rmax", "2"],
        &["proreg", "--ring", "F32003[x]", "--seq", "x", "--rmax", "2", "--smax", "2"],
        &["lochom", "--ring", "F32003[x,y]", "--seq", "x, y", "--rmax", "3"],
        &["localcoh", "--ring", "F32003[x,y]", "--module", "R/(x)", "--index", "1", "--window", "-3..1", "--stage-max", "2"],
    ];
    for args in cases {
        let text = koszulab(args);
        let js = koszulab(&[args, &["--json"]].concat());
        assert_eq!(code(&text), code(&js), "{args:?}");
        let outcome = json(&js)["outcome"].as_str().unwrap().to_string();
        let expected = match code(&text) {
            0 => "pass",
            1 => "fail",
            3 => "undecided",
            c => panic!("{c}"),
        };
        assert_eq!(outcome, expected);
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["lochom", "--ring", "F32003[x,y]", "--seq", "x^2, x*y", "--module", "R^2", "--rmax", "3", "--json"];
    assert_eq!(koszulab(&args).stdout, koszulab(&args).stdout);
}

#[test]
fn local_cohomology_tables() {
    let o = koszulab(&["localcoh", "--ring", "F32003[x,y]", "--module", "R", "--index", "2", "--window", "-4..0", "--stage-max", "6", "--method", "ext", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["method"], "ext-colim");
    let rows = v["rows"].as_array().unwrap();
    let values: Vec<u64> = rows.iter().map(|r| r["value"].as_u64().unwrap()).collect();
    assert_eq!(values, vec![3, 2, 1, 0, 0]);
    for e in v["entries"].as_array().unwrap() {
        assert_eq!(e.as_array().unwrap().len(), 3);
    }

    let o = koszulab(&["localcoh", "--ring", "F32003[x,y]", "--module", "R", "--index", "2", "--window", "-4..0", "--stage-max", "2"]);
    assert_eq!(code(&o), 3);
    let o = koszulab(&["localcoh", "--ring", "F32003[x,y]", "--module", "R", "--index", "2", "--window", "-4..0", "--stage-max", "6", "--method", "cech"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn algebra_commands() {
    let o = koszulab(&["gb", "--ring", "Q[x,y]:lex", "--ideal", "x^2 + y^2 - 1, x - y"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 2);

    let o = koszulab(&["nf", "--ring", "Q[x,y]", "--ideal", "x^2, y", "--poly", "x^3 + x*y + 1", "--json"]);
    assert_eq!(json(&o)["normal_form"], "1");
    assert_eq!(json(&o)["member"], false);

    let o = koszulab(&["quotient", "--ring", "Q[x,y]", "--ideal", "x^5*y, y^2", "--poly", "x", "--json"]);
    let v = json(&o);
    assert_eq!(v["exponent"], 5);
    assert_eq!(v["groebner_basis"], serde_json::json!(["y"]));

    let o = koszulab(&["resolve", "--ring", "Q[x,y,z]", "--module", "R/(x, y, z)", "--json"]);
    assert_eq!(json(&o)["ranks"], serde_json::json!([1, 3, 3, 1]));

    let o = koszulab(&["ext", "--ring", "Q[x,y]", "--module", "R/(x, y)", "--into", "R twists [2]", "--index", "2", "--window", "-1..1", "--json"]);
    assert_eq!(json(&o)["hilbert"], serde_json::json!([[-1, 0, 0], [0, 0, 1], [1, 0, 0]]));

    let o = koszulab(&["hilbert", "--ring", "Q[x,y]", "--module", "coker [[x^2, x*y]]", "--window", "0..3", "--json"]);
    let dims: Vec<i64> = json(&o)["hilbert"].as_array().unwrap().iter().map(|r| r[2].as_i64().unwrap()).collect();
    assert_eq!(dims, vec![1, 2, 1, 1]);
}

#[test]
fn complex_commands() {
    let o = koszulab(&["koszul", "--ring", "Q[x,y]", "--seq", "x, y", "--module", "R/(x)", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["d_squared_zero"], true);
    let zero: Vec<bool> = v["cohomology"].as_array().unwrap().iter().map(|h| h["zero"].as_bool().unwrap()).collect();
    assert_eq!(zero, vec![true, false, false]);

    let o = koszulab(&["complete", "--ring", "Q[x,y]", "--ideal", "x, y", "--nmax", "4", "--json"]);
    assert_eq!(json(&o)["dims"], serde_json::json!([1, 3, 6, 10]));

    let o = koszulab(&["gmadj", "--ring", "Q[x,y]", "--seq", "x, y", "--module", "R/(x*y)", "--rmax", "2", "--json"]);
    assert_eq!(code(&o), 0);
    assert!(json(&o)["stages"].as_array().unwrap().iter().all(|s| s["iso"] == true));

    let o = koszulab(&["lochom", "--ring", "F32003[x,y,z]", "--seq", "x^2, x*y", "--module", "R^2", "--rmax", "4", "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["verdict"], "consistent");
    let o = koszulab(&["lochom", "--ring", "F32003[x]", "--seq", "x", "--module", "R/(x)", "--rmax", "3"]);
    assert_eq!(code(&o), 2);
}
