mod support;

use std::process::Command;

use toric_degen::cli::run;

fn problem(name: &str) -> String {
    support::problems_dir().join(name).display().to_string()
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["toric-degen"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn degenerate_prints_the_family() {
    let s7 = problem("s7.json");
    let (code, out, _) = call(&["degenerate", &s7]);
    assert_eq!(code, 0);
    assert_eq!(out, "yt^2 - xt^3 - v^3*ut\nut^2 - xt^6*yt\n");
    let (_, out, _) = call(&["degenerate", &s7, "--at", "0"]);
    assert_eq!(out, "yt^2 - xt^3\nut^2 - xt^6*yt\n");
    let (_, out, _) = call(&["degenerate", &s7, "--at", "1"]);
    assert_eq!(out, "yt^2 - xt^3 - ut\nut^2 - xt^6*yt\ncertified: yes\n");
}

#[test]
fn json_uses_tilde_names_and_sorted_keys() {
    let (code, out, _) = call(&["--output", "json", "degenerate", &problem("s7.json")]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let term = &v["family"][0]["terms"][2];
    assert_eq!(term["v_exponent"], "3");
    assert_eq!(term["monomial"][0]["var"]["tilde"], "u");
    let coeff = out.find("\"coeff\"").unwrap();
    assert!(coeff < out.find("\"monomial\"").unwrap());
    assert!(out.find("\"monomial\"").unwrap() < out.find("\"v_exponent\"").unwrap());
}

#[test]
fn values() {
    let (code, out, _) = call(&["value", &problem("s7.json"), "--element", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("0"));
    let (_, out, _) = call(&["--output", "json", "value", &problem("s7.json"), "--element", "y^2 - x^3"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["values"][0]["value"], serde_json::json!(["15"]));
    assert_eq!(v["values"][0]["normal_form"], "u");
    let (_, out, _) = call(&["value", &problem("s7.json"), "--element", "u^2 - x^6*y"]);
    assert_eq!(out.lines().next(), Some("infinite"));
}

#[test]
fn approx_table() {
    let (code, out, _) = call(&[
        "--output",
        "json",
        "approx",
        &problem("branch.json"),
        "--elements",
        "y^2-x^3,(y^2-x^3)^2-x^5*y",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let e = &v["elements"];
    assert_eq!(e[0]["values"][2], serde_json::json!(["13/4"]));
    assert_eq!(e[0]["values"][1], serde_json::json!(["13/4"]));
    assert_eq!(e[1]["values"][1], "infinite");
    assert_eq!(e[1]["values"][2], serde_json::json!(["55/8"]));
    assert_eq!(v["order_nondecreasing"], true);
}

#[test]
fn branch_and_partition() {
    let (code, out, _) = call(&["branch", &problem("branch.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("semigroup: <8, 12, 26, 55> scaled by 8"));
    assert!(out.contains("p2 = y^4 - 2*x^3*y^2 + x^6 - x^5*y  (order 4)"));
    let (code, out, _) = call(&["partition", &problem("s7.json"), "--up-to", "100", "--euler"]);
    assert_eq!(code, 0);
    assert!(out.contains("euler identity up to 100: holds"));
}

#[test]
fn precision_flag_reaches_composed_values() {
    let b = problem("branch.json");
    let (code, _, err) = call(&["--precision", "3", "branch", &b, "--element", "(y^2-x^3)^2-x^5*y"]);
    assert_eq!(code, 1, "{err}");
    assert!(err.contains("raise T"));
    let (code, out, _) = call(&["--precision", "64", "branch", &b, "--element", "(y^2-x^3)^2-x^5*y"]);
    assert_eq!(code, 0);
    assert!(out.contains("level 2: p2^1 * (1)"));
}

#[test]
fn exit_codes() {
    let s7 = problem("s7.json");
    let rank2 = problem("rank2.json");
    let usage: &[&[&str]] = &[
        &[],
        &["check"],
        &["frobnicate", &s7],
        &["--output", "yaml", "check", &s7],
        &["--seed", "many", "check", &s7],
        &["degenerate", &s7, "--at", "v"],
        &["partition", &s7, "--up-to", "1, 2"],
        &["approx", &s7, "--levels", "0"],
    ];
    for args in usage {
        let (code, _, err) = call(args);
        assert_eq!(code, 2, "{args:?}: {err}");
    }
    let dir = std::env::temp_dir().join(format!("toric-degen-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let write = |name: &str, body: &str| {
        let p = dir.join(name);
        std::fs::write(&p, body).unwrap();
        p.display().to_string()
    };
    let bad_weight = write("w.json", r#"{"field": "rational", "variables": [{"name": "x", "weight": ["0"]}]}"#);
    let not_json = write("j.json", "{");
    let not_certified = write(
        "c.json",
        r#"{"field": "rational", "variables": [{"name": "x", "weight": ["1"]}, {"name": "y", "weight": ["1"]}], "equations": [{"expr": "x^2 - y^2", "kind": "Fq"}]}"#,
    );
    let no_queries = write("q.json", r#"{"field": "rational", "variables": [{"name": "x", "weight": ["1"]}]}"#);
    assert_eq!(call(&["value", &no_queries]).0, 2);
    assert_eq!(call(&["partition", &no_queries]).0, 2);
    assert_eq!(call(&["value", &no_queries, "--element", "x^3"]).0, 0);
    let domain: Vec<Vec<&str>> = vec![
        vec!["check", "/nonexistent/problem.json"],
        vec!["check", &bad_weight],
        vec!["check", &not_json],
        vec!["check", &not_certified],
        vec!["value", &not_certified, "--element", "x"],
        vec!["value", &s7, "--element", "x +"],
        vec!["value", &s7, "--element", "q"],
        vec!["value", &s7, "--element", "x^-1"],
        vec!["degenerate", &rank2],
        vec!["partition", &rank2, "--up-to", "3, 3", "--euler"],
        vec!["branch", &s7],
    ];
    for args in &domain {
        let (code, _, err) = call(args);
        assert_eq!(code, 1, "{args:?}: {err}");
        assert!(err.starts_with("error: "), "{args:?}: {err}");
    }
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("degenerate"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_toric-degen");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["check", &problem("cusp23.json")]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).starts_with("certified: yes"));
    assert_eq!(status(&["check"]).status.code(), Some(2));
    assert_eq!(status(&["check", "/nonexistent.json"]).status.code(), Some(1));
}
