use std::process::Command;

fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_tanglekit"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn det_examples() {
    let (out, _, code) = run(&["det", "--expr", "D([0,3])"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "3");

    let (out, _, code) = run(&["det", "--expr", "N([2,3,4])", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["det"], "30");
    assert!(v["goeritz"].is_array());
}

#[test]
fn family_report_json() {
    let (out, _, code) = run(&["family", "report", "--expr", "tau(-1)", "--p", "1", "--q", "1", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["det"], "8");
    assert_eq!(v["l_space"]["verdict"], "certified");
}

#[test]
fn qa_certify_and_check_round_trip() {
    let dir = std::env::temp_dir().join("tanglekit-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let cert = dir.join("cert.json");
    let (_, _, code) = run(&[
        "qa", "certify", "--expr", "-1", "--p", "1", "--q", "2", "--out",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let (out, _, code) = run(&["qa", "check", cert.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("valid"));

    // Corrupt one recorded determinant: exit code 2 (identity violation).
    let text = std::fs::read_to_string(&cert).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["det"] = serde_json::json!("99");
    std::fs::write(&cert, serde_json::to_string(&v).unwrap()).unwrap();
    let (_, _, code) = run(&["qa", "check", cert.to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn montesinos_reduce_example() {
    let (out, _, code) = run(&["montesinos", "reduce", "--e", "0", "--tails", "-2,2,3/2"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "M(0;-2,2,3/2) -> M(-1;2,2,3/2)");
}

#[test]
fn brunner_chain_round_trip() {
    let dir = std::env::temp_dir().join("tanglekit-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let chain = dir.join("chain.json");
    let (_, _, code) = run(&["brunner", "chain", "--p", "2", "--q", "3", "--out", chain.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (out, _, code) = run(&["brunner", "verify-chain", chain.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("valid"));
}

#[test]
fn brunner_emit_from_diagram_file() {
    use tanglekit::diagram::{closure, synthesize, Closure};
    use tanglekit::expr::parse_expr;
    let d = closure(&synthesize(&parse_expr("[0,3]").unwrap()).unwrap(), Closure::Denominator);
    let dir = std::env::temp_dir().join("tanglekit-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("trefoil.json");
    std::fs::write(&file, serde_json::to_string(&d.to_json()).unwrap()).unwrap();
    let (out, _, code) = run(&["brunner", "emit", "--diagram", file.to_str().unwrap(), "--format", "gap-like"]);
    assert_eq!(code, 0);
    assert!(out.contains("FreeGroup"));
}

#[test]
fn corpus_is_deterministic() {
    let (a, _, _) = run(&["corpus", "--max-crossings", "3"]);
    let (b, _, _) = run(&["corpus", "--max-crossings", "3"]);
    assert_eq!(a, b);
    assert!(a.lines().count() >= 10);
}

#[test]
fn domain_errors_exit_one() {
    let (_, err, code) = run(&["det", "--expr", "spin(3)"]);
    assert_eq!(code, 1);
    assert!(err.contains("unknown operator"));
    let (_, _, code) = run(&["qa", "certify", "--expr", "3", "--p", "1", "--q", "1"]);
    assert_eq!(code, 1, "type 1 tangles are a domain error");
}
