use std::fs;

use serde_json::Value;
use zetagraph::cli::{run_with_cap, EXIT_CAP, EXIT_OK, EXIT_USAGE, EXIT_VERIFY};

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("zetagraph").chain(args.iter().copied());
    let code = run_with_cap(argv, 12, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, EXIT_OK, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn schreier_json_and_dot() {
    let g = json(&["schreier", "--level", "1", "--format", "json"]);
    assert_eq!(g["vertices"].as_array().unwrap().len(), 2);
    assert_eq!(g["rot"].as_array().unwrap().len(), 4);

    let (code, dot, _) = run(&["schreier", "--level", "3", "--format", "dot"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(dot.lines().filter(|l| l.contains(" -- ")).count(), 16);
    assert_eq!(dot.lines().filter(|l| l.trim_end().ends_with("\";")).count(), 8);
}

#[test]
fn usage_and_cap_exit_codes() {
    assert_eq!(run(&["schreier", "--level", "0"]).0, EXIT_USAGE);
    assert_eq!(run(&["schreier", "--level", "x"]).0, EXIT_USAGE);
    assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(run(&["zeta", "--graph", "torus:3"]).0, EXIT_USAGE);
    assert_eq!(run(&["schreier", "--level", "13"]).0, EXIT_CAP);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(run_with_cap(["zetagraph", "zeta", "--graph", "gamma:3"], 2, &mut out, &mut err), EXIT_CAP);
}

#[test]
fn grp_product_certificate() {
    let v = json(&["product", "--kind", "grp", "--n", "1", "--r", "2"]);
    assert_eq!(v["certificate"]["summary"], "isomorphic to Γ_3: true");
    assert_eq!(v["certificate"]["images"]["(1,01)"], "011");
    let v = json(&["product", "--kind", "grp", "--n", "3", "--r", "2"]);
    assert_eq!(v["certificate"]["isomorphic"], true);
    assert_eq!(v["certificate"]["target"], "gamma:5");
}

#[test]
fn zigzag_product_to_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("y.json");
    let (code, _, err) = run(&["product", "--kind", "zigzag", "--n", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{err}");
    let graph: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(graph["vertices"].as_array().unwrap().len(), 8);
    let cert: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("y.json.cert.json")).unwrap()).unwrap();
    assert_eq!(cert["valid"], true);
    assert_eq!(cert["regular_degree"], 4);

    // the written graph is accepted back as file:<path>
    let z = json(&["zeta", "--graph", &format!("file:{}", path.display())]);
    assert_eq!(z["oracle_agrees"], true);
}

#[test]
fn zeta_reports() {
    let v = json(&["zeta", "--graph", "gamma:2"]);
    let coeffs: Vec<&str> = v["reciprocal"]["coefficients"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(coeffs.len(), 17);
    assert_eq!((coeffs[0], coeffs[1], coeffs[16]), ("1", "-4", "81"));
    assert_eq!(v["oracle_agrees"], true);

    let v = json(&["zeta", "--artin", "gamma:3/gamma:2", "--check-factorization", "--check-divisibility"]);
    assert_eq!(v["checks"]["factorization"], true);
    assert_eq!(v["checks"]["divisibility"], true);
    assert_eq!(v["l_functions"].as_array().unwrap().len(), 2);

    let v = json(&["zeta", "--graph", "zigzag:1"]);
    assert_eq!(v["reciprocal"]["degree"], 32);
}

#[test]
fn cover_reports() {
    let v = json(&[
        "cover", "--cover", "gamma:5", "--base", "gamma:2", "--report", "--sheet-order",
        "110,010,000,100,101,001,011,111",
    ]);
    assert_eq!(v["frobenius"]["e_a"], "(2 3)(6 7)");
    assert_eq!(v["frobenius"]["e_b"], "(1 2)(3 5 6 4)(7 8)");
    assert_eq!(v["normal"], false);

    let v = json(&["cover", "--cover", "gamma:3", "--base", "gamma:2"]);
    assert_eq!(v["normal"], true);
    assert_eq!(v["monodromy_order"], "2");

    let v = json(&["cover", "--cover", "zigzag:3", "--base", "zigzag:1", "--report"]);
    for row in v["sheets"].as_array().unwrap() {
        assert_eq!(row["connected"], row["a_fixed"], "{row}");
    }

    assert_eq!(run(&["cover", "--cover", "gamma:3", "--base", "zigzag:1"]).0, EXIT_USAGE);
    assert_eq!(run(&["cover", "--cover", "gamma:3", "--base", "gamma:2", "--sheet-order", "0"]).0, EXIT_USAGE);
}

#[test]
fn verify_subset_and_corrupted_reference() {
    let (code, out, _) = run(&["verify-paper", "--only", "zeta"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("4/4 checks passed"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    let text = zetagraph::reproduce::BUNDLED_REFERENCE.replace("\"(2 3)(6 7)\"", "\"(2 3)(5 7)\"");
    fs::write(&bad, text).unwrap();
    let (code, out, _) = run(&["verify-paper", "--only", "cover", "--golden", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_VERIFY);
    assert!(out.lines().any(|l| l.starts_with("FAIL") && l.contains("gamma5/gamma2 Frobenius permutations")), "{out}");

    fs::write(&bad, "{ not json").unwrap();
    let (code, out, _) = run(&["verify-paper", "--golden", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_VERIFY);
    assert!(out.starts_with("FAIL  reference file"));
}

#[test]
fn output_is_byte_deterministic() {
    for args in [
        &["zeta", "--artin", "zigzag:2/zigzag:1", "--check-factorization"][..],
        &["cover", "--cover", "gamma:4", "--base", "gamma:2", "--report"][..],
        &["product", "--kind", "grp", "--n", "2", "--r", "2"][..],
    ] {
        assert_eq!(run(args).1, run(args).1);
    }
}
