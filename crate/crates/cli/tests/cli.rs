use serde_json::Value;
use std::process::{Command, Output};

fn locb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_locb"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

#[test]
fn bounded_plateau_with_certificates() {
    let out = locb(&["bounded", "x^2/(x^2+y^2)", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["verdict"], "bounded");
    assert_eq!(doc["indeterminacy"], serde_json::json!([["0", "0"]]));
    assert!(!doc["certificates"].as_array().unwrap().is_empty());
    assert_eq!(doc["certificates"][0]["root"]["kind"], "blown");
}

#[test]
fn unbounded_witness_revalidates_through_arc_eval() {
    let out = locb(&["bounded", "x/(x^2+y^2)", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["verdict"], "unbounded");
    let arc_text = doc["witness"]["text"].as_str().unwrap().to_string();
    assert_eq!(doc["limit"]["order"], "-1");

    let check = locb(&["arc-eval", "x/(x^2+y^2)", &arc_text, "--format", "json"]);
    assert_eq!(check.status.code(), Some(0));
    let reval = json_of(&check);
    assert_eq!(reval["limit"]["order"], "-1");
    assert_eq!(reval["limit"]["limit"], "infinite");
}

#[test]
fn valueset_of_the_saddle() {
    let out = locb(&["valueset", "x*y/(x^2+y^2)", "--at", "(0,0)", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["interval"]["lo"], "-1/2");
    assert_eq!(doc["interval"]["hi"], "1/2");
    assert_eq!(doc["interval"]["single_value"], false);
}

#[test]
fn valueset_at_an_algebraic_point() {
    let out = locb(&[
        "valueset",
        "x^2/(x^2+y^2)",
        "--at",
        "(root(x^2-2,1,2), 0)",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["interval"]["lo"], "1");
    assert_eq!(doc["interval"]["hi"], "1");
    assert_eq!(doc["interval"]["single_value"], true);
}

#[test]
fn syntax_error_reports_offset_and_exit_two() {
    let out = locb(&["bounded", "x^2/(x^2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("offset 9"), "stderr was: {err}");

    let out = locb(&["bounded", "x^2/(x^2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
    let doc = json_of(&out);
    assert_eq!(doc["error"]["code"], 2);
}

#[test]
fn missing_at_is_a_usage_error() {
    let out = locb(&["valueset", "x^2/(x^2+y^2)"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn loja_exponent_of_x_against_the_circle() {
    let out = locb(&["loja", "x", "x^2+y^2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["n"], 2);
    assert_eq!(doc["quotient"]["num"], "x^2");
}

#[test]
fn weak_nss_partitions_unity() {
    let out = locb(&[
        "weak-nss",
        "(x^2+y^4)/(x^2+y^2)",
        "(x^4+y^2)/(x^2+y^2)",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["verdict"], "unit-ideal");
    assert_eq!(doc["coefficients"].as_array().unwrap().len(), 2);
}

#[test]
fn encode_half_line_layout() {
    let out = locb(&["encode", "x", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["encoding"]["ambient"], 4);
    assert_eq!(doc["encoding"]["projection"], serde_json::json!([0]));
    assert_eq!(doc["encoding"]["embedding"][0], "x");
}

#[test]
fn gallery_lists_every_entry() {
    let out = locb(&["gallery", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    let entries = doc["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 12);
    assert!(entries.iter().any(|e| e["name"] == "plateau"));
    assert!(entries.iter().any(|e| e["name"] == "segment"));
}

#[test]
fn regulous_flat_function_at_origin() {
    let out = locb(&["regulous", "x^4/(x^2+y^2)", "--at", "(0,0)", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["regulous"], true);
    assert_eq!(doc["interval"]["lo"], "0");
    assert_eq!(doc["interval"]["hi"], "0");
}

#[test]
fn contains_scans_in_three_variables() {
    let seg = "(z - x^2/(x^2+y^2))^2 + x^2 + y^2";
    let out = locb(&["contains", seg, "--at", "(0,0,1/2)", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["mode"], "scan");
    assert_eq!(doc["contains"], true);
    assert!(doc["zero_arcs"].as_u64().unwrap() > 0);
}

#[test]
fn batch_keeps_input_order_and_first_error_code() {
    let dir = std::env::temp_dir();
    let path = dir.join(format!("locb-batch-{}.txt", std::process::id()));
    std::fs::write(
        &path,
        "bounded \"x^2/(x^2+y^2)\"\nbounded \"x^2/(x^2\"\n\n# comment\ngallery\n",
    )
    .unwrap();
    let out = locb(&["--batch", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(2));
    let stdout = String::from_utf8_lossy(&out.stdout);
    let lines: Vec<Value> = stdout
        .lines()
        .map(|l| serde_json::from_str(l).expect("jsonl"))
        .collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0]["line"], 1);
    assert_eq!(lines[0]["verdict"], "bounded");
    assert_eq!(lines[1]["line"], 2);
    assert_eq!(lines[1]["error"]["code"], 2);
    assert_eq!(lines[2]["line"], 5);
    assert_eq!(lines[2]["command"], "gallery");
}

#[test]
fn zeroset_union_of_axes() {
    let out = locb(&["zeroset", "x^2*y^2/(x^2+y^2)", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["zero_set"]["empty"], false);
    let curve = doc["zero_set"]["curve"].as_str().unwrap();
    assert!(curve.contains('x') && curve.contains('y'));
}

#[test]
fn radical_counterexample_arc_is_reported() {
    let out = locb(&["radical", "x^2+y^2", "x", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["member"], false);
    assert!(doc["witness"]["text"].as_str().unwrap().starts_with('('));
}
