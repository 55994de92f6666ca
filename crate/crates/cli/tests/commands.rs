use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(relative: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(relative)
        .display()
        .to_string()
}

fn hitchin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hitchin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn envelope(args: &[&str]) -> (Value, i32) {
    let out = hitchin(args);
    let v: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    assert_eq!(v["schema_version"], "1.0.0");
    (v, out.status.code().unwrap())
}

fn has_warning(v: &Value, needle: &str) -> bool {
    v["warnings"]
        .as_array()
        .unwrap()
        .iter()
        .any(|w| w.as_str().unwrap().contains(needle))
}

#[test]
fn dims_of_sp4() {
    let (v, code) = envelope(&["dims", "--group", "sp", "--n", "2", "--genus", "2"]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(r["degrees"], serde_json::json!([2, 4]));
    assert_eq!(r["base_dim"], 10);
    assert_eq!(r["moduli_dim"], 20);
    assert_eq!(r["half_dim_check"], "pass");
    assert_eq!(v["command"], "dims");
}

#[test]
fn so4_curve_flags_the_quotient_discrepancy() {
    let (v, code) = envelope(&["curve", "--group", "so_even", "--n", "2", "--genus", "2"]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(r["virtual_genus"], 17);
    assert_eq!(r["desing_genus"], 13);
    assert_eq!(r["quotient_genus"], 7);
    assert_eq!(r["prym_dim"], 6);
    assert!(r["notes"]
        .as_array()
        .unwrap()
        .iter()
        .any(|n| n.as_str().unwrap().starts_with("quotient-genus-discrepancy")));
    assert!(has_warning(&v, "quotient-genus-discrepancy"));
}

#[test]
fn free_module_pushes_to_the_local_form() {
    let path = corpus("pushforward/free_module_eta2_minus_w.json");
    let (v, code) = envelope(&["pushforward", "--input", &path]);
    assert_eq!(code, 0);
    let phi = &v["result"]["phi"];
    assert_eq!(phi["rows"], 2);
    assert_eq!(phi["entries"], serde_json::json!([[], ["0", "1"], ["1"], []]));
    assert!(v["inputs_echo"]["input"]["p"].is_object());
}

#[test]
fn scope_caveats_appear_as_warnings() {
    let (v, _) = envelope(&[
        "curve",
        "--group",
        "sp",
        "--n",
        "2",
        "--genus",
        "2",
        "--input",
        &corpus("curve/quartic_nodal.json"),
    ]);
    assert!(has_warning(&v, "affine chart"));
    assert_eq!(v["result"]["smoothness"]["smooth"], false);
    let (v, _) = envelope(&["prym-check", "--input", &corpus("prym/conic_norm_zero.json")]);
    assert!(has_warning(&v, "necessary conditions"));
    let (v, _) = envelope(&["prym-check", "--input", &corpus("prym/cubic_no_sigma.json")]);
    assert!(has_warning(&v, "sigma is undefined"));
}

#[test]
fn parity_violation_is_reported() {
    let (v, code) = envelope(&["prym-check", "--input", &corpus("prym/upp_parity_violation.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["pass"], false);
}

#[test]
fn fixed_point_with_supplied_intertwiner() {
    let (v, code) = envelope(&[
        "check-fixedpoint",
        "--input",
        &corpus("fixedpoint/su11_offdiagonal.json"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["status"], "pass");
}

#[test]
fn eigenline_inverts_the_local_form() {
    let (v, code) = envelope(&["eigenline", "--input", &corpus("eigenline/local_model.json")]);
    assert_eq!(code, 0);
    assert_eq!(
        v["result"]["hermite_basis"]["entries"],
        serde_json::json!([["1"], [], [], ["1"]])
    );
}

#[test]
fn domain_errors_exit_two_with_an_error_object() {
    let (v, code) = envelope(&["dims", "--group", "sl", "--n", "1", "--genus", "2"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "domain");
    let (v, code) = envelope(&["realform", "--form", "SO(3,2"]);
    assert!(code == 2 || code == 3, "{v}");
}

#[test]
fn malformed_input_exits_three() {
    let dir = std::env::temp_dir().join(format!("hitchin-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.json");
    std::fs::write(&path, "{ not json").unwrap();
    let (v, code) = envelope(&["pushforward", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["kind"], "parse");
    let (_, code) = envelope(&["norm", "--input", "/nonexistent/input.json"]);
    assert_eq!(code, 3);
    assert_eq!(hitchin(&["dims", "--group", "e8"]).status.code(), Some(3));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn text_format_renders_rows() {
    let out = hitchin(&[
        "--format",
        "text",
        "pushforward",
        "--input",
        &corpus("pushforward/free_module_eta2_minus_w.json"),
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[0, w]\n[1, 0]"), "{text}");
}

#[test]
fn help_exits_zero() {
    assert_eq!(hitchin(&["--help"]).status.code(), Some(0));
}
