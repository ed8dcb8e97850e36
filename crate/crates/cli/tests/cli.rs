use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn fixture(kind: &str, name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(kind).join(format!("{name}.json"))
}

fn helly(args: &[&str], env: &[(&str, &str)]) -> (i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_helly"));
    cmd.args(args).env_remove("HELLY_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).unwrap())
}

fn report(args: &[&str]) -> (i32, Value) {
    let (code, text) = helly(args, &[]);
    (code, serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}")))
}

fn save(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn planar_generation_then_lower_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let (code, gen) = helly(&["generate", "planar", "--f", "2", "--seed", "7"], &[]);
    assert_eq!(code, 0);
    let path = save(&dir, "planar.json", &gen);
    let (code, r) = report(&["verify-lower-bound", &path]);
    assert_eq!(code, 0, "{r}");
    let res = &r["results"];
    assert!(res["triangle_piercing"]["value"].as_u64().unwrap() >= 2);
    assert_eq!(res["segment_piercing"]["value"], 12);
    assert!(res["line_cover"]["value"].as_u64().unwrap() >= 2);
    assert_eq!(res["line_cover"]["exact"], true);

    let checked = save(&dir, "report.json", &serde_json::to_string(&r).unwrap());
    let (code, again) = report(&["recheck", &checked]);
    assert_eq!(code, 0, "{again}");
    assert!(again["results"]["certificates"].as_u64().unwrap() > 0);
}

#[test]
fn disjoint_boxes_refute_ch() {
    let (code, r) = report(&["check-ch", fixture("families", "disjoint_boxes").to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(r["status"], "refuted");
    assert_eq!(r["results"]["violating_rainbow"], serde_json::json!([[0, 0], [1, 0]]));
    assert_eq!(r["certificates"][0]["kind"], "emptiness");
}

#[test]
fn triangle_duality() {
    let (code, r) = report(&["duality", "--b", "2", fixture("hypergraphs", "triangle").to_str().unwrap()]);
    assert_eq!(code, 0);
    let res = &r["results"];
    assert_eq!(res["nu_b"]["value"], 3);
    assert_eq!(res["nu_star"]["value"], "3/2");
    assert_eq!(res["tau_star"]["value"], "3/2");
    assert_eq!(res["tau"]["tau"], 2);
}

#[test]
fn input_errors_exit_four() {
    let dir = tempfile::tempdir().unwrap();
    let bad = save(&dir, "bad.json", "{ not json");
    assert_eq!(helly(&["pierce", &bad], &[]).0, 4);
    let wrong = save(&dir, "wrong.json", r#"{"schema_version": 9, "dim": 2, "classes": []}"#);
    assert_eq!(helly(&["pierce", &wrong], &[]).0, 4);
    assert_eq!(helly(&["pierce", "/nonexistent/family.json"], &[]).0, 4);
    let (code, r) = report(&["pierce", "--class", "7", fixture("families", "corner_boxes").to_str().unwrap()]);
    assert_eq!(code, 4);
    assert!(r["error"].as_str().unwrap().contains("class 7"));
}

#[test]
fn budget_overrun_exits_three() {
    let path = fixture("families", "mixed_polygons");
    let (code, _) = helly(&["pierce", path.to_str().unwrap()], &[("HELLY_BUDGET", "family=2")]);
    assert_eq!(code, 3);
    let (code, _) = helly(&["pierce", path.to_str().unwrap()], &[]);
    assert_eq!(code, 0);
}

#[test]
fn tampered_certificates_are_caught() {
    let dir = tempfile::tempdir().unwrap();
    let (_, mut r) = report(&["intersecting-class", fixture("families", "strips_and_box").to_str().unwrap()]);
    assert_eq!(r["status"], "verified");
    assert_eq!(r["certificates"][0]["kind"], "common_point");
    r["certificates"][0]["point"] = serde_json::json!(["100", "100"]);
    let path = save(&dir, "tampered.json", &r.to_string());
    let (code, again) = report(&["recheck", &path]);
    assert_eq!(code, 2);
    assert_eq!(again["results"]["failures"][0]["kind"], "common_point");
}

#[test]
fn simplex_generation_and_relint() {
    let dir = tempfile::tempdir().unwrap();
    let (code, gen) = helly(&["generate", "simplex", "--d", "3", "--f", "1", "--seed", "4"], &[]);
    assert_eq!(code, 0);
    let (_, gen_again) = helly(&["generate", "simplex", "--d", "3", "--f", "1", "--seed", "4"], &[]);
    let strip = |t: &str| {
        let mut v: Value = serde_json::from_str(t).unwrap();
        v["wall_time_ms"] = Value::Null;
        v
    };
    assert_eq!(strip(&gen), strip(&gen_again));
    let path = save(&dir, "simplex.json", &gen);
    let (code, r) = report(&["relint-check", &path]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["selections"], 16);
    assert_eq!(r["certificates"].as_array().unwrap().len(), 16);
    let (code, r) = report(&["verify-lower-bound", &path]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["results"]["line_lower_bound"], 2);
}

#[test]
fn seeded_commands_record_the_seed() {
    let (code, r) = report(&["generic-line", "--seed", "5", fixture("families", "two_color_triangles").to_str().unwrap()]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["seed"], 5);
    assert_eq!(r["certificates"][0]["kind"], "transversal");
}

#[test]
fn dichotomies() {
    let path = fixture("families", "two_color_triangles");
    let (code, r) = report(&["two-color", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["outcome"]["kind"], "hyperplane_cover");
    let (code, r) = report(&["d2-dichotomy", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let kind = r["results"]["outcome"]["kind"].as_str().unwrap();
    assert!(kind == "pierced_class" || kind == "line_cover");
    let (code, r) = report(&["fractional-two-color", "--alpha", "1/2", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{r}");
    assert!(r["results"]["beta"].as_str().unwrap().contains("configuration"));
    let (code, _) = report(&["dichotomy-report", path.to_str().unwrap()]);
    assert_eq!(code, 0);
}

#[test]
fn pretty_output_is_a_table() {
    let (code, text) = helly(&["--pretty", "pierce", fixture("families", "corner_boxes").to_str().unwrap()], &[]);
    assert_eq!(code, 0);
    assert!(text.lines().any(|l| l.starts_with("piercing_number.value") && l.trim_end().ends_with('4')));
    assert!(text.contains("transversal ok"));
}

#[test]
fn figure1_lower_bound() {
    let dir = tempfile::tempdir().unwrap();
    let (_, gen) = helly(&["generate", "figure1", "--d", "3", "--n", "2"], &[]);
    let path = save(&dir, "fig.json", &gen);
    let (code, r) = report(&["verify-lower-bound", &path]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["class_piercing"], serde_json::json!([2, 2, 2]));
}
