//! End-to-end runs of the `twistor` binary.

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use twistor_core::io::{Report, REPORT_SCHEMA};

fn twistor(args: &[&str]) -> Output {
    twistor_env(args, &[])
}

fn twistor_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_twistor"));
    cmd.args(args).env_remove("TWISTOR_TOL");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "exit {:?}: {}", o.status.code(), String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&twistor(&a))).unwrap()
}

fn input_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

const STANDARD_J: &str = "[[0,1,0,0],[-1,0,0,0],[0,0,0,1],[0,0,-1,0]]";

fn flags(v: &Value) -> [bool; 4] {
    ["harmonic_section", "harmonic_map", "minimal", "totally_geodesic"].map(|k| v[k].as_bool().unwrap())
}

#[test]
fn inoue_is_a_harmonic_section_but_not_a_harmonic_map() {
    let r = json(&["classify", "--preset", "inoue-s0"]);
    let v = &r["verdict"];
    assert_eq!(&flags(v)[..3], &[true, false, true]);
    assert_eq!(v["cross_check"], true);
    assert_eq!(r["expected_verdict_match"], true);
}

#[test]
fn kodaira_almost_kahler_is_a_harmonic_map() {
    let r = json(&["classify", "--preset", "kodaira-ak", "--eps1", "1", "--eps2", "1", "--phi", "0.7854", "--t", "2"]);
    assert_eq!(r["verdict"]["harmonic_map"], true);
    assert_eq!(r["settings"]["t"], 2.0);
    assert_eq!(r["class"], "AlmostKahler");
}

#[test]
fn abelian_input_is_totally_geodesic() {
    let f = input_file(&format!(r#"{{"name": "torus", "structure_constants": [], "J": {STANDARD_J}}}"#));
    let r = json(&["classify", f.path().to_str().unwrap()]);
    assert_eq!(flags(&r["verdict"]), [true, true, true, true]);
    assert_eq!(r["name"], "torus");
    assert!(r["expected"].is_null());
}

#[test]
fn explicit_zero_brackets_are_accepted() {
    let f = input_file(&format!(
        r#"{{"structure_constants": [{{"i": 1, "j": 2, "k": 3, "c": 0.0}}], "J": {STANDARD_J}}}"#
    ));
    let r = json(&["classify", f.path().to_str().unwrap()]);
    assert_eq!(r["verdict"]["totally_geodesic"], true);
}

#[test]
fn malformed_documents_exit_with_3() {
    let f = input_file("{\n  \"structure_constants\": [\n  oops ]}");
    let o = twistor(&["classify", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));

    let f = input_file(r#"{"structure_constants": [], "J": [[0]]}"#);
    assert_eq!(twistor(&["classify", f.path().to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn invalid_inputs_exit_with_2() {
    // J squares to +1
    let f = input_file(r#"{"structure_constants": [], "J": [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]}"#);
    let o = twistor(&["classify", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("`J`"));

    // [E1,E2] = E3, [E1,E3] = E1: the Jacobi sum on (E1,E2,E3) is E3
    let f = input_file(&format!(
        r#"{{"structure_constants": [
            {{"i": 1, "j": 2, "k": 3, "c": 1}},
            {{"i": 1, "j": 3, "k": 1, "c": 1}}
        ], "J": {STANDARD_J}}}"#
    ));
    let o = twistor(&["classify", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));

    let f = input_file(&format!(r#"{{"structure_constants": [{{"i": 1, "j": 5, "k": 1, "c": 1}}], "J": {STANDARD_J}}}"#));
    let o = twistor(&["classify", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("structure_constants[0].j"));

    for args in [
        &["classify", "--preset", "kodaira-ak", "--eps1", "0.5"][..],
        &["classify", "--preset", "lie-group", "--lie-t", "0"],
        &["classify", "--preset", "inoue-s0", "--t", "0"],
        &["classify", "--preset", "inoue-s0", "--t", "-1"],
        &["classify", "--preset", "inoue-s0", "--tol", "0"],
        &["sweep", "--preset", "lie-group", "--lie-t", "1,0"],
        &["sweep", "--preset", "inoue-s0", "--t", "1,0"],
    ] {
        assert_eq!(twistor(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn missing_file_is_an_io_error() {
    assert_eq!(twistor(&["classify", "/nonexistent/input.json"]).status.code(), Some(1));
}

#[test]
fn json_report_round_trips_and_is_versioned() {
    let o = twistor(&["classify", "--preset", "kodaira-hermitian", "--eps2", "-1", "--format", "json"]);
    let text = stdout(&o);
    let r = Report::from_json(&text).unwrap();
    assert_eq!(r.schema, REPORT_SCHEMA);
    assert_eq!(r.to_json(), text.trim_end());
    // the echoed input reproduces the report
    let f = input_file(&serde_json::to_string(&r.input).unwrap());
    let again = Report::from_json(&stdout(&twistor(&["classify", f.path().to_str().unwrap(), "--format", "json"]))).unwrap();
    assert_eq!(again.ricci, r.ricci);
    assert_eq!(again.verdict, r.verdict);
    // deterministic across runs
    assert_eq!(stdout(&twistor(&["classify", "--preset", "kodaira-hermitian", "--eps2", "-1", "--format", "json"])), text);
}

/// Reads the four rows printed under `title` in a table report.
fn table_matrix(table: &str, title: &str) -> [[f64; 4]; 4] {
    let lines: Vec<&str> = table.lines().collect();
    let at = lines.iter().position(|l| *l == title).unwrap_or_else(|| panic!("no `{title}` block"));
    std::array::from_fn(|r| {
        let row: Vec<f64> = lines[at + 1 + r]
            .trim()
            .trim_start_matches('[')
            .trim_end_matches(']')
            .split_whitespace()
            .map(|x| x.parse().unwrap())
            .collect();
        std::array::from_fn(|c| row[c])
    })
}

fn table_field<'a>(table: &'a str, prefix: &str) -> &'a str {
    table.lines().find_map(|l| l.trim().strip_prefix(prefix)).unwrap_or_else(|| panic!("no `{prefix}` line")).trim()
}

fn vector(text: &str) -> Vec<f64> {
    text.trim_matches(|c| c == '(' || c == ')').split(", ").map(|x| x.parse().unwrap()).collect()
}

#[test]
fn table_and_json_carry_the_same_numbers() {
    for args in [
        &["classify", "--preset", "inoue-s0"][..],
        &["classify", "--preset", "kodaira-ak", "--phi", "0.7854", "--t", "2"],
        &["classify", "--preset", "lie-group", "--lie-s", "2", "--lie-t", "-1"],
    ] {
        let table = stdout(&twistor(args));
        let r: Report = Report::from_json(&stdout(&twistor(&[args, &["--format", "json"]].concat()))).unwrap();
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-10;
        for (title, m) in [("Ricci rho", &r.ricci), ("star-Ricci rho*", &r.star_ricci), ("dtheta", &r.dtheta)] {
            let t = table_matrix(&table, title);
            for i in 0..4 {
                for j in 0..4 {
                    assert!(close(t[i][j], m[i][j]), "{args:?} {title} [{i}][{j}]");
                }
            }
        }
        let b = vector(table_field(&table, "Lee vector B ="));
        assert!(b.iter().zip(r.b).all(|(x, y)| close(*x, y)));
        let h = vector(table_field(&table, "horizontal:"));
        assert!(h.iter().zip(r.tension.horizontal).all(|(x, y)| close(*x, y)));
        for e in &r.connection {
            let key = format!("nabla(E{}, E{}) =", e.index[0], e.index[1]);
            let v = vector(table_field(&table, &key));
            assert!(v.iter().zip(e.value).all(|(x, y)| close(*x, y)), "{key}");
        }
        assert_eq!(table.lines().filter(|l| l.starts_with("  R(E")).count(), r.curvature.len());
        assert!(table.contains(&format!("tol = {:e}", r.settings.tol)));
        assert!(table.contains(&format!("class: {}", r.class.as_str())));
    }
}

#[test]
fn preset_tables_show_published_and_corrected_values() {
    let table = stdout(&twistor(&["classify", "--preset", "lie-group", "--lie-s", "2", "--lie-t", "-1"]));
    assert!(table.contains("reference values"));
    assert!(table.contains("corrected"));
    assert!(!table.contains("MISMATCH"));
    assert!(table.contains("expected verdict: ok"));
}

#[test]
fn almost_kahler_phi_grid_sweep_is_all_harmonic_maps() {
    let s = json(&["sweep", "--preset", "kodaira-ak", "--phi-steps", "8"]);
    assert_eq!(s["schema"], "twistor-sweep/1");
    let rows = s["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 32);
    for r in rows {
        assert_eq!(r["harmonic_map"], true);
        assert_eq!(r["cross_check"], true);
        assert_eq!(r["expected_verdict_match"], true);
    }
    // grid order: eps1, eps2, then phi ascending
    let phis: Vec<f64> = rows[..8].iter().map(|r| r["params"][2][1].as_f64().unwrap()).collect();
    assert!(phis.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(rows[0]["params"][0], serde_json::json!(["eps1", 1.0]));
    assert_eq!(rows[31]["params"][1], serde_json::json!(["eps2", -1.0]));
}

#[test]
fn inoue_verdicts_do_not_depend_on_t() {
    let s = json(&["sweep", "--preset", "inoue-s0", "--t", "0.5,1,2"]);
    let rows = s["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    let ts: Vec<f64> = rows.iter().map(|r| r["t"].as_f64().unwrap()).collect();
    assert_eq!(ts, [0.5, 1.0, 2.0]);
    assert!(rows.iter().all(|r| flags(r) == flags(&rows[0])));
    assert_eq!(&flags(&rows[0])[..3], &[true, false, true]);
}

#[test]
fn lie_group_grid_is_all_harmonic_maps() {
    let s = json(&["sweep", "--preset", "lie-group", "--lie-s", "-1,0,0.5,1,2,3", "--lie-t", "-2,-1,0.5,1,2,3"]);
    let rows = s["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 36);
    assert!(rows.iter().all(|r| r["harmonic_map"] == true && r["cross_check"] == true));
}

#[test]
fn sweep_output_is_in_grid_order_every_run() {
    let args = ["sweep", "--preset", "kodaira-ak", "--phi-steps", "16", "--t", "0.5,2", "--format", "json"];
    let first = stdout(&twistor(&args));
    for _ in 0..3 {
        assert_eq!(stdout(&twistor(&args)), first);
    }
}

#[test]
fn sweep_table_summarises_the_grid() {
    let table = stdout(&twistor(&["sweep", "--preset", "kodaira-hermitian"]));
    assert!(table.contains("kodaira-hermitian: 4 points"));
    assert!(table.contains("harmonic maps: 4/4"));
    assert!(table.contains("verdict constant over grid: yes"));
}

#[test]
fn tolerance_comes_from_flag_then_environment_then_default() {
    let tol = |o: Output| -> f64 {
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        v["settings"]["tol"].as_f64().unwrap()
    };
    let base = ["classify", "--preset", "inoue-s0", "--format", "json"];
    assert_eq!(tol(twistor(&base)), 1e-9);
    assert_eq!(tol(twistor_env(&base, &[("TWISTOR_TOL", "1e-6")])), 1e-6);
    assert_eq!(tol(twistor_env(&[&base[..], &["--tol", "1e-7"]].concat(), &[("TWISTOR_TOL", "1e-6")])), 1e-7);
    let table = stdout(&twistor_env(&["classify", "--preset", "inoue-s0"], &[("TWISTOR_TOL", "1e-6")]));
    assert!(table.contains("tol = 1e-6"));
    assert_eq!(twistor_env(&base, &[("TWISTOR_TOL", "-1")]).status.code(), Some(2));
}

#[test]
fn document_tolerance_overrides_the_command_line() {
    let f = input_file(&format!(
        r#"{{"structure_constants": [], "J": {STANDARD_J}, "tolerance": {{"numeric": 1e-5}}}}"#
    ));
    let r = json(&["classify", f.path().to_str().unwrap(), "--tol", "1e-7"]);
    assert_eq!(r["settings"]["tol"], 1e-5);
}

#[test]
fn presets_are_listed() {
    let out = stdout(&twistor(&["presets"]));
    for name in twistor_core::catalog::PRESET_NAMES {
        assert!(out.contains(name));
    }
}
