//! End-to-end tests of the `blocktilt` binary: output pinning, exit-code
//! contract, determinism, and atomic file output.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blocktilt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).expect("valid JSON output")
}

#[test]
fn block_quiver_json_has_2r_arrows() {
    let out = run(&["quiver", "--p", "5", "--r", "4", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["p"], 5);
    assert_eq!(v["r"], 4);
    assert_eq!(v["vertices"], 4);
    assert!(v.get("i0").is_none());
    let arrows = v["arrows"].as_array().unwrap();
    let total: u64 = arrows.iter().map(|a| a["count"].as_u64().unwrap()).sum();
    assert_eq!(total, 2 * 4);
    // A cycle: one arrow each way between cyclic neighbours.
    for a in arrows {
        let from = a["from"].as_u64().unwrap();
        let to = a["to"].as_u64().unwrap();
        assert!((from + 1) % 4 == to || (to + 1) % 4 == from);
        assert_eq!(a["count"], 1);
    }
}

#[test]
fn block_quiver_doubles_arrows_for_r2() {
    let out = run(&["quiver", "--p", "5", "--r", "2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let arrows = v["arrows"].as_array().unwrap();
    let total: u64 = arrows.iter().map(|a| a["count"].as_u64().unwrap()).sum();
    assert_eq!(total, 4);
    assert!(arrows.iter().all(|a| a["count"] == 2));
}

#[test]
fn invalid_parameters_exit_2() {
    assert_eq!(code(&run(&["quiver", "--p", "2", "--r", "3"])), 2);
    assert_eq!(code(&run(&["quiver", "--p", "9", "--r", "4"])), 2);
    assert_eq!(code(&run(&["quiver", "--p", "5", "--r", "5"])), 2);
    assert_eq!(code(&run(&["tilt", "--p", "5", "--r", "4", "--i0", "0,1,2,3"])), 2);
    assert_eq!(code(&run(&["tilt", "--p", "5", "--r", "4", "--i0", "7"])), 2);
    assert_eq!(code(&run(&["homdims", "--p", "5", "--r", "4", "--i0", "0", "--format", "dot"])), 2);
}

#[test]
fn tilt_prints_the_pinned_component_lines() {
    let out = run(&["tilt", "--p", "5", "--r", "4", "--i0", "0,1,3"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines, vec!["T0: P0", "T1: P1", "T2: P1(+)P3 --(x;y)--> P2", "T3: P3"]);
}

#[test]
fn tilt_json_lists_differential_entries() {
    let out = run(&["tilt", "--p", "5", "--r", "4", "--i0", "0,1,3", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let comps = v["components"].as_array().unwrap();
    assert_eq!(comps.len(), 4);
    assert_eq!(comps[2]["deg0"], serde_json::json!([1, 3]));
    assert_eq!(comps[2]["deg1"], serde_json::json!([2]));
    assert_eq!(comps[2]["d"], serde_json::json!(["x e_2", "y e_2"]));
    assert_eq!(comps[0]["deg1"], serde_json::json!([]));
}

#[test]
fn homdims_diagonal_is_positive_and_dual_table_matches() {
    let out = run(&["homdims", "--p", "5", "--r", "4", "--i0", "1,2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let dims = v["dims"].as_array().unwrap();
    for (i, row) in dims.iter().enumerate() {
        assert!(row[i].as_u64().unwrap() >= 1);
    }
    // Mirroring the selection mirrors the table: entry (i, k) moves to
    // (-i, -k) mod r.
    let dual = run(&["homdims", "--p", "5", "--r", "4", "--i0", "2,3", "--format", "json"]);
    assert_eq!(code(&dual), 0);
    let vd = json(&dual);
    let dd = vd["dims"].as_array().unwrap();
    for i in 0..4usize {
        for k in 0..4usize {
            assert_eq!(dims[i][k], dd[(4 - i) % 4][(4 - k) % 4], "entry ({i}, {k})");
        }
    }
}

#[test]
fn homdims_output_is_byte_identical_across_runs() {
    for format in ["table", "json"] {
        let a = run(&["homdims", "--p", "5", "--r", "4", "--i0", "0,1,3", "--format", format, "--verbose"]);
        let b = run(&["homdims", "--p", "5", "--r", "4", "--i0", "0,1,3", "--format", format, "--verbose"]);
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout, "{format} output must be deterministic");
    }
}

#[test]
fn catalog_verify_passes_and_reports_instances() {
    let out = run(&["catalog", "verify", "--p", "5", "--r", "4", "--i0", "0,1,3", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["ok"], true);
    assert_eq!(v["total_instances"], 30);
    let instances = v["instances"].as_array().unwrap();
    assert_eq!(instances.len(), 30);
    assert!(instances.iter().all(|i| i["built"] == true && i["chain_map"] == true));
    assert!(instances.iter().any(|i| i["null_homotopic"] == false));
}

#[test]
fn catalog_list_prints_ids() {
    let out = run(&["catalog", "list", "--p", "5", "--r", "4", "--i0", "0,1,3"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 30);
    assert!(text.lines().any(|l| l.starts_with("EpsilonU(")));
    assert!(text.lines().any(|l| l.starts_with("Adjacent(")));
}

#[test]
fn endo_quiver_dot_is_deterministic_and_doubles_the_contractions() {
    let a = run(&["endo-quiver", "--p", "5", "--r", "4", "--i0", "0,1,3", "--format", "dot"]);
    let b = run(&["endo-quiver", "--p", "5", "--r", "4", "--i0", "0,1,3", "--format", "dot"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("digraph endo_quiver {"));
    assert_eq!(text.matches("1 -> 2 ").count(), 2);
    assert_eq!(text.matches("3 -> 2 ").count(), 2);
    assert_eq!(text.matches("2 -> 1;").count(), 1);
}

#[test]
fn check_tilting_passes_on_valid_selections() {
    let out = run(&["check-tilting", "--p", "5", "--r", "4", "--i0", "0,1,3", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["ok"], true);
    assert_eq!(v["shift_failures"].as_array().unwrap().len(), 0);
    assert_eq!(v["class_matrix_unimodular"], true);
}

#[test]
fn generation_reports_equality_for_the_main_example() {
    let out = run(&["generation", "--p", "5", "--r", "4", "--i0", "0,1,3", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["complete"], true);
    assert_eq!(v["deficits"].as_array().unwrap().len(), 0);
    assert_eq!(v["full"], v["generated"]);
}

#[test]
fn out_flag_writes_the_same_bytes_atomically() {
    let dir = tempfile::tempdir().expect("temp dir");
    let path = dir.path().join("quiver.json");
    let to_stdout = run(&["quiver", "--p", "5", "--r", "4", "--format", "json"]);
    let to_file = run(&[
        "quiver", "--p", "5", "--r", "4", "--format", "json",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&to_file), 0);
    assert!(to_file.stdout.is_empty());
    let written = std::fs::read(&path).expect("output file written");
    assert_eq!(written, to_stdout.stdout);
    // A second run overwrites in place and leaves no temp litter behind.
    let again = run(&[
        "quiver", "--p", "5", "--r", "4", "--format", "json",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&again), 0);
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(entries.len(), 1);
}
