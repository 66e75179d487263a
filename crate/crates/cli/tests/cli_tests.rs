//! End-to-end runs of the `harpo` binary over the fixture files.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn harpo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_harpo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn tmp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("harpo-cli-{}-{}", std::process::id(), name))
}

#[test]
fn betti_of_the_wedge_graph() {
    let out = harpo(&["betti", "--graph", &fixture("wedge.json"), "--p", "1"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "2");

    // both backends agree
    let out = harpo(&[
        "betti",
        "--graph",
        &fixture("wedge.json"),
        "--p",
        "1",
        "--backend",
        "float",
    ]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "2");
}

#[test]
fn complex_build_counts() {
    let out = harpo(&[
        "complex-build",
        "--graph",
        &fixture("wedge.json"),
        "--max-dim",
        "2",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("[7, 8, 0]"));
}

#[test]
fn spectrum_reports_gap_and_kernel() {
    let out_path = tmp("spectrum.json");
    let out = harpo(&[
        "spectrum",
        "--graph",
        &fixture("wedge.json"),
        "--p",
        "1",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(parsed["kernel_dim"], 2);
    assert!(parsed["gap"].as_f64().unwrap() > 0.0);
    std::fs::remove_file(out_path).ok();
}

#[test]
fn harmonics_decide_emits_exact_decision() {
    let out_path = tmp("decision.json");
    let out = harpo(&[
        "harmonics-decide",
        "--graph",
        &fixture("wedge.json"),
        "--p",
        "1",
        "--descriptor",
        &fixture("wedge_right_cycle.json"),
        "--delta",
        "1/2",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(parsed["outcome"], 1);
    assert_eq!(parsed["norm"], "1");
    assert_eq!(parsed["norm_sq"], "1");
    assert_eq!(parsed["method"], "exact");
    assert_eq!(parsed["promise_violated"], false);
    std::fs::remove_file(out_path).ok();
}

#[test]
fn reduce_then_persistence_decide_round_trip() {
    let dir = tmp("bundle");
    let out = harpo(&[
        "reduce",
        "--circuit",
        &fixture("synthetic_circuit.json"),
        "--lambda",
        "1/10",
        "--gadgets",
        "00",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    // σ_prehist survives the gadget: outcome 1, exit 0
    let decision_path = tmp("bundle-decision.json");
    let out = harpo(&[
        "persistence-decide",
        "--k1",
        dir.join("k1.json").to_str().unwrap(),
        "--k2",
        dir.join("k2.json").to_str().unwrap(),
        "--p",
        "3",
        "--descriptor",
        dir.join("sigma_prehist.json").to_str().unwrap(),
        "--delta",
        "1/2",
        "--out",
        decision_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&decision_path).unwrap()).unwrap();
    assert_eq!(parsed["outcome"], 1);

    // the filled class s(|00⟩) does not persist: outcome 0 with exact norm 0
    let d00 = tmp("d00.json");
    std::fs::write(
        &d00,
        r#"{"p": 2, "blocks": [[[[0,1],[1,2],[2,3],[3,0]], [[7,8],[8,9],[9,10],[10,7]]]]}"#,
    )
    .unwrap();
    let out = harpo(&[
        "persistence-decide",
        "--k1",
        dir.join("k1.json").to_str().unwrap(),
        "--k2",
        dir.join("k2.json").to_str().unwrap(),
        "--p",
        "3",
        "--descriptor",
        d00.to_str().unwrap(),
        "--delta",
        "1/2",
        "--out",
        decision_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "exit: {:?}", out.status.code());
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&decision_path).unwrap()).unwrap();
    assert_eq!(parsed["outcome"], 0);
    assert_eq!(parsed["norm"], "0");

    std::fs::remove_file(d00).ok();
    std::fs::remove_file(decision_path).ok();
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn compile_commands_write_term_dumps() {
    let out_path = tmp("bravyi.json");
    let out = harpo(&[
        "compile-bravyi",
        "--circuit",
        &fixture("toy_circuit.json"),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(parsed["dim"], 128); // 2^(1 + 2·3)
    assert!(parsed["terms"].as_array().unwrap().len() > 5);

    let out2_path = tmp("kitaev.json");
    let out = harpo(&[
        "compile-kitaev",
        "--circuit",
        &fixture("toy_circuit.json"),
        "--out",
        out2_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out2_path).unwrap()).unwrap();
    assert_eq!(parsed["dim"], 8); // 2^1 · (3+1)
    std::fs::remove_file(out_path).ok();
    std::fs::remove_file(out2_path).ok();
}

#[test]
fn overlap_exact_on_file_hamiltonian() {
    let out = harpo(&[
        "overlap-exact",
        "--hamiltonian",
        &fixture("diag_h.json"),
        "--state",
        &fixture("uniform_state.json"),
    ]);
    assert!(out.status.success());
    let parsed: serde_json::Value =
        serde_json::from_str(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert_eq!(parsed["overlap_sq"], "1/2");
}

#[test]
fn overlap_qpe_requires_seed_and_is_deterministic() {
    // missing seed: usage error, exit code 1
    let out = harpo(&[
        "overlap-qpe",
        "--hamiltonian",
        &fixture("diag_h.json"),
        "--state",
        &fixture("uniform_state.json"),
        "--delta",
        "1/2",
    ]);
    assert_eq!(out.status.code(), Some(1));

    // identical seeds give byte-identical sample CSVs
    let csv_a = tmp("samples-a.csv");
    let csv_b = tmp("samples-b.csv");
    for csv in [&csv_a, &csv_b] {
        let out = harpo(&[
            "overlap-qpe",
            "--hamiltonian",
            &fixture("diag_h.json"),
            "--state",
            &fixture("uniform_state.json"),
            "--delta",
            "1/2",
            "--seed",
            "12345",
            "--reps",
            "50",
            "--samples",
            csv.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let a = std::fs::read(&csv_a).unwrap();
    let b = std::fs::read(&csv_b).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b);
    std::fs::remove_file(csv_a).ok();
    std::fs::remove_file(csv_b).ok();
}

#[test]
fn schema_violations_exit_one_with_context() {
    let out = harpo(&["betti", "--graph", &fixture("bad_graph.json"), "--p", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("weights"), "stderr: {err}");
}

#[test]
fn promise_violation_exits_two() {
    // a single cycle edge has projection strictly between 0 and δ = 9/10
    let d = tmp("single-edge.json");
    std::fs::write(&d, r#"{"p": 1, "blocks": [[[[3,4]]]]}"#).unwrap();
    let out = harpo(&[
        "harmonics-decide",
        "--graph",
        &fixture("wedge.json"),
        "--p",
        "1",
        "--descriptor",
        d.to_str().unwrap(),
        "--delta",
        "9/10",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let parsed: serde_json::Value =
        serde_json::from_str(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert_eq!(parsed["promise_violated"], true);
    std::fs::remove_file(d).ok();
}

#[test]
fn simplex_cap_env_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_harpo"))
        .args(["betti", "--graph", &fixture("wedge.json"), "--p", "1"])
        .env("HARPO_SIMPLEX_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn usage_errors_exit_one() {
    let out = harpo(&["betti", "--graph", "/nonexistent.json", "--p", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let out = harpo(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn emitted_decisions_reparse_under_the_schema() {
    // round-trip: every emitted decision parses back as a DecisionFile
    let out_path = tmp("reparse.json");
    let out = harpo(&[
        "harmonics-decide",
        "--graph",
        &fixture("wedge.json"),
        "--p",
        "1",
        "--descriptor",
        &fixture("wedge_right_cycle.json"),
        "--delta",
        "3/4",
        "--method",
        "qpe",
        "--seed",
        "9",
        "--bits",
        "8",
        "--reps",
        "64",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&out_path).unwrap();
    let parsed: harpo_core::formats::DecisionFile = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed.method, "qpe");
    assert_eq!(parsed.outcome, 1);
    std::fs::remove_file(out_path).ok();
}
