//! End-to-end tests driving the `qcmap` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn qcmap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcmap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn repo_path(rel: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.pop();
    p.pop();
    p.push(rel);
    p.to_str().unwrap().to_string()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn map_bell_identity_no_swaps() {
    let out = qcmap(&[
        "map",
        "--device",
        &repo_path("devices/ibm_qx4.dev"),
        "--in",
        &repo_path("circuits/bell.qc"),
        "--placer",
        "identity",
        "--verify",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("swaps_added=0"));
    assert!(text.contains("verify=ok"));
}

#[test]
fn map_writes_deterministic_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let run = |suffix: &str| {
        let mapped = dir.path().join(format!("m{suffix}.qc"));
        let sched = dir.path().join(format!("s{suffix}.txt"));
        let metrics = dir.path().join(format!("x{suffix}.txt"));
        let out = qcmap(&[
            "map",
            "--device",
            &repo_path("devices/surface17.dev"),
            "--in",
            &repo_path("circuits/rotations.qc"),
            "--router",
            "lookahead",
            "--seed",
            "7",
            "--out",
            mapped.to_str().unwrap(),
            "--schedule",
            sched.to_str().unwrap(),
            "--metrics",
            metrics.to_str().unwrap(),
            "--verify",
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        (
            std::fs::read(&mapped).unwrap(),
            std::fs::read(&sched).unwrap(),
            std::fs::read(&metrics).unwrap(),
        )
    };
    let a = run("a");
    let b = run("b");
    assert_eq!(a, b);
    let metrics_text = String::from_utf8(a.2).unwrap();
    for key in [
        "gates_before=",
        "gates_after=",
        "swaps_added=",
        "direction_fixes=",
        "depth_cycles=",
        "reliability=",
    ] {
        assert!(metrics_text.contains(key), "missing {key} in {metrics_text}");
    }
}

#[test]
fn map_bell_schedule_golden() {
    let dir = tempfile::tempdir().unwrap();
    let sched = dir.path().join("bell.sched");
    let out = qcmap(&[
        "map",
        "--device",
        &repo_path("devices/ibm_qx4.dev"),
        "--in",
        &repo_path("circuits/bell.qc"),
        "--placer",
        "identity",
        "--schedule",
        sched.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let h = "u3(1.5707963267948966,0,3.141592653589793)";
    let expected = format!(
        "cycle 0: {h}@q0; {h}@q1\ncycle 1: {h}@q0\ncycle 2: cnot@q1,q0\ncycle 3:\ncycle 4: {h}@q0; {h}@q1\n"
    );
    assert_eq!(std::fs::read_to_string(&sched).unwrap(), expected);
}

#[test]
fn map_distance_two_cnot_needs_one_swap() {
    let dir = tempfile::tempdir().unwrap();
    let circuit = dir.path().join("far.qc");
    // q0 and q3 are at distance 2 on ibm_qx4
    std::fs::write(&circuit, "qubits 5\ncnot q0, q3\n").unwrap();
    let metrics = dir.path().join("far.metrics");
    let out = qcmap(&[
        "map",
        "--device",
        &repo_path("devices/ibm_qx4.dev"),
        "--in",
        circuit.to_str().unwrap(),
        "--placer",
        "identity",
        "--router",
        "naive",
        "--metrics",
        metrics.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&metrics).unwrap();
    assert!(text.contains("swaps_added=1"), "{text}");
}

#[test]
fn mapped_output_passes_check() {
    let dir = tempfile::tempdir().unwrap();
    let mapped = dir.path().join("mapped.qc");
    let out = qcmap(&[
        "map",
        "--device",
        &repo_path("devices/ibm_qx4.dev"),
        "--in",
        &repo_path("circuits/demo_qx4.qc"),
        "--placer",
        "identity",
        "--out",
        mapped.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = qcmap(&[
        "check",
        "--device",
        &repo_path("devices/ibm_qx4.dev"),
        "--in",
        mapped.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).is_empty());
}

#[test]
fn check_reports_coupling_violation() {
    let dir = tempfile::tempdir().unwrap();
    let circuit = dir.path().join("bad.qc");
    std::fs::write(&circuit, "qubits 17\ncz q1, q7\n").unwrap();
    let out = qcmap(&[
        "check",
        "--device",
        &repo_path("devices/surface17.dev"),
        "--in",
        circuit.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout(&out), "violation not-coupled gate#0 qubits 1,7\n");
}

#[test]
fn check_parse_error_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let circuit = dir.path().join("bad.qc");
    std::fs::write(&circuit, "qubits 2\nfrobnicate q0\n").unwrap();
    let out = qcmap(&[
        "check",
        "--device",
        &repo_path("devices/ibm_qx4.dev"),
        "--in",
        circuit.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn map_exact_limit_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let circuit = dir.path().join("wide.qc");
    std::fs::write(&circuit, "qubits 6\ncnot q0, q5\n").unwrap();
    let out = qcmap(&[
        "map",
        "--device",
        &repo_path("devices/surface17.dev"),
        "--in",
        circuit.to_str().unwrap(),
        "--router",
        "exact",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sim_bell_amplitudes() {
    let out = qcmap(&["sim", "--in", &repo_path("circuits/bell.qc")]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "00 0.707106781186548 0.000000000000000\n11 0.707106781186548 0.000000000000000\n"
    );
}

#[test]
fn sim_single_hadamard() {
    let dir = tempfile::tempdir().unwrap();
    let circuit = dir.path().join("h.qc");
    std::fs::write(&circuit, "qubits 1\nh q0\n").unwrap();
    let out = qcmap(&["sim", "--in", circuit.to_str().unwrap()]);
    assert_eq!(
        stdout(&out),
        "0 0.707106781186548 0.000000000000000\n1 0.707106781186548 0.000000000000000\n"
    );
}

#[test]
fn sim_empty_circuit_single_line() {
    let dir = tempfile::tempdir().unwrap();
    let circuit = dir.path().join("empty.qc");
    std::fs::write(&circuit, "qubits 3\n").unwrap();
    let out = qcmap(&["sim", "--in", circuit.to_str().unwrap()]);
    assert_eq!(stdout(&out), "000 1.000000000000000 0.000000000000000\n");
}

#[test]
fn sim_state_flag_sets_basis_input() {
    let dir = tempfile::tempdir().unwrap();
    let circuit = dir.path().join("cx.qc");
    std::fs::write(&circuit, "qubits 2\ncnot q0, q1\n").unwrap();
    // qubit 0 is the rightmost bit: "01" sets the control
    let out = qcmap(&["sim", "--in", circuit.to_str().unwrap(), "--state", "01"]);
    assert_eq!(stdout(&out), "11 1.000000000000000 0.000000000000000\n");
    let out = qcmap(&["sim", "--in", circuit.to_str().unwrap(), "--state", "10"]);
    assert_eq!(stdout(&out), "10 1.000000000000000 0.000000000000000\n");
}

#[test]
fn devices_listing() {
    let out = qcmap(&["devices", &repo_path("devices")]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("ibm_qx4 (5 qubits)"), "{text}");
    assert!(text.contains("surface17 (17 qubits)"), "{text}");
    // empty dir lists nothing and succeeds
    let dir = tempfile::tempdir().unwrap();
    let out = qcmap(&["devices", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
}

#[test]
fn rules_dump_includes_cz_sandwich() {
    let out = qcmap(&["rules", "--device", &repo_path("devices/surface17.dev")]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("cnot a,b -> ry(-pi/2) b; cz a,b; ry(pi/2) b"), "{text}");
    assert!(text.contains("swap a,b ->"), "{text}");
}

#[test]
fn router_quality_ordering_on_demo() {
    let count = |router: &str| -> (usize, usize) {
        let out = qcmap(&[
            "map",
            "--device",
            &repo_path("devices/ibm_qx4.dev"),
            "--in",
            &repo_path("circuits/demo_qx4.qc"),
            "--placer",
            "identity",
            "--router",
            router,
            "--verify",
        ]);
        assert!(out.status.success(), "{router}: {}", String::from_utf8_lossy(&out.stderr));
        let text = stdout(&out);
        let grab = |key: &str| -> usize {
            text.lines()
                .find(|l| l.starts_with(key))
                .and_then(|l| l.split('=').nth(1))
                .unwrap()
                .parse()
                .unwrap()
        };
        (grab("swaps_added"), grab("gates_after") - grab("gates_before"))
    };
    let naive = count("naive");
    let lookahead = count("lookahead");
    let exact = count("exact");
    assert!(exact.0 <= lookahead.0 && lookahead.0 <= naive.0);
    assert!(exact.1 <= lookahead.1 && lookahead.1 <= naive.1);
    assert!(naive.1 > exact.1, "expected a strict improvement");
}
