//! End-to-end behavior of the binary: exit codes, both input formats, the
//! certify → verify loop, tampering detection, and campaign reproducibility.

use serde_json::Value;
use std::io::Write;
use std::process::{Command, Stdio};

const T1: &str = "0 7 0; 0 1 -5; 0 0 6";
const T2: &str = "0 7 0; 0 1 -5; 0 0 3";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_uecsm"))
}

/// Run the binary with `args`, optionally feeding stdin. Returns
/// (exit code, stdout, stderr).
fn run(args: &[&str], stdin: Option<&str>) -> (i32, String, String) {
    let mut cmd = bin();
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("binary spawns");
    if let Some(text) = stdin {
        child
            .stdin
            .as_mut()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
    }
    drop(child.stdin.take());
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().expect("no signal"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn reference_pair_exit_codes() {
    let (code, stdout, _) = run(&["test", "-"], Some(T1));
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("status     : UECSM"));

    let (code, stdout, _) = run(&["test", "-"], Some(T2));
    assert_eq!(code, 1, "{stdout}");
    assert!(stdout.contains("NotUECSM"));
}

#[test]
fn degenerate_five_by_five_is_inconclusive() {
    // T = diag(1,1,2,3,4) + i·(all-ones): the Hermitian part has an exactly
    // repeated eigenvalue, and T is far from normal, so no branch can decide
    // at n = 5.
    let rows: Vec<String> = (0..5)
        .map(|i| {
            (0..5)
                .map(|j| {
                    let d = [1.0, 1.0, 2.0, 3.0, 4.0][i];
                    if i == j {
                        format!("{d}+i")
                    } else {
                        "i".to_string()
                    }
                })
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    let text = rows.join("; ");
    let (code, stdout, _) = run(&["test", "-", "--json"], Some(&text));
    assert_eq!(code, 2, "{stdout}");
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["status"], "Inconclusive");
    assert_eq!(v["branch"], "repeated-eigenvalue");
    assert!(v["reason"].as_str().unwrap().contains("repeated eigenvalue"));
}

#[test]
fn json_report_carries_the_input_echo_and_no_certificate_under_test() {
    let (code, stdout, _) = run(&["test", "-", "--json"], Some(T1));
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["status"], "UECSM");
    assert_eq!(v["branch"], "reality-test");
    assert_eq!(v["input"]["re"][0][1], 7.0);
    assert_eq!(v["input"]["n"], 3);
    assert!(v.get("certificate").is_none(), "test must not embed U/K/S");
    assert!(v["margin"].as_f64().unwrap() < 0.0);
}

#[test]
fn certify_verify_loop_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = dir.path().join("t1.txt");
    std::fs::write(&matrix, T1).unwrap();
    let cert = dir.path().join("cert.json");
    let report = dir.path().join("report.json");

    let (code, stdout, _) = run(
        &[
            "certify",
            matrix.to_str().unwrap(),
            "--output",
            cert.to_str().unwrap(),
            "--json",
        ],
        None,
    );
    assert_eq!(code, 0, "{stdout}");
    std::fs::write(&report, &stdout).unwrap();

    // The bare certificate file passes.
    let (code, _, stderr) = run(
        &["verify", matrix.to_str().unwrap(), cert.to_str().unwrap()],
        None,
    );
    assert_eq!(code, 0, "{stderr}");

    // The full report wrapper passes too.
    let (code, _, stderr) = run(
        &["verify", matrix.to_str().unwrap(), report.to_str().unwrap()],
        None,
    );
    assert_eq!(code, 0, "{stderr}");

    // Certify output is deterministic byte for byte.
    let (_, stdout2, _) = run(&["certify", matrix.to_str().unwrap(), "--json"], None);
    assert_eq!(stdout, stdout2);
}

#[test]
fn tampered_certificates_fail_verification() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = dir.path().join("t1.txt");
    std::fs::write(&matrix, T1).unwrap();
    let cert_path = dir.path().join("cert.json");
    let (code, _, _) = run(
        &[
            "certify",
            matrix.to_str().unwrap(),
            "--output",
            cert_path.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(code, 0);

    let mut cert: Value =
        serde_json::from_str(&std::fs::read_to_string(&cert_path).unwrap()).unwrap();
    let entry = cert["K"]["re"][0][1].as_f64().unwrap();
    cert["K"]["re"][0][1] = Value::from(entry + 1e-3);
    std::fs::write(&cert_path, cert.to_string()).unwrap();

    let (code, stdout, _) = run(
        &["verify", matrix.to_str().unwrap(), cert_path.to_str().unwrap()],
        None,
    );
    assert_eq!(code, 1, "{stdout}");
    assert!(stdout.contains("FAIL"));
}

#[test]
fn mismatched_certificate_dimension_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = dir.path().join("t1.txt");
    std::fs::write(&matrix, T1).unwrap();
    let cert_path = dir.path().join("cert2.json");
    // A valid 2×2 certificate (identity on a symmetric matrix).
    std::fs::write(
        &cert_path,
        r#"{"U": {"n":2,"re":[[1,0],[0,1]],"im":[[0,0],[0,0]]},
            "K": {"n":2,"re":[[1,0],[0,1]],"im":[[0,0],[0,0]]},
            "S": {"n":2,"re":[[1,2],[2,1]],"im":[[0,0],[0,0]]}}"#,
    )
    .unwrap();
    let (code, _, stderr) = run(
        &["verify", matrix.to_str().unwrap(), cert_path.to_str().unwrap()],
        None,
    );
    assert_eq!(code, 65, "{stderr}");
    assert!(stderr.contains("2×2"));
}

#[test]
fn identity_certificate_verifies_a_symmetric_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = dir.path().join("sym.txt");
    std::fs::write(&matrix, "1+2i 3i; 3i 5-i").unwrap();
    let cert_path = dir.path().join("id-cert.json");
    std::fs::write(
        &cert_path,
        r#"{"U": {"n":2,"re":[[1,0],[0,1]]},
            "K": {"n":2,"re":[[1,0],[0,1]]},
            "S": {"n":2,"re":[[1,0],[0,5]],"im":[[2,3],[3,-1]]}}"#,
    )
    .unwrap();
    let (code, stdout, stderr) = run(
        &["verify", matrix.to_str().unwrap(), cert_path.to_str().unwrap()],
        None,
    );
    assert_eq!(code, 0, "{stdout}{stderr}");
}

#[test]
fn usage_and_data_errors_use_distinct_codes() {
    let (code, _, _) = run(&["test", "/definitely/not/a/file"], None);
    assert_eq!(code, 66);

    let (code, _, stderr) = run(&["test", "-"], Some("garbage!!"));
    assert_eq!(code, 65);
    assert!(stderr.contains("line 1"));

    let (code, _, _) = run(&["test", "-"], Some("1 2; 3"));
    assert_eq!(code, 65);

    let (code, _, _) = run(&["test", "-", "--bogus"], Some(T1));
    assert_eq!(code, 64);

    let (code, _, _) = run(&["frobnicate"], None);
    assert_eq!(code, 64);

    let (code, _, _) = run(&["examples", "nope"], None);
    assert_eq!(code, 64);

    let (code, _, _) = run(&["search", "--n", "3", "--ensemble", "partial-isometry"], None);
    assert_eq!(code, 64);

    let (code, _, _) = run(&["search", "--n", "3", "--rank", "5", "--trials", "1"], None);
    assert_eq!(code, 64);

    let (code, _, _) = run(&["--help"], None);
    assert_eq!(code, 0);
    let (code, _, _) = run(&["--version"], None);
    assert_eq!(code, 0);
}

#[test]
fn examples_pipe_back_into_test() {
    for (name, expected) in [
        ("t1", 0),
        ("t2", 1),
        ("nilpotent-0.5", 1),
        ("nilpotent-1", 0),
        ("nilpotent-2", 1),
        ("dense", 0),
    ] {
        let (code, matrix, _) = run(&["examples", name], None);
        assert_eq!(code, 0, "examples {name}");
        let (code, stdout, _) = run(&["test", "-"], Some(&matrix));
        assert_eq!(code, expected, "{name}: {stdout}");
    }

    // The JSON form parses back to the same matrix as the text form.
    let (_, text, _) = run(&["examples", "dense"], None);
    let (_, json, _) = run(&["examples", "dense", "--format", "json"], None);
    let (_, from_text, _) = run(&["test", "-", "--json"], Some(&text));
    let (_, from_json, _) = run(&["test", "-", "--json"], Some(&json));
    let a: Value = serde_json::from_str(&from_text).unwrap();
    let b: Value = serde_json::from_str(&from_json).unwrap();
    assert_eq!(a["input"], b["input"]);
}

#[test]
fn stdin_json_matrix_is_autodetected() {
    let doc = r#"{"n": 2, "re": [[0, 1], [0, 0]], "im": [[0, 0], [0, 0]]}"#;
    let (code, stdout, _) = run(&["test", "-", "--json"], Some(doc));
    assert_eq!(code, 0, "{stdout}");
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["branch"], "two-by-two");
}

#[test]
fn tolerance_flags_move_the_thresholds() {
    // Tightening the reality tolerance below the numerical noise floor flips
    // t1 to a (spurious) rejection — which is exactly what the flag is for.
    let (code, _, _) = run(&["test", "-", "--tol-real", "1e-20"], Some(T1));
    assert_eq!(code, 1);

    // Loosening it makes t2's ratios "real", but the certificate built from
    // them cannot verify, so the pipeline refuses to claim equivalence.
    let (code, stdout, _) = run(&["test", "-", "--tol-real", "0.9", "--json"], Some(T2));
    assert_eq!(code, 2, "{stdout}");
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["status"], "Inconclusive");
}

#[test]
fn search_is_reproducible_and_writes_stats() {
    let dir = tempfile::tempdir().unwrap();
    let stats_path = dir.path().join("stats.json");
    let args = [
        "search", "--n", "3", "--trials", "50", "--seed", "9", "--json",
    ];
    let (code, a, _) = run(&args, None);
    assert_eq!(code, 0);
    let mut with_output: Vec<&str> = args.to_vec();
    let path_str = stats_path.to_str().unwrap().to_string();
    with_output.extend_from_slice(&["--output", &path_str]);
    let (code, b, _) = run(&with_output, None);
    assert_eq!(code, 0);

    let strip = |s: &str| -> Value {
        let mut v: Value = serde_json::from_str(s).unwrap();
        v.as_object_mut().unwrap().remove("elapsed_secs");
        v
    };
    assert_eq!(strip(&a), strip(&b));

    let on_disk = std::fs::read_to_string(&stats_path).unwrap();
    assert_eq!(strip(&on_disk), strip(&a));
    assert_eq!(strip(&a)["trials"], 50);
}
