//! End-to-end tests of the binary: documented examples, exit codes,
//! determinism, and file output.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lenscalc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lenscalc"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn compute_disk_example() {
    let out = run(&["compute", "structure-set-disk", "--N", "6", "--d", "2", "--m", "4"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["schema_version"], "1");
    assert_eq!(doc["free_rank"], 4);
    assert_eq!(doc["invariant_factors"].as_array().unwrap().len(), 0);
    assert_eq!(doc["case_label"], "d = 2e, k = 2l");
    assert_eq!(doc["params"]["N"], 6);
    assert_eq!(doc["params"]["K"], 1);
    assert_eq!(doc["params"]["M"], 3);
}

#[test]
fn compute_l_group_example() {
    let out = run(&["compute", "l-group", "--N", "7", "--n", "3"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["free_rank"], 0);
    assert_eq!(doc["invariant_factors"].as_array().unwrap().len(), 0);
}

#[test]
fn compute_rho_image_example() {
    let out = run(&["compute", "rho-image", "--N", "4", "--d", "5", "--k", "0"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["free_rank"], 0);
    assert_eq!(doc["invariant_factors"].as_array().unwrap().len(), 0);
    assert_eq!(doc["declared_odd_order"], "1");
}

#[test]
fn compute_kernel_closed_form_anchor() {
    let out = run(&["compute", "kernel-closed-form", "--N", "4", "--d", "5", "--k", "0"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["free_rank"], 1);
    let factors: Vec<String> = doc["invariant_factors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    assert_eq!(factors, ["2", "2", "4", "4"]);
}

#[test]
fn compute_text_and_md_renderings() {
    let out = run(&[
        "compute", "structure-set-disk", "--N", "4", "--d", "4", "--m", "2", "--format", "text",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("case: d = 2e, k = 2l+1"), "{text}");
    assert!(text.contains("group: Z + Z/2 + Z/2 + Z/4 + Z/4"), "{text}");

    let out = run(&[
        "compute", "structure-set-disk", "--N", "4", "--d", "4", "--m", "2", "--format", "md",
    ]);
    let md = String::from_utf8(out.stdout).unwrap();
    assert!(md.contains("invariant factors: 2, 2, 4, 4"), "{md}");
}

#[test]
fn compute_rejects_invalid_params() {
    for args in [
        &["compute", "structure-set-disk", "--N", "1", "--d", "2", "--m", "4"][..],
        &["compute", "structure-set-disk", "--N", "6", "--d", "2", "--m", "0"][..],
        &["compute", "structure-set-disk", "--N", "6", "--d", "1", "--m", "4"][..],
        &["compute", "structure-set-sphere", "--N", "6", "--d", "5", "--m", "2"][..],
        &["compute", "structure-set-disk", "--N", "6", "--m", "4"][..],
        &["compute", "rho-image", "--N", "4", "--d", "5"][..],
        &["compute", "rho-image", "--N", "4", "--d", "5", "--k", "0", "--m", "2"][..],
        &["compute", "structure-set-disk", "--N", "6", "--d", "2", "--m", "4", "--k", "2"][..],
        &["compute", "bogus-kind", "--N", "6"][..],
    ] {
        let out = run(args);
        assert_eq!(
            out.status.code(),
            Some(2),
            "args {args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn compute_documents_are_byte_identical_and_round_trip() {
    let args = ["compute", "structure-set-sphere", "--N", "6", "--d", "5", "--m", "4"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "outputs differ between identical runs");
    let doc = stdout_json(&a);
    let reparsed: serde_json::Value =
        serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(doc, reparsed);
    assert_eq!(doc["declared_odd_order"], "9");
}

#[test]
fn verify_small_sweep_passes() {
    let out = run(&[
        "verify",
        "--N-list", "3,4",
        "--d-min", "2", "--d-max", "3",
        "--k-min", "0", "--k-max", "1",
        "--suites", "eigenspace,rationality,factorization,closed-form-regression",
    ]);
    let doc = stdout_json(&out);
    assert_eq!(doc["summary"]["failed"], 0);
    assert_eq!(doc["summary"]["total"], 4 * 8);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_mutation_fails_with_exit_1() {
    let out = run(&[
        "verify",
        "--N-list", "16",
        "--d-min", "2", "--d-max", "2",
        "--k-min", "0", "--k-max", "0",
        "--suites", "factorization",
        "--mutate", "scale-column",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["summary"]["failed"], 1);
    assert_eq!(doc["sweep"]["mutation"], "scale-column");
    assert_eq!(doc["results"][0]["pass"], false);
}

#[test]
fn verify_rejects_malformed_specs() {
    for args in [
        &["verify", "--suites", ""][..],
        &["verify", "--suites", "nonsense"][..],
        &["verify", "--d-min", "1"][..],
        &["verify", "--N-list", "1,4"][..],
        &["verify", "--k-min", "3", "--k-max", "1"][..],
    ] {
        let out = run(args);
        assert_eq!(
            out.status.code(),
            Some(2),
            "args {args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn verify_report_is_deterministic_across_thread_counts() {
    let args = [
        "verify",
        "--N-list", "4,8",
        "--d-min", "2", "--d-max", "3",
        "--k-min", "0", "--k-max", "1",
        "--suites", "factorization,transfer,splitting",
    ];
    let one = run_env(&args, &[("LENSCALC_THREADS", "1")]);
    let four = run_env(&args, &[("LENSCALC_THREADS", "4")]);
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout, "reports differ across thread counts");
}

#[test]
fn table_formats_and_anchor_row() {
    let args = [
        "table", "main-theorem", "--N-list", "4", "--d-min", "4", "--d-max", "4", "--m-min",
        "2", "--m-max", "2",
    ];
    let md = run(&[&args[..], &["--format", "md"][..]].concat());
    let md_text = String::from_utf8(md.stdout).unwrap();
    assert!(md_text.contains("## d = 2e, k = 2l+1"), "{md_text}");
    assert!(
        md_text.contains("F⁻=Z¹; Z/2; Z/4⊕Z/4; Z/2"),
        "{md_text}"
    );

    let csv = run(&[&args[..], &["--format", "csv"][..]].concat());
    let csv_text = String::from_utf8(csv.stdout).unwrap();
    let mut lines = csv_text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "N,K,M,d,m,case,free_rank,invariant_factors,odd_order"
    );
    assert_eq!(
        lines.next().unwrap(),
        "4,2,1,4,2,\"d = 2e, k = 2l+1\",1,\"2,2,4,4\",1"
    );

    let json = run(&[&args[..], &["--format", "json"][..]].concat());
    let doc = stdout_json(&json);
    assert_eq!(doc["rows"][0]["free_rank"], 1);
    assert_eq!(doc["rows"][0]["odd_order"], "1");
}

#[test]
fn sphere_table_declares_odd_order() {
    let out = run(&[
        "table", "sphere-corollary", "--N-list", "6", "--d-min", "5", "--d-max", "5",
        "--m-min", "4", "--m-max", "4", "--format", "json",
    ]);
    let doc = stdout_json(&out);
    assert_eq!(doc["rows"][0]["odd_order"], "9");
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("doc.json");
    let args = ["compute", "normal-invariants", "--N", "12", "--d", "4", "--m", "4"];
    let stdout_run = run(&args);
    assert!(stdout_run.status.success());
    let file_run = run(&[
        &args[..],
        &["--out", path.to_str().unwrap()][..],
    ]
    .concat());
    assert!(file_run.status.success());
    assert!(file_run.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    assert_eq!(written, stdout_run.stdout);
}

#[test]
fn reduced_flag_changes_normal_invariants() {
    let base = stdout_json(&run(&[
        "compute", "normal-invariants", "--N", "12", "--d", "4", "--m", "4",
    ]));
    let reduced = stdout_json(&run(&[
        "compute", "normal-invariants", "--N", "12", "--d", "4", "--m", "4", "--reduced",
    ]));
    let count = |doc: &serde_json::Value| doc["invariant_factors"].as_array().unwrap().len();
    assert_eq!(count(&base), count(&reduced) + 1);
    assert_eq!(base["declared_odd_order"], "3");
}
