//! End-to-end tests of the command-line surface: output shapes, exit codes
//! (0 success, 1 property failure, 2 input error, 3 resource cap), and the
//! frozen corpus.

use std::io::Write;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gridfloer"))
}

fn corpus_path(name: &str) -> String {
    format!("{}/corpus/{name}.grid", env!("CARGO_MANIFEST_DIR"))
}

fn temp_grid(content: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(content.as_bytes()).unwrap();
    f
}

#[test]
fn validate_reports_summary() {
    let out = bin()
        .args(["validate", &corpus_path("unknot2")])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("n=2 ell=1"), "{text}");
}

#[test]
fn validate_rejects_malformed_input_with_exit_2() {
    let f = temp_grid("n = 2\nX = 0 zebra\nO = 1 0\n");
    let out = bin()
        .args(["validate", f.path().to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn missing_file_is_an_input_error() {
    let out = bin()
        .args(["validate", "/nonexistent/grid.grid"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cap_exceeded_is_exit_3() {
    let out = bin()
        .args(["homology", &corpus_path("trefoil"), "--cap", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn homology_json_shape_for_the_unknot() {
    let out = bin()
        .args(["homology", &corpus_path("unknot2"), "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["tau"], 0);
    assert_eq!(v["alexander_doubled"], true);
    assert_eq!(v["hat"].as_array().unwrap().len(), 1);
    assert_eq!(v["hat"][0]["maslov"], 0);
    assert_eq!(v["hat"][0]["alexander_doubled"][0], 0);
    assert_eq!(v["hat"][0]["rank"], 1);
    assert_eq!(v["bigraded"].as_array().unwrap().len(), 2);
}

#[test]
fn homology_signed_reports_torsion_free_trefoil() {
    let out = bin()
        .args([
            "homology",
            &corpus_path("trefoil"),
            "--coeff",
            "z",
            "--json",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for entry in v["bigraded"].as_array().unwrap() {
        assert_eq!(entry["torsion"].as_array().unwrap().len(), 0);
    }
    assert_eq!(v["hat_coeffs"], "gf2");
}

#[test]
fn alexander_of_the_trefoil() {
    let out = bin()
        .args(["alexander", &corpus_path("trefoil")])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        "t^1 - 1 + t^-1"
    );
}

#[test]
fn tau_requires_a_knot() {
    let out = bin().args(["tau", &corpus_path("hopf")]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn move_pipeline_applies_in_order() {
    let out = bin()
        .args([
            "move",
            &corpus_path("trefoil"),
            "--apply",
            "stabilize:2:right:xu",
            "cyclic-rows:1",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("n = 6"), "{text}");
}

#[test]
fn illegal_move_fails() {
    let out = bin()
        .args(["move", &corpus_path("trefoil"), "--apply", "commute-cols:0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_passes_on_the_trefoil() {
    let out = bin()
        .args(["verify", &corpus_path("trefoil"), "--euler", "--symmetry"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("pass"), "{text}");
    assert!(!text.contains("FAIL"), "{text}");
}

#[test]
fn verify_moves_on_trefoil_matches_spec_example() {
    let out = bin()
        .args([
            "verify",
            &corpus_path("trefoil"),
            "--moves",
            "--seed",
            "7",
            "--len",
            "10",
        ])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
}

#[test]
fn verify_signs_emits_json_report() {
    let out = bin()
        .args(["verify", &corpus_path("unknot2"), "--signs", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let suites = v[0]["suites"].as_array().unwrap();
    assert_eq!(suites[0]["suite"], "signs");
    assert_eq!(suites[0]["passed"], true);
    assert!(suites[0]["checks"].as_u64().unwrap() > 0);
}

#[test]
fn corpus_list_names_all_entries() {
    let out = bin().args(["corpus", "list"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["unknot2", "trefoil", "figure8", "hopf", "torus35"] {
        assert!(text.contains(name), "{text}");
    }
}

#[test]
fn corpus_golden_files_are_current() {
    let out = bin().args(["corpus", "verify"]).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "{text}");
    assert!(!text.contains("FAIL"), "{text}");
}

#[test]
fn boundary_dump_writes_block_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args([
            "homology",
            &corpus_path("unknot3"),
            "--dump-boundary",
            dir.path().to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert!(!files.is_empty());
    let first = std::fs::read_to_string(dir.path().join("block_0000.triplets")).unwrap();
    assert!(first.starts_with("# {"), "{first}");
}

#[test]
fn json_output_is_deterministic() {
    // Everything except the wall-clock field must be byte-identical across
    // runs, regardless of how the parallel work interleaved.
    let run = || {
        let out = bin()
            .args([
                "homology",
                &corpus_path("figure8"),
                "--json",
                "--threads",
                "2",
            ])
            .output()
            .unwrap();
        let mut v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        v["meta"]["millis"] = serde_json::Value::Null;
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(run(), run());
}
