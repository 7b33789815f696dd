use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diassocle"))
        .args(args)
        .current_dir(fixtures())
        .env_remove("DIASSOCLE_SEED")
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn json(args: &[&str]) -> Value {
    let mut a = vec!["--format", "json"];
    a.extend_from_slice(args);
    let out = run(&a);
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn verify_every_shipped_fixture() {
    for entry in std::fs::read_dir(fixtures()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "json") {
            let out = run(&["verify", path.to_str().unwrap()]);
            assert_eq!(out.status.code(), Some(0), "{}: {}", path.display(), String::from_utf8_lossy(&out.stdout));
            assert!(String::from_utf8_lossy(&out.stdout).trim_end().ends_with("result: pass"));
        }
    }
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["verify", "invalid/not_averaging.json"]), 1);
    assert_eq!(code(&["verify", "invalid/zero_denominator.json"]), 2);
    assert_eq!(code(&["verify", "does_not_exist.json"]), 2);
    assert_eq!(code(&["verify", "kx2_adjoint.json", "--no-such-flag"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["cohomology", "kx2_adjoint.json", "--complex", "nope"]), 2);
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["--version"]), 0);
}

#[test]
fn parse_errors_name_the_location() {
    let out = run(&["verify", "invalid/zero_denominator.json"]);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("$.operators.P[0][0]"), "{err}");
}

#[test]
fn json_reports_are_objects_with_a_verdict() {
    let v = json(&["verify", "kx2_adjoint.json"]);
    assert_eq!(v["ok"], Value::Bool(true));
    assert_eq!(v["command"], "verify");
    let v = json(&["verify", "invalid/not_averaging.json"]);
    assert_eq!(v["ok"], Value::Bool(false));
}

#[test]
fn brackets_detect_maurer_cartan_elements() {
    assert_eq!(code(&["bracket", "kx2_adjoint.json", "--op", "derived", "--inputs", "cochains/kx2_adjoint_P.json"]), 0);
    assert_eq!(code(&["bracket", "kx2_adjoint.json", "--op", "derived", "--inputs", "cochains/kx2_adjoint_swap.json"]), 1);
    assert_eq!(code(&["bracket", "kx2_direct_sum.json", "--op", "mm", "--inputs", "cochains/kx2_direct_sum_pi.json"]), 0);
    let two = ["bracket", "kx2_adjoint.json", "--op", "derived", "--inputs", "cochains/kx2_adjoint_P.json", "cochains/kx2_adjoint_swap.json"];
    assert_eq!(code(&two), 0);
}

#[test]
fn cohomology_of_the_sum_fixture() {
    let v = json(&["cohomology", "a_plus_a_sum.json", "--complex", "ravg", "--nmax", "3"]);
    assert_eq!(v["ok"], Value::Bool(true));
    let degrees = v["cohomology"]["degrees"].as_array().unwrap();
    let dims: Vec<u64> = degrees.iter().map(|d| d["dim"].as_u64().unwrap()).collect();
    let spaces: Vec<u64> = degrees.iter().map(|d| d["space_dim"].as_u64().unwrap()).collect();
    assert_eq!(&dims[..4], [0, 2, 0, 0]);
    assert_eq!(&spaces[..4], [0, 5, 11, 21]);
    assert_eq!(code(&["cohomology", "kx2_adjoint.json", "--complex", "operator", "--nmax", "2"]), 0);
    assert_eq!(code(&["cohomology", "kx2_direct_sum.json", "--complex", "diass", "--nmax", "2"]), 0);
    assert_eq!(code(&["cohomology", "kx2_bimodule.json", "--complex", "assbimod", "--nmax", "2"]), 0);
    assert_eq!(code(&["cohomology", "kx2_adjoint.json", "--complex", "avg", "--nmax", "2"]), 0);
    let text = String::from_utf8(run(&["cohomology", "a_plus_a_sum.json", "--complex", "ravg", "--nmax", "3"]).stdout).unwrap();
    assert!(text.contains('2'), "{text}");
}

#[test]
fn les_deform_and_extension_commands() {
    let out = run(&["les", "a_plus_a_sum.json", "--nmax", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("exact at 9 nodes"));
    assert_eq!(code(&["deform", "kx2_adjoint.json", "--jet", "kx2_adjoint_jet.json"]), 0);
    assert_eq!(code(&["deform", "kx2_adjoint.json", "--jet", "kx2_adjoint_jet.json", "--equiv", "kx2_adjoint_jet_gauged.json"]), 0);
    assert_eq!(code(&["extension", "kx2_adjoint.json", "--cocycle", "kx2_adjoint_cocycle.json"]), 0);
    let ext = ["extension", "kx2_adjoint.json", "--extract", "kx2_adjoint_extension.json", "--section", "kx2_adjoint_section.json"];
    assert_eq!(code(&ext), 0);
    assert_eq!(code(&["extension", "kx2_adjoint.json", "--extract", "kx2_adjoint_extension.json"]), 2);
}

#[test]
fn homotopy_checks() {
    assert_eq!(code(&["homotopy", "kx2_ainf.json", "--check", "ainf", "--K", "3"]), 0);
    assert_eq!(code(&["homotopy", "q_plus_q2_diass_inf.json", "--check", "diassinf", "--K", "3"]), 0);
    assert_eq!(code(&["homotopy", "kx2_adjoint.json", "--check", "mc", "--K", "3"]), 0);
    assert_eq!(code(&["homotopy", "kx2_adjoint_homotopy.json", "--check", "mc", "--K", "3"]), 0);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["--seed", "7", "homotopy", "kx2_adjoint.json", "--check", "mc", "--K", "3"][..],
        &["--format", "json", "cohomology", "upper_triangular.json", "--complex", "ravg", "--nmax", "2"][..],
        &["les", "kx2_adjoint.json", "--nmax", "2"][..],
    ] {
        let (a, b) = (run(args), run(args));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.stderr, b.stderr);
    }
}
