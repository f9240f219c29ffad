use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gghlab::reps::{character_module, pullback_from_type_a, type_a_one_dim, HModule};
use gghlab::scalar::{rat, Cyclotomic, CyclotomicField};
use serde_json::Value;

fn gghlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gghlab"))
        .args(args)
        .env_remove("GGHLAB_THREADS")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// The (1,1)-block character of G(2,1,2) at lambda = 0.
fn write_char(dir: &Path) -> PathBuf {
    let f = CyclotomicField::new(2);
    let zero = vec![Cyclotomic::zero(&f); 2];
    let u = character_module(2, &f, &rat(1), &[0, 1], &zero).unwrap();
    let p = dir.join("char.json");
    u.save(&p).unwrap();
    p
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn blocks_are_stars_and_bars() {
    let out = gghlab(&["module", "blocks", "--m", "2", "--n", "2"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["compositions"], serde_json::json!([[2, 0], [1, 1], [0, 2]]));
    for (m, n) in [(2, 2), (3, 2), (2, 3), (3, 4)] {
        let v = json_of(&gghlab(&["module", "blocks", "--m", &m.to_string(), "--n", &n.to_string()]));
        assert_eq!(v["count"], binomial(n + m - 1, m - 1));
    }
}

#[test]
fn presentation_report_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = gghlab(&["verify", "--m", "2", "--n", "2", "--suite", "presentations", "--out", path_str(p)]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let v = read_json(&a);
    assert_eq!(v["summary"]["fail"], 0);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["witness"].is_null()));
}

#[test]
fn dirac_suite_reports_residual_one() {
    let out = gghlab(&["verify", "--m", "1", "--n", "3", "--suite", "dirac"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks
        .iter()
        .any(|c| c["check"].as_str().unwrap().starts_with("residual1 = 0") && c["status"] == "pass"));
}

#[test]
fn jacobi_and_drinfeld_with_threads_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_gghlab"))
        .args(["verify", "--m", "2", "--n", "3", "--suite", "jacobi,drinfeld", "--negative-controls"])
        .env("GGHLAB_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["check"].as_str().unwrap().starts_with("drinfeld (1)")));
    assert!(checks.iter().any(|c| c["suite"] == "negative-controls"));
    assert_eq!(v["summary"]["fail"], 0);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(gghlab(&["verify", "--m", "5", "--n", "6"]).status.code(), Some(2));
    assert_eq!(gghlab(&["verify", "--m", "2", "--n", "2", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(gghlab(&["module", "frobnicate"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("broken.json");
    std::fs::write(&p, "{\n  \"m\": 2,\n  \"n\": \n}").unwrap();
    let out = gghlab(&["module", "validate", path_str(&p)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn induce_validate_and_dirac_cohomology() {
    let dir = tempfile::tempdir().unwrap();
    let ch = write_char(dir.path());
    let induced = dir.path().join("induced.json");
    let out = gghlab(&[
        "module", "induce", "--composition", "1,1", "--input", path_str(&ch), "--out", path_str(&induced),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let x = HModule::load(&induced).unwrap();
    assert_eq!(x.dim(), 2);
    assert_eq!(gghlab(&["module", "validate", path_str(&induced)]).status.code(), Some(0));

    let dc = dir.path().join("dc.json");
    let out = gghlab(&[
        "module", "dirac-cohomology", path_str(&induced), "--composition", "1,1", "--out", path_str(&dc),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = read_json(&dc);
    assert_eq!(v["dimension"], 8);
    assert_eq!(v["blockwise"]["rhs_dimension"], 8);
    assert_eq!(v["blockwise"]["weight_space_lemma"], true);

    let back = dir.path().join("back.json");
    let out = gghlab(&[
        "module", "restrict", "--composition", "1,1", "--input", path_str(&induced), "--out", path_str(&back),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(HModule::load(&back).unwrap().dim(), 1);

    // a wrong block for the input is a usage error
    let out = gghlab(&["module", "induce", "--composition", "2,0", "--input", path_str(&ch)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn corrupted_module_names_the_relation() {
    let dir = tempfile::tempdir().unwrap();
    let ch = write_char(dir.path());
    let induced = dir.path().join("induced.json");
    gghlab(&["module", "induce", "--input", path_str(&ch), "--out", path_str(&induced)]);
    let mut v = read_json(&induced);
    v["z"][0][0][1] = serde_json::json!("5");
    std::fs::write(&induced, v.to_string()).unwrap();
    let out = gghlab(&["module", "validate", path_str(&induced)]);
    assert_eq!(out.status.code(), Some(1));
    let r = json_of(&out);
    let failing: Vec<&str> = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["check"].as_str().unwrap())
        .collect();
    assert!(!failing.is_empty());
    // inducing a broken module fails on the named relation
    let out = gghlab(&["module", "dirac-cohomology", path_str(&induced)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("relation"));
}

#[test]
fn classify_steinberg_and_trivial() {
    let dir = tempfile::tempdir().unwrap();
    for (tau, tempered, parabolic) in [(-1, "tempered", vec![1]), (1, "neither", vec![])] {
        let f = type_a_one_dim(2, tau, &rat(-tau), &rat(2)).unwrap();
        let x = pullback_from_type_a(&[f], &[2, 0], 2, &rat(1)).unwrap();
        let p = dir.path().join(format!("x{tau}.json"));
        x.save(&p).unwrap();
        let out_path = dir.path().join(format!("cls{tau}.json"));
        let out = gghlab(&["module", "classify", path_str(&p), "--out", path_str(&out_path)]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let v = read_json(&out_path);
        assert_eq!(v["block"], serde_json::json!([2, 0]));
        assert_eq!(v["tempered"], tempered);
        assert_eq!(v["P"], serde_json::json!(parabolic));
        assert_eq!(v["verified_unique"], true);
        let factor = dir.path().join(v["tempered_factor"].as_str().unwrap());
        assert_eq!(HModule::load(&factor).unwrap().dim(), 1);
        // the flipped convention swaps the labels
        let v = json_of(&gghlab(&["module", "classify", path_str(&p), "--flipped"]));
        let other = if tau == -1 { "neither" } else { "tempered" };
        assert_eq!(v["tempered"], other);
    }
}
