use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mackeylab"))
        .args(args)
        .env_remove("MACKEYLAB_SEED")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = run(&full);
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&out.stderr)))
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["group", "predict", "--group", "bogus"]).status.code(), Some(2));
    assert_eq!(run(&["group", "predict"]).status.code(), Some(2));
    assert_eq!(
        run(&["kgmod", "describe", "--group", "q8", "--module", "tensor"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn dihedral_predictions() {
    let r = json(&["group", "predict", "--group", "dihedral:8"]);
    assert_eq!(r["schema"], "mackeylab.report/1");
    assert_eq!(r["prime"], 2);
    let m = &r["checks"][0]["measured"];
    assert_eq!(
        (&m["gorenstein"], &m["gldim_field"], &m["gldim_Z"]),
        (&Value::Bool(true), &Value::Bool(false), &Value::Bool(true))
    );
}

#[test]
fn q8_is_not_gorenstein() {
    let out = run(&["comack", "gorenstein-probe", "--group", "q8"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verdict: not-gorenstein"), "{text}");
}

#[test]
fn cyclic_three_fixed_quotient_has_pd_two() {
    let r = json(&["comack", "resolve", "--group", "cyclic:3", "--functor", "fq:triv"]);
    assert_eq!(r["checks"][0]["measured"]["pd"]["pd"], 2);
    let r = json(&["comack", "resolve", "--group", "cyclic:3", "--functor", "simple:1"]);
    assert_eq!(r["checks"][0]["measured"]["status"]["status"], "periodic");
}

#[test]
fn json_reports_are_reproducible() {
    let args = [
        "mackey",
        "split-mono-probe",
        "--group",
        "cyclic:4",
        "--trials",
        "20",
        "--format",
        "json",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v.get("wall_ms").is_none());
    let c = run(&[
        "mackey",
        "split-mono-probe",
        "--group",
        "cyclic:4",
        "--trials",
        "20",
        "--format",
        "json",
        "--seed",
        "0xB0D",
    ]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn seed_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_mackeylab"))
        .args(["group", "info", "--group", "q8"])
        .env("MACKEYLAB_SEED", "7")
        .output()
        .unwrap();
    assert!(String::from_utf8(out.stdout).unwrap().contains("seed: 0x7"));
}

#[test]
fn mackey_c2_dimensions() {
    let m = &json(&["mackey", "build", "--group", "cyclic:2"])["checks"][0]["measured"];
    assert_eq!(m["dim"], 6);
    assert_eq!(m["cohomological_quotient_dim"], 5);
}

#[test]
fn shallow_suite_skips_instead_of_failing() {
    let out = run(&["suite", "run", "--depth", "4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    let checks = r["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["status"] != "fail"));
    assert!(checks.iter().any(|c| c["status"] == "skip"));
}

#[test]
fn json_output_validates_against_the_schema() {
    let schema: Value = serde_json::from_str(include_str!("../../../docs/report.schema.json")).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    for args in [
        &["group", "predict", "--group", "q8"][..],
        &["comack", "resolve", "--group", "cyclic:4", "--functor", "simple:1"],
        &["mackey", "brauer-check", "--group", "cyclic:2"],
        &["suite", "run", "--depth", "3", "--timings"],
    ] {
        let r = json(args);
        let errors: Vec<String> = validator.iter_errors(&r).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
    let mut bad = json(&["group", "info", "--group", "cyclic:2"]);
    bad["checks"][0]["status"] = Value::from("maybe");
    assert!(!validator.is_valid(&bad));
}
