use std::path::Path;
use std::process::Command;

use oscillab::experiments::{verdict_report, DecayPoint, DecayRun, RunOutcome, Verdict};
use proptest::prelude::*;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_oscillab"));
    c.env_remove("OSCILLAB_THREADS");
    c
}

fn synthetic_run(diag: &[bool], verdict: Verdict) -> DecayRun {
    let points = diag
        .iter()
        .enumerate()
        .map(|(i, &ok)| {
            let lambda = 16.0 * 2f64.powi(i as i32);
            DecayPoint {
                lambda,
                counts: vec![64 << i],
                method: "krylov".into(),
                value: 1.3 * lambda.powf(-0.5),
                iterations: 12,
                cross_check_gap: None,
                diagnostic: if ok { 1e-4 } else { 0.2 },
                diag_pass: ok,
            }
        })
        .collect::<Vec<_>>();
    DecayRun {
        entry: "synthetic".into(),
        window: Some((1, points.len() - 1)),
        points,
        slope: Some(-0.49),
        stderr: Some(0.01),
        predicted: -0.5,
        predicted_exact: "-1/2".into(),
        tolerance: 0.05,
        conjectural: false,
        verdict,
        tol: 1e-7,
        seed: 7,
    }
}

fn verdict() -> impl Strategy<Value = Verdict> {
    prop_oneof![Just(Verdict::Pass), Just(Verdict::Fail), Just(Verdict::Inconclusive)]
}

proptest! {
    #[test]
    fn exit_code_contract(runs in prop::collection::vec((verdict(), any::<bool>()), 0..12)) {
        let outcomes: Vec<RunOutcome> = runs.iter().map(|&(v, c)| RunOutcome::new("r", v, c)).collect();
        let code = verdict_report(&outcomes).exit_code();
        let hard = |v| runs.iter().any(|&(w, c)| !c && w == v);
        let expected = if hard(Verdict::Fail) { 1 } else if hard(Verdict::Inconclusive) { 3 } else { 0 };
        prop_assert_eq!(code, expected);
    }
}

#[test]
fn svg_markers_and_lines() {
    let svg = oscillab_cli::render_svg(&synthetic_run(&[true; 5], Verdict::Pass));
    assert_eq!(svg.matches(r#"class="marker""#).count(), 5);
    assert_eq!(svg.matches("<line ").count(), 2);
    assert!(!svg.contains("diag-fail"));
}

#[test]
fn svg_inconclusive_is_shaded() {
    let svg = oscillab_cli::render_svg(&synthetic_run(&[true, false, true, false, true], Verdict::Inconclusive));
    assert_eq!(svg.matches(r#"class="diag-fail""#).count(), 2);
    assert!(svg.contains("inconclusive"));
}

#[test]
fn svg_golden() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/synthetic.svg");
    let svg = oscillab_cli::render_svg(&synthetic_run(&[true, true, false, true, true], Verdict::Pass));
    if std::env::var_os("OSCILLAB_BLESS").is_some() {
        std::fs::write(&path, &svg).unwrap();
    }
    let golden = std::fs::read_to_string(&path).unwrap();
    assert_eq!(svg, golden);
}

#[test]
fn svg_to_unwritable_path_errors() {
    let run = synthetic_run(&[true; 3], Verdict::Pass);
    assert!(oscillab_cli::write_svg(&run, Path::new("/nonexistent/dir/x.svg")).is_err());
}

#[test]
fn unknown_config_key_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"job": "classify", "entry": "curve_mn:2,3", "lamda_min": 4}"#).unwrap();
    let out = bin().arg("--config").arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("lamda_min"));
}

#[test]
fn bad_tolerance_names_key() {
    let out = bin().args(["decay", "--entry", "nondegenerate_1d", "--tol", "0.5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("tol"));
}

#[test]
fn bad_thread_count_exits_2() {
    let out = bin().args(["catalog"]).env("OSCILLAB_THREADS", "zero").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("OSCILLAB_THREADS"));
}

#[test]
fn unknown_entry_exits_2() {
    let out = bin().args(["classify", "--entry", "no_such_thing"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no_such_thing"));
}

#[test]
fn classify_cusp() {
    let out = bin().args(["classify", "--entry", "curve_mn:2,4"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("cusp"), "{text}");
    assert!(text.contains("type: 2"), "{text}");
}

#[test]
fn mizohata_degenerate() {
    let out = bin().args(["brackets", "--entry", "mizohata", "--alpha", "-1/6", "--beta", "0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("degenerate"), "{text}");
    assert!(text.contains("alpha + 1/6"), "{text}");
}

#[test]
fn classify_writes_self_describing_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin().args(["classify", "--phase", "x1*z1^3/3", "--out"]).arg(dir.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let cfg: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.path().join("config.json")).unwrap()).unwrap();
    assert_eq!(cfg["job"], "classify");
    assert_eq!(cfg["tol"], 1e-7);
    assert!(cfg.get("seed").is_some());
    assert!(dir.path().join("results.csv").exists());
    assert!(dir.path().join("summary.csv").exists());
}

#[test]
fn decay_is_byte_identical() {
    let run = |dir: &Path| {
        let out = bin()
            .args(["decay", "--entry", "nondegenerate_1d", "--lambda-min", "64", "--lambda-max", "1024", "--svg", "--out"])
            .arg(dir)
            .output()
            .unwrap();
        assert!(matches!(out.status.code(), Some(0 | 1 | 3)), "{}", String::from_utf8_lossy(&out.stderr));
    };
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    run(a.path());
    run(b.path());
    for f in ["results.csv", "summary.csv", "config.json", "nondegenerate_1d.svg"] {
        let x = std::fs::read(a.path().join(f)).unwrap();
        let y = std::fs::read(b.path().join(f)).unwrap();
        assert_eq!(x, y, "{f}");
    }
    let summary = std::fs::read_to_string(a.path().join("summary.csv")).unwrap();
    let header = summary.lines().next().unwrap();
    for key in ["lambda_min", "predicted", "tolerance", "seed", "tol"] {
        assert!(header.split(',').any(|h| h == key), "{key} missing from {header}");
    }
}
