use rsclass_cli::run_with;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("rsclass").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn ske_count_golden() {
    let (code, out, _) =
        run(&["skes", "--prime", "5", "--group", "Zp*Z2^2", "--signature", "0;2p,2p,2p", "--count"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "72");
}

#[test]
fn prime_from_descriptor_suffix() {
    let (code, out, _) = run(&["skes", "--group", "Zp*Z2^2@p=5", "--signature", "0;2p,2p,2p", "--count"]);
    assert_eq!((code, out.trim()), (0, "72"));
    let (code, _, err) = run(&["skes", "--prime", "7", "--group", "Zp*Z2^2@p=5", "--signature", "0;2p,2p,2p"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn classify_json_schema() {
    let (code, out, err) = run(&["classify", "--prime", "5", "--format", "json"]);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], "rsclass/1");
    assert_eq!(v["prime"], 5);
    assert_eq!(v["genus"], 8);
    for key in ["signatures", "families", "quasiplatonic", "special", "counts", "large_order", "checks"] {
        assert!(!v[key].is_null(), "missing {key}");
    }
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn verify_bounds_excludes_large_orders() {
    let (code, out, err) = run(&["verify-bounds", "--prime", "5", "--lambda", "4..21"]);
    assert_eq!(code, 0, "{err}");
    assert!(out.lines().last().unwrap().starts_with("PASS"));
    let (code, out, _) = run(&["verify-bounds", "--prime", "5", "--lambda", "4..21", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(!out.contains(",realized,") && !out.contains(",conditional,"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["skes", "--prime", "5", "--group", "Zq", "--signature", "0;2,2"],
        vec!["classify", "--prime", "9"],
        vec!["classify", "--prime", "3"],
        vec!["classify"],
        vec!["frobnicate"],
        vec!["verify-bounds", "--prime", "5", "--lambda", "1..40"],
        vec!["signatures", "--prime", "5", "--lambda", "x"],
        vec!["classify", "--prime", "5", "--format", "yaml"],
    ] {
        let (code, _, err) = run(&args);
        assert_eq!(code, 2, "{args:?}: {err}");
    }
}

#[test]
fn help_exits_0() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("group descriptors"));
}

#[test]
fn output_is_independent_of_thread_count() {
    for args in [
        vec!["classify", "--prime", "7", "--format", "json"],
        vec!["classes", "--prime", "7", "--group", "Zp*Z2^2", "--signature", "0;2p,2p,2p", "--format", "json"],
    ] {
        let mut one = args.clone();
        one.extend(["--jobs", "1"]);
        let mut eight = args.clone();
        eight.extend(["--jobs", "8"]);
        let a = run(&one);
        let b = run(&eight);
        assert_eq!(a.0, 0);
        assert_eq!(a, b);
    }
}

#[test]
fn out_file() {
    let path = std::env::temp_dir().join(format!("rsclass-cli-test-{}.csv", std::process::id()));
    let (code, out, _) = run(&["signatures", "--prime", "5", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(written.starts_with("lambda,order,signature"));
    assert!(written.contains("\"(0;10,10,10)\""));
}
