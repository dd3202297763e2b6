use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use defdyn::group::GroupContext;
use defdyn::json::{parse_group, parse_set, parse_type};
use defdyn_cli::{catalog, run_scenario, Options};
use serde_json::Value;

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name)
}

fn defdyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_defdyn")).args(args).output().expect("binary runs")
}

fn run_file(path: &Path, extra: &[&str]) -> (i32, Value) {
    let mut args = vec!["--scenario", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = defdyn(&args);
    let code = out.status.code().expect("exit code");
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, v)
}

fn write_temp(dir: &tempfile::TempDir, body: &str) -> PathBuf {
    let p = dir.path().join("s.json");
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn quickstart_scenario() {
    let (code, report) = run_file(&scenario("quickstart.json"), &[]);
    assert_eq!(code, 0);
    assert_eq!(report["results"][0]["result"]["count"], 2);
    let cert = &report["results"][1]["result"];
    assert_eq!(cert["verdict"], "certificate");
    let set = parse_set(&GroupContext::Integers, &cert["set"]).unwrap();
    assert_eq!(set, defdyn::defsets::PresburgerSet::evens().into());
    assert_eq!(cert["translates"], serde_json::json!([0, 1]));
    assert_eq!(report["partial"], false);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let malformed = write_temp(&dir, "{\"group\": \"integers\", \"tasks\": [");
    let out = defdyn(&["--scenario", malformed.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());

    let unknown = write_temp(&dir, r#"{"group": "integers", "level": 4, "tasks": ["frobnicate"]}"#);
    assert_eq!(run_file(&unknown, &[]).0, 2);

    let missing = dir.path().join("nope.json");
    assert_eq!(run_file(&missing, &[]).0, 2);

    let (code, report) = run_file(&scenario("coarse.json"), &[]);
    assert_eq!(code, 3);
    assert_eq!(report["partial"], true);
    assert_eq!(report["results"][0]["status"], "error");

    let big = write_temp(&dir, r#"{"group": "integers", "level": 64, "tasks": ["minimal-subflows"]}"#);
    assert_eq!(run_file(&big, &["--level-guard", "32"]).0, 2);
    assert_eq!(run_file(&big, &[]).0, 0);

    // a set whose modulus passes parsing but whose combinations exceed the guard
    let lcm = write_temp(
        &dir,
        r#"{"group": "integers", "tasks": [{"op": "boolean-op", "kind": "union",
            "a": {"mod": 7, "residues": [0]}, "b": {"mod": 9, "residues": [0]}}]}"#,
    );
    assert_eq!(run_file(&lcm, &["--level-guard", "10"]).0, 3);
    assert_eq!(run_file(&lcm, &["--level-guard", "100"]).0, 0);
}

fn strip_timings(mut v: Value) -> String {
    v.as_object_mut().unwrap().remove("timings");
    serde_json::to_string(&v).unwrap()
}

#[test]
fn reports_are_deterministic() {
    for name in ["integers.json", "finite.json"] {
        let (c1, a) = run_file(&scenario(name), &["--with-oracle"]);
        let (c2, b) = run_file(&scenario(name), &["--with-oracle"]);
        assert_eq!(c1, 0, "{name}");
        assert_eq!(c1, c2);
        assert_eq!(strip_timings(a), strip_timings(b), "{name}");
    }
    let lib = run_scenario(&scenario("integers.json"), &Options::default()).unwrap();
    let (_, bin) = run_file(&scenario("integers.json"), &[]);
    assert_eq!(serde_json::to_string(&lib.stable_json()).unwrap(), strip_timings(bin));
}

/// Re-parses every set and type appearing in a result.
fn check_round_trip(ctx: &GroupContext, v: &Value, seen: &mut usize) {
    match v {
        Value::Object(o) => {
            if o.contains_key("kind") {
                let p = parse_type(ctx, v).unwrap();
                assert_eq!(&defdyn::json::type_to_json(&p), v);
                *seen += 1;
                return;
            }
            if o.contains_key("window") || o.contains_key("elements") {
                let s = parse_set(ctx, v).unwrap();
                assert_eq!(&defdyn::json::set_to_json(&s), v);
                *seen += 1;
                return;
            }
            for val in o.values() {
                check_round_trip(ctx, val, seen);
            }
        }
        Value::Array(items) => items.iter().for_each(|x| check_round_trip(ctx, x, seen)),
        _ => {}
    }
}

#[test]
fn every_operation_runs_and_round_trips() {
    let (code, report) = run_file(&scenario("integers.json"), &["--with-oracle"]);
    assert_eq!(code, 0);
    let ops: std::collections::BTreeSet<&str> =
        report["results"].as_array().unwrap().iter().map(|r| r["op"].as_str().unwrap()).collect();
    for op in catalog::OPS {
        assert!(ops.contains(op.name), "{} missing from the integer scenario", op.name);
    }
    let ctx = parse_group(&report["group"]).unwrap();
    let mut seen = 0;
    for r in report["results"].as_array().unwrap() {
        assert_eq!(r["status"], "ok", "{}", r["op"]);
        if let Some(o) = r.get("oracle") {
            assert_eq!(o["agrees"], true, "{}", r["op"]);
        }
        check_round_trip(&ctx, &r["result"], &mut seen);
    }
    assert!(seen > 50);

    let (code, report) = run_file(&scenario("finite.json"), &["--with-oracle"]);
    assert_eq!(code, 0);
    let s3 = parse_group(&report["group"]).unwrap();
    for r in report["results"].as_array().unwrap() {
        check_round_trip(&s3, &r["result"], &mut seen);
    }
}

#[test]
fn catalog_is_stable_json() {
    let a = defdyn(&["--catalog"]);
    let b = defdyn(&["--catalog"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    let names: Vec<&str> = v["operations"].as_array().unwrap().iter().map(|o| o["name"].as_str().unwrap()).collect();
    for needed in ["star", "universal-minimal-flow", "pestov-check"] {
        assert!(names.contains(&needed));
    }
    assert!(names.len() >= 30);
}

#[test]
fn text_mode_renders_the_same_tasks() {
    let out = defdyn(&["--scenario", scenario("quickstart.json").to_str().unwrap(), "--text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[0] minimal-subflows: ok"));
    assert!(text.contains("count: 2"));
    assert!(text.contains("[1] pestov-check: ok"));
    assert!(text.contains("verdict: certificate"));
}
