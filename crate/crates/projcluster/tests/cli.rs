use serde_json::Value;
use std::path::PathBuf;
use std::process::Command;

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_projcluster")).args(args).output().unwrap();
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), json)
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("projcluster-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn success_exits_zero() {
    for args in [
        &["triangulate", "--polygon", "5"][..],
        &["flip", "--polygon", "4", "--edge", "0.2"],
        &["mutate", "--polygon", "4", "--no-boundary", "--at", "0,1"],
        &["trace", "--surface", "g1s1", "--loop", "ab", "--power", "2"],
        &["monodromy", "--surface", "g1s1", "--loop", "a", "--samples", "3"],
        &["classify", "--polygon", "4"],
        &["reconstruct", "--polygon", "5", "--random"],
        &["render", "--polygon", "4", "--random"],
        &["quantum-flip", "--polygon", "4", "--q-symbolic"],
        &["verify", "counts", "sigma"],
    ] {
        let (code, v) = run(args);
        assert_eq!(code, 0, "{args:?}: {v}");
        assert_eq!(v["passed"], Value::Bool(true), "{args:?}");
        assert_eq!(v["command"], Value::String(args[0].into()));
    }
}

#[test]
fn output_echoes_config_and_seed() {
    let (_, v) = run(&["reconstruct", "--polygon", "4", "--random", "--seed", "7", "--poisson-constant", "1"]);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["config"]["seed"], 7);
    assert_eq!(v["config"]["poisson_constant"], 1);
    assert_eq!(v["config"]["tolerance"], 1e-9);
}

#[test]
fn byte_identical_reruns() {
    let args = ["reconstruct", "--polygon", "6", "--random", "--seed", "11"];
    let a = Command::new(env!("CARGO_BIN_EXE_projcluster")).args(args).output().unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_projcluster")).args(args).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    let (_, one) = run(&["verify", "counts", "classes", "--jobs", "1"]);
    let (_, four) = run(&["verify", "counts", "classes", "--jobs", "4"]);
    assert_eq!(one["result"], four["result"]);
}

#[test]
fn output_flag_writes_file() {
    let p = std::env::temp_dir().join(format!("projcluster-cli-{}-out.json", std::process::id()));
    let (code, _) = run(&["triangulate", "--polygon", "3", "--output", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(v["command"], "triangulate");
    std::fs::remove_file(p).ok();
}

#[test]
fn failed_check_exits_one() {
    let body = r#"{"coordinates": {"edge:0.2:near:0": "7", "edge:0.2:near:2": "3/10",
        "tri:0.1.2:center": "-1/4", "tri:0.2.3:center": "8/9"}}"#;
    let p = scratch("neg.json", body);
    let (code, v) = run(&["reconstruct", "--polygon", "4", "--input", p.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "check-failure");
    std::fs::remove_file(p).ok();
}

#[test]
fn malformed_input_exits_two() {
    let p = scratch("bad.json", "{not json");
    let (code, v) = run(&["triangulate", "--input", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "malformed-input");
    std::fs::remove_file(p).ok();
    let (code, _) = run(&["flip", "--polygon", "4", "--edge", "9.9"]);
    assert_eq!(code, 2);
    let (code, _) = run(&["trace", "--poisson-constant", "3"]);
    assert_eq!(code, 2);
}
