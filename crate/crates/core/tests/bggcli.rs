use std::process::Command;

fn bggcli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_bggcli")).args(args).output().unwrap()
}

#[test]
fn diagram_to_stdout() {
    let out = bggcli(&["--algebra", "A3", "--cross", "1,3", "--weight", "0,0,0", "--emit", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["arrows"].as_array().unwrap().len(), 19);
    assert_eq!(v["sigma"], serde_json::json!([1, 3]));
}

#[test]
fn parse_and_validation_errors_exit_with_two() {
    for args in [
        &["--algebra", "A3", "--cross", "1", "--weight", "0,y,0"][..],
        &["--algebra", "A3", "--cross", "0", "--weight", "0,0,0"],
        &["--algebra", "A3", "--cross", "1", "--weight", "0,-1,0"],
        &["--algebra", "A3", "--cross", "1", "--weight", "0,0"],
    ] {
        let out = bggcli(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn several_formats_go_to_separate_files() {
    let dir = std::env::temp_dir().join(format!("bggcli-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let base = dir.join("b2");
    let out = bggcli(&[
        "--algebra", "B2", "--cross", "1", "--weight", "0,1", "verify", "--emit", "dot,json", "--out",
        base.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let dot = std::fs::read_to_string(base.with_extension("dot")).unwrap();
    let json = std::fs::read_to_string(base.with_extension("json")).unwrap();
    assert!(dot.starts_with("digraph"));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!(v["verify"].as_object().unwrap().values().all(|s| s == "pass"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["--algebra", "A2", "--cross", "1,2", "--weight", "1,0", "--emit", "dot,json,text"];
    assert_eq!(bggcli(&args).stdout, bggcli(&args).stdout);
}
