use std::process::Command;

fn sn2s(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_sn2s")).args(args).output().expect("run sn2s");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn single_entry_sylow_passes() {
    let (code, out, _) = sn2s(&["verify", "--spec", "GL(2,3)", "--check", "sylow"]);
    assert_eq!(code, 0);
    assert!(out.contains("sylow      PASS"), "{out}");
    assert!(out.contains("1 passed, 0 failed, 0 skipped"));
}

#[test]
fn json_report_has_schema() {
    let (code, out, _) = sn2s(&["verify", "--spec", "PSL(2,7)", "--check", "navarro,galois", "--report", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], "sn2s-report v1");
    assert_eq!(v["entries"][0]["records"][0]["verdict"], "PASS");
    assert_eq!(v["entries"][0]["records"][0]["evidence"]["self_normalising"], "true");
    assert_eq!(v["entries"][0]["records"][0]["millis"], 0);
}

#[test]
fn failing_expectation_exits_nonzero_with_repro() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.cfg");
    std::fs::write(&cfg, "spec=PSL(2,5) checks=navarro expect=navarro:skip\n").unwrap();
    let (code, out, _) = sn2s(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("repro: sn2s verify --spec 'PSL(2,5,+1)' --check navarro"), "{out}");
}

#[test]
fn malformed_input_reports_position() {
    let (code, _, err) = sn2s(&["verify", "--spec", "SL(2,x)"]);
    assert_eq!(code, 2);
    assert!(err.contains("at position"), "{err}");
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "spec=SL(2,3) checks=table\nspec=SL(2,3) checks=tabel\n").unwrap();
    let (code, _, err) = sn2s(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn subcommands() {
    let (code, out, _) = sn2s(&["table", "--spec", "SL(2,3)"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("# sn2s-character-table v1"));
    let (code, out, _) = sn2s(&["galois", "--spec", "PSL(2,5)", "--report", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["odd_rows_moved"], serde_json::json!([1, 2]));
    let (code, out, _) = sn2s(&["sylow", "--spec", "GU(2,3,-1)", "--brute-check"]);
    assert_eq!(code, 0);
    assert!(out.contains(": PASS"), "{out}");
    let (code, out, _) = sn2s(&["witness", "--spec", "GL(3,121)", "--Q", "field:m=1"]);
    assert_eq!(code, 0);
    assert!(out.contains("s4 = true"), "{out}");
    let (code, out, _) = sn2s(&["witness", "--spec", "GL(5,7)", "--Q", "graph"]);
    assert_eq!(code, 0);
    assert!(out.contains("refused = condition (2)"), "{out}");
    let (code, out, _) = sn2s(&["gggr", "--spec", "SL(2,5)", "--partition", "2", "--check"]);
    assert_eq!(code, 0);
    assert!(out.contains("galois_action = true"), "{out}");
}

#[test]
fn cache_directory_is_used() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let first = sn2s(&["table", "--spec", "SL(2,5)", "--cache", d]);
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    let second = sn2s(&["table", "--spec", "SL(2,5)", "--cache", d]);
    assert_eq!(first, second);
}
