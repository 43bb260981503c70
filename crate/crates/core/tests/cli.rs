use std::process::{Command, Output};

fn govsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_govsym"))
        .args(args)
        .env_remove("GOVSYM_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn symbol_prints_representation() {
    let o = govsym(&["symbol", "127"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), r#"{"p":127,"u":2465,"v":1743,"symbol":1}"#);
    let o = govsym(&["symbol", "31"]);
    assert_eq!(stdout(&o).trim(), r#"{"p":31,"u":33,"v":23,"symbol":-1}"#);
}

#[test]
fn bad_input_exits_with_two() {
    for args in [
        &["symbol", "17"][..],
        &["symbol", "255"],
        &["density", "--x", "50"],
        &["density", "--x", "1000", "--kmax", "5"],
        &["cancel", "--w1", "2,1", "--w2", "3,1"],
        &["verify", "--suite", "nonsense"],
    ] {
        let o = govsym(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn passing_suite_exits_with_zero() {
    let o = govsym(&["verify", "--suite", "eps8", "--samples", "100"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn classnum_accepts_negative_discriminants() {
    let o = govsym(&["classnum", "-1016"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["h"], 16);
}

#[test]
fn tables_default_to_csv_and_switch_to_json() {
    let o = govsym(&["density", "--x", "10000"]);
    let text = stdout(&o);
    assert!(text.starts_with("checkpoint,label,count,value_re,value_im,bound,ratio\n"));
    assert_eq!(text.lines().count(), 5);

    let o = govsym(&["--format", "json", "davenport", "--x", "10000"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["count"], 6232);
    assert_eq!(v["within_bound"], true);

    let o = govsym(&["--format", "json", "oscillate", "--x", "1000"]);
    let rows: Vec<govsym::experiments::RecordRow> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rows.len(), 4);
}

#[test]
fn output_does_not_depend_on_thread_count() {
    for args in [
        &["density", "--x", "300000", "--kmax", "6", "--oracle"][..],
        &["prime-sum", "--x", "200000", "--all"],
        &["oscillate", "--x", "300000"],
        &["davenport", "--k", "2", "--x", "200000"],
    ] {
        let one: Vec<&str> = ["--threads", "1"].iter().chain(args).copied().collect();
        let four: Vec<&str> = ["--threads", "4"].iter().chain(args).copied().collect();
        let a = govsym(&one);
        let b = govsym(&four);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let env = Command::new(env!("CARGO_BIN_EXE_govsym"))
        .args(["prime-sum", "--x", "200000", "--all"])
        .env("GOVSYM_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(env.stdout, govsym(&["prime-sum", "--x", "200000", "--all"]).stdout);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("govsym-cli-{}.csv", std::process::id()));
    let o = govsym(&["--out", path.to_str().unwrap(), "oscillate", "--x", "10000"]);
    assert!(o.status.success() && o.stdout.is_empty());
    let rows = govsym::experiments::read_csv(std::fs::File::open(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    let s = rows.iter().find(|r| r.checkpoint == 10_000 && r.label == "S(X)").unwrap();
    assert_eq!(s.value_re, 3.0);
}
