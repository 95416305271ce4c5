use std::process::{Command, Output};

fn squarefull(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_squarefull"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn count_emits_one_csv_row() {
    let o = squarefull(&["count", "--x", "1000000", "--bg"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,q,bg2,err"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[..2], ["1000000", "2027"]);
}

#[test]
fn enumerate_lists_triples() {
    let o = squarefull(&["enumerate", "--lo", "100", "--hi", "130"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "a,b,n\n10,1,100\n2,3,108\n11,1,121\n1,5,125\n4,2,128\n");
}

#[test]
fn json_format_round_trips() {
    let o = squarefull(&["--format", "json", "variance", "--X", "1000000", "--H", "8.5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for key in ["X", "H", "total", "J1", "J2", "I2", "predicted", "ratio", "event_count"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["X"], 1000000);
}

#[test]
fn variance_columns() {
    let o = squarefull(&["variance", "--X", "1000000", "--H", "17/2", "--splits"]);
    assert_eq!(o.status.code(), Some(0));
    let header = stdout(&o).lines().next().unwrap().to_string();
    assert_eq!(header, "X,H,total,J1,J2,I2,predicted,ratio,events,I1,cross_bound,total_theta1_mean");
}

#[test]
fn bad_configuration_exits_with_two() {
    for args in [
        &["variance", "--X", "1000000", "--H", "8.5", "--eps", "0.5"][..],
        &["variance", "--X", "1000000", "--H", "0"][..],
        &["count", "--x", "-3"][..],
        &["verify", "--suite", "nope"][..],
        &["--threads", "0", "constants"][..],
    ] {
        assert_eq!(squarefull(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn constants_are_twelve_digit_json() {
    let o = squarefull(&["constants"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["z2"].as_f64().unwrap(), 1.64493406685);
    assert!(v["z23"].as_f64().unwrap() < 0.0);
}

#[test]
fn verify_psi_passes_with_json_lines() {
    let o = squarefull(&["verify", "--suite", "psi"]);
    assert_eq!(o.status.code(), Some(0));
    for line in stdout(&o).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["pass"], true, "{line}");
    }
}

#[test]
fn grid_writes_manifest_and_skips_inadmissible_h() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("grid.csv");
    let plot = dir.path().join("plot.dat");
    let o = squarefull(&[
        "--out",
        out.to_str().unwrap(),
        "grid",
        "--X",
        "100000000",
        "--H",
        "8.5",
        "16.5",
        "500.5",
        "--plot",
        plot.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().count(), 4);
    assert!(csv.lines().last().unwrap().starts_with("#slope,"));
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("grid.csv.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["config"]["X"], 100000000);
    assert!(plot.exists());
}
