use std::process::{Command, Output};

fn klv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_klv"))
        .args(args)
        .output()
        .expect("klv runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn orbits_rows() {
    let o = klv(&["orbits", "--clans", "1,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 3);

    let o = klv(&["orbits", "--diagonal", "3", "--format", "csv"]);
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("payload,d"));
    assert_eq!(text.lines().count(), 1 + 6);

    assert_eq!(klv(&["orbits", "--clans", "9,9"]).status.code(), Some(2));
}

#[test]
fn orbits_json_schema() {
    let o = klv(&["orbits", "--clans", "2,1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 6);
    assert_eq!(arr[5], serde_json::json!({"backend": "clan", "payload": "1+1", "d": 2}));
}

#[test]
fn closure_exports() {
    let o = klv(&["closure", "--clans", "1,1", "--format", "dot"]);
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches(" -> ").count(), 2);

    let o = klv(&["closure", "--diagonal", "2"]);
    assert_eq!(stdout(&o), "12 < 21\n");

    let o = klv(&["closure", "--clans", "2,1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["ground"].as_array().unwrap().len(), 6);
    let covers = v["covers"].as_array().unwrap();
    assert_eq!(covers.len(), 6);
    assert!(covers.contains(&serde_json::json!(["+-+", "11+"])));
    assert!(covers.contains(&serde_json::json!(["11+", "1+1"])));
}

#[test]
fn table_rows() {
    let o = klv(&["table", "--clans", "1,1", "--format", "csv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("lower,upper,coeffs"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r.ends_with(",\"1\"")));

    let o = klv(&["table", "--clans", "2,1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let recs = v.as_array().unwrap();
    assert_eq!(recs.len(), 15);
    assert!(recs.iter().all(|r| r["coeffs"] == serde_json::json!([1])));
    // sorted by upper (d, payload) then lower (d, payload)
    assert_eq!(recs[0], serde_json::json!({"lower": "++-", "upper": "++-", "coeffs": [1]}));
    assert_eq!(recs[14]["lower"], "1+1");

    let o = klv(&["table", "--diagonal", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.as_array().unwrap().iter().all(|r| r["coeffs"] == serde_json::json!([1])));
}

#[test]
fn table_nonconstant_entries_and_mu() {
    let o = klv(&["table", "--diagonal", "4", "--format", "csv", "--mu"]);
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("lower,upper,coeffs,mu"));
    assert!(text.contains("1324,3412,\"1 1\",1\n"));
    assert!(text.contains("2143,4231,\"1 1\",1\n"));
    assert!(text.contains("1234,3412,\"1 1\",0\n"));
}

#[test]
fn verify_exit_codes() {
    for model in [["--clans", "2,2"], ["--diagonal", "4"], ["--clans", "3,2"]] {
        let o = klv(&["verify", model[0], model[1]]);
        assert_eq!(o.status.code(), Some(0), "{model:?}");
        assert!(stdout(&o).contains("result: PASS"));
    }
    let o = klv(&["verify", "--clans", "3,2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["counts"]["chains_checked"].as_u64().unwrap() > 0);
    assert_eq!(v["violations"], serde_json::json!([]));
    assert!(v.get("elapsed_ms").is_none());

    let o = klv(&["verify", "--clans", "2,1", "--format", "json", "--timing"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["elapsed_ms"].is_u64());

    assert_eq!(klv(&["verify", "--clans", "9,9"]).status.code(), Some(2));
    assert_eq!(klv(&["verify"]).status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("poset.dot");
    let o = klv(&[
        "closure",
        "--clans",
        "2,1",
        "--format",
        "dot",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written.matches(" -> ").count(), 6);
}
