use std::process::{Command, Output};

use gpcops::strategies::{GameTrace, Outcome};

fn gpcops(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpcops"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn copnumber_examples() {
    let o = gpcops(&["copnumber", "gp", "6", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["cop_number"], 2);

    let o = gpcops(&["copnumber", "gp", "16", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["cop_number"], 3);
    assert!(v["lower_bound"].as_u64().unwrap() <= 3);
}

#[test]
fn exit_codes() {
    assert_eq!(
        gpcops(&["copnumber", "igraph", "6", "2", "2"])
            .status
            .code(),
        Some(3)
    );
    let o = gpcops(&["copnumber", "gp", "6", "x"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("token 3"));
    assert_eq!(
        gpcops(&["copnumber", "gp", "12", "5", "--budget-states", "10"])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(
        gpcops(&["copnumber", "gp", "5", "2", "--cmax", "2"])
            .status
            .code(),
        Some(6)
    );
    assert_eq!(
        gpcops(&["simulate", "four", "gp", "8", "3", "--robber", "dance"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        gpcops(&["simulate", "gpn3", "gp", "8", "2"]).status.code(),
        Some(3)
    );
    let o = gpcops(&[
        "simulate",
        "four",
        "gp",
        "12",
        "5",
        "--robber",
        "optimal",
        "--max-turns",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn table_rows_and_filter() {
    let o = gpcops(&["table", "26", "26", "--copnum", "4", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines[0], "n,k,copnumber,girth,lowerbound,states,millis");
    let keys: Vec<(String, String)> = lines[1..]
        .iter()
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].into(), f[1].into())
        })
        .collect();
    assert_eq!(keys, vec![("26".to_string(), "10".to_string())]);

    let o = gpcops(&["table", "5", "8", "--copnum", "4"]);
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn table_is_ordered_and_deterministic_across_jobs() {
    let strip = |o: &Output| -> Vec<String> {
        stdout(o)
            .lines()
            .map(|l| l.rsplit_once(',').unwrap().0.to_string())
            .collect()
    };
    let one = gpcops(&["table", "5", "12", "--jobs", "1"]);
    let three = gpcops(&["table", "5", "12", "--jobs", "3"]);
    assert_eq!(strip(&one), strip(&three));
    let rows = strip(&one);
    for r in &rows[1..] {
        let f: Vec<usize> = r.split(',').take(5).map(|x| x.parse().unwrap()).collect();
        assert!(f[4] <= f[2], "lower bound above cop number: {r}");
    }
}

#[test]
fn table_sidecar_stats() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.csv");
    let o = gpcops(&["table", "5", "6", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&out).unwrap().starts_with("n,k,"));
    let stats: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("t.csv.stats.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(stats.as_array().unwrap().len(), 4);
}

#[test]
fn simulate_writes_a_verifiable_trace() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trace.json");
    let p = path.to_str().unwrap();
    let o = gpcops(&[
        "simulate",
        "four",
        "gp",
        "8",
        "3",
        "--robber",
        "optimal",
        "--trace-out",
        p,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let trace = GameTrace::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(trace.outcome, Outcome::Capture);
    assert_eq!(gpcops(&["verify", p]).status.code(), Some(0));

    let o = gpcops(&[
        "simulate",
        "forceright",
        "gp",
        "7",
        "2",
        "--robber",
        "random",
        "--seed",
        "7",
        "--trace-out",
        p,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let trace = GameTrace::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(matches!(
        trace.outcome,
        Outcome::Capture | Outcome::PushedOut
    ));
}

#[test]
fn tampered_trace_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trace.json");
    let p = path.to_str().unwrap();
    gpcops(&[
        "simulate",
        "igraph5",
        "igraph",
        "7",
        "3",
        "2",
        "--trace-out",
        p,
    ]);
    let mut trace = GameTrace::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    trace.outcome = Outcome::TurnLimit;
    std::fs::write(&path, trace.to_json()).unwrap();
    assert_eq!(gpcops(&["verify", p]).status.code(), Some(5));
}

#[test]
fn guard_strategy() {
    let o = gpcops(&["simulate", "guard", "gp", "5", "2", "--tree", "0,1,2,3,4"]);
    assert_eq!(o.status.code(), Some(3));
    let o = gpcops(&[
        "simulate",
        "guard",
        "gp",
        "5",
        "2",
        "--tree",
        "0,1,5",
        "--robber",
        "scripted:1",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
}

#[test]
fn generic_graph_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c5.txt");
    std::fs::write(&path, "# five-cycle\np 5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n").unwrap();
    let o = gpcops(&["copnumber", path.to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["cop_number"], 2);
    std::fs::write(&path, "p 5 1\n0 9\n").unwrap();
    let o = gpcops(&["copnumber", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bounds_examples() {
    let json = |args: &[&str]| -> serde_json::Value {
        serde_json::from_slice(&gpcops(args).stdout).unwrap()
    };
    let b = json(&["bounds", "gp", "5", "2", "--format", "json"]);
    assert_eq!(
        (b["aigner_fromme_lb"].as_u64(), b["upper_bound"].as_u64()),
        (Some(3), Some(4))
    );
    let b = json(&["bounds", "gp", "9", "1", "--format", "json"]);
    assert_eq!(
        (b["aigner_fromme_lb"].as_u64(), b["upper_bound"].as_u64()),
        (Some(1), Some(4))
    );
    let b = json(&["bounds", "igraph", "7", "3", "2", "--format", "json"]);
    assert_eq!(b["upper_bound"], 5);
}
