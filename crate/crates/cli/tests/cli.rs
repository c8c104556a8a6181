use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_openbook-hfk"));
    c.env_remove("OPENBOOK_HFK_CAP");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn tmp(name: &str) -> std::path::PathBuf {
    let d = std::env::temp_dir().join(format!("openbook-hfk-test-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d.join(name)
}

#[test]
fn compute_report_has_the_documented_fields() {
    let o = run(&["compute", "--preset", "right-trefoil", "--seed", "9"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    for k in ["schema", "genus", "word", "ranks", "total_rank", "contact_nonzero", "b", "rv_witness", "timings", "config", "seed", "version"] {
        assert!(v.get(k).is_some(), "missing {k}");
    }
    assert_eq!(v["schema"], 1);
    assert_eq!(v["word"], "xy");
    assert_eq!(v["total_rank"], 3);
    assert_eq!(v["b"], "infinity");
    assert_eq!(v["contact_nonzero"], true);
    assert_eq!(v["seed"], 9);
    assert_eq!(v["ranks"]["-1"], 1);
    assert!(v["version"]["hash"].as_str().unwrap().len() == 16);
}

#[test]
fn left_veering_witness_is_reported() {
    let v = json(&run(&["compute", "--preset", "left-trefoil"]));
    assert_eq!(v["b"], 1);
    assert!(v["rv_witness"]["arc"].is_array());
    let feet = v["rv_witness"]["feet"].as_array().unwrap();
    assert_eq!(feet.len(), 2);
    assert!(feet.iter().all(|f| f.as_u64().unwrap() < 4));
}

#[test]
fn input_file_with_custom_alphabet() {
    let p = tmp("fig8.json");
    std::fs::write(&p, r#"{"genus":1,"word":"aB","alphabet":[{"name":"a","curve":[1]},{"name":"b","curve":[2]}]}"#).unwrap();
    let out = tmp("fig8-report.json");
    let o = run(&["compute", "--input", p.to_str().unwrap(), "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["total_rank"], 5);
}

#[test]
fn parse_errors_exit_2() {
    let p = tmp("bad.json");
    for text in ["{", r#"{"genus":1,"word":"xq"}"#, r#"{"genus":1,"word":"x","extra":1}"#] {
        std::fs::write(&p, text).unwrap();
        assert_eq!(run(&["compute", "--input", p.to_str().unwrap()]).status.code(), Some(2), "{text}");
    }
    assert_eq!(run(&["compute", "--preset", "no-such-knot"]).status.code(), Some(2));
    assert_eq!(run(&["compute"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn missing_input_is_an_io_error() {
    assert_eq!(run(&["compute", "--input", "/nonexistent/x.json"]).status.code(), Some(6));
}

#[test]
fn cap_from_environment_and_flag() {
    let o = bin().env("OPENBOOK_HFK_CAP", "10").args(["compute", "--preset", "figure-eight"]).output().unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = bin()
        .env("OPENBOOK_HFK_CAP", "10")
        .args(["compute", "--preset", "figure-eight", "--cap", "1000"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["config"]["cap"], 1000);
    assert_eq!(json(&run(&["compute", "--preset", "right-trefoil"]))["config"]["cap"], 5_000_000);
}

#[test]
fn corpus_is_deterministic_and_has_frozen_columns() {
    let a = run(&["corpus", "--genus", "1", "--max-word-len", "2", "--jobs", "1"]);
    let b = run(&["corpus", "--genus", "1", "--max-word-len", "2", "--jobs", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# {"));
    assert_eq!(lines.next().unwrap(), openbook_hfk::corpus::COLUMNS.join(","));
    assert_eq!(lines.count(), 21);
    let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = r.records().map(|x| x.unwrap()).collect();
    let xy = rows.iter().find(|r| &r[1] == "xy").unwrap();
    assert_eq!(&xy[4], "-1:1;0:1;1:1");
    assert_eq!(&xy[10], "infinity");
}

#[test]
fn corpus_writes_to_a_file() {
    let p = tmp("c.csv");
    let o = run(&["corpus", "--genus", "1", "--max-word-len", "1", "--output", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8(o.stderr).unwrap().contains("5 words"));
    assert_eq!(std::fs::read_to_string(p).unwrap().lines().count(), 7);
}

#[test]
fn verify_corollaries_passes() {
    let o = run(&["verify", "--suite", "corollaries"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.lines().all(|l| l.starts_with("PASS ")));
}
