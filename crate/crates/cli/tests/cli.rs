use std::process::{Command, Output};

use logclass_cli::record::ResultRecord;

fn logclass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logclass")).args(args).env_remove("LOGCLASS_CACHE").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn compute_reports_the_group() {
    let o = logclass(&["compute", "--poly", "x^2+521951", "--ell", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let s = stdout(&o);
    assert!(s.contains("log class group  [2,4]"), "{s}");
    assert!(s.contains("bound            8"), "{s}");
}

#[test]
fn trivial_group_renders_as_one() {
    let o = logclass(&["compute", "--poly", "x^2+1", "--ell", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let rec = ResultRecord::from_json(stdout(&o).trim()).unwrap();
    assert_eq!(rec.group, "[1]");
    assert!(rec.cyclic.is_empty());
}

#[test]
fn json_round_trips() {
    let o = logclass(&["compute", "--poly", "x^4 + 13x^2 - 12x + 52", "--ell", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let line = stdout(&o);
    let rec = ResultRecord::from_json(line.trim()).unwrap();
    assert_eq!(rec.group, "[3]");
    assert_eq!(rec.spec.poly, vec!["1", "0", "13", "-12", "52"]);
    assert_eq!(rec.to_json(), line.trim());
}

#[test]
fn malformed_polynomial_is_a_usage_error() {
    let o = logclass(&["compute", "--poly", "x^2 + y", "--ell", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("column 7"), "{}", stderr(&o));
    let o = logclass(&["compute", "--poly", "x^2+1", "--ell", "4"]);
    assert_eq!(o.status.code(), Some(2));
    let o = logclass(&["compute", "--poly", "x^2+1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = logclass(&["compute", "--poly", "2x^2+1", "--ell", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reducible_polynomial_exit_code() {
    let o = logclass(&["compute", "--poly", "(x^2+1)(x^2-2)", "--ell", "2"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn cache_hit_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.jsonl");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_logclass"))
            .args(["compute", "--poly", "x^2+521951", "--ell", "2", "--json"])
            .env("LOGCLASS_CACHE", &path)
            .output()
            .unwrap()
    };
    let first = run();
    assert_eq!(first.status.code(), Some(0));
    let lines = std::fs::read_to_string(&path).unwrap();
    assert_eq!(lines.lines().count(), 1);
    let second = run();
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), lines);
}

#[test]
fn corpus_filter_and_mismatch_exit() {
    let o = logclass(&["corpus", "--rows", "field~alpha"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("3/3 rows pass"), "{}", stdout(&o));
    // the quadratic row carries a table value that disagrees with the class group
    let o = logclass(&["corpus", "--rows", "degree<=2"]);
    assert_eq!(o.status.code(), Some(6));
    assert!(stdout(&o).contains("0/1 rows pass"), "{}", stdout(&o));
    let o = logclass(&["corpus", "--rows", "degree<=x"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn decompose_places_and_local_factor() {
    let o = logclass(&["decompose", "--poly", "x^2+1", "--p", "5", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Vec<serde_json::Value> = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v.len(), 2, "{}", stdout(&o));
    assert!(v.iter().all(|p| p["e"] == 1 && p["f"] == 1));

    let o = logclass(&["local-factor", "--poly", "x^2+1", "--p", "2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"e\":2"), "{}", stdout(&o));

    let o = logclass(&["places", "--poly", "x^2+1", "--ell", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).is_empty());

    let o = logclass(&["classgroup", "--poly", "x^2+521951"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1024"), "{}", stdout(&o));
}
