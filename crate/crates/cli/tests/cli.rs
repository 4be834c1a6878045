use std::process::{Command, Output};

fn mgbar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mgbar")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_prints_fractions() {
    let o = mgbar(&["eval", "M(5,0): d_irr^12"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "-1766321028967/6048\n");
    let o = mgbar(&["eval", "M(3,0): la3 * la2 * d1", "M(0,3): 1"]);
    assert_eq!(stdout(&o), "0/1\n1/1\n");
}

#[test]
fn eval_warns_on_wrong_degree() {
    let o = mgbar(&["eval", "M(3,0): ka1^2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0/1\n");
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}

#[test]
fn parse_errors_fail_with_offset() {
    let o = mgbar(&["eval", "M(2,0): psi1"]);
    assert!(!o.status.success());
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("byte 8"), "{err}");
}

#[test]
fn jacobian_output() {
    let o = mgbar(&["jacobian", "--genus", "5"]);
    assert_eq!(stdout(&o), "72 * la1la2 + -48 * la3\n");
    assert!(!mgbar(&["jacobian", "--genus", "2"]).status.success());
}

#[test]
fn genus_three_table_has_28_lines() {
    let o = mgbar(&["table", "--space", "3,0"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 28);
    assert!(text.starts_with("ka1^6\t"));
    assert!(text.ends_with("d1^6\t5/1024\n"));
}

#[test]
fn tau_table() {
    let o = mgbar(&["tau", "--gmax", "2"]);
    assert_eq!(stdout(&o), "2\t1\t4\t1/1152\n2\t2\t3,2\t29/5760\n2\t3\t2,2,2\t7/240\n");
}

#[test]
fn output_independent_of_jobs_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.txt");
    let c = cache.to_str().unwrap();
    let one = mgbar(&["table", "--space", "1,3"]);
    let four = mgbar(&["--jobs", "4", "table", "--space", "1,3"]);
    assert_eq!(one.stdout, four.stdout);
    let cold = mgbar(&["--cache", c, "table", "--space", "1,3"]);
    let first_cache = std::fs::read(&cache).unwrap();
    let warm = mgbar(&["--cache", c, "--jobs", "3", "table", "--space", "1,3"]);
    assert_eq!(cold.stdout, one.stdout);
    assert_eq!(warm.stdout, one.stdout);
    assert_eq!(std::fs::read(&cache).unwrap(), first_cache);
}

#[test]
fn cache_written_even_when_a_query_fails() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.txt");
    let c = cache.to_str().unwrap();
    assert!(mgbar(&["--cache", c, "eval", "M(3,0): d_irr^6"]).status.success());
    let o = mgbar(&["--cache", c, "eval", "M(3,0): nonsense"]);
    assert!(!o.status.success());
    let text = std::fs::read_to_string(&cache).unwrap();
    assert!(text.lines().count() > 1);
}
