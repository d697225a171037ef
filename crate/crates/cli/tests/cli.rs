use std::process::{Command, Output};

fn spg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spg"))
        .args(args)
        .env_remove("SPG_RANK4_CATALOG_DIR")
        .env_remove("SPG_BUDGET_SECONDS")
        .output()
        .expect("spawn spg")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn check_accepts_a_self_projecting_matroid() {
    let o = spg(&["check", "n=6 k=3 nonbases=123,456"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("self-projecting: yes"));
    assert!(out.contains("half-coloop: none"));
}

#[test]
fn check_reports_a_half_coloop() {
    let o = spg(&["check", "n=6 k=3 nonbases=123,145"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("self-projecting: no"));
    assert!(out.contains("half-coloop: 6 with flats {1,2,3} and {1,4,5}"));
}

#[test]
fn check_reads_revlex_from_a_file() {
    let dir = std::env::temp_dir().join(format!("spg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("u24.txt");
    std::fs::write(&path, "2 4 ******\n").unwrap();
    let arg = format!("@{}", path.display());
    let o = spg(&["check", &arg]);
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("identically self-dual: yes"));
}

#[test]
fn malformed_input_exits_with_two() {
    let o = spg(&["check", "n=6 k=3 nonbases=1x"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("invalid matroid"));
    let o = spg(&["check", "n=6 k=3 nonbases=123,124"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn rank_four_survey_needs_a_source() {
    let o = spg(&["survey", "--rank", "4", "--n", "8"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--source"));
}

#[test]
fn survey_expectations_set_the_exit_code() {
    let o = spg(&["survey", "--rank", "3", "--n", "6", "--expect", "9,2"]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    let o = spg(&["survey", "--rank", "3", "--n", "6", "--expect", "9,3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn positroid_expectations_set_the_exit_code() {
    let o = spg(&["positroids", "--rank", "3", "--n", "6", "--expect", "8,2,2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = spg(&["positroids", "--rank", "3", "--n", "6", "--expect", "8,2,3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("mismatch for (3,6)"));
}

#[test]
fn records_are_json_lines() {
    let o = spg(&["--format", "records", "survey", "--rank", "2", "--n", "4..5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let lines: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    assert!(!lines.is_empty());
    for line in &lines {
        let v: serde_json::Value = serde_json::from_str(line).expect("json record");
        assert_eq!(v["rank"], 2);
        assert!(v["self_projecting"].is_boolean());
    }
}

#[test]
fn certify_finds_a_witness_for_a_cayley_point() {
    let o = spg(&["--seed", "5", "certify", "--cayley", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
}

#[test]
fn certify_reads_a_matrix_file() {
    let dir = std::env::temp_dir().join(format!("spg-cli-m-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("x.txt");
    std::fs::write(&path, "1 0 1 1\n0 1 1 -1\n").unwrap();
    let o = spg(&["certify", path.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
}

#[test]
fn sprspace_of_two_disjoint_lines_is_equal() {
    let o = spg(&["sprspace", "n=6 k=3 nonbases=123,456"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("equal"), "{}", stdout(&o));
}
