use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use polyak::invariant::build_table;
use polyak::GaussWord;

fn polyak(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyak")).args(args).env("RUST_LOG", "warn").output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn make_table(dir: &Path, degree: usize) -> String {
    let path = dir.join(format!("t{degree}"));
    let path = path.to_str().unwrap().to_string();
    let out = polyak(&["table", "--degree", &degree.to_string(), "--out", &path]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn enumerate_prints_one_word_per_line() {
    let out = polyak(&["enumerate", "--rank", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "AABB\nABAB\nABBA\n");
    assert_eq!(stdout(&polyak(&["enumerate", "--rank", "0"])), "-\n");
    assert_eq!(stdout(&polyak(&["enumerate", "--rank", "6"])).lines().count(), 10395);
}

#[test]
fn enumerate_to_file_prints_the_count() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("words");
    let out = polyak(&["enumerate", "--rank", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(stdout(&out), "15\n");
    assert_eq!(fs::read_to_string(path).unwrap().lines().count(), 15);
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(polyak(&["enumerate", "--rank", "13"]).status.code(), Some(1));
    assert_eq!(polyak(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(polyak(&["eval", "--table", "/nonexistent/table", "--word", "AA"]).status.code(), Some(1));
    assert_eq!(polyak(&["--help"]).status.code(), Some(0));
}

#[test]
fn eval_reports_value_and_order() {
    let dir = tempfile::tempdir().unwrap();
    let t4 = make_table(dir.path(), 4);
    assert_eq!(stdout(&polyak(&["eval", "--table", &t4, "--word", "ABACDCBD"])), "1 (order 2)\n");
    assert_eq!(stdout(&polyak(&["eval", "--table", &t4, "--word", "-"])), "0\n");

    let bad = polyak(&["eval", "--table", &t4, "--word", "ABCAB"]);
    assert_eq!(bad.status.code(), Some(1));
    let message = String::from_utf8_lossy(&bad.stderr);
    assert!(message.contains("position 2"), "{message}");
}

#[test]
fn corrupt_table_is_a_computation_fault() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken");
    fs::write(&path, "# ftiv-table v1\ndegree 4\nmoduli 2\nABAB 3\n").unwrap();
    let out = polyak(&["eval", "--table", path.to_str().unwrap(), "--word", "AA"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn saved_table_evaluates_like_the_library() {
    let dir = tempfile::tempdir().unwrap();
    let t5 = make_table(dir.path(), 5);
    let table = build_table(5).unwrap();
    for word in ["ABACDCBD", "ABCACDBD", "ABACBDCD", "ABACDECBDE", "ABCDBEACED", "AABB"] {
        let v = table.evaluate(&word.parse::<GaussWord>().unwrap());
        let expect = if v.is_zero() { format!("{v}\n") } else { format!("{v} (order {})\n", table.element_order(&v)) };
        assert_eq!(stdout(&polyak(&["eval", "--table", &t5, "--word", word])), expect, "{word}");
    }
}

#[test]
fn group_prints_structure_and_counts() {
    let g3 = stdout(&polyak(&["group", "--degree", "3"]));
    assert!(g3.starts_with("G3 = Z\n"), "{g3}");
    let g4 = stdout(&polyak(&["group", "--degree", "4"]));
    assert_eq!(g4, "G4 = Z + Z/2\nmultiplicities 1\ngenerators 42\ng2 161\ng3 62\nunique 97\n");
    let g6 = stdout(&polyak(&["group", "--degree", "6", "--u-strategy", "replay"]));
    assert!(g6.contains("multiplicities 32 6 1\n"), "{g6}");
}

#[test]
fn presentation_file_reads_back() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h4");
    let out = polyak(&["presentation", "--degree", "4", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let p = polyak::Presentation::read_from(std::io::BufReader::new(fs::File::open(&path).unwrap())).unwrap();
    assert_eq!((p.generators.len(), p.relations.len()), (42, 97));
    let counts = stdout(&polyak(&["presentation", "--degree", "5", "--counts-only"]));
    assert_eq!(counts, "generators 371\ng2 1806\ng3 672\nunique 998\n");
}

#[test]
fn classify_rank_four() {
    let dir = tempfile::tempdir().unwrap();
    let t5 = make_table(dir.path(), 5);
    let out = polyak(&["classify", "--max-rank", "4", "--table", &t5]);
    assert!(out.status.success());
    let report = stdout(&out);
    assert!(report.contains("4 blocks, 4 classes, 0 unresolved pairs"), "{report}");
}

#[test]
fn output_does_not_depend_on_worker_count() {
    let dir = tempfile::tempdir().unwrap();
    let t5 = make_table(dir.path(), 5);
    let mut files = Vec::new();
    for workers in ["1", "3"] {
        let assignments = dir.path().join(format!("classes{workers}"));
        let traces = dir.path().join(format!("traces{workers}"));
        let out = polyak(&[
            "--workers",
            workers,
            "classify",
            "--rank",
            "4",
            "--table",
            &t5,
            "--out",
            assignments.to_str().unwrap(),
            "--traces",
            traces.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        files.push((stdout(&out), fs::read(assignments).unwrap(), fs::read(traces).unwrap()));
    }
    assert_eq!(files[0], files[1]);
    let table = dir.path().join("t5-sequential");
    polyak(&["--workers", "1", "table", "--degree", "5", "--out", table.to_str().unwrap()]);
    assert_eq!(fs::read(table).unwrap(), fs::read(&t5).unwrap());
}

#[test]
fn snf_of_a_matrix_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m");
    fs::write(&path, "2 2\n0 0 2\n0 1 4\n1 0 6\n1 1 8\n").unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(stdout(&polyak(&["snf", p])), "divisors 2 4\n");
    assert_eq!(stdout(&polyak(&["snf", p, "--bits", "4"])), "divisors 2 4\n");
    assert_eq!(stdout(&polyak(&["snf", p, "--bits", "2"])), "divisors 2 4\n");
    assert_eq!(stdout(&polyak(&["snf", p, "--bits", "1"])), "divisors 2 2\n");
}
