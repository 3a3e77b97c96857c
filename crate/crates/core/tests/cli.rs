use std::path::Path;
use std::process::{Command, Output};

use hopfcheck::format::{self, Loaded};
use hopfcheck::report::CheckReport;

fn hopfcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfcheck")).args(args).output().expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn built_double_reloads_and_validates() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("double.json");
    let out = hopfcheck(&["build", "double", "catalog:sweedler", "-o", path(&d)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let loaded = format::load_path(&d).unwrap().into_hopf().unwrap();
    assert_eq!(loaded.dim(), 16);
    let v = hopfcheck(&["validate", path(&d)]);
    assert_eq!(v.status.code(), Some(0), "{}", String::from_utf8_lossy(&v.stdout));
}

#[test]
fn built_files_chain() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("z3.json");
    assert!(hopfcheck(&["catalog", "emit", "group:Z/3", "-o", path(&a)]).status.success());
    for kind in ["dual", "tdual", "heisenberg"] {
        let b = dir.path().join(format!("{kind}.json"));
        assert!(hopfcheck(&["build", kind, path(&a), "-o", path(&b)]).status.success(), "{kind}");
        assert_eq!(hopfcheck(&["validate", path(&b)]).status.code(), Some(0), "{kind}");
        let loaded = format::load_path(&b).unwrap();
        assert_eq!(matches!(loaded, Loaded::Plain(_)), kind == "heisenberg");
    }
    // H(A) is not a Hopf algebra, so it cannot feed a check suite
    let h = dir.path().join("heisenberg.json");
    assert_eq!(hopfcheck(&["check", "hopf", path(&h)]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic_up_to_wall_time() {
    let run = || {
        let out = hopfcheck(&["check", "all", "catalog:group:Z/2", "--report", "json"]);
        assert!(out.status.success());
        let mut r: CheckReport = serde_json::from_slice(&out.stdout).unwrap();
        r.wall_time_ms = 0;
        r
    };
    assert_eq!(run(), run());
}

#[test]
fn json_report_names_r_checks() {
    let out = hopfcheck(&["check", "double", "catalog:sweedler", "--report", "json"]);
    let r: CheckReport = serde_json::from_slice(&out.stdout).unwrap();
    for name in ["ybe", "r_inverse"] {
        assert!(r.checks.iter().any(|c| c.name == name && c.passed), "{name}");
    }
    assert_eq!(r.checks.iter().filter(|c| c.name == "ybe").count(), 1);
}

#[test]
fn all_runs_each_check_once() {
    let out = hopfcheck(&["check", "all", "catalog:sweedler", "--report", "json"]);
    let r: CheckReport = serde_json::from_slice(&out.stdout).unwrap();
    let mut names: Vec<_> = r.checks.iter().map(|c| c.name.as_str()).collect();
    let total = names.len();
    names.sort();
    names.dedup();
    assert_eq!(names.len(), total);
}

#[test]
fn failing_validate_names_the_axiom() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.json");
    let mut file = format::to_file_hopf(&hopfcheck::catalog::group_cyclic(3));
    file.comult.as_mut().unwrap().pop();
    std::fs::write(&f, serde_json::to_string(&file).unwrap()).unwrap();
    let out = hopfcheck(&["validate", path(&f)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("failed:"));
}

#[test]
fn heavy_suites_need_the_flag() {
    let out = hopfcheck(&["check", "reduction", "catalog:taft:3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--heavy"));
    let moment = hopfcheck(&["check", "moment", "catalog:taft:3"]);
    assert_eq!(moment.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&moment.stdout).contains("note  big Heisenberg double skipped"));
}

#[test]
fn text_report_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("report.txt");
    let out = hopfcheck(&["check", "hopf", "catalog:trivial", "-o", path(&f)]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&f).unwrap();
    assert!(text.starts_with("hopfcheck hopf on trivial: PASS"));
    assert!(text.contains("  pass  coassociativity [hopf-axioms]"));
}

#[test]
fn bad_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("oob.json");
    let mut file = format::to_file_hopf(&hopfcheck::catalog::sweedler());
    file.mult[0].2 = 9;
    std::fs::write(&f, serde_json::to_string(&file).unwrap()).unwrap();
    for args in [vec!["validate", path(&f)], vec!["validate", "/nonexistent.json"], vec!["catalog", "emit", "taft:1"]] {
        let out = hopfcheck(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("hopfcheck: "), "{args:?}");
    }
}
