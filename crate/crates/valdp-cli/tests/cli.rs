//! Command-line contract: exit codes, output shape, truncation,
//! source sniffing, and the tree report.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use valdp::fixtures;
use valdp::io::{export_problem, ProblemFile};
use valdp::join_tree::{build_join_tree, Heuristic};
use valdp::tuples::Scope;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_valdp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

/// The saturating two-factor fixture as a problem file, optionally
/// with an explicit tree section.
fn saturating_problem(dir: &Path, with_tree: bool) -> PathBuf {
    let fixture = fixtures::counterexample_3();
    let scopes: Vec<Scope> = fixture.factors.iter().map(|f| f.label().clone()).collect();
    let tree = with_tree.then(|| build_join_tree(&scopes, Heuristic::MinFill, None).unwrap());
    let problem = ProblemFile {
        semiring: fixture.semiring().clone(),
        vars: fixture.vars.clone(),
        factors: fixture.factors.clone(),
        tree,
        query: None,
    };
    let name = if with_tree {
        "saturating-tree.txt"
    } else {
        "saturating.txt"
    };
    let path = dir.join(name);
    std::fs::write(&path, export_problem(&problem)).unwrap();
    path
}

#[test]
fn input_failures_exit_2() {
    let out = run(&[
        "solve",
        "--task",
        "complete",
        "--file",
        "/nonexistent/problem.txt",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("error"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.txt");
    std::fs::write(&path, "semiring: boolean\nvariables:\nx 2\nfactor: x\n1\n").unwrap();
    let out = run(&[
        "solve",
        "--task",
        "complete",
        "--file",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("expected 2 values"),
        "{}",
        stderr(&out)
    );

    let out = run(&[
        "solve",
        "--task",
        "everything",
        "--file",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["check-semiring"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["check-semiring", "--name", "boolean", "--file", "x.txt"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_root_vars_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = saturating_problem(dir.path(), false);
    let out = run(&[
        "solve",
        "--task",
        "project",
        "--file",
        path.to_str().unwrap(),
        "--root-vars",
        "z",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("unknown root variable"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn max_solutions_truncates_the_document() {
    let dir = tempfile::tempdir().unwrap();
    let path = saturating_problem(dir.path(), false);
    let out = run(&[
        "solve",
        "--task",
        "complete",
        "--file",
        path.to_str().unwrap(),
        "--max-solutions",
        "1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"truncated\": true"), "{text}");
    assert_eq!(text.matches("{\"x\": ").count(), 1, "{text}");
}

#[test]
fn projection_uses_root_vars() {
    let dir = tempfile::tempdir().unwrap();
    let path = saturating_problem(dir.path(), false);
    let out = run(&[
        "solve",
        "--task",
        "project",
        "--file",
        path.to_str().unwrap(),
        "--root-vars",
        "x",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"projection\""), "{text}");
    assert!(text.contains("{\"x\": \"0\", \"value\": \"3\"}"), "{text}");
    assert!(text.contains("{\"x\": \"1\", \"value\": \"3\"}"), "{text}");

    // Without a target the projection collapses to the total value.
    let out = run(&[
        "solve",
        "--task",
        "project",
        "--file",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("{\"value\": \"3\"}"), "{text}");
}

#[test]
fn verified_single_solve_reports_its_check() {
    let dir = tempfile::tempdir().unwrap();
    let path = saturating_problem(dir.path(), false);
    let out = run(&[
        "solve",
        "--task",
        "single",
        "--file",
        path.to_str().unwrap(),
        "--verify",
        "--oracle",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"algorithm\": \"sets\""), "{text}");
    assert!(
        text.contains("\"verification\": \"checked 1, dropped 0\""),
        "{text}"
    );
    assert!(text.contains("\"oracle\": \"agree\""), "{text}");
    assert!(text.trim_end().ends_with("\"timing\": \"-\"\n}"), "{text}");
}

#[test]
fn check_semiring_reads_name_table_and_problem_sources() {
    let out = run(&["check-semiring", "--name", "counter3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("semiring: counter3\n"), "{text}");
    assert!(
        text.contains("square-ordered: fails witness a=3 b=2"),
        "{text}"
    );
    assert!(
        text.contains("weakly-mult-cancellative: fails witness a=2 b=3 c=3"),
        "{text}"
    );
    assert!(text.contains("single/sets: guaranteed"), "{text}");

    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("two.txt");
    std::fs::write(
        &table,
        "elements: f t\nzero: f\none: t\nadd:\nf t\nt t\nmul:\nf f\nf t\n",
    )
    .unwrap();
    let out = run(&["check-semiring", "--file", table.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("semiring: table\n"), "{text}");
    assert!(text.contains("selective: holds"), "{text}");

    let problem = saturating_problem(dir.path(), false);
    let out = run(&["check-semiring", "--file", problem.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("semiring: counter3\n"));
}

#[test]
fn check_tree_reports_structure_and_builds_on_demand() {
    let dir = tempfile::tempdir().unwrap();

    let with_tree = saturating_problem(dir.path(), true);
    let out = run(&["check-tree", "--file", with_tree.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(!text.contains("no tree section"), "{text}");
    assert!(text.contains("running intersection: ok"), "{text}");
    assert!(text.contains("covering: ok"), "{text}");
    assert!(text.contains("minimally labeled: yes"), "{text}");

    let without = saturating_problem(dir.path(), false);
    let out = run(&["check-tree", "--file", without.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(
        text.contains("no tree section; built one with min-fill"),
        "{text}"
    );
    assert!(text.contains("minimally labeled: yes"), "{text}");
}

#[test]
fn fixtures_run_reports_every_fixture_ok() {
    let out = run(&["fixtures", "run"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let names: Vec<String> = fixtures::all()
        .iter()
        .map(|f| format!("{}: ok", f.name))
        .collect();
    for line in &names {
        assert!(text.contains(line.as_str()), "missing {line:?} in {text}");
    }
    assert_eq!(text.lines().count(), names.len(), "{text}");
}
