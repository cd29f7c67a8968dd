//! Command-line front end: solve problem files, report semiring
//! properties and algorithm soundness, validate join trees, and run
//! the built-in fixture regressions.
//!
//! Exit codes: 0 on success, 1 when a disagreement or unsound output
//! is detected (oracle mismatch, failed verification, failed fixture),
//! 2 on input errors.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use valdp::fixtures;
use valdp::io::{parse_problem, parse_semiring_table_str, result_document, ProblemFile};
use valdp::join_tree::{build_join_tree, Heuristic, JoinTree};
use valdp::oracle;
use valdp::semiring::{
    check_idempotent, check_mult_cancellative, check_selective, check_semiring_axioms,
    check_square_mult_cancellative_on_image, check_square_ordered, check_strict_monotonic,
    check_totally_ordered, check_weakly_mult_cancellative, classify, CheckOptions, Semiring,
};
use valdp::solutions::{solve, SolutionError, SolutionSet, SolveOptions, SolveOutput, Task};
use valdp::tuples::Scope;

#[derive(Parser)]
#[command(
    name = "valdp",
    version,
    about = "Dynamic programming over valuation algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a problem file and print a result document.
    Solve(SolveArgs),
    /// Report semiring properties and the algorithm soundness matrix.
    CheckSemiring(CheckSemiringArgs),
    /// Validate the tree section of a problem file.
    CheckTree {
        #[arg(long)]
        file: PathBuf,
    },
    /// Built-in regression fixtures.
    Fixtures {
        #[command(subcommand)]
        action: FixturesAction,
    },
}

#[derive(Subcommand)]
enum FixturesAction {
    /// Re-derive every fixture's recorded sets and verdicts.
    Run,
}

#[derive(Clone, Copy, ValueEnum)]
enum TaskArg {
    Project,
    Single,
    Partial,
    Complete,
}

impl TaskArg {
    fn to_task(self) -> Task {
        match self {
            TaskArg::Project => Task::Project,
            TaskArg::Single => Task::Single,
            TaskArg::Partial => Task::Partial,
            TaskArg::Complete => Task::Complete,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    task: TaskArg,
    #[arg(long)]
    file: PathBuf,
    /// Comma-separated variables to keep in the root label (the
    /// projection target for the project task).
    #[arg(long, value_name = "v1,v2")]
    root_vars: Option<String>,
    /// Re-check every reported configuration against the optimum.
    #[arg(long)]
    verify: bool,
    /// Truncate the reported solution list.
    #[arg(long, value_name = "N")]
    max_solutions: Option<usize>,
    /// Compare against the brute-force reference and report agree/disagree.
    #[arg(long)]
    oracle: bool,
    /// Seed for the sampled classification checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct CheckSemiringArgs {
    /// A finite semiring table file, or a problem file whose semiring
    /// is checked.
    #[arg(long, conflicts_with = "name", required_unless_present = "name")]
    file: Option<PathBuf>,
    /// A built-in semiring name.
    #[arg(long)]
    name: Option<String>,
    #[arg(long, default_value_t = 10_000)]
    budget: u64,
}

/// A failed run: `Input` exits 2, `Unsound` exits 1. The message goes
/// to standard error; an empty message means it was already reported.
enum Failure {
    Input(String),
    Unsound(String),
}

fn input_err(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => run_solve(args),
        Command::CheckSemiring(args) => run_check_semiring(args),
        Command::CheckTree { file } => run_check_tree(file),
        Command::Fixtures {
            action: FixturesAction::Run,
        } => run_fixtures(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Unsound(msg)) => {
            if !msg.is_empty() {
                eprintln!("{msg}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn parse_root_vars(problem: &ProblemFile, spec: &str) -> Result<Scope, Failure> {
    let mut ids = Vec::new();
    for name in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let id = problem
            .vars
            .lookup(name)
            .ok_or_else(|| Failure::Input(format!("unknown root variable {name:?}")))?;
        ids.push(id);
    }
    Ok(Scope::new(ids))
}

fn run_solve(args: SolveArgs) -> Result<(), Failure> {
    let problem = parse_problem(&args.file).map_err(input_err)?;
    if problem.factors.is_empty() {
        return Err(Failure::Input("problem has no factors".into()));
    }
    let joint = problem
        .factors
        .iter()
        .fold(Scope::empty(), |acc, f| acc.union(f.label()));
    let query = match &args.root_vars {
        Some(spec) => Some(parse_root_vars(&problem, spec)?),
        None => problem.query.clone(),
    };
    if let Some(q) = &query {
        if !q.is_subset_of(&joint) {
            return Err(Failure::Input(format!(
                "root variables {} are not all within the joint scope {}",
                problem.vars.format_scope(q),
                problem.vars.format_scope(&joint)
            )));
        }
    }

    let task = args.task.to_task();
    let options = SolveOptions {
        query,
        verify: args.verify,
        classify_seed: args.seed,
        ..Default::default()
    };
    let started = Instant::now();
    let report = solve(&problem.factors, task, &options).map_err(|e| match e {
        SolutionError::VerificationFailed { .. } => Failure::Unsound(e.to_string()),
        e => input_err(e),
    })?;
    let elapsed = started.elapsed();

    let mut doc = result_document(&problem.vars, &problem.semiring, &report);
    let mut disagreement = None;
    if args.oracle {
        match oracle_comparison(&problem, &report) {
            Ok(None) => doc.oracle = Some("agree".into()),
            Ok(Some(detail)) => {
                doc.oracle = Some(format!("disagree: {detail}"));
                disagreement = Some(detail);
            }
            Err(e) => return Err(input_err(e)),
        }
    }
    if let (Some(n), Some(solutions)) = (args.max_solutions, doc.solutions.as_mut()) {
        if solutions.len() > n {
            solutions.truncate(n);
            doc.truncated = Some(true);
        }
    }

    print!("{}", doc.to_json());
    eprintln!("solved {} in {:.3?}", doc.task, elapsed);
    match disagreement {
        None => Ok(()),
        Some(detail) => Err(Failure::Unsound(format!("oracle disagreement: {detail}"))),
    }
}

/// Compares the report against the brute-force reference. `Ok(None)`
/// means agreement; `Ok(Some(detail))` is a disagreement.
fn oracle_comparison(
    problem: &ProblemFile,
    report: &valdp::solutions::SolveReport,
) -> Result<Option<String>, Box<dyn std::error::Error>> {
    let vars = &problem.vars;
    let semiring = &problem.semiring;
    let factors = &problem.factors;

    if let SolveOutput::Projection(val) = &report.output {
        let reference = oracle::brute_project(factors, val.label())?;
        return Ok(if val.tables_eq(&reference) {
            None
        } else {
            Some(format!(
                "projection to {} differs from the brute-force table",
                vars.format_scope(val.label())
            ))
        });
    }

    let total = oracle::brute_total(factors)?;
    if let Some(m) = &report.optimum {
        if !semiring.values_eq(m, &total) {
            return Ok(Some(format!(
                "optimum {} differs from the brute-force total {}",
                semiring.format_value(m),
                semiring.format_value(&total)
            )));
        }
    }
    let tuples = oracle::brute_solutions(factors)?;
    let scope = factors
        .iter()
        .fold(Scope::empty(), |acc, f| acc.union(f.label()));
    let reference = SolutionSet::new(scope, tuples, false)?;

    match &report.output {
        SolveOutput::Projection(_) => unreachable!("handled above"),
        SolveOutput::Single(x) => Ok(if reference.contains(x) {
            None
        } else {
            Some(format!(
                "configuration {} is not a solution",
                vars.format_tuple(x)
            ))
        }),
        SolveOutput::Set(set) => {
            if set.is_empty() {
                return Ok(Some("empty solution set".into()));
            }
            if !set.is_subset(&reference) {
                let stray = set
                    .tuples()
                    .iter()
                    .find(|t| !reference.contains(t))
                    .expect("a tuple outside the reference exists");
                return Ok(Some(format!(
                    "configuration {} is not a solution",
                    vars.format_tuple(stray)
                )));
            }
            let complete_required = report.task == Task::Complete
                && report.annotation.as_deref() == Some("guaranteed")
                && !set.truncated();
            if complete_required && !set.set_eq(&reference) {
                let missing = reference
                    .tuples()
                    .iter()
                    .find(|t| !set.contains(t))
                    .expect("a missing solution exists");
                return Ok(Some(format!(
                    "solution {} is missing from the output",
                    vars.format_tuple(missing)
                )));
            }
            Ok(None)
        }
    }
}

fn run_check_semiring(args: CheckSemiringArgs) -> Result<(), Failure> {
    let semiring = match (&args.file, &args.name) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
            let first = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty() && !l.starts_with('#'))
                .unwrap_or("");
            if first.starts_with("semiring:") {
                parse_problem(path).map_err(input_err)?.semiring
            } else {
                parse_semiring_table_str(&text).map_err(input_err)?
            }
        }
        (None, Some(name)) => Semiring::from_name(name).map_err(input_err)?,
        _ => unreachable!("clap enforces exactly one source"),
    };

    let opts = CheckOptions {
        budget: args.budget,
        seed: 0,
    };
    println!("semiring: {}", semiring.name());
    let axioms = check_semiring_axioms(&semiring, &opts).map_err(input_err)?;
    print!("{}", axioms.format(&semiring));
    let property_checks = [
        check_selective,
        check_idempotent,
        check_totally_ordered,
        check_square_mult_cancellative_on_image,
        check_square_ordered,
        check_weakly_mult_cancellative,
        check_mult_cancellative,
        check_strict_monotonic,
    ];
    for check in property_checks {
        let report = check(&semiring, &opts).map_err(input_err)?;
        print!("{}", report.format(&semiring));
    }
    match classify(&semiring, &opts) {
        Ok(matrix) => print!("{}", matrix.format(&semiring)),
        Err(e) => println!("classification refused: {e}"),
    }
    Ok(())
}

fn print_tree_report(tree: &JoinTree, problem: &ProblemFile) -> Result<(), Failure> {
    let scopes: Vec<Scope> = problem.factors.iter().map(|f| f.label().clone()).collect();
    println!("nodes: {}", tree.len());
    tree.check_running_intersection().map_err(input_err)?;
    println!("running intersection: ok");
    tree.check_covering(&scopes).map_err(input_err)?;
    println!("covering: ok");
    match tree.check_minimally_labeled(&scopes) {
        Ok(()) => println!("minimally labeled: yes"),
        Err(e) => println!("minimally labeled: no ({e})"),
    }
    Ok(())
}

fn run_check_tree(file: PathBuf) -> Result<(), Failure> {
    let problem = parse_problem(&file).map_err(input_err)?;
    match &problem.tree {
        Some(tree) => print_tree_report(tree, &problem),
        None => {
            if problem.factors.is_empty() {
                return Err(Failure::Input("problem has no factors and no tree".into()));
            }
            let scopes: Vec<Scope> = problem.factors.iter().map(|f| f.label().clone()).collect();
            let tree = build_join_tree(&scopes, Heuristic::MinFill, problem.query.as_ref())
                .map_err(input_err)?;
            println!("no tree section; built one with min-fill");
            print_tree_report(&tree, &problem)
        }
    }
}

fn run_fixtures() -> Result<(), Failure> {
    let mut failed = false;
    for fixture in fixtures::all() {
        match fixtures::verify(&fixture) {
            Ok(failures) if failures.is_empty() => println!("{}: ok", fixture.name),
            Ok(failures) => {
                failed = true;
                println!("{}: FAILED", fixture.name);
                for line in failures {
                    println!("  {line}");
                }
            }
            Err(e) => {
                failed = true;
                println!("{}: ERROR: {e}", fixture.name);
            }
        }
    }
    if failed {
        Err(Failure::Unsound(String::new()))
    } else {
        Ok(())
    }
}
