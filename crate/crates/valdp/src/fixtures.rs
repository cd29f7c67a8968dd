//! Hand-built regression instances: the boolean indicator whose
//! solutions cannot be recovered by completing projections, its
//! product-factorized variant with a domain-driven extension system,
//! the four-element saturating semiring product, and one fixture per
//! completability class. Every fixture records its expected sets and
//! verdicts; [`verify`] re-derives all of them with the engine and the
//! checkers instead of trusting the records.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::join_tree::{build_join_tree, Heuristic, JoinTree};
use crate::message_passing;
use crate::oracle;
use crate::semiring::{Ext, Semiring, Value};
use crate::solutions::{
    check_fces, check_piecewise_completability, check_projective_completability, completions,
    extend_to_global_projection, extend_to_subtree, ExtensionSystem, OptimizationSystem,
    PiecewiseFlavor, SolutionError, SolutionSet,
};
use crate::tuples::{Scope, Tuple, VariableTable};
use crate::valuation::Valuation;

// ---------------------------------------------------------------------------
// Handcrafted extension systems
// ---------------------------------------------------------------------------

/// An extension system that ignores the queried valuation's content:
/// every request is answered by the optimization system on the
/// projection of one fixed valuation to the queried domain. The
/// decomposition law holds because it holds for the fixed valuation,
/// yet the system is unrelated to combination in the algebra, which is
/// exactly what breaks completability on factorized products.
#[derive(Debug, Clone)]
pub struct IndicatorDerivedSystem {
    eta: Valuation,
}

impl IndicatorDerivedSystem {
    pub fn new(eta: Valuation) -> IndicatorDerivedSystem {
        IndicatorDerivedSystem { eta }
    }

    pub fn eta(&self) -> &Valuation {
        &self.eta
    }
}

impl ExtensionSystem for IndicatorDerivedSystem {
    fn extension_set(&self, phi: &Valuation, x: &Tuple) -> Result<Vec<Tuple>, SolutionError> {
        if phi.vars().as_ref() != self.eta.vars().as_ref()
            || phi.semiring() != self.eta.semiring()
            || !phi.label().is_subset_of(self.eta.label())
        {
            return Err(SolutionError::UnknownValuation {
                detail: format!(
                    "valuation over {} is outside the derived system's domain lattice",
                    phi.vars().format_scope(phi.label())
                ),
            });
        }
        OptimizationSystem.extension_set(&self.eta.project(phi.label())?, x)
    }
}

/// The two-variable max-plus family closed under combination of two
/// seed valuations and even constants, with designated solution lists:
/// each seed keeps both of its configurations, every other member
/// keeps only its all-zeros configuration. Extension sets are sections
/// of those lists, so the decomposition law holds by construction,
/// projective completability holds on the seeds' product, and plain
/// piecewise completability fails on it. Queries outside the family
/// are a hard error.
#[derive(Debug, Clone)]
pub struct PowerFamilySystem {
    vars: Arc<VariableTable>,
    seed_x: Valuation,
    seed_y: Valuation,
}

fn fin(v: &Value) -> Option<i64> {
    match v {
        Value::Int(Ext::Fin(x)) => Some(*x),
        _ => None,
    }
}

impl PowerFamilySystem {
    pub fn new(vars: Arc<VariableTable>, seed_x: Valuation, seed_y: Valuation) -> Self {
        PowerFamilySystem {
            vars,
            seed_x,
            seed_y,
        }
    }

    pub fn seeds(&self) -> (&Valuation, &Valuation) {
        (&self.seed_x, &self.seed_y)
    }

    /// Family membership: the table must have the affine shape of a
    /// combination of seed powers and even non-negative constants.
    fn member(&self, psi: &Valuation) -> bool {
        let vals: Option<Vec<i64>> = psi.table().iter().map(fin).collect();
        let Some(vals) = vals else { return false };
        let d = psi.label();
        if d.is_empty() {
            let t = vals[0];
            t >= 0 && t % 2 == 0
        } else if d == self.seed_x.label() || d == self.seed_y.label() {
            let (u, v) = (vals[0], vals[1]);
            let a = u - v;
            let t = v - a;
            a >= 0 && t >= 0 && t % 2 == 0
        } else if *d == self.seed_x.label().union(self.seed_y.label()) {
            let (p, q, r, s) = (vals[0], vals[1], vals[2], vals[3]);
            let a = q - s;
            let b = r - s;
            let t = s - a - b;
            a >= 0 && b >= 0 && p + s == q + r && t >= 0 && t % 2 == 0
        } else {
            false
        }
    }

    fn designated(&self, psi: &Valuation) -> Result<Vec<Tuple>, SolutionError> {
        let all = |scope: &Scope| -> Result<Vec<Tuple>, SolutionError> {
            Ok(self.vars.enumerate(scope)?.collect())
        };
        let zeros = |scope: &Scope| -> Result<Vec<Tuple>, SolutionError> {
            Ok(vec![self.vars.tuple_at(scope, 0)?])
        };
        let d = psi.label();
        let is_seed = (d == self.seed_x.label() && psi.tables_eq(&self.seed_x))
            || (d == self.seed_y.label() && psi.tables_eq(&self.seed_y));
        if is_seed {
            all(d)
        } else {
            zeros(d)
        }
    }
}

impl ExtensionSystem for PowerFamilySystem {
    fn extension_set(&self, psi: &Valuation, x: &Tuple) -> Result<Vec<Tuple>, SolutionError> {
        if psi.vars().as_ref() != self.vars.as_ref()
            || psi.semiring() != self.seed_x.semiring()
            || !self.member(psi)
        {
            return Err(SolutionError::UnknownValuation {
                detail: format!(
                    "valuation over {} is outside the fixture family",
                    psi.vars().format_scope(psi.label())
                ),
            });
        }
        if !x.scope().is_subset_of(psi.label()) {
            return Err(SolutionError::ScopeViolation {
                detail: "extension point outside the valuation scope".into(),
            });
        }
        let z_scope = psi.label().diff(x.scope());
        let mut out = Vec::new();
        for t in self.designated(psi)? {
            if &t.project(x.scope())? == x {
                out.push(t.project(&z_scope)?);
            }
        }
        Ok(out)
    }
}

/// The extension system a fixture is evaluated under.
#[derive(Debug, Clone)]
pub enum FixtureSystem {
    Optimization(OptimizationSystem),
    IndicatorDerived(IndicatorDerivedSystem),
    PowerFamily(PowerFamilySystem),
}

impl FixtureSystem {
    pub fn as_dyn(&self) -> &dyn ExtensionSystem {
        match self {
            FixtureSystem::Optimization(s) => s,
            FixtureSystem::IndicatorDerived(s) => s,
            FixtureSystem::PowerFamily(s) => s,
        }
    }

    pub fn is_optimization(&self) -> bool {
        matches!(self, FixtureSystem::Optimization(_))
    }
}

// ---------------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------------

/// How a fixture exercises the extraction pipeline.
#[derive(Debug, Clone)]
pub enum PipelineClaim {
    /// No pipeline claim; only the set and checker expectations apply.
    None,
    /// Fold completions over the joint valuation's projections to these
    /// scopes, in order (a chain of marginals); the result must equal
    /// the expected completions.
    MarginalFold(Vec<Scope>),
    /// Build the covering join tree from the factor scopes, run the
    /// full two-phase sweep, and require: global-projection extension
    /// equals the expected completions, subtree extension stays inside
    /// the expected solutions.
    FullTree,
}

/// One executable regression instance. The recorded sets and verdicts
/// come from working the instance out by hand; [`verify`] recomputes
/// them with the engine.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub vars: Arc<VariableTable>,
    /// Factorization of the joint valuation.
    pub factors: Vec<Valuation>,
    /// The scope split `(X, Y)` used by the completion expectations.
    pub split: (Scope, Scope),
    pub system: FixtureSystem,
    /// Expected solution set of the joint valuation under `system`.
    pub solutions: Option<SolutionSet>,
    /// Expected completions of the projected solutions:
    /// `CO(c_{phi|X}, phi|Y)`.
    pub completions: Option<SolutionSet>,
    pub pipeline: PipelineClaim,
    /// Factor pairs fed to the completability checkers.
    pub products: Vec<(Valuation, Valuation)>,
    /// Expected verdict of the projective completability checker.
    pub projective: Option<bool>,
    /// Expected verdict of the plain piecewise completability checker.
    pub piecewise: Option<bool>,
}

impl Fixture {
    pub fn semiring(&self) -> &Semiring {
        self.factors[0].semiring()
    }

    /// The joint valuation: the combination of all factors.
    pub fn product(&self) -> Result<Valuation, SolutionError> {
        let mut acc = self.factors[0].clone();
        for f in &self.factors[1..] {
            acc = acc.combine(f)?;
        }
        Ok(acc)
    }
}

fn xy_vars() -> Arc<VariableTable> {
    let mut vt = VariableTable::new();
    vt.add_var("x", 2).expect("positive cardinality");
    vt.add_var("y", 2).expect("positive cardinality");
    Arc::new(vt)
}

fn solution_set(vars: &Arc<VariableTable>, scope: Scope, indices: &[usize]) -> SolutionSet {
    let tuples = indices
        .iter()
        .map(|&i| vars.tuple_at(&scope, i).expect("index within the frame"))
        .collect();
    SolutionSet::new(scope, tuples, false).expect("tuples share the scope")
}

/// The indicator valuation over two boolean variables that is `one`
/// exactly on agreeing configurations.
fn agreement_indicator(vars: &Arc<VariableTable>) -> Valuation {
    Valuation::from_fn(vars.clone(), Semiring::boolean(), Scope::new([0, 1]), |t| {
        Value::Bool(t.values()[0] == t.values()[1])
    })
    .expect("scope is declared")
}

/// A single boolean valuation whose solution set cannot be recovered
/// by completing the solutions of one projection through the other:
/// the solutions are the two agreeing configurations, while the
/// completion fold yields the whole frame.
pub fn counterexample_1() -> Fixture {
    let vars = xy_vars();
    let phi = agreement_indicator(&vars);
    let x = Scope::singleton(0);
    let y = Scope::singleton(1);
    Fixture {
        name: "counterexample-1",
        vars: vars.clone(),
        factors: vec![phi],
        split: (x.clone(), y.clone()),
        system: FixtureSystem::Optimization(OptimizationSystem),
        solutions: Some(solution_set(&vars, Scope::new([0, 1]), &[0, 3])),
        completions: Some(solution_set(&vars, Scope::new([0, 1]), &[0, 1, 2, 3])),
        pipeline: PipelineClaim::MarginalFold(vec![x, y]),
        products: vec![],
        projective: None,
        piecewise: None,
    }
}

/// The factorized variant: the joint valuation splits into one factor
/// per variable, yet completability still fails because the extension
/// system answers from a fixed indicator instead of the algebra. The
/// decomposition law itself holds on every member.
pub fn counterexample_2() -> Fixture {
    let vars = xy_vars();
    let eta = agreement_indicator(&vars);
    let ones_x = Valuation::constant(
        vars.clone(),
        Semiring::boolean(),
        Scope::singleton(0),
        Value::Bool(true),
    )
    .expect("scope is declared");
    let ones_y = Valuation::constant(
        vars.clone(),
        Semiring::boolean(),
        Scope::singleton(1),
        Value::Bool(true),
    )
    .expect("scope is declared");
    Fixture {
        name: "counterexample-2",
        vars: vars.clone(),
        factors: vec![ones_x.clone(), ones_y.clone()],
        split: (Scope::singleton(0), Scope::singleton(1)),
        system: FixtureSystem::IndicatorDerived(IndicatorDerivedSystem::new(eta)),
        solutions: Some(solution_set(&vars, Scope::new([0, 1]), &[0, 3])),
        completions: Some(solution_set(&vars, Scope::new([0, 1]), &[0, 1, 2, 3])),
        pipeline: PipelineClaim::MarginalFold(vec![Scope::singleton(0), Scope::singleton(1)]),
        products: vec![(ones_x, ones_y)],
        projective: Some(false),
        piecewise: Some(false),
    }
}

/// Two factors over the four-element saturating semiring whose product
/// admits a spurious completion: the global-projection fold emits the
/// all-zeros configuration even though it is not a solution.
pub fn counterexample_3() -> Fixture {
    let vars = xy_vars();
    let s = Semiring::counter3();
    let table = vec![Value::Elem(2), Value::Elem(3)];
    let f1 = Valuation::new(vars.clone(), s.clone(), Scope::singleton(0), table.clone())
        .expect("table matches the frame");
    let f2 = Valuation::new(vars.clone(), s, Scope::singleton(1), table)
        .expect("table matches the frame");
    Fixture {
        name: "counterexample-3",
        vars: vars.clone(),
        factors: vec![f1.clone(), f2.clone()],
        split: (Scope::singleton(0), Scope::singleton(1)),
        system: FixtureSystem::Optimization(OptimizationSystem),
        solutions: Some(solution_set(&vars, Scope::new([0, 1]), &[1, 2, 3])),
        completions: Some(solution_set(&vars, Scope::new([0, 1]), &[0, 1, 2, 3])),
        pipeline: PipelineClaim::FullTree,
        products: vec![(f1, f2)],
        projective: Some(false),
        piecewise: Some(true),
    }
}

/// One fixture per completability class:
/// - neither: the indicator-derived system,
/// - projective only: the seed-pair family with designated solutions,
/// - piecewise only: the saturating four-element optimization system,
/// - both: the max-times optimization system on sampled products.
pub fn completability_quadrants() -> Vec<Fixture> {
    let mut neither = counterexample_2();
    neither.name = "quadrant-neither";

    let vars = xy_vars();
    let s = Semiring::maxplus();
    let seed_table = vec![Value::int(2), Value::int(1)];
    let seed_x = Valuation::new(
        vars.clone(),
        s.clone(),
        Scope::singleton(0),
        seed_table.clone(),
    )
    .expect("table matches the frame");
    let seed_y = Valuation::new(vars.clone(), s, Scope::singleton(1), seed_table)
        .expect("table matches the frame");
    let projective_only = Fixture {
        name: "quadrant-projective-only",
        vars: vars.clone(),
        factors: vec![seed_x.clone(), seed_y.clone()],
        split: (Scope::singleton(0), Scope::singleton(1)),
        system: FixtureSystem::PowerFamily(PowerFamilySystem::new(
            vars.clone(),
            seed_x.clone(),
            seed_y.clone(),
        )),
        solutions: Some(solution_set(&vars, Scope::new([0, 1]), &[0])),
        completions: Some(solution_set(&vars, Scope::new([0, 1]), &[0])),
        pipeline: PipelineClaim::MarginalFold(vec![Scope::singleton(0), Scope::singleton(1)]),
        products: vec![(seed_x, seed_y)],
        projective: Some(true),
        piecewise: Some(false),
    };

    let mut piecewise_only = counterexample_3();
    piecewise_only.name = "quadrant-piecewise-only";

    let mut vt = VariableTable::new();
    vt.add_var("x", 2).expect("positive cardinality");
    vt.add_var("y", 2).expect("positive cardinality");
    vt.add_var("z", 2).expect("positive cardinality");
    let vars3 = Arc::new(vt);
    let s = Semiring::maxtimes_nat();
    let mut rng = ChaCha8Rng::seed_from_u64(97);
    let mut random = |scope: Scope| -> Valuation {
        let size = vars3.frame_size(&scope).expect("small frame");
        let table = (0..size)
            .map(|_| Value::Nat(rng.gen_range(1..=6)))
            .collect();
        Valuation::new(vars3.clone(), s.clone(), scope, table).expect("table matches the frame")
    };
    let products: Vec<(Valuation, Valuation)> = (0..20)
        .map(|_| (random(Scope::new([0, 1])), random(Scope::new([1, 2]))))
        .collect();
    let both = Fixture {
        name: "quadrant-both",
        vars: vars3,
        factors: vec![products[0].0.clone(), products[0].1.clone()],
        split: (Scope::new([0, 1]), Scope::new([1, 2])),
        system: FixtureSystem::Optimization(OptimizationSystem),
        solutions: None,
        completions: None,
        pipeline: PipelineClaim::None,
        products,
        projective: Some(true),
        piecewise: Some(true),
    };

    vec![neither, projective_only, piecewise_only, both]
}

/// Every fixture this module defines, in reporting order.
pub fn all() -> Vec<Fixture> {
    let mut out = vec![counterexample_1(), counterexample_2(), counterexample_3()];
    out.extend(completability_quadrants());
    out
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

fn format_set(vars: &VariableTable, set: &SolutionSet) -> String {
    let body = set
        .tuples()
        .iter()
        .map(|t| vars.format_tuple(t))
        .collect::<Vec<_>>()
        .join(", ");
    format!("{{{body}}}")
}

/// Recomputes every recorded expectation of `fixture` with the engine
/// and the checkers; returns one line per discrepancy (empty means the
/// fixture is fully reproduced).
pub fn verify(fixture: &Fixture) -> Result<Vec<String>, SolutionError> {
    let mut failures = Vec::new();
    let es = fixture.system.as_dyn();
    let phi = fixture.product()?;

    if let Some(expected) = &fixture.solutions {
        let got = es.solutions(&phi)?;
        if !got.set_eq(expected) {
            failures.push(format!(
                "solutions: expected {}, got {}",
                format_set(&fixture.vars, expected),
                format_set(&fixture.vars, &got)
            ));
        }
        if fixture.system.is_optimization() {
            let tuples = oracle::brute_solutions(&fixture.factors).map_err(|e| {
                SolutionError::VerificationFailed {
                    detail: e.to_string(),
                }
            })?;
            let reference = SolutionSet::new(phi.label().clone(), tuples, false)?;
            if !got.set_eq(&reference) {
                failures.push(format!(
                    "solutions disagree with the brute-force reference {}",
                    format_set(&fixture.vars, &reference)
                ));
            }
        }
    }

    if let Some(expected) = &fixture.completions {
        let (x, y) = &fixture.split;
        let cx = es.solutions(&phi.project(x)?)?;
        let got = completions(&cx, &phi.project(y)?, es)?;
        if !got.set_eq(expected) {
            failures.push(format!(
                "completions: expected {}, got {}",
                format_set(&fixture.vars, expected),
                format_set(&fixture.vars, &got)
            ));
        }
    }

    match &fixture.pipeline {
        PipelineClaim::None => {}
        PipelineClaim::MarginalFold(scopes) => {
            let parent: Vec<Option<usize>> = (0..scopes.len()).map(|i| i.checked_sub(1)).collect();
            let tree = JoinTree::new(parent, scopes.clone(), vec![])?;
            let marginals = scopes
                .iter()
                .map(|s| phi.project(s))
                .collect::<Result<Vec<_>, _>>()?;
            let got = extend_to_global_projection(&tree, &marginals, es)?;
            if let Some(expected) = &fixture.completions {
                if !got.set_eq(expected) {
                    failures.push(format!(
                        "marginal fold: expected {}, got {}",
                        format_set(&fixture.vars, expected),
                        format_set(&fixture.vars, &got)
                    ));
                }
            }
        }
        PipelineClaim::FullTree => {
            let scopes: Vec<Scope> = fixture.factors.iter().map(|f| f.label().clone()).collect();
            let tree = build_join_tree(&scopes, Heuristic::MinFill, None)?;
            let prop = message_passing::collect(&tree, &fixture.factors)?;
            let dist = message_passing::collect_distribute(&tree, &fixture.factors)?;
            let egp = extend_to_global_projection(&tree, dist.marginals(), es)?;
            if let Some(expected) = &fixture.completions {
                if !egp.set_eq(expected) {
                    failures.push(format!(
                        "global-projection extension: expected {}, got {}",
                        format_set(&fixture.vars, expected),
                        format_set(&fixture.vars, &egp)
                    ));
                }
            }
            let ets = extend_to_subtree(&prop, es)?;
            if let Some(expected) = &fixture.solutions {
                if ets.is_empty() || !ets.is_subset(expected) {
                    failures.push(format!(
                        "subtree extension {} is not a non-empty subset of {}",
                        format_set(&fixture.vars, &ets),
                        format_set(&fixture.vars, expected)
                    ));
                }
            }
        }
    }

    if !fixture.system.is_optimization() {
        let law = check_fces(es, &[phi])?;
        if !law.holds {
            failures.push(format!("decomposition law: {}", law.format()));
        }
    }

    if let Some(expected) = fixture.projective {
        let report = check_projective_completability(es, &fixture.products)?;
        if report.holds() != expected {
            failures.push(format!(
                "projective completability: expected {}, got {} / {}",
                expected,
                report.subset.format(),
                report.superset.format()
            ));
        }
    }
    if let Some(expected) = fixture.piecewise {
        let report = check_piecewise_completability(es, &fixture.products, PiecewiseFlavor::Plain)?;
        if report.holds != expected {
            failures.push(format!(
                "piecewise completability: expected {}, got {}",
                expected,
                report.format()
            ));
        }
    }

    Ok(failures)
}
