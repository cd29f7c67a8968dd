//! Solution concepts, extension systems, and the extraction algorithms.
//!
//! A solution-finding task asks for configurations attaining the
//! projection of the joint valuation to the empty scope. The three
//! extraction algorithms reuse the message-passing results: both
//! Extend-To-Subtree and Single-Extend-To-Subtree fold completions over
//! the collected node contents, while Extend-To-Global-Projection folds
//! them over the node marginals. Their soundness depends on semiring
//! conditions; [`solve`] dispatches accordingly and annotates results.

mod checks;

pub use checks::{
    check_cpk, check_fces, check_piecewise_completability, check_projective_completability,
    CpkCondition, LawCheck, PiecewiseFlavor, ProjectiveReport,
};

use std::fmt;

use crate::caps;
use crate::join_tree::{build_join_tree, JoinTree, TreeError};
use crate::message_passing::{self, MessagePassingError, Propagation};
use crate::semiring::classify::{classify, Algorithm, TaskKind};
use crate::semiring::props::CheckOptions;
use crate::semiring::{SemiringError, Value};
use crate::tuples::{Scope, Tuple, TupleError};
use crate::valuation::{Valuation, ValuationError};

#[derive(Debug)]
pub enum SolutionError {
    NoFactors,
    ScopeViolation {
        detail: String,
    },
    /// A lookup extension system was asked about a valuation or point
    /// outside its family.
    UnknownValuation {
        detail: String,
    },
    /// An extension set came back empty where a completion was required.
    EmptyExtension {
        detail: String,
    },
    VerificationFailed {
        detail: String,
    },
    /// The semiring does not admit solution tasks (not selective, or
    /// refused by classification).
    NotSolvable {
        detail: String,
    },
    Tuple(TupleError),
    Semiring(SemiringError),
    Valuation(ValuationError),
    Tree(TreeError),
    MessagePassing(MessagePassingError),
}

impl fmt::Display for SolutionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolutionError::NoFactors => write!(f, "no factors given"),
            SolutionError::ScopeViolation { detail } => write!(f, "{detail}"),
            SolutionError::UnknownValuation { detail } => {
                write!(f, "extension system has no entry: {detail}")
            }
            SolutionError::EmptyExtension { detail } => {
                write!(f, "empty extension set: {detail}")
            }
            SolutionError::VerificationFailed { detail } => {
                write!(f, "verification failed: {detail}")
            }
            SolutionError::NotSolvable { detail } => write!(f, "{detail}"),
            SolutionError::Tuple(e) => write!(f, "{e}"),
            SolutionError::Semiring(e) => write!(f, "{e}"),
            SolutionError::Valuation(e) => write!(f, "{e}"),
            SolutionError::Tree(e) => write!(f, "{e}"),
            SolutionError::MessagePassing(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SolutionError {}

impl From<TupleError> for SolutionError {
    fn from(e: TupleError) -> Self {
        SolutionError::Tuple(e)
    }
}

impl From<SemiringError> for SolutionError {
    fn from(e: SemiringError) -> Self {
        SolutionError::Semiring(e)
    }
}

impl From<ValuationError> for SolutionError {
    fn from(e: ValuationError) -> Self {
        SolutionError::Valuation(e)
    }
}

impl From<TreeError> for SolutionError {
    fn from(e: TreeError) -> Self {
        SolutionError::Tree(e)
    }
}

impl From<MessagePassingError> for SolutionError {
    fn from(e: MessagePassingError) -> Self {
        SolutionError::MessagePassing(e)
    }
}

// ---------------------------------------------------------------------------
// Solution sets
// ---------------------------------------------------------------------------

/// An explicit set of tuples over a common scope, kept sorted by frame
/// index and deduplicated. `truncated` marks sets cut off by the
/// solution cap.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSet {
    scope: Scope,
    tuples: Vec<Tuple>,
    truncated: bool,
    optimum: Option<Value>,
}

impl SolutionSet {
    pub fn new(
        scope: Scope,
        mut tuples: Vec<Tuple>,
        truncated: bool,
    ) -> Result<SolutionSet, SolutionError> {
        for t in &tuples {
            if t.scope() != &scope {
                return Err(SolutionError::ScopeViolation {
                    detail: "solution tuples must share the set scope".into(),
                });
            }
        }
        // Lexicographic order on the value vectors coincides with frame
        // index order because both compare digit by digit.
        tuples.sort_by(|a, b| a.values().cmp(b.values()));
        tuples.dedup();
        Ok(SolutionSet {
            scope,
            tuples,
            truncated,
            optimum: None,
        })
    }

    /// The set containing exactly the empty tuple: the seed of every
    /// completion fold.
    pub fn unit() -> SolutionSet {
        SolutionSet {
            scope: Scope::empty(),
            tuples: vec![Tuple::empty()],
            truncated: false,
            optimum: None,
        }
    }

    pub fn with_optimum(mut self, value: Value) -> SolutionSet {
        self.optimum = Some(value);
        self
    }

    pub fn scope(&self) -> &Scope {
        &self.scope
    }

    pub fn tuples(&self) -> &[Tuple] {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn optimum(&self) -> Option<&Value> {
        self.optimum.as_ref()
    }

    pub fn contains(&self, tuple: &Tuple) -> bool {
        tuple.scope() == &self.scope
            && self
                .tuples
                .binary_search_by(|t| t.values().cmp(tuple.values()))
                .is_ok()
    }

    /// Equality as sets over the same scope; ignores optimum and flags.
    pub fn set_eq(&self, other: &SolutionSet) -> bool {
        self.scope == other.scope && self.tuples == other.tuples
    }

    pub fn is_subset(&self, other: &SolutionSet) -> bool {
        self.scope == other.scope && self.tuples.iter().all(|t| other.contains(t))
    }
}

// ---------------------------------------------------------------------------
// Extension systems
// ---------------------------------------------------------------------------

/// A family of extension sets `W_phi^X(x)` over `Omega_{d(phi) - X}`,
/// with the derived solution concept `c_phi = W_phi^empty(<>)`.
pub trait ExtensionSystem {
    /// `W_phi^X(x)` where `X` is the scope of `x`; tuples come back in
    /// frame-index order over `d(phi) - X`.
    fn extension_set(&self, phi: &Valuation, x: &Tuple) -> Result<Vec<Tuple>, SolutionError>;

    /// True when a null valuation makes every configuration a solution,
    /// enabling the constant-zero fast path of Extend-To-Subtree.
    fn null_means_all(&self) -> bool {
        false
    }

    /// The solution set of `phi`.
    fn solutions(&self, phi: &Valuation) -> Result<SolutionSet, SolutionError> {
        let tuples = self.extension_set(phi, &Tuple::empty())?;
        SolutionSet::new(phi.label().clone(), tuples, false)
    }
}

/// The optimization extension system:
/// `W_phi^X(x) = {z | phi(<x,z>) = phi^{down X}(x)}`. Over selective
/// semirings the projection value is attained, so every extension set is
/// non-empty.
#[derive(Debug, Clone, Copy, Default)]
pub struct OptimizationSystem;

impl ExtensionSystem for OptimizationSystem {
    fn extension_set(&self, phi: &Valuation, x: &Tuple) -> Result<Vec<Tuple>, SolutionError> {
        let anchor_scope = x.scope();
        if !anchor_scope.is_subset_of(phi.label()) {
            return Err(SolutionError::ScopeViolation {
                detail: format!(
                    "extension point over {} not within the valuation scope {}",
                    phi.vars().format_scope(anchor_scope),
                    phi.vars().format_scope(phi.label())
                ),
            });
        }
        let marginal = phi.project(anchor_scope)?;
        let target = marginal.value_at(x)?.clone();
        let rest = phi.label().diff(anchor_scope);
        let mut out = Vec::new();
        for z in phi.vars().enumerate(&rest)? {
            let v = phi.value_at(&x.concat(&z)?)?;
            if phi.semiring().values_eq(v, &target) {
                out.push(z);
            }
        }
        Ok(out)
    }

    fn null_means_all(&self) -> bool {
        true
    }
}

/// Extension sets of one valuation, keyed by anchor tuple.
type ExtensionTable = Vec<(Tuple, Vec<Tuple>)>;

/// A finite extension-system family given by explicit lookup tables.
/// Valuations are matched by scope and table contents; asking about
/// anything outside the family is a hard error. Used for handcrafted
/// systems that are only defined on a fixed valuation set.
#[derive(Debug, Clone, Default)]
pub struct LookupSystem {
    entries: Vec<(Valuation, ExtensionTable)>,
}

impl LookupSystem {
    pub fn new() -> LookupSystem {
        LookupSystem::default()
    }

    /// Registers `W_phi^X(x) = w` where `X` is the scope of `x`.
    pub fn insert(&mut self, phi: &Valuation, x: Tuple, w: Vec<Tuple>) {
        match self
            .entries
            .iter_mut()
            .find(|(p, _)| p.label() == phi.label() && p.tables_eq(phi))
        {
            Some((_, points)) => match points.iter_mut().find(|(p, _)| p == &x) {
                Some((_, existing)) => *existing = w,
                None => points.push((x, w)),
            },
            None => self.entries.push((phi.clone(), vec![(x, w)])),
        }
    }
}

impl ExtensionSystem for LookupSystem {
    fn extension_set(&self, phi: &Valuation, x: &Tuple) -> Result<Vec<Tuple>, SolutionError> {
        let entry = self
            .entries
            .iter()
            .find(|(p, _)| p.label() == phi.label() && p.tables_eq(phi))
            .ok_or_else(|| SolutionError::UnknownValuation {
                detail: format!(
                    "no family member over {}",
                    phi.vars().format_scope(phi.label())
                ),
            })?;
        let point = entry.1.iter().find(|(p, _)| p == x).ok_or_else(|| {
            SolutionError::UnknownValuation {
                detail: format!("no entry at point {}", phi.vars().format_tuple(x)),
            }
        })?;
        Ok(point.1.clone())
    }
}

// ---------------------------------------------------------------------------
// Completions and the three extraction algorithms
// ---------------------------------------------------------------------------

/// `CO(A, phi)`: every tuple of `A` concatenated with each of its
/// extensions through `phi`, over the union scope. Generation stops at
/// the solution cap (flagging truncation) and the result is re-sorted
/// into frame-index order.
pub fn completions(
    a: &SolutionSet,
    phi: &Valuation,
    es: &dyn ExtensionSystem,
) -> Result<SolutionSet, SolutionError> {
    let overlap = phi.label().inter(a.scope());
    let out_scope = phi.label().union(a.scope());
    let cap = caps::solution_cap();
    let mut tuples = Vec::new();
    let mut truncated = a.truncated();
    'outer: for x in a.tuples() {
        let anchor = x.project(&overlap)?;
        for z in es.extension_set(phi, &anchor)? {
            if tuples.len() == cap {
                truncated = true;
                break 'outer;
            }
            tuples.push(x.concat(&z)?);
        }
    }
    SolutionSet::new(out_scope, tuples, truncated)
}

/// Folds completions over the node marginals in downward order. Exact
/// when the semiring is square multiplicatively cancellative on its
/// image; in general the result can be a strict superset of the
/// solution set (it is never smaller for the optimization system).
pub fn extend_to_global_projection(
    tree: &JoinTree,
    marginals: &[Valuation],
    es: &dyn ExtensionSystem,
) -> Result<SolutionSet, SolutionError> {
    if marginals.len() != tree.len() {
        return Err(SolutionError::ScopeViolation {
            detail: format!("{} marginals for {} nodes", marginals.len(), tree.len()),
        });
    }
    let order = tree.downward_order();
    let optimum = marginals[order[0]].total()?;
    let mut a = es.solutions(&marginals[order[0]])?;
    for &i in &order[1..] {
        a = completions(&a, &marginals[i], es)?;
    }
    Ok(a.with_optimum(optimum))
}

/// Folds completions over the collected node contents in downward
/// order. For the optimization system the result is always a non-empty
/// subset of the solution set, and equals it when the semiring is
/// weakly multiplicatively cancellative and the joint valuation is not
/// null; constant-zero valuations short-circuit to the whole frame.
pub fn extend_to_subtree(
    prop: &Propagation,
    es: &dyn ExtensionSystem,
) -> Result<SolutionSet, SolutionError> {
    let tree = prop.tree();
    let order = tree.downward_order();
    let root_content = prop.collected(order[0]);
    let optimum = root_content.total()?;
    if es.null_means_all() && root_content.semiring().is_zero(&optimum) {
        let joint = (0..tree.len()).fold(Scope::empty(), |acc, i| acc.union(tree.label(i)));
        let vars = root_content.vars();
        let cap = caps::solution_cap();
        let mut tuples = Vec::new();
        let mut truncated = false;
        for t in vars.enumerate(&joint)? {
            if tuples.len() == cap {
                truncated = true;
                break;
            }
            tuples.push(t);
        }
        return Ok(SolutionSet::new(joint, tuples, truncated)?.with_optimum(optimum));
    }
    let mut a = es.solutions(root_content)?;
    for &i in &order[1..] {
        a = completions(&a, prop.collected(i), es)?;
    }
    Ok(a.with_optimum(optimum))
}

/// Tracks a single configuration through the tree: start with the
/// lowest-index solution of the root content, then at every node take
/// the completion with the lowest frame index. The result is always a
/// solution for the optimization system over a selective semiring.
pub fn single_extend_to_subtree(
    prop: &Propagation,
    es: &dyn ExtensionSystem,
) -> Result<Tuple, SolutionError> {
    let tree = prop.tree();
    let order = tree.downward_order();
    let root_content = prop.collected(order[0]);
    let mut x = es
        .extension_set(root_content, &Tuple::empty())?
        .into_iter()
        .next()
        .ok_or_else(|| SolutionError::EmptyExtension {
            detail: format!("no solution of the root content at node {}", order[0]),
        })?;
    for &i in &order[1..] {
        let phi = prop.collected(i);
        let anchor = x.project(&phi.label().inter(x.scope()))?;
        let z = es
            .extension_set(phi, &anchor)?
            .into_iter()
            .next()
            .ok_or_else(|| SolutionError::EmptyExtension {
                detail: format!("no completion at node {i}"),
            })?;
        x = x.concat(&z)?;
    }
    Ok(x)
}

// ---------------------------------------------------------------------------
// The task dispatcher
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Task {
    Project,
    Single,
    Partial,
    Complete,
}

impl Task {
    pub fn as_str(&self) -> &'static str {
        match self {
            Task::Project => "project",
            Task::Single => "single",
            Task::Partial => "partial",
            Task::Complete => "complete",
        }
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub heuristic: crate::join_tree::Heuristic,
    /// Projection target for the project task; for the other tasks,
    /// variables to keep in the root label.
    pub query: Option<Scope>,
    /// Re-check every returned tuple against the optimum.
    pub verify: bool,
    pub classify_budget: u64,
    pub classify_seed: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            heuristic: crate::join_tree::Heuristic::MinFill,
            query: None,
            verify: false,
            classify_budget: 10_000,
            classify_seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub enum SolveOutput {
    Projection(Valuation),
    Single(Tuple),
    Set(SolutionSet),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifySummary {
    pub checked: usize,
    pub dropped: usize,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub task: Task,
    pub algorithm: Option<Algorithm>,
    /// Soundness annotation for solution tasks.
    pub annotation: Option<String>,
    pub optimum: Option<Value>,
    pub output: SolveOutput,
    pub verification: Option<VerifySummary>,
}

/// The joint value at `x`: the product of the factor values.
pub fn factor_product_at(factors: &[Valuation], x: &Tuple) -> Result<Value, SolutionError> {
    let first = factors.first().ok_or(SolutionError::NoFactors)?;
    let semiring = first.semiring();
    let mut acc = semiring.one();
    for f in factors {
        acc = semiring.mul(&acc, f.value_at(x)?)?;
    }
    Ok(acc)
}

fn filter_by_optimum(
    factors: &[Valuation],
    set: SolutionSet,
    optimum: &Value,
) -> Result<(SolutionSet, VerifySummary), SolutionError> {
    let semiring = factors[0].semiring();
    let checked = set.len();
    let mut kept = Vec::new();
    for t in set.tuples() {
        if semiring.values_eq(&factor_product_at(factors, t)?, optimum) {
            kept.push(t.clone());
        }
    }
    let dropped = checked - kept.len();
    let filtered =
        SolutionSet::new(set.scope().clone(), kept, set.truncated())?.with_optimum(optimum.clone());
    Ok((filtered, VerifySummary { checked, dropped }))
}

/// Projects the root content onto a query scope; the query must be
/// covered by the root label (guaranteed when the tree was built with
/// the query injected).
pub fn project_query(prop: &Propagation, query: &Scope) -> Result<Valuation, SolutionError> {
    let root = prop.root_marginal();
    if !query.is_subset_of(root.label()) {
        return Err(SolutionError::ScopeViolation {
            detail: format!(
                "query {} not covered by the root label {}",
                root.vars().format_scope(query),
                root.vars().format_scope(root.label())
            ),
        });
    }
    Ok(root.project(query)?)
}

/// Solves one task end to end: builds a join tree, propagates, and runs
/// the extraction algorithm chosen by the semiring's soundness matrix.
/// Solution tasks refuse semirings that fail classification. The
/// complete task falls back to Extend-To-Subtree plus a direct-evaluation
/// filter when neither soundness condition passes, so no reported tuple
/// is ever a false positive.
pub fn solve(
    factors: &[Valuation],
    task: Task,
    options: &SolveOptions,
) -> Result<SolveReport, SolutionError> {
    if factors.is_empty() {
        return Err(SolutionError::NoFactors);
    }
    let semiring = factors[0].semiring().clone();
    let scopes: Vec<Scope> = factors.iter().map(|f| f.label().clone()).collect();
    let joint = scopes.iter().fold(Scope::empty(), |acc, s| acc.union(s));
    let vars = factors[0].vars().clone();

    if task == Task::Project {
        let query = options.query.clone().unwrap_or_else(Scope::empty);
        if !query.is_subset_of(&joint) {
            return Err(SolutionError::ScopeViolation {
                detail: format!(
                    "query {} not within the joint scope {}",
                    vars.format_scope(&query),
                    vars.format_scope(&joint)
                ),
            });
        }
        let tree = build_join_tree(&scopes, options.heuristic, Some(&query))?;
        let prop = message_passing::collect(&tree, factors)?;
        let marginal = project_query(&prop, &query)?;
        return Ok(SolveReport {
            task,
            algorithm: None,
            annotation: None,
            optimum: None,
            output: SolveOutput::Projection(marginal),
            verification: None,
        });
    }

    let matrix = classify(
        &semiring,
        &CheckOptions {
            budget: options.classify_budget,
            seed: options.classify_seed,
        },
    )
    .map_err(|e| SolutionError::NotSolvable {
        detail: e.to_string(),
    })?;
    let es = OptimizationSystem;
    let tree = build_join_tree(&scopes, options.heuristic, options.query.as_ref())?;
    let prop = message_passing::collect(&tree, factors)?;
    let optimum = prop.root_marginal().total()?;

    let entry = |alg: Algorithm, kind: TaskKind| matrix.entry(alg, kind).clone();

    match task {
        Task::Project => unreachable!("handled above"),
        Task::Single => {
            let x = single_extend_to_subtree(&prop, &es)?;
            let verification = if options.verify {
                let v = factor_product_at(factors, &x)?;
                if !semiring.values_eq(&v, &optimum) {
                    return Err(SolutionError::VerificationFailed {
                        detail: format!(
                            "configuration {} evaluates to {} instead of the optimum {}",
                            vars.format_tuple(&x),
                            semiring.format_value(&v),
                            semiring.format_value(&optimum)
                        ),
                    });
                }
                Some(VerifySummary {
                    checked: 1,
                    dropped: 0,
                })
            } else {
                None
            };
            let e = entry(Algorithm::SingleExtendToSubtree, TaskKind::Single);
            Ok(SolveReport {
                task,
                algorithm: Some(Algorithm::SingleExtendToSubtree),
                annotation: Some(e.verdict.as_str().to_string()),
                optimum: Some(optimum),
                output: SolveOutput::Single(x),
                verification,
            })
        }
        Task::Partial => {
            let set = extend_to_subtree(&prop, &es)?;
            let (set, verification) = if options.verify {
                let (s, v) = filter_by_optimum(factors, set, &optimum)?;
                (s, Some(v))
            } else {
                (set, None)
            };
            let e = entry(Algorithm::ExtendToSubtree, TaskKind::Partial);
            Ok(SolveReport {
                task,
                algorithm: Some(Algorithm::ExtendToSubtree),
                annotation: Some(e.verdict.as_str().to_string()),
                optimum: Some(optimum.clone()),
                output: SolveOutput::Set(set.with_optimum(optimum)),
                verification,
            })
        }
        Task::Complete => {
            let ets = entry(Algorithm::ExtendToSubtree, TaskKind::Complete);
            let egp = entry(Algorithm::ExtendToGlobalProjection, TaskKind::Complete);
            let (algorithm, annotation, set) = if ets.verdict.usable() {
                let set = extend_to_subtree(&prop, &es)?;
                (
                    Algorithm::ExtendToSubtree,
                    ets.verdict.as_str().to_string(),
                    set,
                )
            } else if egp.verdict.usable() {
                let dist = message_passing::collect_distribute(&tree, factors)?;
                let set = extend_to_global_projection(dist.tree(), dist.marginals(), &es)?;
                (
                    Algorithm::ExtendToGlobalProjection,
                    egp.verdict.as_str().to_string(),
                    set,
                )
            } else {
                let raw = extend_to_subtree(&prop, &es)?;
                let (set, _) = filter_by_optimum(factors, raw, &optimum)?;
                (
                    Algorithm::ExtendToSubtree,
                    "sound subset, completeness not guaranteed".to_string(),
                    set,
                )
            };
            let (set, verification) = if options.verify {
                let (s, v) = filter_by_optimum(factors, set, &optimum)?;
                (s, Some(v))
            } else {
                (set, None)
            };
            Ok(SolveReport {
                task,
                algorithm: Some(algorithm),
                annotation: Some(annotation),
                optimum: Some(optimum.clone()),
                output: SolveOutput::Set(set.with_optimum(optimum)),
                verification,
            })
        }
    }
}
