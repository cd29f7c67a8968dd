//! Seeded random generators used by the differential test suites:
//! variable systems, factor sets, join-tree shapes, and finite table
//! semirings (several always-valid families plus deliberate single-cell
//! corruptions for negative tests).

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::semiring::{Semiring, TableData};
use crate::tuples::{Scope, VariableTable};
use crate::valuation::Valuation;

/// Bounds for [`random_instance`]. The defaults keep every frame small
/// enough for the brute-force oracle.
#[derive(Debug, Clone, Copy)]
pub struct InstanceOptions {
    pub max_vars: usize,
    pub max_cardinality: usize,
    pub max_factors: usize,
}

impl Default for InstanceOptions {
    fn default() -> Self {
        InstanceOptions {
            max_vars: 4,
            max_cardinality: 3,
            max_factors: 4,
        }
    }
}

/// A fresh variable table with `1..=max_vars` variables named `v0..`,
/// each of cardinality `2..=max_cardinality` (or 2 when the bound is
/// lower).
pub fn random_variables(rng: &mut impl Rng, opts: &InstanceOptions) -> Arc<VariableTable> {
    let count = rng.gen_range(1..=opts.max_vars.max(1));
    let hi = opts.max_cardinality.max(2);
    let mut vt = VariableTable::new();
    for i in 0..count {
        let card = rng.gen_range(2..=hi);
        vt.add_var(&format!("v{i}"), card)
            .expect("generated cardinality is positive");
    }
    Arc::new(vt)
}

/// A random non-empty scope over `vars`.
pub fn random_scope(rng: &mut impl Rng, vars: &VariableTable) -> Scope {
    let n = vars.len();
    loop {
        let picked: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        if !picked.is_empty() {
            return Scope::new(picked);
        }
    }
}

/// A random factor set over a fresh variable table: every factor has a
/// non-empty random scope and a table sampled from the semiring.
pub fn random_instance(
    rng: &mut impl Rng,
    semiring: &Semiring,
    opts: &InstanceOptions,
) -> (Arc<VariableTable>, Vec<Valuation>) {
    let vars = random_variables(rng, opts);
    let count = rng.gen_range(1..=opts.max_factors.max(1));
    let factors = (0..count)
        .map(|_| {
            let scope = random_scope(rng, &vars);
            let size = vars.frame_size(&scope).expect("generated frames are tiny");
            let table = (0..size).map(|_| semiring.sample(rng)).collect();
            Valuation::new(vars.clone(), semiring.clone(), scope, table)
                .expect("table length matches the frame")
        })
        .collect();
    (vars, factors)
}

/// A random rooted tree shape on `node_count` nodes: node 0 is the
/// root and every other node picks an earlier parent.
pub fn random_tree_shape(rng: &mut impl Rng, node_count: usize) -> Vec<Option<usize>> {
    assert!(node_count > 0, "a tree needs at least one node");
    let mut parent = vec![None];
    for i in 1..node_count {
        parent.push(Some(rng.gen_range(0..i)));
    }
    parent
}

/// A random factor-to-node assignment.
pub fn random_assignment(rng: &mut impl Rng, factor_count: usize, node_count: usize) -> Vec<usize> {
    (0..factor_count)
        .map(|_| rng.gen_range(0..node_count))
        .collect()
}

// ---------------------------------------------------------------------------
// Finite table semirings
// ---------------------------------------------------------------------------

fn table_from_ops(
    name: &str,
    n: u32,
    zero: u32,
    one: u32,
    add: impl Fn(u32, u32) -> u32,
    mul: impl Fn(u32, u32) -> u32,
) -> TableData {
    let cells = |f: &dyn Fn(u32, u32) -> u32| {
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| f(a, b))
            .collect()
    };
    TableData {
        name: Some(name.to_string()),
        elements: (0..n).map(|i| format!("e{i}")).collect(),
        zero,
        one,
        add: cells(&add),
        mul: cells(&mul),
    }
}

/// Relabels the carrier through a permutation: the result is isomorphic
/// to the input but its tables are laid out differently.
fn permute(data: &TableData, perm: &[u32]) -> TableData {
    let n = data.elements.len();
    let map = |t: &[u32]| {
        let mut out = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                out[perm[a] as usize * n + perm[b] as usize] = perm[t[a * n + b] as usize];
            }
        }
        out
    };
    TableData {
        name: data.name.clone(),
        elements: data.elements.clone(),
        zero: perm[data.zero as usize],
        one: perm[data.one as usize],
        add: map(&data.add),
        mul: map(&data.mul),
    }
}

/// One of several always-valid finite semiring families, with the
/// carrier order scrambled by a random permutation:
///
/// - chain lattices (`max`, `min`),
/// - the four-element diamond lattice (join, meet),
/// - saturating tropical addition over a chain with a bottom element,
/// - saturating multiplication on an initial segment of the naturals,
/// - integers modulo `m`.
///
/// The first four are selective or at least idempotent; the last is
/// neither, which keeps the meta-property suites honest.
pub fn random_table_semiring(rng: &mut impl Rng) -> Semiring {
    let family = rng.gen_range(0..5u32);
    let data = match family {
        0 => {
            let n = rng.gen_range(2..=5u32);
            table_from_ops("chain", n, 0, n - 1, |a, b| a.max(b), |a, b| a.min(b))
        }
        1 => {
            // Pairs (i, j) with i, j in {0, 1}, encoded as 2 * i + j;
            // join and meet act componentwise.
            let join = |a: u32, b: u32| {
                let (ai, aj) = (a / 2, a % 2);
                let (bi, bj) = (b / 2, b % 2);
                2 * ai.max(bi) + aj.max(bj)
            };
            let meet = |a: u32, b: u32| {
                let (ai, aj) = (a / 2, a % 2);
                let (bi, bj) = (b / 2, b % 2);
                2 * ai.min(bi) + aj.min(bj)
            };
            table_from_ops("diamond", 4, 0, 3, join, meet)
        }
        2 => {
            // Carrier bottom, 0, 1, ..., k encoded as 0, 1, ..., k + 1;
            // add is max along the chain, mul adds saturating at k and
            // absorbs at bottom.
            let n = rng.gen_range(3..=5u32);
            let k = n - 2;
            let mul = move |a: u32, b: u32| {
                if a == 0 || b == 0 {
                    0
                } else {
                    ((a - 1) + (b - 1)).min(k) + 1
                }
            };
            table_from_ops("tropical-sat", n, 0, 1, |a, b| a.max(b), mul)
        }
        3 => {
            let n = rng.gen_range(2..=5u32);
            let k = n - 1;
            table_from_ops(
                "times-sat",
                n,
                0,
                1,
                |a, b| a.max(b),
                move |a, b| (a * b).min(k),
            )
        }
        _ => {
            let m = rng.gen_range(2..=5u32);
            table_from_ops(
                "mod",
                m,
                0,
                1,
                move |a, b| (a + b) % m,
                move |a, b| (a * b) % m,
            )
        }
    };
    let n = data.elements.len();
    let mut perm: Vec<u32> = (0..n as u32).collect();
    perm.shuffle(rng);
    Semiring::table(permute(&data, &perm)).expect("generated families are valid semirings")
}

// ---------------------------------------------------------------------------
// Deliberate violations
// ---------------------------------------------------------------------------

/// The single-cell corruptions used by the negative meta-property
/// tests. `Closure` produces a table the constructor itself rejects;
/// the others survive construction and must be caught by the axiom
/// checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    Commutativity,
    Identity,
    Annihilator,
    Closure,
}

impl ViolationKind {
    pub fn all() -> [ViolationKind; 4] {
        [
            ViolationKind::Commutativity,
            ViolationKind::Identity,
            ViolationKind::Annihilator,
            ViolationKind::Closure,
        ]
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ViolationKind::Commutativity => "commutativity",
            ViolationKind::Identity => "identity",
            ViolationKind::Annihilator => "annihilator",
            ViolationKind::Closure => "closure",
        }
    }
}

/// Corrupts a copy of `base` so that the named axiom is certainly
/// violated. Requires a carrier of at least two elements.
pub fn inject_violation(rng: &mut impl Rng, base: &TableData, kind: ViolationKind) -> TableData {
    let n = base.elements.len() as u32;
    assert!(n >= 2, "cannot corrupt a one-element carrier");
    let mut data = base.clone();
    let other = |x: u32| (x + 1) % n;
    match kind {
        ViolationKind::Commutativity => {
            let a = rng.gen_range(0..n);
            let b = loop {
                let b = rng.gen_range(0..n);
                if b != a {
                    break b;
                }
            };
            let mirror = data.mul[(b * n + a) as usize];
            data.mul[(a * n + b) as usize] = other(mirror);
        }
        ViolationKind::Identity => {
            let a = rng.gen_range(0..n);
            let one = data.one;
            data.mul[(one * n + a) as usize] = other(a);
            data.mul[(a * n + one) as usize] = other(a);
        }
        ViolationKind::Annihilator => {
            let zero = data.zero;
            let a = loop {
                let a = rng.gen_range(0..n);
                if a != zero {
                    break a;
                }
            };
            data.mul[(zero * n + a) as usize] = other(zero);
            data.mul[(a * n + zero) as usize] = other(zero);
        }
        ViolationKind::Closure => {
            let cell = rng.gen_range(0..n * n) as usize;
            data.add[cell] = n;
        }
    }
    data
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::join_tree::JoinTree;
    use crate::semiring::{check_semiring_axioms, CheckOptions, PropertyName, Verdict};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn instances_respect_their_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let opts = InstanceOptions::default();
        for _ in 0..50 {
            let (vars, factors) = random_instance(&mut rng, &Semiring::maxplus(), &opts);
            assert!(!vars.is_empty() && vars.len() <= opts.max_vars);
            assert!((1..=opts.max_factors).contains(&factors.len()));
            for f in &factors {
                assert!(!f.label().is_empty());
                assert!(f.label().iter().all(|v| v < vars.len()));
            }
        }
    }

    #[test]
    fn tree_shapes_are_valid_rooted_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let n = rng.gen_range(1..=8);
            let parent = random_tree_shape(&mut rng, n);
            let labels = vec![Scope::empty(); n];
            let tree = JoinTree::new(parent, labels, vec![]).unwrap();
            assert_eq!(tree.len(), n);
            assert_eq!(tree.root(), 0);
        }
    }

    #[test]
    fn random_table_semirings_satisfy_the_axioms() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..40 {
            let s = random_table_semiring(&mut rng);
            let report = check_semiring_axioms(&s, &CheckOptions::default()).unwrap();
            assert!(report.holds(), "{}", report.format(&s));
            assert!(report.exhaustive);
        }
    }

    #[test]
    fn injected_violations_are_detected() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for trial in 0..20 {
            let s = random_table_semiring(&mut rng);
            let base = match s.table_data() {
                Some(d) => d.clone(),
                None => unreachable!("generator yields table semirings"),
            };
            for kind in ViolationKind::all() {
                let corrupted = inject_violation(&mut rng, &base, kind);
                if kind == ViolationKind::Closure {
                    assert!(
                        Semiring::table(corrupted).is_err(),
                        "trial {trial}: closure corruption accepted"
                    );
                    continue;
                }
                let broken = Semiring::table_unchecked(corrupted);
                let report = check_semiring_axioms(&broken, &CheckOptions::default()).unwrap();
                let property = match kind {
                    ViolationKind::Commutativity => PropertyName::MulCommutative,
                    ViolationKind::Identity => PropertyName::MulIdentity,
                    ViolationKind::Annihilator => PropertyName::ZeroAnnihilates,
                    ViolationKind::Closure => unreachable!(),
                };
                let verdict = report
                    .verdict(property)
                    .expect("axiom suite covers the property");
                assert!(
                    matches!(verdict, Verdict::Fails(w) if !w.parts.is_empty()),
                    "trial {trial}: {} corruption not caught:\n{}",
                    kind.as_str(),
                    report.format(&broken)
                );
            }
        }
    }
}
