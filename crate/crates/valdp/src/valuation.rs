//! Semiring valuations: dense tables over a scope.
//!
//! A valuation `phi` maps every tuple of its frame to a semiring value.
//! Combination multiplies pointwise on the union scope; projection sums
//! out the removed variables. Together with the identity valuation these
//! operations satisfy the valuation-algebra axioms whenever the semiring
//! axioms hold; the test suites check both.

use std::fmt;
use std::sync::Arc;

use crate::caps;
use crate::semiring::{Semiring, SemiringError, Value};
use crate::tuples::{Scope, Tuple, TupleError, VariableTable};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValuationError {
    Tuple(TupleError),
    Semiring(SemiringError),
    /// Operands live over different variable tables or semirings.
    Mismatch {
        detail: String,
    },
    /// A result table would exceed the configured cap.
    TableCap {
        scope: Scope,
        entries: usize,
        cap: usize,
    },
    WrongValueCount {
        expected: usize,
        got: usize,
    },
}

impl fmt::Display for ValuationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValuationError::Tuple(e) => write!(f, "{e}"),
            ValuationError::Semiring(e) => write!(f, "{e}"),
            ValuationError::Mismatch { detail } => write!(f, "operand mismatch: {detail}"),
            ValuationError::TableCap {
                scope,
                entries,
                cap,
            } => {
                write!(
                    f,
                    "table over scope {scope:?} needs {entries} entries, cap is {cap}"
                )
            }
            ValuationError::WrongValueCount { expected, got } => {
                write!(f, "expected {expected} values, got {got}")
            }
        }
    }
}

impl std::error::Error for ValuationError {}

impl From<TupleError> for ValuationError {
    fn from(e: TupleError) -> Self {
        ValuationError::Tuple(e)
    }
}

impl From<SemiringError> for ValuationError {
    fn from(e: SemiringError) -> Self {
        ValuationError::Semiring(e)
    }
}

/// A dense table mapping every tuple of `Omega_scope` to a semiring
/// value. Values are stored in tuple-index order (last scope variable
/// fastest). Immutable once built; cheap scope-only reads.
#[derive(Debug, Clone, PartialEq)]
pub struct Valuation {
    vars: Arc<VariableTable>,
    semiring: Semiring,
    scope: Scope,
    table: Vec<Value>,
}

impl Valuation {
    /// Builds a valuation from values listed in tuple-index order.
    pub fn new(
        vars: Arc<VariableTable>,
        semiring: Semiring,
        scope: Scope,
        table: Vec<Value>,
    ) -> Result<Valuation, ValuationError> {
        let size = checked_frame_size(&vars, &scope)?;
        if table.len() != size {
            return Err(ValuationError::WrongValueCount {
                expected: size,
                got: table.len(),
            });
        }
        Ok(Valuation {
            vars,
            semiring,
            scope,
            table,
        })
    }

    /// The identity valuation `e`: empty scope, value `one`.
    pub fn identity(vars: Arc<VariableTable>, semiring: Semiring) -> Valuation {
        let one = semiring.one();
        Valuation {
            vars,
            semiring,
            scope: Scope::empty(),
            table: vec![one],
        }
    }

    /// A valuation constant over its frame.
    pub fn constant(
        vars: Arc<VariableTable>,
        semiring: Semiring,
        scope: Scope,
        value: Value,
    ) -> Result<Valuation, ValuationError> {
        let size = checked_frame_size(&vars, &scope)?;
        Ok(Valuation {
            vars,
            semiring,
            scope,
            table: vec![value; size],
        })
    }

    /// Builds a valuation by evaluating `f` on every tuple of the frame,
    /// in index order.
    pub fn from_fn(
        vars: Arc<VariableTable>,
        semiring: Semiring,
        scope: Scope,
        mut f: impl FnMut(&Tuple) -> Value,
    ) -> Result<Valuation, ValuationError> {
        checked_frame_size(&vars, &scope)?;
        let table = vars.enumerate(&scope)?.map(|t| f(&t)).collect();
        Ok(Valuation {
            vars,
            semiring,
            scope,
            table,
        })
    }

    /// The label (domain) `d(phi)`.
    pub fn label(&self) -> &Scope {
        &self.scope
    }

    pub fn semiring(&self) -> &Semiring {
        &self.semiring
    }

    pub fn vars(&self) -> &Arc<VariableTable> {
        &self.vars
    }

    pub fn table(&self) -> &[Value] {
        &self.table
    }

    pub fn frame_size(&self) -> usize {
        self.table.len()
    }

    /// Value at a tuple whose scope covers this valuation's scope.
    pub fn value_at(&self, tuple: &Tuple) -> Result<&Value, ValuationError> {
        let key = if tuple.scope() == &self.scope {
            tuple.clone()
        } else {
            tuple.project(&self.scope)?
        };
        Ok(&self.table[self.vars.tuple_index(&key)?])
    }

    fn check_compatible(&self, other: &Valuation) -> Result<(), ValuationError> {
        if self.semiring != other.semiring {
            return Err(ValuationError::Mismatch {
                detail: format!(
                    "cannot mix semirings {} and {}",
                    self.semiring.name(),
                    other.semiring.name()
                ),
            });
        }
        if !Arc::ptr_eq(&self.vars, &other.vars) && self.vars != other.vars {
            return Err(ValuationError::Mismatch {
                detail: "operands use different variable tables".into(),
            });
        }
        Ok(())
    }

    /// Combination: `(phi x psi)(t) = phi(t|d(phi)) . psi(t|d(psi))` over
    /// the union scope.
    pub fn combine(&self, other: &Valuation) -> Result<Valuation, ValuationError> {
        self.check_compatible(other)?;
        let scope = self.scope.union(&other.scope);
        let size = checked_frame_size(&self.vars, &scope)?;
        let mut table = Vec::with_capacity(size);
        for t in self.vars.enumerate(&scope)? {
            let a = self.value_at(&t)?;
            let b = other.value_at(&t)?;
            table.push(self.semiring.mul(a, b)?);
        }
        Ok(Valuation {
            vars: self.vars.clone(),
            semiring: self.semiring.clone(),
            scope,
            table,
        })
    }

    /// Projection `phi^(down target)`: sums out `d(phi) - target`.
    /// Requires `target` to be a subset of the scope.
    pub fn project(&self, target: &Scope) -> Result<Valuation, ValuationError> {
        if !target.is_subset_of(&self.scope) {
            return Err(ValuationError::Tuple(TupleError::NotSubset {
                scope: self.scope.clone(),
                target: target.clone(),
            }));
        }
        let size = self.vars.frame_size(target)?;
        let mut table: Vec<Option<Value>> = vec![None; size];
        for t in self.vars.enumerate(&self.scope)? {
            let cell = self.vars.tuple_index(&t.project(target)?)?;
            let v = &self.table[self.vars.tuple_index(&t)?];
            table[cell] = Some(match table[cell].take() {
                None => v.clone(),
                Some(acc) => self.semiring.add(&acc, v)?,
            });
        }
        let table = table
            .into_iter()
            .map(|v| v.expect("every cell has extensions"))
            .collect();
        Ok(Valuation {
            vars: self.vars.clone(),
            semiring: self.semiring.clone(),
            scope: target.clone(),
            table,
        })
    }

    /// `phi^(down empty)(<>)`: the fold of the whole table under `add`.
    pub fn total(&self) -> Result<Value, ValuationError> {
        let mut acc: Option<Value> = None;
        for v in &self.table {
            acc = Some(match acc {
                None => v.clone(),
                Some(a) => self.semiring.add(&a, v)?,
            });
        }
        Ok(acc.expect("frames are non-empty"))
    }

    /// True iff the projection to the empty scope is `zero`.
    pub fn is_null(&self) -> Result<bool, ValuationError> {
        Ok(self.semiring.is_zero(&self.total()?))
    }

    /// Semantic table equality: same scope and pointwise `values_eq`.
    pub fn tables_eq(&self, other: &Valuation) -> bool {
        self.scope == other.scope
            && self.semiring == other.semiring
            && self.table.len() == other.table.len()
            && self
                .table
                .iter()
                .zip(&other.table)
                .all(|(a, b)| self.semiring.values_eq(a, b))
    }
}

fn checked_frame_size(vars: &VariableTable, scope: &Scope) -> Result<usize, ValuationError> {
    let size = vars.frame_size(scope)?;
    let cap = caps::table_cap();
    if size > cap {
        return Err(ValuationError::TableCap {
            scope: scope.clone(),
            entries: size,
            cap,
        });
    }
    Ok(size)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::Ext;

    fn mp(x: i64) -> Value {
        Value::Int(Ext::Fin(x))
    }

    fn two_vars() -> (Arc<VariableTable>, usize, usize) {
        let mut vars = VariableTable::new();
        let x = vars.add_var("x", 2).unwrap();
        let y = vars.add_var("y", 2).unwrap();
        (Arc::new(vars), x, y)
    }

    /// f1 on {x} = [0, 5]; f2 on {x, y} = [0, 1, 2, 0].
    fn maxplus_pair() -> (Valuation, Valuation, Arc<VariableTable>, usize, usize) {
        let (vars, x, y) = two_vars();
        let s = Semiring::maxplus();
        let f1 =
            Valuation::new(vars.clone(), s.clone(), Scope::new([x]), vec![mp(0), mp(5)]).unwrap();
        let f2 = Valuation::new(
            vars.clone(),
            s,
            Scope::new([x, y]),
            vec![mp(0), mp(1), mp(2), mp(0)],
        )
        .unwrap();
        (f1, f2, vars, x, y)
    }

    #[test]
    fn combine_maxplus_tables() {
        let (f1, f2, _, x, y) = maxplus_pair();
        let prod = f2.combine(&f1).unwrap();
        assert_eq!(prod.label(), &Scope::new([x, y]));
        assert_eq!(prod.table(), &[mp(0), mp(1), mp(7), mp(5)]);
        let sym = f1.combine(&f2).unwrap();
        assert!(prod.tables_eq(&sym));
    }

    #[test]
    fn project_maxplus_table() {
        let (f1, f2, _, x, _) = maxplus_pair();
        let prod = f2.combine(&f1).unwrap();
        let marg = prod.project(&Scope::new([x])).unwrap();
        assert_eq!(marg.table(), &[mp(1), mp(7)]);
        assert_eq!(prod.total().unwrap(), mp(7));
    }

    #[test]
    fn project_to_own_scope_is_identity() {
        let (_, f2, ..) = maxplus_pair();
        let same = f2.project(f2.label()).unwrap();
        assert!(same.tables_eq(&f2));
    }

    #[test]
    fn projection_is_transitive() {
        let (f1, f2, _, x, _) = maxplus_pair();
        let prod = f2.combine(&f1).unwrap();
        let via = prod
            .project(&Scope::new([x]))
            .unwrap()
            .project(&Scope::empty())
            .unwrap();
        let direct = prod.project(&Scope::empty()).unwrap();
        assert!(via.tables_eq(&direct));
    }

    #[test]
    fn identity_is_neutral() {
        let (f1, _, vars, ..) = maxplus_pair();
        let e = Valuation::identity(vars, Semiring::maxplus());
        let prod = f1.combine(&e).unwrap();
        assert!(prod.tables_eq(&f1));
        assert!(e.label().is_empty());
    }

    #[test]
    fn combination_axiom_holds_on_example() {
        // (psi x phi)^(down Z) = phi x psi^(down Z inter Y) for
        // d(phi) = X subset Z subset X union Y.
        let (f1, f2, _, x, _) = maxplus_pair();
        let z = Scope::new([x]);
        let left = f2.combine(&f1).unwrap().project(&z).unwrap();
        let right = f1
            .combine(&f2.project(&z.inter(f2.label())).unwrap())
            .unwrap();
        assert!(left.tables_eq(&right));
    }

    #[test]
    fn is_null_detects_all_zero() {
        let (vars, x, _) = two_vars();
        let s = Semiring::maxplus();
        let zero = s.zero();
        let dead = Valuation::constant(vars.clone(), s.clone(), Scope::new([x]), zero).unwrap();
        assert!(dead.is_null().unwrap());
        let alive = Valuation::new(vars, s, Scope::new([x]), vec![mp(0), mp(1)]).unwrap();
        assert!(!alive.is_null().unwrap());
    }

    #[test]
    fn mixed_semirings_rejected() {
        let (vars, x, y) = two_vars();
        let a = Valuation::constant(
            vars.clone(),
            Semiring::boolean(),
            Scope::new([x]),
            Value::Bool(true),
        )
        .unwrap();
        let b = Valuation::constant(vars, Semiring::maxplus(), Scope::new([y]), mp(0)).unwrap();
        assert!(matches!(
            a.combine(&b),
            Err(ValuationError::Mismatch { .. })
        ));
    }

    #[test]
    fn mixed_variable_tables_rejected() {
        let (vars_a, x, _) = two_vars();
        let mut other = VariableTable::new();
        other.add_var("x", 2).unwrap();
        other.add_var("y", 3).unwrap();
        let vars_b = Arc::new(other);
        let s = Semiring::boolean();
        let a = Valuation::constant(vars_a, s.clone(), Scope::new([x]), Value::Bool(true)).unwrap();
        let b = Valuation::constant(vars_b, s, Scope::new([x]), Value::Bool(true)).unwrap();
        assert!(matches!(
            a.combine(&b),
            Err(ValuationError::Mismatch { .. })
        ));
    }

    #[test]
    fn table_cap_enforced_before_allocation() {
        let mut vars = VariableTable::new();
        for i in 0..40 {
            vars.add_var(&format!("v{i}"), 2).unwrap();
        }
        let vars = Arc::new(vars);
        let s = Semiring::boolean();
        let scope = Scope::new(0..40);
        let err = Valuation::constant(vars, s, scope, Value::Bool(true)).unwrap_err();
        assert!(matches!(err, ValuationError::TableCap { .. }));
    }

    #[test]
    fn wrong_value_count_rejected() {
        let (vars, x, _) = two_vars();
        let err = Valuation::new(
            vars,
            Semiring::boolean(),
            Scope::new([x]),
            vec![Value::Bool(true)],
        )
        .unwrap_err();
        assert!(matches!(
            err,
            ValuationError::WrongValueCount {
                expected: 2,
                got: 1
            }
        ));
    }
}
