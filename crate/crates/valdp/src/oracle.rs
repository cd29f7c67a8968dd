//! Brute-force reference computations.
//!
//! Everything here works by enumerating full frames and multiplying raw
//! table entries, deliberately sharing nothing with the join-tree or
//! message-passing code paths beyond the tuple layer and the valuation
//! container itself. Results are exact up to the enumeration cap and
//! serve as the ground truth the fast algorithms are tested against.

use std::fmt;

use crate::caps;
use crate::semiring::{Semiring, SemiringError, Value};
use crate::tuples::{Scope, Tuple, TupleError};
use crate::valuation::{Valuation, ValuationError};

#[derive(Debug, Clone, PartialEq)]
pub enum OracleError {
    NoFactors,
    MixedContext { detail: String },
    TargetNotInScope { detail: String },
    EnumerationCap { needed: usize, cap: usize },
    Tuple(TupleError),
    Semiring(SemiringError),
    Valuation(String),
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::NoFactors => write!(f, "oracle needs at least one factor"),
            OracleError::MixedContext { detail } => write!(f, "mixed factor context: {detail}"),
            OracleError::TargetNotInScope { detail } => write!(f, "{detail}"),
            OracleError::EnumerationCap { needed, cap } => {
                write!(f, "oracle would enumerate {needed} tuples, cap is {cap}")
            }
            OracleError::Tuple(e) => write!(f, "{e}"),
            OracleError::Semiring(e) => write!(f, "{e}"),
            OracleError::Valuation(detail) => write!(f, "{detail}"),
        }
    }
}

impl std::error::Error for OracleError {}

impl From<TupleError> for OracleError {
    fn from(e: TupleError) -> Self {
        OracleError::Tuple(e)
    }
}

impl From<SemiringError> for OracleError {
    fn from(e: SemiringError) -> Self {
        OracleError::Semiring(e)
    }
}

impl From<ValuationError> for OracleError {
    fn from(e: ValuationError) -> Self {
        OracleError::Valuation(e.to_string())
    }
}

fn common_semiring(factors: &[Valuation]) -> Result<Semiring, OracleError> {
    let first = factors.first().ok_or(OracleError::NoFactors)?;
    for (k, f) in factors.iter().enumerate().skip(1) {
        if f.semiring() != first.semiring() {
            return Err(OracleError::MixedContext {
                detail: format!(
                    "factor 0 is over {}, factor {k} over {}",
                    first.semiring().name(),
                    f.semiring().name()
                ),
            });
        }
        if f.vars() != first.vars() {
            return Err(OracleError::MixedContext {
                detail: format!("factor {k} uses a different variable table"),
            });
        }
    }
    Ok(first.semiring().clone())
}

/// Union of the factor labels: the scope of the joint valuation.
pub fn joint_scope(factors: &[Valuation]) -> Scope {
    factors
        .iter()
        .fold(Scope::empty(), |acc, f| acc.union(f.label()))
}

fn capped_frame(factors: &[Valuation], scope: &Scope) -> Result<usize, OracleError> {
    let vars = factors[0].vars();
    let needed = vars.frame_size(scope)?;
    let cap = caps::oracle_cap();
    if needed > cap {
        return Err(OracleError::EnumerationCap { needed, cap });
    }
    Ok(needed)
}

/// The joint value at one full tuple: the product of raw table entries.
pub fn brute_value(factors: &[Valuation], x: &Tuple) -> Result<Value, OracleError> {
    let semiring = common_semiring(factors)?;
    let vars = factors[0].vars();
    let mut acc = semiring.one();
    for f in factors {
        let sub = x.project(f.label())?;
        let idx = vars.tuple_index(&sub)?;
        acc = semiring.mul(&acc, &f.table()[idx])?;
    }
    Ok(acc)
}

/// `phi^{down target}` computed by summing the joint value over every
/// full configuration, no message passing involved.
pub fn brute_project(factors: &[Valuation], target: &Scope) -> Result<Valuation, OracleError> {
    let semiring = common_semiring(factors)?;
    let vars = factors[0].vars().clone();
    let joint = joint_scope(factors);
    if !target.is_subset_of(&joint) {
        return Err(OracleError::TargetNotInScope {
            detail: format!(
                "projection target {} not within the joint scope {}",
                vars.format_scope(target),
                vars.format_scope(&joint)
            ),
        });
    }
    capped_frame(factors, &joint)?;
    let cells = vars.frame_size(target)?;
    let mut acc: Vec<Option<Value>> = vec![None; cells];
    for x in vars.enumerate(&joint)? {
        let v = brute_value(factors, &x)?;
        let idx = vars.tuple_index(&x.project(target)?)?;
        acc[idx] = Some(match acc[idx].take() {
            Some(prev) => semiring.add(&prev, &v)?,
            None => v,
        });
    }
    let table: Vec<Value> = acc
        .into_iter()
        .map(|c| c.expect("every projection cell receives at least one term"))
        .collect();
    Ok(Valuation::new(vars, semiring, target.clone(), table)?)
}

/// `phi^{down empty}(<>)`: the sum of the joint value over the full frame.
pub fn brute_total(factors: &[Valuation]) -> Result<Value, OracleError> {
    let semiring = common_semiring(factors)?;
    let vars = factors[0].vars();
    let joint = joint_scope(factors);
    capped_frame(factors, &joint)?;
    let mut acc: Option<Value> = None;
    for x in vars.enumerate(&joint)? {
        let v = brute_value(factors, &x)?;
        acc = Some(match acc.take() {
            Some(prev) => semiring.add(&prev, &v)?,
            None => v,
        });
    }
    Ok(acc.expect("joint frame is never empty"))
}

/// The solution set of the optimization extension system: every full
/// configuration whose joint value equals the total. Tuples come back
/// in frame-index order.
pub fn brute_solutions(factors: &[Valuation]) -> Result<Vec<Tuple>, OracleError> {
    let semiring = common_semiring(factors)?;
    let vars = factors[0].vars();
    let joint = joint_scope(factors);
    capped_frame(factors, &joint)?;
    let best = brute_total(factors)?;
    let mut out = Vec::new();
    for x in vars.enumerate(&joint)? {
        let v = brute_value(factors, &x)?;
        if semiring.values_eq(&v, &best) {
            out.push(x);
        }
    }
    Ok(out)
}

/// The extension set `W_phi^X(x)` of the optimization system: all tuples
/// `z` over the remaining variables with `phi(<x,z>) = phi^{down X}(x)`.
/// `x` must be a tuple over a subset of the joint scope; results come
/// back in frame-index order over the complement scope.
pub fn brute_extension_set(factors: &[Valuation], x: &Tuple) -> Result<Vec<Tuple>, OracleError> {
    let semiring = common_semiring(factors)?;
    let vars = factors[0].vars();
    let joint = joint_scope(factors);
    if !x.scope().is_subset_of(&joint) {
        return Err(OracleError::TargetNotInScope {
            detail: format!(
                "extension point over {} not within the joint scope {}",
                vars.format_scope(x.scope()),
                vars.format_scope(&joint)
            ),
        });
    }
    let rest = joint.diff(x.scope());
    capped_frame(factors, &rest)?;
    let mut marginal: Option<Value> = None;
    for z in vars.enumerate(&rest)? {
        let v = brute_value(factors, &x.concat(&z)?)?;
        marginal = Some(match marginal.take() {
            Some(prev) => semiring.add(&prev, &v)?,
            None => v,
        });
    }
    let marginal = marginal.expect("complement frame is never empty");
    let mut out = Vec::new();
    for z in vars.enumerate(&rest)? {
        let v = brute_value(factors, &x.concat(&z)?)?;
        if semiring.values_eq(&v, &marginal) {
            out.push(z);
        }
    }
    Ok(out)
}
