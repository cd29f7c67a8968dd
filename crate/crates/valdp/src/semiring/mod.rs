//! Commutative semirings: built-in carriers and table-backed ones.
//!
//! A [`Semiring`] bundles a carrier with `add`, `mul`, `zero`, and `one`.
//! Values are exact: integers, levels, and table elements compare by
//! identity. The one floating-point carrier (`maxplus-real`) compares
//! through an epsilon and is excluded from soundness classification.
//!
//! Submodules: [`props`] holds the property checkers, [`classify`] maps
//! checker verdicts to per-algorithm soundness.

pub mod classify;
pub mod props;

pub use classify::{classify, ClassifyError, Soundness, SoundnessMatrix};
pub use props::{
    check_idempotent, check_mult_cancellative, check_selective, check_semiring_axioms,
    check_square_mult_cancellative_on_image, check_square_ordered, check_strict_monotonic,
    check_totally_ordered, check_weakly_mult_cancellative, witness_violates, CheckOptions,
    PropertyName, PropertyReport, Verdict, Witness,
};

use std::fmt;
use std::sync::Arc;

use rand::Rng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SemiringError {
    /// Operands belong to different semirings.
    MixedOperands { detail: String },
    /// Element name not in a table semiring's carrier.
    UnknownElement { name: String },
    /// Integer overflow in `mul` or `add`.
    Overflow { op: &'static str },
    /// A structural defect in a table semiring, with the offending cell.
    BadTable { detail: String },
    /// A value that cannot be parsed or is out of range for the carrier.
    BadValue { detail: String },
    /// Unrecognized semiring name.
    UnknownSemiring { name: String },
}

impl fmt::Display for SemiringError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemiringError::MixedOperands { detail } => {
                write!(f, "operands from different semirings: {detail}")
            }
            SemiringError::UnknownElement { name } => write!(f, "unknown element {name:?}"),
            SemiringError::Overflow { op } => write!(f, "integer overflow in {op}"),
            SemiringError::BadTable { detail } => write!(f, "bad semiring table: {detail}"),
            SemiringError::BadValue { detail } => write!(f, "bad value: {detail}"),
            SemiringError::UnknownSemiring { name } => write!(f, "unknown semiring {name:?}"),
        }
    }
}

impl std::error::Error for SemiringError {}

// ---------------------------------------------------------------------------
// Values
// ---------------------------------------------------------------------------

/// An integer extended with minus infinity, the max-plus carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ext {
    NegInf,
    Fin(i64),
}

/// One element of some semiring carrier. Values do not know their
/// semiring; operations live on [`Semiring`] and reject mixed operands.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Value {
    /// Boolean semiring element.
    Bool(bool),
    /// Max-plus element (integer or minus infinity).
    Int(Ext),
    /// Max-times element (natural number).
    Nat(u64),
    /// Max-min element (level in `0..=k`).
    Level(u32),
    /// Index into a table semiring's carrier.
    Elem(u32),
    /// Max-plus-real element, stored as `f64` bits (never NaN).
    Real(u64),
}

impl Value {
    /// Finite value of the integer max-plus carrier.
    pub fn int(x: i64) -> Value {
        Value::Int(Ext::Fin(x))
    }

    /// The max-plus zero element.
    pub fn neg_inf() -> Value {
        Value::Int(Ext::NegInf)
    }

    pub fn real(x: f64) -> Value {
        Value::Real(x.to_bits())
    }

    pub fn as_real(&self) -> Option<f64> {
        match self {
            Value::Real(bits) => Some(f64::from_bits(*bits)),
            _ => None,
        }
    }
}

// ---------------------------------------------------------------------------
// Table semirings
// ---------------------------------------------------------------------------

/// Explicit operation tables over a finite carrier. Cells may be invalid
/// until [`TableData::validate`] passes; the property checkers validate
/// before scanning.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableData {
    pub name: Option<String>,
    pub elements: Vec<String>,
    pub zero: u32,
    pub one: u32,
    /// Row-major `n * n` table of carrier indices.
    pub add: Vec<u32>,
    /// Row-major `n * n` table of carrier indices.
    pub mul: Vec<u32>,
}

impl TableData {
    /// Checks closure and shape; reports the first offending cell.
    pub fn validate(&self) -> Result<(), SemiringError> {
        let n = self.elements.len();
        if n == 0 {
            return Err(SemiringError::BadTable {
                detail: "empty carrier".into(),
            });
        }
        for (i, name) in self.elements.iter().enumerate() {
            if name.is_empty() || name.contains(char::is_whitespace) {
                return Err(SemiringError::BadTable {
                    detail: format!("element {i} has an invalid name {name:?}"),
                });
            }
            if self.elements[..i].contains(name) {
                return Err(SemiringError::BadTable {
                    detail: format!("duplicate element name {name:?}"),
                });
            }
        }
        if self.zero as usize >= n {
            return Err(SemiringError::BadTable {
                detail: "zero is not a carrier element".into(),
            });
        }
        if self.one as usize >= n {
            return Err(SemiringError::BadTable {
                detail: "one is not a carrier element".into(),
            });
        }
        for (op, table) in [("add", &self.add), ("mul", &self.mul)] {
            if table.len() != n * n {
                return Err(SemiringError::BadTable {
                    detail: format!("{op} table has {} cells, expected {}", table.len(), n * n),
                });
            }
            for (cell, &v) in table.iter().enumerate() {
                if v as usize >= n {
                    return Err(SemiringError::BadTable {
                        detail: format!(
                            "{op}[{}][{}] = {} is not a carrier element",
                            cell / n,
                            cell % n,
                            v
                        ),
                    });
                }
            }
        }
        Ok(())
    }

    fn cell(table: &[u32], n: usize, a: u32, b: u32) -> u32 {
        table[a as usize * n + b as usize]
    }
}

// ---------------------------------------------------------------------------
// Semiring
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Kind {
    Boolean,
    MaxPlus,
    MaxTimesNat,
    MaxMin { levels: u32 },
    Table(Arc<TableData>),
    MaxPlusReal { eps: f64 },
}

/// A commutative semiring: carrier plus `add`, `mul`, `zero`, `one`.
///
/// Cheap to clone. Two semirings are equal when they denote the same
/// structure (table semirings compare by content).
#[derive(Debug, Clone)]
pub struct Semiring {
    kind: Kind,
}

impl PartialEq for Semiring {
    fn eq(&self, other: &Self) -> bool {
        match (&self.kind, &other.kind) {
            (Kind::Table(a), Kind::Table(b)) => Arc::ptr_eq(a, b) || a == b,
            (a, b) => a == b,
        }
    }
}

impl Semiring {
    /// `({0,1}, or, and)`.
    pub fn boolean() -> Semiring {
        Semiring {
            kind: Kind::Boolean,
        }
    }

    /// `(Z u {-inf}, max, +)`.
    pub fn maxplus() -> Semiring {
        Semiring {
            kind: Kind::MaxPlus,
        }
    }

    /// `(N, max, *)`.
    pub fn maxtimes_nat() -> Semiring {
        Semiring {
            kind: Kind::MaxTimesNat,
        }
    }

    /// `({0..=k}, max, min)` with `one = k`. Requires `k >= 1`.
    pub fn maxmin(levels: u32) -> Result<Semiring, SemiringError> {
        if levels == 0 {
            return Err(SemiringError::BadValue {
                detail: "maxmin needs at least one level above zero".into(),
            });
        }
        Ok(Semiring {
            kind: Kind::MaxMin { levels },
        })
    }

    /// A table-backed semiring; validates the table.
    pub fn table(data: TableData) -> Result<Semiring, SemiringError> {
        data.validate()?;
        Ok(Semiring {
            kind: Kind::Table(Arc::new(data)),
        })
    }

    /// Same as [`table`](Self::table) but skips validation, so the
    /// checkers can report defects in deliberately broken tables.
    pub fn table_unchecked(data: TableData) -> Semiring {
        Semiring {
            kind: Kind::Table(Arc::new(data)),
        }
    }

    /// The four-element semiring `({0,1,2,3}, max, .)` whose `mul` keeps
    /// `2 . 2 = 2` but `2 . 3 = 3 . 3 = 3`. Valid, selective, and not
    /// weakly multiplicatively cancellative; the stock witness that the
    /// complete-task algorithms can lose solutions.
    pub fn counter3() -> Semiring {
        let data = TableData {
            name: Some("counter3".into()),
            elements: vec!["0".into(), "1".into(), "2".into(), "3".into()],
            zero: 0,
            one: 1,
            #[rustfmt::skip]
            add: vec![
                0, 1, 2, 3,
                1, 1, 2, 3,
                2, 2, 2, 3,
                3, 3, 3, 3,
            ],
            #[rustfmt::skip]
            mul: vec![
                0, 0, 0, 0,
                0, 1, 2, 3,
                0, 2, 2, 3,
                0, 3, 3, 3,
            ],
        };
        Semiring::table(data).expect("built-in table is valid")
    }

    /// `(R u {-inf}, max, +)` with epsilon equality. Excluded from
    /// soundness classification.
    pub fn maxplus_real(eps: f64) -> Result<Semiring, SemiringError> {
        if !eps.is_finite() || eps < 0.0 {
            return Err(SemiringError::BadValue {
                detail: format!("epsilon must be finite and non-negative, got {eps}"),
            });
        }
        Ok(Semiring {
            kind: Kind::MaxPlusReal { eps },
        })
    }

    /// Resolves a built-in semiring name: `boolean`, `maxplus`,
    /// `maxtimes-nat`, `maxmin:<k>`, `counter3`, `maxplus-real[:<eps>]`.
    pub fn from_name(name: &str) -> Result<Semiring, SemiringError> {
        match name {
            "boolean" => Ok(Semiring::boolean()),
            "maxplus" => Ok(Semiring::maxplus()),
            "maxtimes-nat" => Ok(Semiring::maxtimes_nat()),
            "counter3" => Ok(Semiring::counter3()),
            "maxplus-real" => Semiring::maxplus_real(1e-9),
            _ => {
                if let Some(k) = name.strip_prefix("maxmin:") {
                    let levels = k.parse::<u32>().map_err(|_| SemiringError::BadValue {
                        detail: format!("bad maxmin level count {k:?}"),
                    })?;
                    return Semiring::maxmin(levels);
                }
                if let Some(e) = name.strip_prefix("maxplus-real:") {
                    let eps = e.parse::<f64>().map_err(|_| SemiringError::BadValue {
                        detail: format!("bad epsilon {e:?}"),
                    })?;
                    return Semiring::maxplus_real(eps);
                }
                Err(SemiringError::UnknownSemiring {
                    name: name.to_string(),
                })
            }
        }
    }

    pub fn name(&self) -> String {
        match &self.kind {
            Kind::Boolean => "boolean".into(),
            Kind::MaxPlus => "maxplus".into(),
            Kind::MaxTimesNat => "maxtimes-nat".into(),
            Kind::MaxMin { levels } => format!("maxmin:{levels}"),
            Kind::Table(t) => t.name.clone().unwrap_or_else(|| "table".into()),
            Kind::MaxPlusReal { eps } => format!("maxplus-real:{eps}"),
        }
    }

    pub fn table_data(&self) -> Option<&TableData> {
        match &self.kind {
            Kind::Table(t) => Some(t),
            _ => None,
        }
    }

    /// Whether equality on this carrier is epsilon-based. Such semirings
    /// are excluded from soundness classification.
    pub fn uses_epsilon_eq(&self) -> bool {
        matches!(self.kind, Kind::MaxPlusReal { .. })
    }

    pub fn zero(&self) -> Value {
        match &self.kind {
            Kind::Boolean => Value::Bool(false),
            Kind::MaxPlus => Value::Int(Ext::NegInf),
            Kind::MaxTimesNat => Value::Nat(0),
            Kind::MaxMin { .. } => Value::Level(0),
            Kind::Table(t) => Value::Elem(t.zero),
            Kind::MaxPlusReal { .. } => Value::real(f64::NEG_INFINITY),
        }
    }

    pub fn one(&self) -> Value {
        match &self.kind {
            Kind::Boolean => Value::Bool(true),
            Kind::MaxPlus => Value::Int(Ext::Fin(0)),
            Kind::MaxTimesNat => Value::Nat(1),
            Kind::MaxMin { levels } => Value::Level(*levels),
            Kind::Table(t) => Value::Elem(t.one),
            Kind::MaxPlusReal { .. } => Value::real(0.0),
        }
    }

    fn check_member(&self, v: &Value) -> Result<(), SemiringError> {
        let ok = match (&self.kind, v) {
            (Kind::Boolean, Value::Bool(_)) => true,
            (Kind::MaxPlus, Value::Int(_)) => true,
            (Kind::MaxTimesNat, Value::Nat(_)) => true,
            (Kind::MaxMin { levels }, Value::Level(l)) => l <= levels,
            (Kind::Table(t), Value::Elem(e)) => (*e as usize) < t.elements.len(),
            (Kind::MaxPlusReal { .. }, Value::Real(bits)) => !f64::from_bits(*bits).is_nan(),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(SemiringError::MixedOperands {
                detail: format!("{v:?} is not an element of {}", self.name()),
            })
        }
    }

    pub fn add(&self, a: &Value, b: &Value) -> Result<Value, SemiringError> {
        self.check_member(a)?;
        self.check_member(b)?;
        Ok(match (&self.kind, a, b) {
            (Kind::Boolean, Value::Bool(x), Value::Bool(y)) => Value::Bool(*x || *y),
            (Kind::MaxPlus, Value::Int(x), Value::Int(y)) => Value::Int((*x).max(*y)),
            (Kind::MaxTimesNat, Value::Nat(x), Value::Nat(y)) => Value::Nat((*x).max(*y)),
            (Kind::MaxMin { .. }, Value::Level(x), Value::Level(y)) => Value::Level((*x).max(*y)),
            (Kind::Table(t), Value::Elem(x), Value::Elem(y)) => {
                Value::Elem(TableData::cell(&t.add, t.elements.len(), *x, *y))
            }
            (Kind::MaxPlusReal { .. }, Value::Real(x), Value::Real(y)) => {
                Value::real(f64::from_bits(*x).max(f64::from_bits(*y)))
            }
            _ => unreachable!("membership checked"),
        })
    }

    pub fn mul(&self, a: &Value, b: &Value) -> Result<Value, SemiringError> {
        self.check_member(a)?;
        self.check_member(b)?;
        Ok(match (&self.kind, a, b) {
            (Kind::Boolean, Value::Bool(x), Value::Bool(y)) => Value::Bool(*x && *y),
            (Kind::MaxPlus, Value::Int(x), Value::Int(y)) => match (x, y) {
                (Ext::NegInf, _) | (_, Ext::NegInf) => Value::Int(Ext::NegInf),
                (Ext::Fin(x), Ext::Fin(y)) => Value::Int(Ext::Fin(
                    x.checked_add(*y)
                        .ok_or(SemiringError::Overflow { op: "maxplus mul" })?,
                )),
            },
            (Kind::MaxTimesNat, Value::Nat(x), Value::Nat(y)) => Value::Nat(
                x.checked_mul(*y)
                    .ok_or(SemiringError::Overflow { op: "maxtimes mul" })?,
            ),
            (Kind::MaxMin { .. }, Value::Level(x), Value::Level(y)) => Value::Level((*x).min(*y)),
            (Kind::Table(t), Value::Elem(x), Value::Elem(y)) => {
                Value::Elem(TableData::cell(&t.mul, t.elements.len(), *x, *y))
            }
            (Kind::MaxPlusReal { .. }, Value::Real(x), Value::Real(y)) => {
                Value::real(f64::from_bits(*x) + f64::from_bits(*y))
            }
            _ => unreachable!("membership checked"),
        })
    }

    /// Semantic equality of two carrier elements. Exact everywhere except
    /// `maxplus-real`, where it is `|a - b| <= eps` (and exact at the
    /// infinities).
    pub fn values_eq(&self, a: &Value, b: &Value) -> bool {
        match (&self.kind, a, b) {
            (Kind::MaxPlusReal { eps }, Value::Real(x), Value::Real(y)) => {
                let (x, y) = (f64::from_bits(*x), f64::from_bits(*y));
                x == y || (x - y).abs() <= *eps
            }
            _ => a == b,
        }
    }

    pub fn is_zero(&self, a: &Value) -> bool {
        self.values_eq(a, &self.zero())
    }

    /// Canonical order `a <= b` iff `a + b = b`. Total when the semiring
    /// is selective.
    pub fn leq(&self, a: &Value, b: &Value) -> Result<bool, SemiringError> {
        Ok(self.values_eq(&self.add(a, b)?, b))
    }

    /// The carrier in canonical order, when finite.
    pub fn carrier(&self) -> Option<Vec<Value>> {
        match &self.kind {
            Kind::Boolean => Some(vec![Value::Bool(false), Value::Bool(true)]),
            Kind::MaxMin { levels } => Some((0..=*levels).map(Value::Level).collect()),
            Kind::Table(t) => Some((0..t.elements.len() as u32).map(Value::Elem).collect()),
            Kind::MaxPlus | Kind::MaxTimesNat | Kind::MaxPlusReal { .. } => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.carrier().is_some()
    }

    /// The image of `mul`, in carrier order. Only for finite carriers.
    pub fn mul_image(&self) -> Option<Vec<Value>> {
        let carrier = self.carrier()?;
        let mut image = Vec::new();
        for a in &carrier {
            for b in &carrier {
                let p = self.mul(a, b).expect("finite carriers do not overflow");
                if !image.contains(&p) {
                    image.push(p);
                }
            }
        }
        image.sort_by_key(|v| carrier.iter().position(|c| c == v).expect("closed"));
        Some(image)
    }

    /// Draws a carrier element. Finite carriers are sampled uniformly;
    /// infinite ones from a small band around the identity plus an
    /// occasional zero, which keeps sampled products exact.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Value {
        match &self.kind {
            Kind::Boolean => Value::Bool(rng.gen()),
            Kind::MaxMin { levels } => Value::Level(rng.gen_range(0..=*levels)),
            Kind::Table(t) => Value::Elem(rng.gen_range(0..t.elements.len() as u32)),
            Kind::MaxPlus => {
                if rng.gen_ratio(1, 8) {
                    Value::Int(Ext::NegInf)
                } else {
                    Value::Int(Ext::Fin(rng.gen_range(-8..=8)))
                }
            }
            Kind::MaxTimesNat => Value::Nat(rng.gen_range(0..=9)),
            Kind::MaxPlusReal { .. } => {
                if rng.gen_ratio(1, 8) {
                    Value::real(f64::NEG_INFINITY)
                } else {
                    Value::real(rng.gen_range(-16..=16) as f64 * 0.25)
                }
            }
        }
    }

    /// Parses one value token: `0`/`1` for boolean, integers or `-inf`
    /// for maxplus, naturals for maxtimes, levels for maxmin, element
    /// names for tables, floats or `-inf` for maxplus-real.
    pub fn parse_value(&self, token: &str) -> Result<Value, SemiringError> {
        let bad = |detail: String| SemiringError::BadValue { detail };
        match &self.kind {
            Kind::Boolean => match token {
                "0" => Ok(Value::Bool(false)),
                "1" => Ok(Value::Bool(true)),
                _ => Err(bad(format!("boolean value must be 0 or 1, got {token:?}"))),
            },
            Kind::MaxPlus => {
                if token == "-inf" {
                    Ok(Value::Int(Ext::NegInf))
                } else {
                    token
                        .parse::<i64>()
                        .map(|x| Value::Int(Ext::Fin(x)))
                        .map_err(|_| {
                            bad(format!(
                                "maxplus value must be an integer or -inf, got {token:?}"
                            ))
                        })
                }
            }
            Kind::MaxTimesNat => token.parse::<u64>().map(Value::Nat).map_err(|_| {
                bad(format!(
                    "maxtimes-nat value must be a natural number, got {token:?}"
                ))
            }),
            Kind::MaxMin { levels } => {
                let l = token.parse::<u32>().map_err(|_| {
                    bad(format!(
                        "maxmin level must be a natural number, got {token:?}"
                    ))
                })?;
                if l > *levels {
                    return Err(bad(format!("maxmin level {l} above maximum {levels}")));
                }
                Ok(Value::Level(l))
            }
            Kind::Table(t) => t
                .elements
                .iter()
                .position(|e| e == token)
                .map(|i| Value::Elem(i as u32))
                .ok_or(SemiringError::UnknownElement {
                    name: token.to_string(),
                }),
            Kind::MaxPlusReal { .. } => {
                if token == "-inf" {
                    return Ok(Value::real(f64::NEG_INFINITY));
                }
                let x = token.parse::<f64>().map_err(|_| {
                    bad(format!("real value must be a float or -inf, got {token:?}"))
                })?;
                if x.is_nan() {
                    return Err(bad("NaN is not a carrier element".into()));
                }
                Ok(Value::real(x))
            }
        }
    }

    pub fn format_value(&self, v: &Value) -> String {
        match (&self.kind, v) {
            (Kind::Boolean, Value::Bool(x)) => if *x { "1" } else { "0" }.to_string(),
            (Kind::MaxPlus, Value::Int(Ext::NegInf)) => "-inf".to_string(),
            (Kind::MaxPlus, Value::Int(Ext::Fin(x))) => x.to_string(),
            (Kind::MaxTimesNat, Value::Nat(x)) => x.to_string(),
            (Kind::MaxMin { .. }, Value::Level(l)) => l.to_string(),
            (Kind::Table(t), Value::Elem(e)) => t.elements[*e as usize].clone(),
            (Kind::MaxPlusReal { .. }, Value::Real(bits)) => {
                let x = f64::from_bits(*bits);
                if x == f64::NEG_INFINITY {
                    "-inf".to_string()
                } else {
                    format!("{x}")
                }
            }
            _ => format!("{v:?}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_ops() {
        let s = Semiring::boolean();
        let (f, t) = (Value::Bool(false), Value::Bool(true));
        assert_eq!(s.add(&f, &t).unwrap(), t);
        assert_eq!(s.mul(&f, &t).unwrap(), f);
        assert_eq!(s.zero(), f);
        assert_eq!(s.one(), t);
        assert!(s.leq(&f, &t).unwrap());
        assert!(!s.leq(&t, &f).unwrap());
    }

    #[test]
    fn maxplus_ops() {
        let s = Semiring::maxplus();
        let two = Value::Int(Ext::Fin(2));
        let five = Value::Int(Ext::Fin(5));
        let ninf = Value::Int(Ext::NegInf);
        assert_eq!(s.add(&two, &five).unwrap(), five);
        assert_eq!(s.mul(&two, &five).unwrap(), Value::Int(Ext::Fin(7)));
        assert_eq!(s.mul(&ninf, &five).unwrap(), ninf);
        assert_eq!(s.add(&ninf, &five).unwrap(), five);
        assert_eq!(s.one(), Value::Int(Ext::Fin(0)));
        assert!(matches!(
            s.mul(&Value::Int(Ext::Fin(i64::MAX)), &Value::Int(Ext::Fin(1))),
            Err(SemiringError::Overflow { .. })
        ));
    }

    #[test]
    fn maxmin_ops() {
        let s = Semiring::maxmin(3).unwrap();
        let a = Value::Level(1);
        let b = Value::Level(2);
        assert_eq!(s.add(&a, &b).unwrap(), b);
        assert_eq!(s.mul(&a, &b).unwrap(), a);
        assert_eq!(s.one(), Value::Level(3));
        assert!(s.parse_value("4").is_err());
        assert!(Semiring::maxmin(0).is_err());
    }

    #[test]
    fn counter3_mul_table() {
        let s = Semiring::counter3();
        let v = |i: u32| Value::Elem(i);
        let expected: [[u32; 4]; 4] = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 2, 3], [0, 3, 3, 3]];
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(
                    s.mul(&v(a), &v(b)).unwrap(),
                    v(expected[a as usize][b as usize]),
                    "{a} . {b}"
                );
                assert_eq!(s.add(&v(a), &v(b)).unwrap(), v(a.max(b)));
            }
        }
        assert_eq!(s.format_value(&v(3)), "3");
        assert_eq!(s.parse_value("2").unwrap(), v(2));
    }

    #[test]
    fn mixed_operands_rejected() {
        let s = Semiring::boolean();
        assert!(matches!(
            s.add(&Value::Bool(true), &Value::Nat(1)),
            Err(SemiringError::MixedOperands { .. })
        ));
        let mm2 = Semiring::maxmin(2).unwrap();
        assert!(mm2.add(&Value::Level(3), &Value::Level(0)).is_err());
    }

    #[test]
    fn table_validation_reports_offending_cell() {
        let mut data = TableData {
            name: None,
            elements: vec!["a".into(), "b".into()],
            zero: 0,
            one: 1,
            add: vec![0, 1, 1, 1],
            mul: vec![0, 0, 0, 1],
        };
        assert!(data.validate().is_ok());
        data.mul[2] = 7;
        let err = data.validate().unwrap_err();
        assert!(
            matches!(err, SemiringError::BadTable { ref detail } if detail.contains("mul[1][0]"))
        );
    }

    #[test]
    fn from_name_round_trip() {
        for name in ["boolean", "maxplus", "maxtimes-nat", "maxmin:3", "counter3"] {
            assert_eq!(Semiring::from_name(name).unwrap().name(), name);
        }
        assert!(Semiring::from_name("tropical").is_err());
    }

    #[test]
    fn mul_image_of_counter3_is_whole_carrier() {
        let s = Semiring::counter3();
        assert_eq!(s.mul_image().unwrap().len(), 4);
    }

    #[test]
    fn epsilon_equality() {
        let s = Semiring::maxplus_real(0.01).unwrap();
        assert!(s.values_eq(&Value::real(1.0), &Value::real(1.005)));
        assert!(!s.values_eq(&Value::real(1.0), &Value::real(1.02)));
        assert!(s.values_eq(&s.zero(), &s.zero()));
        assert_eq!(
            s.mul(&Value::real(1.5), &s.one()).unwrap(),
            Value::real(1.5)
        );
        assert!(s.parse_value("nan").is_err());
    }
}
