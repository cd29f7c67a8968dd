//! Variables, scopes, and finite configuration tuples.
//!
//! A scope is a sorted set of variable ids; a tuple assigns one value to
//! every variable of its scope. The frame `Omega_s` of a scope is
//! enumerated in mixed-radix order with the last scope variable running
//! fastest, and `tuple_index` / `tuple_at` form the bijection between
//! tuples and `0..frame_size`.

use std::fmt;

/// Index of a variable in a [`VariableTable`].
pub type VarId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TupleError {
    /// Projection target is not a subset of the tuple scope.
    NotSubset { scope: Scope, target: Scope },
    /// Concatenated tuples disagree on a shared variable.
    OverlapMismatch { var: VarId },
    /// Tuple index outside `0..frame_size`.
    IndexOutOfRange { index: usize, size: usize },
    /// Variables must have at least one value.
    ZeroCardinality { name: String },
    /// A value outside a variable's range, or a value list of the wrong
    /// length for its scope.
    BadAssignment { detail: String },
    /// Scope or tuple refers to a variable id the table does not have.
    UnknownVar { var: VarId },
    /// A frame is larger than the configured table cap.
    FrameTooLarge { scope: Scope, cap: usize },
}

impl fmt::Display for TupleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TupleError::NotSubset { scope, target } => {
                write!(
                    f,
                    "projection target {target:?} is not a subset of scope {scope:?}"
                )
            }
            TupleError::OverlapMismatch { var } => {
                write!(f, "tuples disagree on shared variable {var}")
            }
            TupleError::IndexOutOfRange { index, size } => {
                write!(
                    f,
                    "tuple index {index} out of range for frame of size {size}"
                )
            }
            TupleError::ZeroCardinality { name } => {
                write!(f, "variable {name} declared with cardinality 0")
            }
            TupleError::BadAssignment { detail } => write!(f, "bad assignment: {detail}"),
            TupleError::UnknownVar { var } => write!(f, "unknown variable id {var}"),
            TupleError::FrameTooLarge { scope, cap } => {
                write!(f, "frame of scope {scope:?} exceeds cap of {cap} entries")
            }
        }
    }
}

impl std::error::Error for TupleError {}

// ---------------------------------------------------------------------------
// VariableTable
// ---------------------------------------------------------------------------

/// Global registry of variables: name and cardinality per [`VarId`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VariableTable {
    names: Vec<String>,
    cards: Vec<usize>,
}

impl VariableTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares a variable and returns its id. Ids are assigned in
    /// declaration order.
    pub fn add_var(&mut self, name: &str, card: usize) -> Result<VarId, TupleError> {
        if card == 0 {
            return Err(TupleError::ZeroCardinality {
                name: name.to_string(),
            });
        }
        self.names.push(name.to_string());
        self.cards.push(card);
        Ok(self.names.len() - 1)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, var: VarId) -> &str {
        &self.names[var]
    }

    pub fn card(&self, var: VarId) -> usize {
        self.cards[var]
    }

    pub fn lookup(&self, name: &str) -> Option<VarId> {
        self.names.iter().position(|n| n == name)
    }

    fn check_scope(&self, scope: &Scope) -> Result<(), TupleError> {
        match scope.vars.iter().find(|&&v| v >= self.len()) {
            Some(&var) => Err(TupleError::UnknownVar { var }),
            None => Ok(()),
        }
    }

    /// Number of tuples in `Omega_scope`; the empty scope has exactly one
    /// (the empty tuple). Errors if the product overflows `usize`.
    pub fn frame_size(&self, scope: &Scope) -> Result<usize, TupleError> {
        self.check_scope(scope)?;
        scope.vars.iter().try_fold(1usize, |acc, &v| {
            acc.checked_mul(self.cards[v])
                .ok_or(TupleError::FrameTooLarge {
                    scope: scope.clone(),
                    cap: usize::MAX,
                })
        })
    }

    /// Mixed-radix rank of a tuple, with the last scope variable fastest.
    pub fn tuple_index(&self, tuple: &Tuple) -> Result<usize, TupleError> {
        self.check_scope(&tuple.scope)?;
        let mut index = 0usize;
        for (i, &var) in tuple.scope.vars.iter().enumerate() {
            index = index * self.cards[var] + tuple.values[i];
        }
        Ok(index)
    }

    /// Inverse of [`tuple_index`](Self::tuple_index).
    pub fn tuple_at(&self, scope: &Scope, index: usize) -> Result<Tuple, TupleError> {
        let size = self.frame_size(scope)?;
        if index >= size {
            return Err(TupleError::IndexOutOfRange { index, size });
        }
        let mut values = vec![0usize; scope.len()];
        let mut rest = index;
        for (i, &var) in scope.vars.iter().enumerate().rev() {
            values[i] = rest % self.cards[var];
            rest /= self.cards[var];
        }
        Ok(Tuple {
            scope: scope.clone(),
            values,
        })
    }

    /// All tuples of `Omega_scope` in index order.
    pub fn enumerate(&self, scope: &Scope) -> Result<FrameIter<'_>, TupleError> {
        let size = self.frame_size(scope)?;
        Ok(FrameIter {
            table: self,
            scope: scope.clone(),
            next: 0,
            size,
        })
    }

    fn display_name(&self, var: VarId) -> String {
        match self.names.get(var) {
            Some(n) => n.clone(),
            None => format!("#{var}"),
        }
    }

    pub fn format_scope(&self, scope: &Scope) -> String {
        if scope.is_empty() {
            return "-".to_string();
        }
        scope
            .vars
            .iter()
            .map(|&v| self.display_name(v))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn format_tuple(&self, tuple: &Tuple) -> String {
        if tuple.scope.is_empty() {
            return "()".to_string();
        }
        tuple
            .scope
            .vars
            .iter()
            .zip(&tuple.values)
            .map(|(&v, &x)| format!("{}={}", self.display_name(v), x))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Iterator over a frame in tuple-index order.
pub struct FrameIter<'a> {
    table: &'a VariableTable,
    scope: Scope,
    next: usize,
    size: usize,
}

impl Iterator for FrameIter<'_> {
    type Item = Tuple;

    fn next(&mut self) -> Option<Tuple> {
        if self.next >= self.size {
            return None;
        }
        let t = self
            .table
            .tuple_at(&self.scope, self.next)
            .expect("index in range");
        self.next += 1;
        Some(t)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.size - self.next;
        (left, Some(left))
    }
}

impl ExactSizeIterator for FrameIter<'_> {}

// ---------------------------------------------------------------------------
// Scope
// ---------------------------------------------------------------------------

/// A set of variables, kept sorted by id.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scope {
    vars: Vec<VarId>,
}

impl Scope {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a scope from ids in any order; duplicates collapse.
    pub fn new(vars: impl IntoIterator<Item = VarId>) -> Self {
        let mut vars: Vec<VarId> = vars.into_iter().collect();
        vars.sort_unstable();
        vars.dedup();
        Scope { vars }
    }

    pub fn singleton(var: VarId) -> Self {
        Scope { vars: vec![var] }
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn contains(&self, var: VarId) -> bool {
        self.vars.binary_search(&var).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = VarId> + '_ {
        self.vars.iter().copied()
    }

    pub fn vars(&self) -> &[VarId] {
        &self.vars
    }

    pub fn union(&self, other: &Scope) -> Scope {
        let mut vars = Vec::with_capacity(self.vars.len() + other.vars.len());
        let (mut i, mut j) = (0, 0);
        while i < self.vars.len() && j < other.vars.len() {
            match self.vars[i].cmp(&other.vars[j]) {
                std::cmp::Ordering::Less => {
                    vars.push(self.vars[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    vars.push(other.vars[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    vars.push(self.vars[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        vars.extend_from_slice(&self.vars[i..]);
        vars.extend_from_slice(&other.vars[j..]);
        Scope { vars }
    }

    pub fn inter(&self, other: &Scope) -> Scope {
        Scope {
            vars: self
                .vars
                .iter()
                .copied()
                .filter(|&v| other.contains(v))
                .collect(),
        }
    }

    pub fn diff(&self, other: &Scope) -> Scope {
        Scope {
            vars: self
                .vars
                .iter()
                .copied()
                .filter(|&v| !other.contains(v))
                .collect(),
        }
    }

    pub fn is_subset_of(&self, other: &Scope) -> bool {
        self.vars.iter().all(|&v| other.contains(v))
    }

    pub fn is_disjoint_from(&self, other: &Scope) -> bool {
        self.vars.iter().all(|&v| !other.contains(v))
    }
}

impl FromIterator<VarId> for Scope {
    fn from_iter<T: IntoIterator<Item = VarId>>(iter: T) -> Self {
        Scope::new(iter)
    }
}

// ---------------------------------------------------------------------------
// Tuple
// ---------------------------------------------------------------------------

/// An assignment of one value per variable of a scope. Values are stored
/// in scope (sorted id) order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tuple {
    scope: Scope,
    values: Vec<usize>,
}

impl Tuple {
    /// The empty tuple, sole inhabitant of the empty frame.
    pub fn empty() -> Self {
        Tuple {
            scope: Scope::empty(),
            values: Vec::new(),
        }
    }

    /// Builds a tuple over `scope` from values listed in scope order.
    pub fn new(scope: Scope, values: Vec<usize>) -> Result<Self, TupleError> {
        if scope.len() != values.len() {
            return Err(TupleError::BadAssignment {
                detail: format!(
                    "{} values for a scope of {} variables",
                    values.len(),
                    scope.len()
                ),
            });
        }
        Ok(Tuple { scope, values })
    }

    /// Builds a tuple from `(var, value)` pairs in any order.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarId, usize)>) -> Result<Self, TupleError> {
        let mut pairs: Vec<(VarId, usize)> = pairs.into_iter().collect();
        pairs.sort_unstable();
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 && w[0].1 != w[1].1 {
                return Err(TupleError::OverlapMismatch { var: w[0].0 });
            }
        }
        pairs.dedup();
        let scope = Scope {
            vars: pairs.iter().map(|&(v, _)| v).collect(),
        };
        let values = pairs.iter().map(|&(_, x)| x).collect();
        Ok(Tuple { scope, values })
    }

    pub fn scope(&self) -> &Scope {
        &self.scope
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn value_of(&self, var: VarId) -> Option<usize> {
        self.scope
            .vars
            .binary_search(&var)
            .ok()
            .map(|i| self.values[i])
    }

    /// Projection `x^(down target)`; requires `target` to be a subset of
    /// the scope. Projection to the empty scope yields the empty tuple.
    pub fn project(&self, target: &Scope) -> Result<Tuple, TupleError> {
        if !target.is_subset_of(&self.scope) {
            return Err(TupleError::NotSubset {
                scope: self.scope.clone(),
                target: target.clone(),
            });
        }
        let values = target
            .vars
            .iter()
            .map(|&v| self.value_of(v).expect("subset checked"))
            .collect();
        Ok(Tuple {
            scope: target.clone(),
            values,
        })
    }

    /// Concatenation `<x, y>`: the tuple over the union scope that agrees
    /// with both. Errors if the operands disagree on a shared variable.
    pub fn concat(&self, other: &Tuple) -> Result<Tuple, TupleError> {
        let scope = self.scope.union(&other.scope);
        let mut values = Vec::with_capacity(scope.len());
        for &v in &scope.vars {
            match (self.value_of(v), other.value_of(v)) {
                (Some(a), Some(b)) if a != b => {
                    return Err(TupleError::OverlapMismatch { var: v });
                }
                (Some(a), _) => values.push(a),
                (None, Some(b)) => values.push(b),
                (None, None) => unreachable!("union scope"),
            }
        }
        Ok(Tuple { scope, values })
    }
}
