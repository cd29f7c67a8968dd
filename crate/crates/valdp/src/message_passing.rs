//! Join-tree message passing.
//!
//! [`collect`] runs the upward sweep: every node multiplies its assigned
//! factors, children send their projection onto the separator, and the
//! root ends up holding the projection of the joint valuation onto its
//! label. [`collect_distribute`] adds the downward sweep, after which
//! every node holds the joint valuation projected onto its own label.
//!
//! Both sweeps require a minimally labeled covering tree: minimality
//! guarantees that every intermediate product has exactly the node label
//! as its scope, so no table ever grows beyond the local frame.

use std::fmt;

use crate::join_tree::{JoinTree, TreeError};
use crate::valuation::{Valuation, ValuationError};

#[derive(Debug)]
pub enum MessagePassingError {
    NoFactors,
    FactorCount { assigned: usize, given: usize },
    Tree(TreeError),
    Valuation(ValuationError),
}

impl fmt::Display for MessagePassingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MessagePassingError::NoFactors => {
                write!(f, "message passing needs at least one factor")
            }
            MessagePassingError::FactorCount { assigned, given } => {
                write!(f, "tree assigns {assigned} factors but {given} were given")
            }
            MessagePassingError::Tree(e) => write!(f, "{e}"),
            MessagePassingError::Valuation(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for MessagePassingError {}

impl From<TreeError> for MessagePassingError {
    fn from(e: TreeError) -> Self {
        MessagePassingError::Tree(e)
    }
}

impl From<ValuationError> for MessagePassingError {
    fn from(e: ValuationError) -> Self {
        MessagePassingError::Valuation(e)
    }
}

/// Result of the upward sweep.
#[derive(Debug, Clone)]
pub struct Propagation {
    tree: JoinTree,
    /// Product of the factors assigned to each node.
    node_potentials: Vec<Valuation>,
    /// Message sent toward the parent, per non-root node.
    upward: Vec<Option<Valuation>>,
    /// Node content after absorbing all child messages.
    collected: Vec<Valuation>,
}

impl Propagation {
    pub fn tree(&self) -> &JoinTree {
        &self.tree
    }

    pub fn node_potential(&self, node: usize) -> &Valuation {
        &self.node_potentials[node]
    }

    /// Message from `node` to its parent; `None` at the root.
    pub fn upward_message(&self, node: usize) -> Option<&Valuation> {
        self.upward[node].as_ref()
    }

    /// The collected content of `node`: its potential multiplied by the
    /// subtree messages, projected content of the whole subtree below it.
    pub fn collected(&self, node: usize) -> &Valuation {
        &self.collected[node]
    }

    /// The joint valuation projected onto the root label.
    pub fn root_marginal(&self) -> &Valuation {
        &self.collected[self.tree.root()]
    }
}

fn check_preconditions(tree: &JoinTree, factors: &[Valuation]) -> Result<(), MessagePassingError> {
    if factors.is_empty() {
        return Err(MessagePassingError::NoFactors);
    }
    if tree.assignment().len() != factors.len() {
        return Err(MessagePassingError::FactorCount {
            assigned: tree.assignment().len(),
            given: factors.len(),
        });
    }
    let scopes: Vec<_> = factors.iter().map(|f| f.label().clone()).collect();
    tree.check_covering(&scopes)?;
    tree.check_minimally_labeled(&scopes)?;
    Ok(())
}

/// Upward sweep. After it, `collected(root)` is the joint valuation
/// projected onto the root label, and every other node holds its own
/// potential combined with all messages from below.
pub fn collect(tree: &JoinTree, factors: &[Valuation]) -> Result<Propagation, MessagePassingError> {
    check_preconditions(tree, factors)?;
    let vars = factors[0].vars().clone();
    let semiring = factors[0].semiring().clone();

    let mut node_potentials = Vec::with_capacity(tree.len());
    for i in 0..tree.len() {
        let mut psi = Valuation::identity(vars.clone(), semiring.clone());
        for k in tree.assigned_factors(i) {
            psi = psi.combine(&factors[k])?;
        }
        node_potentials.push(psi);
    }

    let mut collected = node_potentials.clone();
    let mut upward: Vec<Option<Valuation>> = vec![None; tree.len()];
    for &i in &tree.upward_order() {
        if let Some(p) = tree.parent(i) {
            let message = collected[i].project(&tree.separator(i))?;
            collected[p] = collected[p].combine(&message)?;
            upward[i] = Some(message);
        }
    }
    for (i, psi) in collected.iter().enumerate() {
        debug_assert_eq!(
            psi.label(),
            tree.label(i),
            "collected content of node {i} must live on the node label"
        );
    }
    Ok(Propagation {
        tree: tree.clone(),
        node_potentials,
        upward,
        collected,
    })
}

/// Result of the full two-sweep propagation: one marginal per node.
#[derive(Debug, Clone)]
pub struct Distribution {
    propagation: Propagation,
    /// Message received from the parent, per non-root node.
    downward: Vec<Option<Valuation>>,
    /// The joint valuation projected onto each node label.
    marginals: Vec<Valuation>,
}

impl Distribution {
    pub fn propagation(&self) -> &Propagation {
        &self.propagation
    }

    pub fn tree(&self) -> &JoinTree {
        self.propagation.tree()
    }

    pub fn downward_message(&self, node: usize) -> Option<&Valuation> {
        self.downward[node].as_ref()
    }

    /// `phi` projected onto the label of `node`.
    pub fn marginal(&self, node: usize) -> &Valuation {
        &self.marginals[node]
    }

    pub fn marginals(&self) -> &[Valuation] {
        &self.marginals
    }
}

/// Upward then downward sweep. The downward message to a child is the
/// parent potential combined with every other incoming message, projected
/// onto the child separator; each node then holds the joint valuation
/// projected onto its label.
pub fn collect_distribute(
    tree: &JoinTree,
    factors: &[Valuation],
) -> Result<Distribution, MessagePassingError> {
    let propagation = collect(tree, factors)?;
    let mut downward: Vec<Option<Valuation>> = vec![None; tree.len()];
    let mut marginals = propagation.collected.clone();
    for &i in &tree.downward_order() {
        let Some(p) = tree.parent(i) else { continue };
        let mut inner = propagation.node_potentials[p].clone();
        for &c in tree.children(p) {
            if c != i {
                inner =
                    inner.combine(propagation.upward[c].as_ref().expect("child sent upward"))?;
            }
        }
        if let Some(from_above) = downward[p].as_ref() {
            inner = inner.combine(from_above)?;
        }
        debug_assert_eq!(inner.label(), tree.label(p));
        let message = inner.project(&tree.separator(i))?;
        marginals[i] = propagation.collected[i].combine(&message)?;
        downward[i] = Some(message);
        debug_assert_eq!(marginals[i].label(), tree.label(i));
    }
    Ok(Distribution {
        propagation,
        downward,
        marginals,
    })
}
