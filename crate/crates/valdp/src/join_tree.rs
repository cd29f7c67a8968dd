//! Rooted covering join trees.
//!
//! A join tree carries one label (scope) per node and an assignment of
//! every factor to a node whose label covers it. Valid trees satisfy the
//! running-intersection property: nodes containing any given variable
//! form a connected subtree. Minimally labeled trees additionally keep
//! every label as small as the shape and assignment allow; the
//! [`JoinTree::minimal_labels`] pass computes that labeling in two
//! sweeps, and [`build_join_tree`] constructs trees from factor scopes
//! by variable elimination.

use std::collections::BTreeSet;
use std::fmt;

use crate::tuples::{Scope, VarId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeError {
    MalformedShape {
        detail: String,
    },
    /// Variable `var` appears at nodes `i` and `j` but not at `k`, which
    /// lies on the path between them.
    RipViolation {
        var: VarId,
        i: usize,
        j: usize,
        k: usize,
    },
    /// Factor `factor` is assigned to node `node` whose label does not
    /// cover its scope.
    NotCovering {
        factor: usize,
        node: usize,
    },
    /// Node `node` breaks the minimal-labeling equation for neighbor
    /// `neighbor` (usize::MAX when the tree is a single node).
    NotMinimal {
        node: usize,
        neighbor: usize,
    },
    UnknownNode {
        node: usize,
    },
}

impl fmt::Display for TreeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeError::MalformedShape { detail } => write!(f, "malformed tree: {detail}"),
            TreeError::RipViolation { var, i, j, k } => write!(
                f,
                "running intersection violated: variable {var} at nodes {i} and {j} but not at {k}"
            ),
            TreeError::NotCovering { factor, node } => {
                write!(
                    f,
                    "factor {factor} not covered by the label of its node {node}"
                )
            }
            TreeError::NotMinimal { node, neighbor } => {
                write!(
                    f,
                    "label of node {node} is not minimal (neighbor {neighbor})"
                )
            }
            TreeError::UnknownNode { node } => write!(f, "unknown node {node}"),
        }
    }
}

impl std::error::Error for TreeError {}

/// Variable-elimination orderings for [`build_join_tree`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Heuristic {
    /// Eliminate the variable adding the fewest fill edges; ties break
    /// toward the lowest variable id.
    #[default]
    MinFill,
    /// Eliminate the variable of smallest current degree; ties break
    /// toward the lowest variable id.
    MinDegree,
}

/// A rooted join tree: parent pointers, per-node labels, and a
/// factor-to-node assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinTree {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    root: usize,
    labels: Vec<Scope>,
    assignment: Vec<usize>,
}

impl JoinTree {
    /// Validates shape (exactly one root, connected, ids in range) and
    /// assignment range. Labels are taken as given; see the check
    /// methods for RIP, covering, and minimality.
    pub fn new(
        parent: Vec<Option<usize>>,
        labels: Vec<Scope>,
        assignment: Vec<usize>,
    ) -> Result<JoinTree, TreeError> {
        let n = parent.len();
        if n == 0 {
            return Err(TreeError::MalformedShape {
                detail: "tree has no nodes".into(),
            });
        }
        if labels.len() != n {
            return Err(TreeError::MalformedShape {
                detail: format!("{} labels for {} nodes", labels.len(), n),
            });
        }
        let mut root = None;
        let mut children = vec![Vec::new(); n];
        for (i, &p) in parent.iter().enumerate() {
            match p {
                None => {
                    if let Some(r) = root {
                        return Err(TreeError::MalformedShape {
                            detail: format!("two roots: {r} and {i}"),
                        });
                    }
                    root = Some(i);
                }
                Some(p) => {
                    if p >= n {
                        return Err(TreeError::MalformedShape {
                            detail: format!("node {i} has out-of-range parent {p}"),
                        });
                    }
                    if p == i {
                        return Err(TreeError::MalformedShape {
                            detail: format!("node {i} is its own parent"),
                        });
                    }
                    children[p].push(i);
                }
            }
        }
        let root = root.ok_or(TreeError::MalformedShape {
            detail: "no root".into(),
        })?;
        for ch in &mut children {
            ch.sort_unstable();
        }
        for (k, &node) in assignment.iter().enumerate() {
            if node >= n {
                return Err(TreeError::MalformedShape {
                    detail: format!("factor {k} assigned to unknown node {node}"),
                });
            }
        }
        let tree = JoinTree {
            parent,
            children,
            root,
            labels,
            assignment,
        };
        let reached = tree.downward_order();
        if reached.len() != n {
            return Err(TreeError::MalformedShape {
                detail: "tree is disconnected or cyclic".into(),
            });
        }
        Ok(tree)
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, node: usize) -> Option<usize> {
        self.parent[node]
    }

    pub fn children(&self, node: usize) -> &[usize] {
        &self.children[node]
    }

    /// Undirected neighbors: children plus parent, ascending.
    pub fn neighbors(&self, node: usize) -> Vec<usize> {
        let mut ns = self.children[node].clone();
        if let Some(p) = self.parent[node] {
            ns.push(p);
            ns.sort_unstable();
        }
        ns
    }

    pub fn label(&self, node: usize) -> &Scope {
        &self.labels[node]
    }

    pub fn labels(&self) -> &[Scope] {
        &self.labels
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Factors assigned to `node`, ascending.
    pub fn assigned_factors(&self, node: usize) -> Vec<usize> {
        (0..self.assignment.len())
            .filter(|&k| self.assignment[k] == node)
            .collect()
    }

    /// Separator toward the parent: `label(i) inter label(parent(i))`;
    /// empty at the root.
    pub fn separator(&self, node: usize) -> Scope {
        match self.parent[node] {
            Some(p) => self.labels[node].inter(&self.labels[p]),
            None => Scope::empty(),
        }
    }

    /// Breadth-first order from the root, children visited ascending.
    pub fn downward_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.len());
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(self.root);
        let mut seen = vec![false; self.len()];
        seen[self.root] = true;
        while let Some(i) = queue.pop_front() {
            order.push(i);
            for &c in &self.children[i] {
                if !seen[c] {
                    seen[c] = true;
                    queue.push_back(c);
                }
            }
        }
        order
    }

    /// Reverse breadth-first order: children before parents.
    pub fn upward_order(&self) -> Vec<usize> {
        let mut order = self.downward_order();
        order.reverse();
        order
    }

    /// Strict descendants of `node`, ascending.
    pub fn descendants(&self, node: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = self.children[node].to_vec();
        while let Some(i) = stack.pop() {
            out.push(i);
            stack.extend_from_slice(&self.children[i]);
        }
        out.sort_unstable();
        out
    }

    /// Union of labels over the strict descendants of `node`.
    pub fn descendant_label_union(&self, node: usize) -> Scope {
        self.descendants(node)
            .iter()
            .fold(Scope::empty(), |acc, &j| acc.union(&self.labels[j]))
    }

    /// Union of labels over nodes that are neither `node` nor its
    /// descendants.
    pub fn nondescendant_label_union(&self, node: usize) -> Scope {
        let de: BTreeSet<usize> = self.descendants(node).into_iter().collect();
        (0..self.len())
            .filter(|&j| j != node && !de.contains(&j))
            .fold(Scope::empty(), |acc, j| acc.union(&self.labels[j]))
    }

    /// Path between two nodes (inclusive) through their lowest common
    /// ancestor.
    fn path(&self, i: usize, j: usize) -> Vec<usize> {
        let mut depth = vec![0usize; self.len()];
        for &n in self.downward_order().iter().skip(1) {
            depth[n] = depth[self.parent[n].expect("non-root")] + 1;
        }
        let (mut a, mut b) = (i, j);
        let mut left = vec![a];
        let mut right = vec![b];
        while depth[a] > depth[b] {
            a = self.parent[a].expect("deeper node has a parent");
            left.push(a);
        }
        while depth[b] > depth[a] {
            b = self.parent[b].expect("deeper node has a parent");
            right.push(b);
        }
        while a != b {
            a = self.parent[a].expect("distinct nodes below root");
            b = self.parent[b].expect("distinct nodes below root");
            left.push(a);
            right.push(b);
        }
        right.pop();
        right.reverse();
        left.extend(right);
        left
    }

    /// Running-intersection property: for every variable, the nodes whose
    /// label contains it form a connected subtree. On violation reports
    /// `(var, i, j, k)` with `k` on the path between `i` and `j`.
    pub fn check_running_intersection(&self) -> Result<(), TreeError> {
        let all_vars = self
            .labels
            .iter()
            .fold(Scope::empty(), |acc, l| acc.union(l));
        for var in all_vars.iter() {
            let holders: Vec<usize> = (0..self.len())
                .filter(|&i| self.labels[i].contains(var))
                .collect();
            let first = holders[0];
            for &j in &holders[1..] {
                for &k in &self.path(first, j) {
                    if !self.labels[k].contains(var) {
                        return Err(TreeError::RipViolation {
                            var,
                            i: first,
                            j,
                            k,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Every factor's scope is covered by the label of its node.
    pub fn check_covering(&self, factor_scopes: &[Scope]) -> Result<(), TreeError> {
        for (k, scope) in factor_scopes.iter().enumerate() {
            let node = self.assignment[k];
            if !scope.is_subset_of(&self.labels[node]) {
                return Err(TreeError::NotCovering { factor: k, node });
            }
        }
        Ok(())
    }

    /// Scope of the node potential: union of assigned factor scopes.
    pub fn node_factor_scope(&self, node: usize, factor_scopes: &[Scope]) -> Scope {
        self.assigned_factors(node)
            .iter()
            .fold(Scope::empty(), |acc, &k| acc.union(&factor_scopes[k]))
    }

    /// Minimal labeling: for every node `i` and every neighbor `k`,
    /// `label(i)` equals the union of the node's factor scope and the
    /// separators toward all neighbors other than `k`. A single-node
    /// tree must be labeled exactly by its factor scope.
    pub fn check_minimally_labeled(&self, factor_scopes: &[Scope]) -> Result<(), TreeError> {
        for i in 0..self.len() {
            let base = self.node_factor_scope(i, factor_scopes);
            let neighbors = self.neighbors(i);
            if neighbors.is_empty() {
                if self.labels[i] != base {
                    return Err(TreeError::NotMinimal {
                        node: i,
                        neighbor: usize::MAX,
                    });
                }
                continue;
            }
            for &k in &neighbors {
                let mut expect = base.clone();
                for &j in &neighbors {
                    if j != k {
                        expect = expect.union(&self.labels[i].inter(&self.labels[j]));
                    }
                }
                if self.labels[i] != expect {
                    return Err(TreeError::NotMinimal {
                        node: i,
                        neighbor: k,
                    });
                }
            }
        }
        Ok(())
    }

    /// Computes the minimal labeling for this shape and assignment in two
    /// sweeps. `extra` scopes are treated as additional factor scopes
    /// pinned to given nodes (used to make a root cover a query).
    pub fn minimal_labels(&self, factor_scopes: &[Scope], extra: &[(usize, Scope)]) -> Vec<Scope> {
        let n = self.len();
        let mut alpha: Vec<Scope> = (0..n)
            .map(|i| self.node_factor_scope(i, factor_scopes))
            .collect();
        for (node, scope) in extra {
            alpha[*node] = alpha[*node].union(scope);
        }
        let mut beta = alpha.clone();
        let mut gamma = vec![Scope::empty(); n];
        for &i in &self.upward_order() {
            if let Some(p) = self.parent[i] {
                beta[p] = beta[p].union(&gamma[p].inter(&alpha[i]));
                gamma[p] = gamma[p].union(&alpha[i]);
                alpha[p] = alpha[p].union(&alpha[i]);
            }
        }
        let mut labels = vec![Scope::empty(); n];
        labels[self.root] = beta[self.root].clone();
        for &i in &self.downward_order() {
            if let Some(p) = self.parent[i] {
                labels[i] = beta[i].union(&labels[p].inter(&alpha[i]));
            }
        }
        labels
    }

    /// Same tree with labels replaced by the minimal labeling.
    pub fn with_minimal_labels(
        &self,
        factor_scopes: &[Scope],
        extra: &[(usize, Scope)],
    ) -> JoinTree {
        let mut tree = self.clone();
        tree.labels = self.minimal_labels(factor_scopes, extra);
        tree
    }

    /// Re-roots the tree at `new_root`, preserving labels and assignment.
    pub fn rerooted(&self, new_root: usize) -> Result<JoinTree, TreeError> {
        if new_root >= self.len() {
            return Err(TreeError::UnknownNode { node: new_root });
        }
        let mut parent = vec![None; self.len()];
        let mut stack = vec![new_root];
        let mut seen = vec![false; self.len()];
        seen[new_root] = true;
        while let Some(i) = stack.pop() {
            for j in self.neighbors(i) {
                if !seen[j] {
                    seen[j] = true;
                    parent[j] = Some(i);
                    stack.push(j);
                }
            }
        }
        JoinTree::new(parent, self.labels.clone(), self.assignment.clone())
    }
}

// ---------------------------------------------------------------------------
// Construction by variable elimination
// ---------------------------------------------------------------------------

/// Builds a covering, minimally labeled join tree for the given factor
/// scopes. When `query` is given, it is injected as an extra scope so
/// some node covers it, and that node becomes the root; otherwise the
/// root is node 0. Deterministic: elimination ties break toward the
/// lowest variable id, factors go to the lowest-id covering node.
pub fn build_join_tree(
    factor_scopes: &[Scope],
    heuristic: Heuristic,
    query: Option<&Scope>,
) -> Result<JoinTree, TreeError> {
    let mut build_scopes: Vec<Scope> = factor_scopes.to_vec();
    let virtual_idx = query.map(|q| {
        build_scopes.push(q.clone());
        build_scopes.len() - 1
    });

    let used: Scope = build_scopes
        .iter()
        .fold(Scope::empty(), |acc, s| acc.union(s));
    if used.is_empty() {
        // No variables anywhere: a single node labeled by the empty scope.
        let assignment = vec![0; factor_scopes.len()];
        return JoinTree::new(vec![None], vec![Scope::empty()], assignment);
    }

    // Interaction graph over the used variables.
    let vars: Vec<VarId> = used.iter().collect();
    let pos_of = |v: VarId| vars.binary_search(&v).expect("var in used scope");
    let m = vars.len();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m];
    for scope in &build_scopes {
        let members: Vec<usize> = scope.iter().map(pos_of).collect();
        for (a, &i) in members.iter().enumerate() {
            for &j in &members[a + 1..] {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }

    // Eliminate all variables, recording the clique of each step.
    let mut alive: BTreeSet<usize> = (0..m).collect();
    let mut cliques: Vec<BTreeSet<usize>> = Vec::with_capacity(m);
    let mut elim_pos = vec![0usize; m];
    for step in 0..m {
        let pick = *alive
            .iter()
            .min_by_key(|&&v| match heuristic {
                Heuristic::MinDegree => (adj[v].len(), v),
                Heuristic::MinFill => {
                    let ns: Vec<usize> = adj[v].iter().copied().collect();
                    let mut fill = 0usize;
                    for (a, &i) in ns.iter().enumerate() {
                        for &j in &ns[a + 1..] {
                            if !adj[i].contains(&j) {
                                fill += 1;
                            }
                        }
                    }
                    (fill, v)
                }
            })
            .expect("alive set non-empty");
        let neighbors: Vec<usize> = adj[pick].iter().copied().collect();
        let mut clique: BTreeSet<usize> = neighbors.iter().copied().collect();
        clique.insert(pick);
        cliques.push(clique);
        elim_pos[pick] = step;
        for (a, &i) in neighbors.iter().enumerate() {
            for &j in &neighbors[a + 1..] {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
        for &i in &neighbors {
            adj[i].remove(&pick);
        }
        adj[pick].clear();
        alive.remove(&pick);
    }

    // Bucket-tree parents: the residual connects to the step eliminating
    // its earliest variable. Empty residuals hang off the last clique.
    let count = cliques.len();
    let mut parent: Vec<Option<usize>> = vec![None; count];
    for (t, clique) in cliques.iter().enumerate() {
        let residual: Vec<usize> = clique
            .iter()
            .copied()
            .filter(|&v| elim_pos[v] > t)
            .collect();
        if let Some(&first) = residual.iter().min_by_key(|&&v| elim_pos[v]) {
            parent[t] = Some(elim_pos[first]);
        } else if t != count - 1 {
            parent[t] = Some(count - 1);
        }
    }

    // Merge any clique contained in an adjacent one.
    let mut removed = vec![false; count];
    let mut changed = true;
    while changed {
        changed = false;
        for t in 0..count {
            if removed[t] {
                continue;
            }
            let Some(p) = parent[t] else { continue };
            if cliques[t].is_subset(&cliques[p]) {
                removed[t] = true;
                for q in 0..count {
                    if !removed[q] && parent[q] == Some(t) {
                        parent[q] = Some(p);
                    }
                }
                changed = true;
            } else if cliques[p].is_subset(&cliques[t]) {
                removed[p] = true;
                parent[t] = parent[p];
                for q in 0..count {
                    if !removed[q] && q != t && parent[q] == Some(p) {
                        parent[q] = Some(t);
                    }
                }
                changed = true;
            }
        }
    }

    let survivors: Vec<usize> = (0..count).filter(|&t| !removed[t]).collect();
    let new_id = |old: usize| survivors.binary_search(&old).expect("surviving clique");
    let compact_parent: Vec<Option<usize>> =
        survivors.iter().map(|&t| parent[t].map(new_id)).collect();
    let clique_scopes: Vec<Scope> = survivors
        .iter()
        .map(|&t| Scope::new(cliques[t].iter().map(|&v| vars[v])))
        .collect();

    // Lowest-id covering node per scope, including the virtual query.
    let assign_node = |scope: &Scope| -> usize {
        clique_scopes
            .iter()
            .position(|c| scope.is_subset_of(c))
            .expect("some elimination clique covers each input scope")
    };
    let assignment: Vec<usize> = factor_scopes.iter().map(&assign_node).collect();

    let root = match virtual_idx {
        Some(idx) => assign_node(&build_scopes[idx]),
        None => 0,
    };

    let provisional = JoinTree::new(compact_parent, clique_scopes, assignment)?;
    let rooted = provisional.rerooted(root)?;
    let extra: Vec<(usize, Scope)> = match virtual_idx {
        Some(idx) => vec![(root, build_scopes[idx].clone())],
        None => Vec::new(),
    };
    Ok(rooted.with_minimal_labels(factor_scopes, &extra))
}
