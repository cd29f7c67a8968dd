//! Dynamic programming over semiring valuations.
//!
//! The engine answers projection and optimization queries on factored
//! problems `phi = phi_1 x ... x phi_n`, where every factor is a table
//! over a commutative semiring. Inference runs on a join tree (Collect
//! and Distribute passes); solution tuples are extracted by completion
//! algorithms whose guarantees depend on algebraic properties of the
//! semiring. A brute-force oracle, property checkers, counterexample
//! fixtures, and a line-oriented file format round out the toolkit.
//!
//! Module map:
//! * [`semiring`]: carriers, built-in and table-backed semirings,
//!   property checkers, soundness classification.
//! * [`tuples`]: variables, scopes, tuples, mixed-radix enumeration.
//! * [`valuation`]: dense tables with combine and project.
//! * [`join_tree`]: rooted covering join trees, label minimization,
//!   structural checks, tree construction heuristics.
//! * [`message_passing`]: Collect and Collect+Distribute.
//! * [`solutions`]: extension systems, completion operators, the three
//!   extraction algorithms, completability checkers, the task solver.
//! * [`oracle`]: brute-force reference implementations.
//! * [`fixtures`]: executable counterexamples and completability
//!   quadrant witnesses.
//! * [`io`]: problem and semiring files, result documents.
//! * [`gen`]: seeded random semirings and problem instances.

pub mod caps;
pub mod fixtures;
pub mod gen;
pub mod io;
pub mod join_tree;
pub mod message_passing;
pub mod oracle;
pub mod semiring;
pub mod solutions;
pub mod tuples;
pub mod valuation;

pub use semiring::{Semiring, Value};
pub use tuples::{Scope, Tuple, VarId, VariableTable};
pub use valuation::Valuation;
