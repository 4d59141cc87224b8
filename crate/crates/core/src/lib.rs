//! Exact tree-depth toolkit for small graphs: witnesses, feasibility checks,
//! minor-criticality, 1-uniqueness, the graph families studied alongside
//! them, and an exhaustive search harness.

pub mod graph;
pub mod solver;

pub use graph::{EdgeRef, Graph, GraphError};
pub use solver::{
    surplus, tree_depth, tree_depth_decision, verify_feasible, Labeling, SolverBudget, SolverError, TreeDepthWitness,
    Violation,
};
pub mod criticality;
pub mod families;
pub mod labelings;
pub mod search;
pub mod verify;
