//! Exact tree-depth with certifying witnesses.
//!
//! `td(empty) = 0`, `td` of a disconnected graph is the maximum over its
//! components, and for a connected graph `td = 1 + min_v td(G - v)`. The
//! recursion is memoised on vertex subsets and bounded: every call carries a
//! limit and only promises an exact answer below it, so hopeless branches are
//! cut as soon as one component reaches the current best.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{bits, Graph};

/// Largest order the solver accepts.
pub const MAX_SOLVER_VERTICES: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("graph on {n} vertices exceeds the solver cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("solver state budget of {0} memo entries exhausted")]
    StateBudget(usize),
}

/// Per-call resource limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverBudget {
    pub max_vertices: usize,
    /// Cap on memo entries per call; `None` means unbounded.
    pub max_states: Option<usize>,
}

impl Default for SolverBudget {
    fn default() -> Self {
        SolverBudget { max_vertices: MAX_SOLVER_VERTICES, max_states: None }
    }
}

impl SolverBudget {
    pub fn with_max_states(max_states: usize) -> Self {
        SolverBudget { max_states: Some(max_states), ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelingError {
    #[error("labeling has {found} entries but the graph has {expected} vertices")]
    LengthMismatch { expected: usize, found: usize },
    #[error("label of vertex {0} is 0; labels must be positive")]
    ZeroLabel(usize),
    #[error("`{0}` is not a positive integer label")]
    Parse(String),
}

/// Positive integer labels indexed by vertex id.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Labeling(Vec<u32>);

impl Labeling {
    pub fn new(labels: Vec<u32>) -> Result<Self, LabelingError> {
        if let Some(v) = labels.iter().position(|&l| l == 0) {
            return Err(LabelingError::ZeroLabel(v));
        }
        Ok(Labeling(labels))
    }

    pub(crate) fn from_raw(labels: Vec<u32>) -> Self {
        debug_assert!(labels.iter().all(|&l| l > 0));
        Labeling(labels)
    }

    pub fn labels(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: usize) -> u32 {
        self.0[v]
    }

    pub fn max_label(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn distinct_labels(&self) -> usize {
        let mut l = self.0.clone();
        l.sort_unstable();
        l.dedup();
        l.len()
    }

    /// How many vertices carry `label`.
    pub fn count(&self, label: u32) -> usize {
        self.0.iter().filter(|&&l| l == label).count()
    }
}

impl fmt::Display for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Labeling {
    type Err = LabelingError;

    /// Comma-separated positive integers in vertex order.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Labeling(Vec::new()));
        }
        let labels = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<u32>().map_err(|_| LabelingError::Parse(t.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Labeling::new(labels)
    }
}

/// Two vertices sharing label `label` joined by a path whose labels are all
/// at most `label`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub label: u32,
    pub u: usize,
    pub v: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.label, self.u, self.v)
    }
}

/// Checks feasibility. For each label `c` in ascending order, the components
/// of the subgraph induced by vertices labelled at most `c` are scanned in
/// order of their smallest vertex; the first one holding two `c`-labelled
/// vertices yields the violation (its two smallest such vertices).
pub fn verify_feasible(g: &Graph, lab: &Labeling) -> Result<Option<Violation>, LabelingError> {
    if lab.len() != g.n() {
        return Err(LabelingError::LengthMismatch { expected: g.n(), found: lab.len() });
    }
    if let Some(v) = lab.0.iter().position(|&l| l == 0) {
        return Err(LabelingError::ZeroLabel(v));
    }
    Ok(first_violation(g, lab.labels(), g.vertex_mask()))
}

/// Violation search restricted to the vertices in `assigned`.
pub(crate) fn first_violation(g: &Graph, labels: &[u32], assigned: u64) -> Option<Violation> {
    let mut values: Vec<u32> = bits::iter(assigned).map(|v| labels[v]).collect();
    values.sort_unstable();
    values.dedup();
    for c in values {
        let at_most: u64 = bits::iter(assigned).filter(|&v| labels[v] <= c).fold(0, |acc, v| acc | bits::bit(v));
        let exactly: u64 = bits::iter(at_most).filter(|&v| labels[v] == c).fold(0, |acc, v| acc | bits::bit(v));
        if exactly.count_ones() < 2 {
            continue;
        }
        for comp in g.components_of(at_most) {
            let hit = comp & exactly;
            if hit.count_ones() >= 2 {
                let mut it = bits::iter(hit);
                let u = it.next().unwrap();
                let v = it.next().unwrap();
                return Some(Violation { label: c, u, v });
            }
        }
    }
    None
}

pub fn is_feasible(g: &Graph, lab: &Labeling) -> bool {
    matches!(verify_feasible(g, lab), Ok(None))
}

/// Optimal value with a feasible labeling and the elimination forest it was
/// read from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDepthWitness {
    pub value: u32,
    pub labeling: Labeling,
    /// `elimination_forest[v]` is the parent of `v`; roots are the vertices
    /// removed first from each component (they carry the highest labels).
    pub elimination_forest: Vec<Option<usize>>,
}

#[derive(Debug, Clone, Copy, Default)]
struct Entry {
    exact: Option<u32>,
    lower: u32,
}

struct Solver<'g> {
    g: &'g Graph,
    memo: HashMap<u64, Entry>,
    max_states: Option<usize>,
}

impl<'g> Solver<'g> {
    fn new(g: &'g Graph, budget: SolverBudget) -> Result<Self, SolverError> {
        let cap = budget.max_vertices.min(MAX_SOLVER_VERTICES);
        if g.n() > cap {
            return Err(SolverError::TooLarge { n: g.n(), cap });
        }
        Ok(Solver { g, memo: HashMap::new(), max_states: budget.max_states })
    }

    fn store(&mut self, set: u64, entry: Entry) -> Result<(), SolverError> {
        if let Some(cap) = self.max_states {
            if self.memo.len() >= cap && !self.memo.contains_key(&set) {
                return Err(SolverError::StateBudget(cap));
            }
        }
        self.memo.insert(set, entry);
        Ok(())
    }

    /// Exact `td` of the subgraph induced by `set` if it is below `limit`;
    /// otherwise some value `>= limit`.
    fn td(&mut self, set: u64, limit: u32) -> Result<u32, SolverError> {
        let mut worst = 0;
        for comp in self.g.components_of(set) {
            let t = self.td_connected(comp, limit)?;
            if t >= limit {
                return Ok(t);
            }
            worst = worst.max(t);
        }
        Ok(worst)
    }

    fn td_connected(&mut self, set: u64, limit: u32) -> Result<u32, SolverError> {
        let size = set.count_ones();
        if size <= 1 {
            return Ok(size);
        }
        let cached = self.memo.get(&set).copied().unwrap_or_default();
        if let Some(t) = cached.exact {
            return Ok(t);
        }
        if cached.lower >= limit {
            return Ok(cached.lower);
        }
        if self.g.is_clique(set) {
            self.store(set, Entry { exact: Some(size), lower: size })?;
            return Ok(size);
        }
        let lower = cached.lower.max(self.degeneracy(set) + 1);
        if lower >= limit {
            self.store(set, Entry { exact: None, lower })?;
            return Ok(lower);
        }
        let bound = limit.min(size + 1);
        let mut best = bound;
        for v in bits::iter(set) {
            let sub = self.td(set & !bits::bit(v), best - 1)?;
            if sub + 1 < best {
                best = sub + 1;
                if best == lower {
                    break;
                }
            }
        }
        if best < bound {
            self.store(set, Entry { exact: Some(best), lower: best })?;
        } else {
            self.store(set, Entry { exact: None, lower: bound })?;
        }
        Ok(best)
    }

    /// Degeneracy of the induced subgraph; a lower bound for `td - 1`.
    fn degeneracy(&self, set: u64) -> u32 {
        let mut rest = set;
        let mut degen = 0;
        while rest != 0 {
            let (v, d) = bits::iter(rest)
                .map(|v| (v, (self.g.neighbors(v) & rest).count_ones()))
                .min_by_key(|&(_, d)| d)
                .unwrap();
            degen = degen.max(d);
            rest &= !bits::bit(v);
        }
        degen
    }

    /// Rebuilds the elimination forest of connected `set` with `td = value`,
    /// choosing the smallest vertex that attains the optimum at every step.
    fn build(
        &mut self,
        set: u64,
        value: u32,
        parent: Option<usize>,
        forest: &mut Vec<Option<usize>>,
        order: &mut Vec<usize>,
    ) -> Result<(), SolverError> {
        for v in bits::iter(set) {
            let rest = set & !bits::bit(v);
            if self.td(rest, value)? < value {
                forest[v] = parent;
                order.push(v);
                for comp in self.g.components_of(rest) {
                    let t = self.td_connected(comp, value)?;
                    self.build(comp, t, Some(v), forest, order)?;
                }
                return Ok(());
            }
        }
        unreachable!("some vertex attains the optimum");
    }
}

/// Exact tree-depth of `g` with a witness, under the default budget.
pub fn tree_depth(g: &Graph) -> Result<TreeDepthWitness, SolverError> {
    tree_depth_with_budget(g, SolverBudget::default())
}

pub fn tree_depth_with_budget(g: &Graph, budget: SolverBudget) -> Result<TreeDepthWitness, SolverError> {
    let mut solver = Solver::new(g, budget)?;
    let n = g.n();
    let mut forest = vec![None; n];
    let mut order = Vec::with_capacity(n);
    let mut value = 0;
    for comp in g.components() {
        let t = solver.td_connected(comp, n as u32 + 1)?;
        value = value.max(t);
        solver.build(comp, t, None, &mut forest, &mut order)?;
    }
    // children are always pushed after their parent
    let mut labels = vec![1u32; n];
    for &v in order.iter().rev() {
        if let Some(p) = forest[v] {
            labels[p] = labels[p].max(labels[v] + 1);
        }
    }
    let labeling = Labeling::from_raw(labels);
    debug_assert_eq!(labeling.max_label(), value);
    Ok(TreeDepthWitness { value, labeling, elimination_forest: forest })
}

/// Tree-depth value only.
pub fn td_value(g: &Graph) -> Result<u32, SolverError> {
    td_value_with_budget(g, SolverBudget::default())
}

pub fn td_value_with_budget(g: &Graph, budget: SolverBudget) -> Result<u32, SolverError> {
    let mut solver = Solver::new(g, budget)?;
    solver.td(g.vertex_mask(), g.n() as u32 + 1)
}

/// Whether `td(g) <= k`.
pub fn tree_depth_decision(g: &Graph, k: u32) -> Result<bool, SolverError> {
    tree_depth_decision_with_budget(g, k, SolverBudget::default())
}

pub fn tree_depth_decision_with_budget(g: &Graph, k: u32, budget: SolverBudget) -> Result<bool, SolverError> {
    if k as usize >= g.n() {
        // td <= n always; still enforce the size cap
        Solver::new(g, budget)?;
        return Ok(true);
    }
    let mut solver = Solver::new(g, budget)?;
    Ok(solver.td(g.vertex_mask(), k + 1)? <= k)
}

/// `s(G) = n(G) - td(G)`.
pub fn surplus(g: &Graph) -> Result<u32, SolverError> {
    Ok(g.n() as u32 - td_value(g)?)
}
