//! Labeling transforms and exhaustive labeling searches: reduced labelings,
//! irreducible cores, the standard labeling of `And(k)`, enumeration of
//! optimal labelings and `t`-uniqueness.
//!
//! An *optimal* labeling here is a feasible labeling with every label in
//! `1..=td(g)`. A vertex `v` is *`t`-unique* when some optimal labeling gives
//! `v` label `t` and gives `t` to no other vertex.

use thiserror::Error;

use crate::graph::{bits, Graph, GraphError};
use crate::solver::{first_violation, td_value, verify_feasible, Labeling, LabelingError, SolverError, Violation};

/// Envelope for [`t_uniqueness`]: at most `MAX_T_VERTICES` vertices and
/// tree-depth at most `MAX_T_DEPTH`.
pub const MAX_T_VERTICES: usize = 10;
pub const MAX_T_DEPTH: u32 = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelingOpError {
    #[error(transparent)]
    Labeling(#[from] LabelingError),
    #[error("labeling is infeasible at {0}")]
    Infeasible(Violation),
    #[error("labeling uses {max_label} labels but td is {td}")]
    NotOptimal { max_label: u32, td: u32 },
    #[error("labeling is not reduced: repeated label {repeated} exceeds once-used label {single}")]
    NotReduced { repeated: u32, single: u32 },
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("t-uniqueness search limited to n <= {MAX_T_VERTICES} and td <= {MAX_T_DEPTH} (got n = {n}, td = {td})")]
    OutsideEnvelope { n: usize, td: u32 },
}

fn require_feasible(g: &Graph, lab: &Labeling) -> Result<(), LabelingOpError> {
    match verify_feasible(g, lab)? {
        None => Ok(()),
        Some(v) => Err(LabelingOpError::Infeasible(v)),
    }
}

/// Label multiplicities, indexed by label value.
fn multiplicities(lab: &Labeling) -> Vec<usize> {
    let mut counts = vec![0usize; lab.max_label() as usize + 1];
    for &l in lab.labels() {
        counts[l as usize] += 1;
    }
    counts
}

/// Moves the repeated labels to the bottom: repeated labels
/// `l_1 < ... < l_k` become `1..=k`, and once-used labels keep their relative
/// order above them. The result is feasible with the same number of distinct
/// labels.
pub fn reduce_labeling(g: &Graph, lab: &Labeling) -> Result<Labeling, LabelingOpError> {
    require_feasible(g, lab)?;
    let counts = multiplicities(lab);
    let mut remap = vec![0u32; counts.len()];
    let mut next = 1;
    for (l, &c) in counts.iter().enumerate() {
        if c >= 2 {
            remap[l] = next;
            next += 1;
        }
    }
    for (l, &c) in counts.iter().enumerate() {
        if c == 1 {
            remap[l] = next;
            next += 1;
        }
    }
    let out = Labeling::from_raw(lab.labels().iter().map(|&l| remap[l as usize]).collect());
    debug_assert!(verify_feasible(g, &out).unwrap().is_none());
    Ok(out)
}

/// Whether every repeated label is below every once-used label.
pub fn is_reduced(lab: &Labeling) -> bool {
    reduced_violation(lab).is_none()
}

fn reduced_violation(lab: &Labeling) -> Option<(u32, u32)> {
    let counts = multiplicities(lab);
    let max_repeated = counts.iter().rposition(|&c| c >= 2)?;
    let min_single = counts.iter().position(|&c| c == 1)?;
    (max_repeated > min_single).then_some((max_repeated as u32, min_single as u32))
}

/// Induced subgraph on the vertices whose label is shared, under a reduced
/// optimal labeling, with the restricted labeling and the numbers that the
/// construction guarantees: `s(core) = s(source)` and `td(core) <= s(core)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibleCore {
    pub core: Graph,
    /// Source vertex ids of the core, ascending.
    pub core_vertices: Vec<usize>,
    pub restricted_labeling: Labeling,
    pub source_td: u32,
    pub core_td: u32,
}

impl IrreducibleCore {
    pub fn source_surplus(&self, source: &Graph) -> u32 {
        source.n() as u32 - self.source_td
    }

    pub fn core_surplus(&self) -> u32 {
        self.core.n() as u32 - self.core_td
    }
}

pub fn irreducible_core(g: &Graph, lab: &Labeling) -> Result<IrreducibleCore, LabelingOpError> {
    require_feasible(g, lab)?;
    let td = td_value(g)?;
    if lab.max_label() != td {
        return Err(LabelingOpError::NotOptimal { max_label: lab.max_label(), td });
    }
    if let Some((repeated, single)) = reduced_violation(lab) {
        return Err(LabelingOpError::NotReduced { repeated, single });
    }
    let counts = multiplicities(lab);
    let core_vertices: Vec<usize> = (0..g.n()).filter(|&v| counts[lab.get(v) as usize] >= 2).collect();
    let core = g.induced_subgraph(&core_vertices)?;
    let restricted_labeling = Labeling::from_raw(core_vertices.iter().map(|&v| lab.get(v)).collect());
    let core_td = td_value(&core)?;
    Ok(IrreducibleCore { core, core_vertices, restricted_labeling, source_td: td, core_td })
}

/// The standard labeling of `And(k)`: vertex 0 gets 1, positive multiples of
/// 3 get 2, and the remaining vertices get `2..=2k` in increasing order
/// (`(2x + 4) / 3` for `x ≡ 1`, `(2x + 5) / 3` for `x ≡ 2` mod 3).
pub fn standard_labeling_andrasfai(k: usize) -> Labeling {
    assert!(k >= 1, "And(k) needs k >= 1");
    let labels = (0..3 * k - 1)
        .map(|x| match (x, x % 3) {
            (0, _) => 1,
            (_, 0) => 2,
            (_, 1) => (2 * x as u32 + 4) / 3,
            _ => (2 * x as u32 + 5) / 3,
        })
        .collect();
    Labeling::from_raw(labels)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationStatus {
    /// More labelings may follow.
    Running,
    /// Every optimal labeling has been yielded.
    Complete,
    /// The budget was reached while further labelings remain.
    BudgetExhausted,
}

/// Lexicographic stream of the optimal labelings of a graph.
pub struct OptimalLabelings<'g> {
    g: &'g Graph,
    max_label: u32,
    labels: Vec<u32>,
    pos: usize,
    remaining: usize,
    status: EnumerationStatus,
    fresh: bool,
}

impl OptimalLabelings<'_> {
    pub fn status(&self) -> EnumerationStatus {
        self.status
    }

    pub fn max_label(&self) -> u32 {
        self.max_label
    }

    /// Advances to the next feasible full assignment in lexicographic order.
    fn advance(&mut self) -> bool {
        let n = self.labels.len();
        if n == 0 {
            let first = self.fresh;
            self.fresh = false;
            return first;
        }
        if self.fresh {
            self.fresh = false;
            self.pos = 0;
            self.labels[0] = 0;
        }
        loop {
            let i = self.pos;
            self.labels[i] += 1;
            if self.labels[i] > self.max_label {
                self.labels[i] = 0;
                if i == 0 {
                    return false;
                }
                self.pos -= 1;
                continue;
            }
            if first_violation(self.g, &self.labels, bits::full_mask(i + 1)).is_some() {
                continue;
            }
            if i + 1 == n {
                return true;
            }
            self.pos += 1;
            self.labels[self.pos] = 0;
        }
    }
}

impl Iterator for OptimalLabelings<'_> {
    type Item = Labeling;

    fn next(&mut self) -> Option<Labeling> {
        if self.status != EnumerationStatus::Running {
            return None;
        }
        if !self.advance() {
            self.status = EnumerationStatus::Complete;
            return None;
        }
        if self.remaining == 0 {
            self.status = EnumerationStatus::BudgetExhausted;
            return None;
        }
        self.remaining -= 1;
        Some(Labeling::from_raw(self.labels.clone()))
    }
}

/// Streams feasible labelings with labels in `1..=td(g)`, lexicographically,
/// stopping after `budget` items. Check [`OptimalLabelings::status`] after
/// the stream ends to tell completion from exhaustion.
pub fn enumerate_optimal_labelings(g: &Graph, budget: usize) -> Result<OptimalLabelings<'_>, SolverError> {
    let td = td_value(g)?;
    Ok(OptimalLabelings {
        g,
        max_label: td,
        labels: vec![0; g.n()],
        pos: 0,
        remaining: budget,
        status: EnumerationStatus::Running,
        fresh: true,
    })
}

/// Whether some optimal labeling gives `t` to `v` and to no other vertex.
pub fn is_t_unique(g: &Graph, v: usize, t: u32) -> Result<bool, LabelingOpError> {
    let td = checked_envelope(g, v)?;
    Ok(t >= 1 && t <= td && unique_label_search(g, v, t, td))
}

/// Least `t` for which `v` is `t`-unique, or `None` when no optimal labeling
/// isolates `v` on any label.
pub fn t_uniqueness(g: &Graph, v: usize) -> Result<Option<u32>, LabelingOpError> {
    let td = checked_envelope(g, v)?;
    Ok((1..=td).find(|&t| unique_label_search(g, v, t, td)))
}

fn checked_envelope(g: &Graph, v: usize) -> Result<u32, LabelingOpError> {
    if v >= g.n() {
        return Err(GraphError::VertexOutOfRange { vertex: v, n: g.n() }.into());
    }
    let td = td_value(g)?;
    if g.n() > MAX_T_VERTICES || td > MAX_T_DEPTH {
        return Err(LabelingOpError::OutsideEnvelope { n: g.n(), td });
    }
    Ok(td)
}

/// Backtracking with `v` fixed to `t` and every other vertex drawn from
/// `1..=td` minus `t`. Vertices are assigned in BFS order from `v` so that
/// violations surface early.
fn unique_label_search(g: &Graph, v: usize, t: u32, td: u32) -> bool {
    let n = g.n();
    let mut order = Vec::with_capacity(n);
    let mut seen = 0u64;
    for start in std::iter::once(v).chain(0..n) {
        if seen & bits::bit(start) != 0 {
            continue;
        }
        seen |= bits::bit(start);
        let mut head = order.len();
        order.push(start);
        while head < order.len() {
            let x = order[head];
            head += 1;
            for y in g.neighbor_iter(x) {
                if seen & bits::bit(y) == 0 {
                    seen |= bits::bit(y);
                    order.push(y);
                }
            }
        }
    }
    let mut labels = vec![0u32; n];
    labels[v] = t;
    assign(g, &order, 1, bits::bit(v), &mut labels, t, td)
}

fn assign(g: &Graph, order: &[usize], depth: usize, assigned: u64, labels: &mut [u32], t: u32, td: u32) -> bool {
    if depth == order.len() {
        return true;
    }
    let x = order[depth];
    for l in (1..=td).filter(|&l| l != t) {
        labels[x] = l;
        let now = assigned | bits::bit(x);
        if first_violation(g, labels, now).is_none() && assign(g, order, depth + 1, now, labels, t, td) {
            return true;
        }
    }
    labels[x] = 0;
    false
}
