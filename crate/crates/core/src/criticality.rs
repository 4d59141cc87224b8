//! 1-uniqueness and the three flavours of criticality, plus the aggregated
//! per-graph report.
//!
//! Tree-depth is monotone under minors, so a graph is minor-critical exactly
//! when every *single* edge deletion, edge contraction and vertex deletion
//! lowers it; longer minor sequences never need to be examined.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeRef, Graph, GraphError};
use crate::labelings::{t_uniqueness, LabelingOpError, MAX_T_DEPTH, MAX_T_VERTICES};
use crate::solver::{td_value, tree_depth_decision, SolverError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriticalityError {
    #[error("criticality is undefined for the graph with no vertices")]
    EmptyGraph,
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Labeling(#[from] LabelingOpError),
}

type Result<T> = std::result::Result<T, CriticalityError>;

fn nonempty(g: &Graph) -> Result<()> {
    if g.n() == 0 {
        Err(CriticalityError::EmptyGraph)
    } else {
        Ok(())
    }
}

/// `v` is 1-unique iff the star-clique transform at `v` has smaller
/// tree-depth.
pub fn is_one_unique_vertex(g: &Graph, v: usize) -> Result<bool> {
    let td = td_value(g)?;
    let h = g.star_clique_transform(v)?;
    Ok(td > 0 && tree_depth_decision(&h, td - 1)?)
}

pub fn one_unique_vertices(g: &Graph) -> Result<Vec<usize>> {
    let td = td_value(g)?;
    let mut out = Vec::new();
    for v in 0..g.n() {
        if one_unique_given(g, v, td)? {
            out.push(v);
        }
    }
    Ok(out)
}

fn one_unique_given(g: &Graph, v: usize, td: u32) -> Result<bool> {
    let h = g.star_clique_transform(v)?;
    Ok(td > 0 && tree_depth_decision(&h, td - 1)?)
}

/// Every vertex is 1-unique. Vacuously true for the empty graph.
pub fn is_one_unique(g: &Graph) -> Result<bool> {
    Ok(one_unique_vertices(g)?.len() == g.n())
}

fn drops(minor: &Graph, td: u32) -> Result<bool> {
    Ok(td > 0 && tree_depth_decision(minor, td - 1)?)
}

/// Every single edge deletion lowers the tree-depth.
pub fn is_subgraph_critical(g: &Graph) -> Result<bool> {
    nonempty(g)?;
    let td = td_value(g)?;
    for e in g.edges() {
        if !drops(&g.delete_edge(e)?, td)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every single vertex deletion lowers the tree-depth.
pub fn is_induced_subgraph_critical(g: &Graph) -> Result<bool> {
    nonempty(g)?;
    let td = td_value(g)?;
    for v in 0..g.n() {
        if !drops(&g.delete_vertex(v)?, td)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every proper minor has smaller tree-depth.
///
/// With `shortcut`, contractions are only tried on edges whose endpoints are
/// both non-1-unique: contracting `uv` yields a subgraph of the star-clique
/// transform at `v`, so an edge at a 1-unique vertex always lowers `td`.
pub fn is_minor_critical(g: &Graph, shortcut: bool) -> Result<bool> {
    nonempty(g)?;
    let td = td_value(g)?;
    let edges = g.edges();
    for &e in &edges {
        if !drops(&g.delete_edge(e)?, td)? {
            return Ok(false);
        }
    }
    for v in 0..g.n() {
        if !drops(&g.delete_vertex(v)?, td)? {
            return Ok(false);
        }
    }
    let one_unique: Vec<bool> = if shortcut {
        (0..g.n()).map(|v| one_unique_given(g, v, td)).collect::<Result<_>>()?
    } else {
        vec![false; g.n()]
    };
    for &e in &edges {
        if one_unique[e.u] || one_unique[e.v] {
            continue;
        }
        if !drops(&g.contract_edge(e)?, td)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Greedily deletes edges that keep the tree-depth unchanged, scanning in
/// ascending edge order and restarting after each deletion. Returns the
/// resulting spanning subgraph and the deleted edges (in original ids).
pub fn critical_spanning_subgraph(g: &Graph) -> Result<(Graph, Vec<EdgeRef>)> {
    let td = td_value(g)?;
    let mut current = g.clone();
    let mut removed = Vec::new();
    'restart: loop {
        for e in current.edges() {
            let candidate = current.delete_edge(e)?;
            if !drops(&candidate, td)? {
                current = candidate;
                removed.push(e);
                continue 'restart;
            }
        }
        return Ok((current, removed));
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDelta {
    pub u: usize,
    pub v: usize,
    pub delta: u32,
}

/// Per-instance checks of the conjectured bounds for a `td`-critical graph:
/// at most `2^(td-1)` vertices and maximum degree at most `td - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureChecks {
    pub order_bound: bool,
    pub max_degree_bound: bool,
}

/// Everything the crate knows how to say about one graph's criticality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalityReport {
    pub n: usize,
    pub td: u32,
    pub surplus: u32,
    pub max_degree: usize,
    pub edge_deletion_deltas: Vec<EdgeDelta>,
    pub contraction_deltas: Vec<EdgeDelta>,
    pub vertex_deletion_deltas: Vec<u32>,
    pub one_unique: Vec<bool>,
    /// Least `t` per vertex (inner `None`: no such `t`). The outer `None`
    /// means the graph lies outside the `t`-uniqueness search envelope.
    pub min_t: Option<Vec<Option<u32>>>,
    pub is_minor_critical: bool,
    pub is_subgraph_critical: bool,
    pub is_induced_subgraph_critical: bool,
    pub is_one_unique_graph: bool,
    pub conjecture_checks: ConjectureChecks,
}

pub fn criticality_report(g: &Graph) -> Result<CriticalityReport> {
    nonempty(g)?;
    let td = td_value(g)?;
    let edges = g.edges();

    let minor_td = |m: Result<Graph>| -> Result<u32> {
        let t = td_value(&m?)?;
        Ok(td.checked_sub(t).expect("tree-depth is minor-monotone"))
    };
    let edge_deletion_deltas = edges
        .par_iter()
        .map(|&e| Ok(EdgeDelta { u: e.u, v: e.v, delta: minor_td(g.delete_edge(e).map_err(Into::into))? }))
        .collect::<Result<Vec<_>>>()?;
    let contraction_deltas = edges
        .par_iter()
        .map(|&e| Ok(EdgeDelta { u: e.u, v: e.v, delta: minor_td(g.contract_edge(e).map_err(Into::into))? }))
        .collect::<Result<Vec<_>>>()?;
    let vertex_deletion_deltas = (0..g.n())
        .into_par_iter()
        .map(|v| minor_td(g.delete_vertex(v).map_err(Into::into)))
        .collect::<Result<Vec<_>>>()?;
    let one_unique = (0..g.n()).into_par_iter().map(|v| one_unique_given(g, v, td)).collect::<Result<Vec<_>>>()?;
    let min_t = if g.n() <= MAX_T_VERTICES && td <= MAX_T_DEPTH {
        Some((0..g.n()).into_par_iter().map(|v| t_uniqueness(g, v).map_err(Into::into)).collect::<Result<Vec<_>>>()?)
    } else {
        None
    };

    let is_subgraph_critical = edge_deletion_deltas.iter().all(|d| d.delta >= 1);
    let is_induced_subgraph_critical = vertex_deletion_deltas.iter().all(|&d| d >= 1);
    let is_minor_critical =
        is_subgraph_critical && is_induced_subgraph_critical && contraction_deltas.iter().all(|d| d.delta >= 1);
    let max_degree = g.max_degree();
    let order_bound = (g.n() as u128) <= 1u128 << (td.saturating_sub(1)).min(127);
    Ok(CriticalityReport {
        n: g.n(),
        td,
        surplus: g.n() as u32 - td,
        max_degree,
        edge_deletion_deltas,
        contraction_deltas,
        vertex_deletion_deltas,
        is_one_unique_graph: one_unique.iter().all(|&b| b),
        one_unique,
        min_t,
        is_minor_critical,
        is_subgraph_critical,
        is_induced_subgraph_critical,
        conjecture_checks: ConjectureChecks { order_bound, max_degree_bound: max_degree < td as usize },
    })
}

impl CriticalityReport {
    /// Vertices that are not 1-unique.
    pub fn non_one_unique_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| !self.one_unique[v]).collect()
    }
}
