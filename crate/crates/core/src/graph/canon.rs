//! Exact canonical labelling for graphs with at most ten vertices.
//!
//! Individualisation-refinement without automorphism pruning beyond twin
//! vertices: every leaf of the search tree is visited and the
//! lexicographically largest adjacency code wins. Equitable refinement and
//! twin skipping keep the tree small at this size (the worst inputs, complete
//! and edgeless graphs, collapse to a single branch per level).

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{bits, to_graph6, Graph};

pub const MAX_CANONICAL_VERTICES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("canonical form requires n <= {MAX_CANONICAL_VERTICES}, got {0}")]
pub struct CanonError(pub usize);

/// graph6 string of the canonically relabelled graph. Equal iff isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalForm(pub String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, CanonError> {
    let perm = canonical_permutation(g)?;
    let relabeled = g.permute(&perm);
    Ok(CanonicalForm(to_graph6(&relabeled).expect("n <= 10")))
}

/// Permutation `perm` such that `g.permute(&perm)` is the canonical graph.
pub(crate) fn canonical_permutation(g: &Graph) -> Result<Vec<usize>, CanonError> {
    let n = g.n();
    if n > MAX_CANONICAL_VERTICES {
        return Err(CanonError(n));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut search = Search { g, best: None };
    let root = refine(g, vec![(0..n).collect()]);
    search.explore(root);
    let (_, order) = search.best.expect("at least one leaf");
    let mut perm = vec![0; n];
    for (pos, v) in order.into_iter().enumerate() {
        perm[v] = pos;
    }
    Ok(perm)
}

type Cells = Vec<Vec<usize>>;

struct Search<'a> {
    g: &'a Graph,
    best: Option<(u64, Vec<usize>)>,
}

impl Search<'_> {
    fn explore(&mut self, cells: Cells) {
        let target =
            cells.iter().enumerate().filter(|(_, c)| c.len() > 1).min_by_key(|(i, c)| (c.len(), *i)).map(|(i, _)| i);
        let Some(t) = target else {
            let order: Vec<usize> = cells.into_iter().map(|c| c[0]).collect();
            let code = self.code(&order);
            if self.best.as_ref().is_none_or(|(b, _)| code > *b) {
                self.best = Some((code, order));
            }
            return;
        };
        let cell = &cells[t];
        let mut tried: Vec<usize> = Vec::with_capacity(cell.len());
        for &v in cell {
            if tried.iter().any(|&w| self.twins(v, w)) {
                continue;
            }
            tried.push(v);
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend(cells[..t].iter().cloned());
            next.push(vec![v]);
            next.push(cell.iter().copied().filter(|&x| x != v).collect());
            next.extend(cells[t + 1..].iter().cloned());
            self.explore(refine(self.g, next));
        }
    }

    /// Swapping `v` and `w` is an automorphism fixing everything else.
    fn twins(&self, v: usize, w: usize) -> bool {
        let mask = !(bits::bit(v) | bits::bit(w));
        self.g.neighbors(v) & mask == self.g.neighbors(w) & mask
    }

    /// Upper triangle of the relabelled graph in graph6 bit order, first bit
    /// most significant.
    fn code(&self, order: &[usize]) -> u64 {
        let mut code = 0u64;
        for j in 1..order.len() {
            for i in 0..j {
                code = (code << 1) | self.g.has_edge(order[i], order[j]) as u64;
            }
        }
        code
    }
}

/// Refines an ordered partition to the coarsest equitable refinement. Cells
/// split by their neighbour-count profile against the current partition, and
/// the resulting pieces are ordered by that profile, so the output depends
/// only on the isomorphism type of (graph, partition).
fn refine(g: &Graph, mut cells: Cells) -> Cells {
    loop {
        let masks: Vec<u64> = cells.iter().map(|c| bits::from_vertices(c.iter().copied())).collect();
        let mut next: Cells = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| {
                    let sig = masks.iter().map(|m| (g.neighbors(v) & m).count_ones()).collect();
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn small_cases() {
        assert_eq!(canonical_form(&Graph::empty(0).unwrap()).unwrap().as_str(), "?");
        let k3k1 = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let p3k1 = Graph::from_edges(4, [(0, 1), (1, 2)]).unwrap();
        assert_ne!(canonical_form(&k3k1).unwrap(), canonical_form(&p3k1).unwrap());
        assert_eq!(canonical_form(&cycle(5).complement()).unwrap(), canonical_form(&cycle(5)).unwrap());
        assert_eq!(canonical_form(&Graph::empty(11).unwrap()), Err(CanonError(11)));
    }

    #[test]
    fn complete_graph_is_cheap() {
        let k10 = Graph::empty(10).unwrap().complement();
        let f = canonical_form(&k10).unwrap();
        assert_eq!(super::super::parse_graph6(f.as_str()).unwrap(), k10);
    }
}
