//! Simple undirected graphs on at most 64 vertices, stored as neighbour
//! bitsets, together with the structural operations used throughout the
//! crate: minors, products, star-clique transforms, canonical forms and
//! connectivity.

pub mod bits;
mod canon;
mod connectivity;
mod format;
mod pattern;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use canon::{canonical_form, CanonicalForm, MAX_CANONICAL_VERTICES};
pub use connectivity::vertex_connectivity;
pub use format::{
    detect_format, parse_edge_list, parse_graph, parse_graph6, to_edge_list, to_graph6, EdgeListError, Graph6Error,
    GraphFormat, ParseError, MAX_GRAPH6_VERTICES,
};
pub use pattern::contains_induced;

/// Hard limit on the order of a [`Graph`]; one `u64` word per neighbourhood.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph order {0} exceeds the supported maximum of {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("{0} is not an edge of the graph")]
    MissingEdge(EdgeRef),
}

/// An unordered vertex pair, normalised so that `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeRef {
    pub u: usize,
    pub v: usize,
}

impl EdgeRef {
    pub fn new(a: usize, b: usize) -> Result<Self, GraphError> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(EdgeRef { u: a, v: b }),
            std::cmp::Ordering::Greater => Ok(EdgeRef { u: b, v: a }),
            std::cmp::Ordering::Equal => Err(GraphError::SelfLoop(a)),
        }
    }
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.u, self.v)
    }
}

/// Immutable simple graph on vertices `0..n`.
///
/// `adj[v]` holds the neighbourhood of `v` as a bitset. The relation is kept
/// symmetric and irreflexive by every constructor.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (a, b) in edges {
            g.check_vertex(a)?;
            g.check_vertex(b)?;
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            g.link(a, b);
        }
        Ok(g)
    }

    /// Builds a graph from raw neighbourhood bitsets. The caller guarantees
    /// symmetry, irreflexivity and that no bit at or above `adj.len()` is set.
    pub(crate) fn from_adjacency(adj: Vec<u64>) -> Self {
        let g = Graph { n: adj.len(), adj };
        debug_assert!(g.is_well_formed());
        g
    }

    fn is_well_formed(&self) -> bool {
        let mask = bits::full_mask(self.n);
        (0..self.n).all(|v| {
            self.adj[v] & !mask == 0
                && self.adj[v] & bits::bit(v) == 0
                && bits::iter(self.adj[v]).all(|w| self.adj[w] & bits::bit(v) != 0)
        })
    }

    #[inline]
    fn link(&mut self, a: usize, b: usize) {
        self.adj[a] |= bits::bit(b);
        self.adj[b] |= bits::bit(a);
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Bitset of all vertices.
    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        bits::full_mask(self.n)
    }

    /// Neighbourhood of `v` as a bitset.
    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn neighbor_iter(&self, v: usize) -> bits::BitIter {
        bits::iter(self.adj[v])
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bits::bit(v) != 0
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// All edges in ascending `(u, v)` order.
    pub fn edges(&self) -> Vec<EdgeRef> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in bits::iter(self.adj[u] & !bits::full_mask(u + 1)) {
                out.push(EdgeRef { u, v });
            }
        }
        out
    }

    fn check_edge(&self, e: EdgeRef) -> Result<(), GraphError> {
        self.check_vertex(e.u)?;
        self.check_vertex(e.v)?;
        if self.has_edge(e.u, e.v) {
            Ok(())
        } else {
            Err(GraphError::MissingEdge(e))
        }
    }

    /// Whether the vertices of `set` are pairwise adjacent.
    pub fn is_clique(&self, set: u64) -> bool {
        bits::iter(set).all(|v| (set & !bits::bit(v)) & !self.adj[v] == 0)
    }

    pub fn is_complete(&self) -> bool {
        self.is_clique(self.vertex_mask())
    }

    /// Vertices reachable from `start` inside `within` (which must contain `start`).
    pub fn reach(&self, start: usize, within: u64) -> u64 {
        let mut comp = bits::bit(start);
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0;
            for v in bits::iter(frontier) {
                next |= self.adj[v];
            }
            next &= within & !comp;
            comp |= next;
            frontier = next;
        }
        comp
    }

    /// Connected components of the subgraph induced by `within`, ordered by
    /// smallest vertex.
    pub fn components_of(&self, within: u64) -> Vec<u64> {
        let mut rest = within;
        let mut out = Vec::new();
        while rest != 0 {
            let c = self.reach(rest.trailing_zeros() as usize, rest);
            out.push(c);
            rest &= !c;
        }
        out
    }

    pub fn components(&self) -> Vec<u64> {
        self.components_of(self.vertex_mask())
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.reach(0, self.vertex_mask()) == self.vertex_mask()
    }

    /// Removes edge `e`; the vertex set is unchanged.
    pub fn delete_edge(&self, e: EdgeRef) -> Result<Graph, GraphError> {
        self.check_edge(e)?;
        let mut adj = self.adj.clone();
        adj[e.u] &= !bits::bit(e.v);
        adj[e.v] &= !bits::bit(e.u);
        Ok(Graph::from_adjacency(adj))
    }

    /// Removes `v` and renumbers the remaining vertices densely, preserving order.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(v)?;
        Ok(self.induced_mask(self.vertex_mask() & !bits::bit(v)))
    }

    /// Merges the endpoints of `e`. The merged vertex takes the slot of the
    /// smaller endpoint; the larger endpoint disappears and later vertices
    /// shift down by one.
    pub fn contract_edge(&self, e: EdgeRef) -> Result<Graph, GraphError> {
        self.check_edge(e)?;
        let mut adj = self.adj.clone();
        let merged = (adj[e.u] | adj[e.v]) & !bits::bit(e.u) & !bits::bit(e.v);
        for w in bits::iter(adj[e.v]) {
            adj[w] &= !bits::bit(e.v);
        }
        adj[e.v] = 0;
        adj[e.u] = merged;
        for w in bits::iter(merged) {
            adj[w] |= bits::bit(e.u);
        }
        let tmp = Graph { n: self.n, adj };
        Ok(tmp.induced_mask(self.vertex_mask() & !bits::bit(e.v)))
    }

    /// Subgraph induced by the vertex ids in `set`, renumbered by ascending id.
    pub fn induced_subgraph(&self, set: &[usize]) -> Result<Graph, GraphError> {
        let mut mask = 0;
        for &v in set {
            self.check_vertex(v)?;
            mask |= bits::bit(v);
        }
        Ok(self.induced_mask(mask))
    }

    /// Subgraph induced by the bitset `mask` (bits beyond `n` are ignored).
    pub fn induced_mask(&self, mask: u64) -> Graph {
        let mask = mask & self.vertex_mask();
        let kept: Vec<usize> = bits::iter(mask).collect();
        let mut pos = [usize::MAX; MAX_VERTICES];
        for (i, &v) in kept.iter().enumerate() {
            pos[v] = i;
        }
        let adj =
            kept.iter().map(|&v| bits::iter(self.adj[v] & mask).fold(0, |acc, w| acc | bits::bit(pos[w]))).collect();
        Graph::from_adjacency(adj)
    }

    pub fn complement(&self) -> Graph {
        let mask = self.vertex_mask();
        let adj = (0..self.n).map(|v| !self.adj[v] & mask & !bits::bit(v)).collect();
        Graph::from_adjacency(adj)
    }

    /// `self + other`; the vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|a| a << self.n));
        Ok(Graph::from_adjacency(adj))
    }

    /// `self □ other`; vertex `(a, b)` is numbered `a * other.n() + b`.
    pub fn cartesian_product(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n * other.n;
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let m = other.n;
        let mut g = Graph::empty(n)?;
        for a in 0..self.n {
            for b in 0..m {
                for b2 in other.neighbor_iter(b) {
                    g.link(a * m + b, a * m + b2);
                }
                for a2 in self.neighbor_iter(a) {
                    g.link(a * m + b, a2 * m + b);
                }
            }
        }
        Ok(g)
    }

    /// Deletes `v` and makes its former neighbourhood a clique.
    pub fn star_clique_transform(&self, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(v)?;
        let nb = self.adj[v];
        let mut adj = self.adj.clone();
        for w in bits::iter(nb) {
            adj[w] |= nb & !bits::bit(w);
        }
        let tmp = Graph { n: self.n, adj };
        Ok(tmp.induced_mask(self.vertex_mask() & !bits::bit(v)))
    }

    /// Relabels vertex `v` as `perm[v]`. `perm` must be a permutation of `0..n`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let mut adj = vec![0u64; self.n];
        for v in 0..self.n {
            adj[perm[v]] = bits::iter(self.adj[v]).fold(0, |acc, w| acc | bits::bit(perm[w]));
        }
        Graph::from_adjacency(adj)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, e) in self.edges().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}-{}", e.u, e.v)?;
        }
        write!(f, "])")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> Graph {
        Graph::empty(n).unwrap().complement()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(Graph::from_edges(3, [(0, 3)]), Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 }));
        assert_eq!(Graph::empty(65), Err(GraphError::TooManyVertices(65)));
        assert!(Graph::empty(64).is_ok());
    }

    #[test]
    fn delete_edge_of_triangle_is_path() {
        let g = k(3).delete_edge(EdgeRef::new(0, 2).unwrap()).unwrap();
        assert_eq!(g, Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap());
        assert_eq!(g.edge_count(), 2);
        let missing = EdgeRef::new(0, 2).unwrap();
        assert_eq!(g.delete_edge(missing), Err(GraphError::MissingEdge(missing)));
    }

    #[test]
    fn delete_vertex_renumbers() {
        let g = path(4).delete_vertex(1).unwrap();
        // 0 | 2-3  ->  0 | 1-2
        assert_eq!(g, Graph::from_edges(3, [(1, 2)]).unwrap());
        let empty = k(1).delete_vertex(0).unwrap();
        assert_eq!(empty.n(), 0);
        assert!(k(1).delete_vertex(1).is_err());
    }

    #[test]
    fn contraction() {
        let c5 = cycle(5);
        for e in c5.edges() {
            assert_eq!(c5.contract_edge(e).unwrap(), cycle(4));
        }
        let k4 = k(4);
        for e in k4.edges() {
            assert_eq!(k4.contract_edge(e).unwrap(), k(3));
        }
        // star centre 0 with leaves 1,2,3; contract {0,2}: merged vertex 0, leaves 1,3 -> 1,2
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let c = star.contract_edge(EdgeRef::new(0, 2).unwrap()).unwrap();
        assert_eq!(c, Graph::from_edges(3, [(0, 1), (0, 2)]).unwrap());
        // contracting 1-2 in the path 0-1-2-3 keeps slot 1 for the merged vertex
        let p = path(4).contract_edge(EdgeRef::new(1, 2).unwrap()).unwrap();
        assert_eq!(p, path(3));
    }

    #[test]
    fn induced() {
        let p4 = path(4);
        assert_eq!(p4.induced_subgraph(&[0, 3]).unwrap(), Graph::empty(2).unwrap());
        assert_eq!(p4.induced_subgraph(&[0, 1, 2, 3]).unwrap(), p4);
        assert_eq!(p4.induced_subgraph(&[]).unwrap().n(), 0);
        assert!(p4.induced_subgraph(&[4]).is_err());
    }

    #[test]
    fn products_and_unions() {
        let k2 = k(2);
        let two_k2 = k2.disjoint_union(&k2).unwrap();
        assert_eq!(two_k2, Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap());
        let prism = k(3).cartesian_product(&k2).unwrap();
        assert_eq!(prism.n(), 6);
        assert_eq!(prism.edge_count(), 9);
        assert!(prism.has_edge(0, 1)); // (0,0)-(0,1)
        assert!(prism.has_edge(0, 2)); // (0,0)-(1,0)
        assert!(!prism.has_edge(0, 3));
        assert_eq!(k(3).cartesian_product(&Graph::empty(0).unwrap()).unwrap().n(), 0);
    }

    #[test]
    fn star_clique() {
        for n in 2..7 {
            assert_eq!(k(n).star_clique_transform(0).unwrap(), k(n - 1));
        }
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.star_clique_transform(0).unwrap(), k(3));
        assert!(star.star_clique_transform(4).is_err());
    }

    #[test]
    fn components_ordered() {
        let g = Graph::from_edges(6, [(4, 5), (1, 2)]).unwrap();
        let comps = g.components();
        assert_eq!(comps, vec![0b1, 0b110, 0b1000, 0b110000]);
        assert!(!g.is_connected());
        assert!(cycle(5).is_connected());
        assert!(Graph::empty(0).unwrap().is_connected());
    }

    #[test]
    fn permute_preserves_edge_count() {
        let g = path(5);
        let p = g.permute(&[4, 2, 0, 1, 3]);
        assert_eq!(p.edge_count(), 4);
        assert!(p.has_edge(4, 2));
        assert!(p.has_edge(0, 1));
    }
}
