//! Generators for the named graph families and the forbidden induced
//! subgraph lists `F_0`, `F_1`, `F_2`.
//!
//! Vertex numbering is fixed per family and documented on each generator;
//! reports and canonical-form regression tests depend on it.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{contains_induced, Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("unknown pattern `{0}` (expected one of 2K1, 3K1, 4K1, 2K2, 2K2+K1, P3+K2, 2K3)")]
    UnknownPattern(String),
    #[error("`{0}` is not a valid family parameter")]
    BadParam(String),
    #[error("{family}({param}): {reason}")]
    Domain { family: &'static str, param: usize, reason: &'static str },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The small graphs that appear in the forbidden lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PatternId {
    TwoK1,
    ThreeK1,
    FourK1,
    TwoK2,
    TwoK2PlusK1,
    P3PlusK2,
    TwoK3,
}

impl PatternId {
    pub const ALL: [PatternId; 7] = [
        PatternId::TwoK1,
        PatternId::ThreeK1,
        PatternId::FourK1,
        PatternId::TwoK2,
        PatternId::TwoK2PlusK1,
        PatternId::P3PlusK2,
        PatternId::TwoK3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PatternId::TwoK1 => "2K1",
            PatternId::ThreeK1 => "3K1",
            PatternId::FourK1 => "4K1",
            PatternId::TwoK2 => "2K2",
            PatternId::TwoK2PlusK1 => "2K2+K1",
            PatternId::P3PlusK2 => "P3+K2",
            PatternId::TwoK3 => "2K3",
        }
    }

    pub fn graph(self) -> Graph {
        let (n, edges): (usize, &[(usize, usize)]) = match self {
            PatternId::TwoK1 => (2, &[]),
            PatternId::ThreeK1 => (3, &[]),
            PatternId::FourK1 => (4, &[]),
            PatternId::TwoK2 => (4, &[(0, 1), (2, 3)]),
            PatternId::TwoK2PlusK1 => (5, &[(0, 1), (2, 3)]),
            PatternId::P3PlusK2 => (5, &[(0, 1), (1, 2), (3, 4)]),
            PatternId::TwoK3 => (6, &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]),
        };
        Graph::from_edges(n, edges.iter().copied()).expect("pattern constants are valid")
    }
}

impl FromStr for PatternId {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PatternId::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| FamilyError::UnknownPattern(s.to_string()))
    }
}

impl fmt::Display for PatternId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A parameterised family member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Complete(usize),
    Cycle(usize),
    Path(usize),
    CycleComplement(usize),
    /// `G_{4k}`, parameterised by `k`.
    G4k(usize),
    KNet(usize),
    CliquePrism(usize),
    HGraph(usize),
    Andrasfai(usize),
    Pattern(PatternId),
}

impl FamilySpec {
    pub const NAMES: [&'static str; 10] = [
        "complete",
        "cycle",
        "path",
        "cycle_complement",
        "g4k",
        "k_net",
        "clique_prism",
        "h_graph",
        "andrasfai",
        "pattern",
    ];

    /// Parses a `(name, param)` pair such as `("andrasfai", "5")` or
    /// `("pattern", "2K2")`.
    pub fn parse(name: &str, param: &str) -> Result<Self, FamilyError> {
        let num = || -> Result<usize, FamilyError> {
            param.trim().parse().map_err(|_| FamilyError::BadParam(param.to_string()))
        };
        Ok(match name.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "complete" => FamilySpec::Complete(num()?),
            "cycle" => FamilySpec::Cycle(num()?),
            "path" => FamilySpec::Path(num()?),
            "cycle_complement" => FamilySpec::CycleComplement(num()?),
            "g4k" => FamilySpec::G4k(num()?),
            "k_net" => FamilySpec::KNet(num()?),
            "clique_prism" => FamilySpec::CliquePrism(num()?),
            "h_graph" => FamilySpec::HGraph(num()?),
            "andrasfai" => FamilySpec::Andrasfai(num()?),
            "pattern" => FamilySpec::Pattern(param.parse()?),
            _ => return Err(FamilyError::UnknownFamily(name.to_string())),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Complete(_) => "complete",
            FamilySpec::Cycle(_) => "cycle",
            FamilySpec::Path(_) => "path",
            FamilySpec::CycleComplement(_) => "cycle_complement",
            FamilySpec::G4k(_) => "g4k",
            FamilySpec::KNet(_) => "k_net",
            FamilySpec::CliquePrism(_) => "clique_prism",
            FamilySpec::HGraph(_) => "h_graph",
            FamilySpec::Andrasfai(_) => "andrasfai",
            FamilySpec::Pattern(_) => "pattern",
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Pattern(p) => write!(f, "pattern {p}"),
            FamilySpec::Complete(k)
            | FamilySpec::Cycle(k)
            | FamilySpec::Path(k)
            | FamilySpec::CycleComplement(k)
            | FamilySpec::G4k(k)
            | FamilySpec::KNet(k)
            | FamilySpec::CliquePrism(k)
            | FamilySpec::HGraph(k)
            | FamilySpec::Andrasfai(k) => write!(f, "{} {k}", self.name()),
        }
    }
}

pub fn generate(spec: FamilySpec) -> Result<Graph, FamilyError> {
    match spec {
        FamilySpec::Complete(n) => complete(n),
        FamilySpec::Cycle(n) => cycle(n),
        FamilySpec::Path(n) => path(n),
        FamilySpec::CycleComplement(n) => cycle_complement(n),
        FamilySpec::G4k(k) => g4k(k),
        FamilySpec::KNet(k) => k_net(k),
        FamilySpec::CliquePrism(a) => clique_prism(a),
        FamilySpec::HGraph(n) => h_graph(n),
        FamilySpec::Andrasfai(k) => andrasfai(k),
        FamilySpec::Pattern(p) => Ok(p.graph()),
    }
}

fn require(family: &'static str, param: usize, ok: bool, reason: &'static str) -> Result<(), FamilyError> {
    if ok {
        Ok(())
    } else {
        Err(FamilyError::Domain { family, param, reason })
    }
}

pub fn complete(n: usize) -> Result<Graph, FamilyError> {
    Ok(Graph::empty(n)?.complement())
}

/// `C_n` with edges `{i, i+1 mod n}`; `n >= 3`.
pub fn cycle(n: usize) -> Result<Graph, FamilyError> {
    require("cycle", n, n >= 3, "requires n >= 3")?;
    Ok(Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))?)
}

/// `P_n` with edges `{i-1, i}`; `n >= 1`.
pub fn path(n: usize) -> Result<Graph, FamilyError> {
    require("path", n, n >= 1, "requires n >= 1")?;
    Ok(Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))?)
}

/// Complement of [`cycle`]; `n >= 3`.
pub fn cycle_complement(n: usize) -> Result<Graph, FamilyError> {
    require("cycle_complement", n, n >= 3, "requires n >= 3")?;
    Ok(cycle(n)?.complement())
}

/// `G_{4k}`: the complement of `C_{4k}` with every other antipodal chord
/// removed.
///
/// With the cycle positions numbered `1..=4k`, the removed edges are
/// `{2j, 2j + 2k}` for `j = 1..=k`. Here positions are 0-based, so the
/// removed edges are `{2j - 1, 2j - 1 + 2k}`. The parameter is `k >= 2`, so
/// `g4k(k)` has `4k` vertices.
pub fn g4k(k: usize) -> Result<Graph, FamilyError> {
    require("g4k", k, k >= 2, "requires k >= 2")?;
    let n = 4 * k;
    let mut g = cycle_complement(n)?;
    for j in 1..=k {
        let e = crate::graph::EdgeRef::new(2 * j - 1, 2 * j - 1 + 2 * k)?;
        g = g.delete_edge(e)?;
    }
    Ok(g)
}

/// `K_k` on `0..k` with pendant vertex `k + i` attached to `i`.
pub fn k_net(k: usize) -> Result<Graph, FamilyError> {
    require("k_net", k, k >= 1, "requires k >= 1")?;
    let clique = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j)));
    let pendants = (0..k).map(|i| (i, k + i));
    Ok(Graph::from_edges(2 * k, clique.chain(pendants))?)
}

/// `K_a □ K_2`; vertex `(x, side)` is `2x + side`.
pub fn clique_prism(a: usize) -> Result<Graph, FamilyError> {
    require("clique_prism", a, a >= 1, "requires a >= 1")?;
    Ok(complete(a)?.cartesian_product(&complete(2)?)?)
}

/// `H_n`: `K_n` with every edge at one vertex subdivided once; `n >= 3`.
///
/// Vertex 0 is the hub `v`; `1..n` are the subdivision vertices `A_n`;
/// `n..=2n-2` form the clique `B_n`, where `i + n - 1` is matched to `i`.
pub fn h_graph(n: usize) -> Result<Graph, FamilyError> {
    require("h_graph", n, n >= 3, "requires n >= 3")?;
    let b = |i: usize| i + n - 1;
    let hub = (1..n).map(|i| (0, i));
    let matching = (1..n).map(|i| (i, b(i)));
    let clique = (1..n).flat_map(|i| (i + 1..n).map(move |j| (b(i), b(j))));
    Ok(Graph::from_edges(2 * n - 1, hub.chain(matching).chain(clique))?)
}

/// Andrásfai graph `And(k)` on `0..3k-1`: `i > j` adjacent iff
/// `i - j ≡ 1 (mod 3)`.
pub fn andrasfai(k: usize) -> Result<Graph, FamilyError> {
    require("andrasfai", k, k >= 1, "requires k >= 1")?;
    let n = 3 * k - 1;
    let edges = (0..n).flat_map(|i| (0..i).filter(move |j| (i - j) % 3 == 1).map(move |j| (j, i)));
    Ok(Graph::from_edges(n, edges)?)
}

/// Members of `F_k` for `k` in `0..=2`.
pub fn forbidden_list(k: u32) -> Option<&'static [PatternId]> {
    match k {
        0 => Some(&[PatternId::TwoK1]),
        1 => Some(&[PatternId::ThreeK1, PatternId::TwoK2]),
        2 => Some(&[PatternId::FourK1, PatternId::TwoK2PlusK1, PatternId::P3PlusK2, PatternId::TwoK3]),
        _ => None,
    }
}

/// Whether `g` has no induced member of `F_k`. Panics for `k > 2`.
pub fn fk_free(g: &Graph, k: u32) -> bool {
    forbidden_list(k)
        .unwrap_or_else(|| panic!("forbidden lists are only known for k <= 2, got {k}"))
        .iter()
        .all(|p| !contains_induced(g, &p.graph()))
}

/// Decides `td(g) >= n(g) - k` through the forbidden list alone, without
/// running the solver.
pub fn high_td_by_forbidden(g: &Graph, k: u32) -> bool {
    fk_free(g, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::canonical_form;

    #[test]
    fn domains() {
        assert!(cycle(2).is_err());
        assert!(g4k(1).is_err());
        assert!(h_graph(2).is_err());
        assert!(andrasfai(0).is_err());
        assert!(k_net(0).is_err());
        assert!(matches!(andrasfai(30), Err(FamilyError::Graph(GraphError::TooManyVertices(89)))));
        assert_eq!(complete(0).unwrap().n(), 0);
    }

    #[test]
    fn h4_shape() {
        let h = h_graph(4).unwrap();
        assert_eq!(h.n(), 7);
        assert_eq!(h.edge_count(), 9);
        assert_eq!(h.degree_sequence(), vec![3, 2, 2, 2, 3, 3, 3]);
        assert!(h.has_edge(1, 4) && h.has_edge(2, 5) && h.has_edge(3, 6));
    }

    #[test]
    fn andrasfai_regular() {
        for k in 1..=6 {
            let g = andrasfai(k).unwrap();
            assert_eq!(g.n(), 3 * k - 1);
            assert!((0..g.n()).all(|v| g.degree(v) == k), "And({k}) is {k}-regular");
        }
        assert_eq!(andrasfai(1).unwrap(), complete(2).unwrap());
        assert_eq!(canonical_form(&andrasfai(2).unwrap()), canonical_form(&cycle(5).unwrap()));
    }

    #[test]
    fn g8_edges() {
        let g = g4k(2).unwrap();
        assert_eq!(g.n(), 8);
        assert_eq!(g.edge_count(), 8 * 7 / 2 - 8 - 2);
        assert!(!g.has_edge(1, 5) && !g.has_edge(3, 7));
        assert!(g.has_edge(0, 4) && g.has_edge(2, 6));
    }

    #[test]
    fn parse_specs() {
        assert_eq!(FamilySpec::parse("andrasfai", "5").unwrap(), FamilySpec::Andrasfai(5));
        assert_eq!(FamilySpec::parse("pattern", "p3+k2").unwrap(), FamilySpec::Pattern(PatternId::P3PlusK2));
        assert_eq!(FamilySpec::parse("h-graph", "4").unwrap(), FamilySpec::HGraph(4));
        assert!(matches!(FamilySpec::parse("petersen", "1"), Err(FamilyError::UnknownFamily(_))));
        assert!(matches!(FamilySpec::parse("cycle", "x"), Err(FamilyError::BadParam(_))));
        assert!(matches!(FamilySpec::parse("pattern", "K5"), Err(FamilyError::UnknownPattern(_))));
        assert_eq!(FamilySpec::Pattern(PatternId::TwoK3).to_string(), "pattern 2K3");
        assert_eq!(FamilySpec::G4k(3).to_string(), "g4k 3");
    }

    #[test]
    fn forbidden_examples() {
        let k5 = complete(5).unwrap();
        assert!(fk_free(&k5, 0));
        assert!(!fk_free(&k5.disjoint_union(&complete(1).unwrap()).unwrap(), 0));
        assert!(!fk_free(&PatternId::TwoK3.graph(), 2));
        assert!(fk_free(&cycle_complement(9).unwrap(), 1));
        assert!(!high_td_by_forbidden(&PatternId::TwoK1.graph(), 0));
    }
}
