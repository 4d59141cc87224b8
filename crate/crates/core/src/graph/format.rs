//! graph6 (single-byte order form) and plain edge-list text formats.

use thiserror::Error;

use super::{bits, Graph, GraphError};

/// Largest order representable with the single-byte graph6 size prefix.
pub const MAX_GRAPH6_VERTICES: usize = 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    OutOfRange { offset: usize, byte: u8 },
    #[error("order byte at offset {offset} announces n > {MAX_GRAPH6_VERTICES} (multi-byte form unsupported)")]
    OrderTooLarge { offset: usize },
    #[error("graph6 body truncated at offset {offset}: expected {expected} bytes in total")]
    Truncated { offset: usize, expected: usize },
    #[error("trailing garbage starting at offset {offset}")]
    TrailingBytes { offset: usize },
    #[error("malformed byte at offset {offset}: padding bits must be zero")]
    NonzeroPadding { offset: usize },
    #[error("graph on {0} vertices cannot be written as single-byte graph6")]
    Unencodable(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EdgeListError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("header announces {expected} edges but {found} were given")]
    EdgeCount { expected: usize, found: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: {source}")]
    Graph {
        line: usize,
        #[source]
        source: GraphError,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("graph6: {0}")]
    Graph6(#[from] Graph6Error),
    #[error("edge list: {0}")]
    EdgeList(#[from] EdgeListError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Graph6,
    EdgeList,
}

/// Number of body bytes for a graph6 string of order `n`.
fn body_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// Decodes one graph6 line. A single trailing `\n` or `\r\n` is tolerated.
pub fn parse_graph6(line: &str) -> Result<Graph, Graph6Error> {
    let line = line.strip_suffix('\n').map(|l| l.strip_suffix('\r').unwrap_or(l)).unwrap_or(line);
    let bytes = line.as_bytes();
    let first = *bytes.first().ok_or(Graph6Error::Empty)?;
    if !(63..=126).contains(&first) {
        return Err(Graph6Error::OutOfRange { offset: 0, byte: first });
    }
    if first == 126 {
        return Err(Graph6Error::OrderTooLarge { offset: 0 });
    }
    let n = (first - 63) as usize;
    let expected = 1 + body_len(n);
    for (offset, &b) in bytes.iter().enumerate().take(expected).skip(1) {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::OutOfRange { offset, byte: b });
        }
    }
    if bytes.len() < expected {
        return Err(Graph6Error::Truncated { offset: bytes.len(), expected });
    }
    if bytes.len() > expected {
        return Err(Graph6Error::TrailingBytes { offset: expected });
    }

    let mut adj = vec![0u64; n];
    let total_bits = n * n.saturating_sub(1) / 2;
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            let byte = bytes[1 + k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                adj[u] |= bits::bit(v);
                adj[v] |= bits::bit(u);
            }
            k += 1;
        }
    }
    if !total_bits.is_multiple_of(6) {
        let last = bytes[expected - 1] - 63;
        let pad = 6 - total_bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::NonzeroPadding { offset: expected - 1 });
        }
    }
    Ok(Graph::from_adjacency(adj))
}

/// Encodes `g` as graph6: order byte `n + 63`, then the upper triangle in
/// column order `x(0,1), x(0,2), x(1,2), x(0,3), ...` packed into 6-bit
/// groups (big-endian, zero padded), each offset by 63. No trailing newline.
pub fn to_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.n();
    if n > MAX_GRAPH6_VERTICES {
        return Err(Graph6Error::Unencodable(n));
    }
    let mut out = Vec::with_capacity(1 + body_len(n));
    out.push(n as u8 + 63);
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

/// Parses the edge-list format: a header `n m`, then `m` lines `u v`
/// (0-based). Blank lines are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph, EdgeListError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let (hline, header) =
        lines.next().ok_or(EdgeListError::Syntax { line: 1, message: "missing `n m` header".into() })?;
    let (n, m) = parse_pair(hline, header)?;
    let mut g = Graph::empty(n).map_err(|source| EdgeListError::Graph { line: hline, source })?;
    let mut found = 0;
    for (line, text) in lines {
        let (u, v) = parse_pair(line, text)?;
        let e = super::EdgeRef::new(u, v).map_err(|source| EdgeListError::Graph { line, source })?;
        for x in [u, v] {
            g.check_vertex(x).map_err(|source| EdgeListError::Graph { line, source })?;
        }
        if g.has_edge(u, v) {
            return Err(EdgeListError::DuplicateEdge { line, u: e.u, v: e.v });
        }
        g.link(u, v);
        found += 1;
    }
    if found != m {
        return Err(EdgeListError::EdgeCount { expected: m, found });
    }
    Ok(g)
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize), EdgeListError> {
    let syntax = |message: String| EdgeListError::Syntax { line, message };
    let mut it = text.split_whitespace();
    let mut next = || -> Result<usize, EdgeListError> {
        let tok = it.next().ok_or_else(|| syntax("expected two integers".into()))?;
        tok.parse().map_err(|_| syntax(format!("`{tok}` is not a non-negative integer")))
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(syntax("expected exactly two integers".into()));
    }
    Ok((a, b))
}

pub fn to_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut s = format!("{} {}\n", g.n(), edges.len());
    for e in edges {
        s.push_str(&format!("{} {}\n", e.u, e.v));
    }
    s
}

/// graph6 when the first byte lies in 63..=126 and the first line has no
/// whitespace; edge list otherwise.
pub fn detect_format(text: &str) -> GraphFormat {
    let first_line = text.lines().next().unwrap_or("");
    match first_line.as_bytes().first() {
        Some(b) if (63..=126).contains(b) && !first_line.trim_end_matches('\r').contains(char::is_whitespace) => {
            GraphFormat::Graph6
        }
        _ => GraphFormat::EdgeList,
    }
}

/// Parses a single graph in either format; `None` auto-detects.
pub fn parse_graph(text: &str, format: Option<GraphFormat>) -> Result<Graph, ParseError> {
    match format.unwrap_or_else(|| detect_format(text)) {
        GraphFormat::Graph6 => {
            let trimmed = text.trim_end_matches(['\n', '\r']);
            Ok(parse_graph6(trimmed)?)
        }
        GraphFormat::EdgeList => Ok(parse_edge_list(text)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_strings() {
        assert_eq!(parse_graph6("@").unwrap(), Graph::empty(1).unwrap());
        assert_eq!(parse_graph6("?").unwrap().n(), 0);
        let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(parse_graph6("A_").unwrap(), k2);
        assert_eq!(to_graph6(&k2).unwrap(), "A_");
        assert_eq!(to_graph6(&Graph::empty(1).unwrap()).unwrap(), "@");
        assert_eq!(parse_graph6("A_\n").unwrap(), k2);
        assert_eq!(parse_graph6("A_\r\n").unwrap(), k2);
    }

    #[test]
    fn hand_decoded_star() {
        // 'D' -> n = 5; '?' -> 000000; '{' = 123 -> 60 -> 111100.
        // Bits x(0,4), x(1,4), x(2,4), x(3,4) are set: the star K_{1,4}.
        let g = parse_graph6("D?{").unwrap();
        let star = Graph::from_edges(5, [(0, 4), (1, 4), (2, 4), (3, 4)]).unwrap();
        assert_eq!(g, star);
        assert_eq!(to_graph6(&star).unwrap(), "D?{");
    }

    #[test]
    fn petgraph_reference_string() {
        // Edges a-c, a-e, b-d, d-e encode to "DQc" in an independent implementation.
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g).unwrap(), "DQc");
    }

    #[test]
    fn errors_name_offsets() {
        assert_eq!(parse_graph6(""), Err(Graph6Error::Empty));
        assert_eq!(parse_graph6(" "), Err(Graph6Error::OutOfRange { offset: 0, byte: b' ' }));
        assert_eq!(parse_graph6("~"), Err(Graph6Error::OrderTooLarge { offset: 0 }));
        assert_eq!(parse_graph6("D?"), Err(Graph6Error::Truncated { offset: 2, expected: 3 }));
        assert_eq!(parse_graph6("D?{?"), Err(Graph6Error::TrailingBytes { offset: 3 }));
        assert_eq!(parse_graph6("D?\x7f"), Err(Graph6Error::OutOfRange { offset: 2, byte: 0x7f }));
        // n = 2 has one data bit; '`' = 96 -> 33 = 100001 sets a padding bit.
        assert_eq!(parse_graph6("A`"), Err(Graph6Error::NonzeroPadding { offset: 1 }));
        assert_eq!(to_graph6(&Graph::empty(63).unwrap()), Err(Graph6Error::Unencodable(63)));
    }

    #[test]
    fn edge_list_roundtrip_and_errors() {
        let g = parse_edge_list("4 3\n0 1\n1 2\n\n2 3\n").unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap(), g);
        assert!(matches!(parse_edge_list("3 2\n0 1\n"), Err(EdgeListError::EdgeCount { expected: 2, found: 1 })));
        assert!(matches!(parse_edge_list("3 2\n0 1\n1 0\n"), Err(EdgeListError::DuplicateEdge { line: 3, .. })));
        assert!(matches!(parse_edge_list("3 1\n0 3\n"), Err(EdgeListError::Graph { line: 2, .. })));
        assert!(matches!(parse_edge_list("3 1\n0 0\n"), Err(EdgeListError::Graph { line: 2, .. })));
        assert!(matches!(parse_edge_list("3 1\n0 x\n"), Err(EdgeListError::Syntax { line: 2, .. })));
        assert!(matches!(parse_edge_list(""), Err(EdgeListError::Syntax { line: 1, .. })));
    }

    #[test]
    fn detection() {
        assert_eq!(detect_format("D?{\n"), GraphFormat::Graph6);
        assert_eq!(detect_format("@"), GraphFormat::Graph6);
        assert_eq!(detect_format("5 4\n0 1\n"), GraphFormat::EdgeList);
        assert_eq!(detect_format("A_ x"), GraphFormat::EdgeList);
        let k2 = parse_graph("A_\n", None).unwrap();
        assert_eq!(k2, parse_graph("2 1\n0 1\n", None).unwrap());
    }
}
