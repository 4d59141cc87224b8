use std::collections::VecDeque;

use super::Graph;

const INF: i32 = i32::MAX / 4;

/// Size of a minimum vertex cut; `n - 1` for complete graphs.
///
/// Computed as the minimum, over non-adjacent pairs, of the maximum number of
/// internally disjoint paths (unit vertex capacities, Edmonds-Karp on the
/// split graph).
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.n();
    if g.is_complete() {
        return n.saturating_sub(1);
    }
    if !g.is_connected() {
        return 0;
    }
    let mut best = n - 1;
    for s in 0..n {
        for t in s + 1..n {
            if !g.has_edge(s, t) {
                best = best.min(disjoint_paths(g, s, t, best));
                if best == 0 {
                    return 0;
                }
            }
        }
    }
    best
}

/// Internally disjoint `s`-`t` paths, stopping early once `cap` is reached.
fn disjoint_paths(g: &Graph, s: usize, t: usize, cap: usize) -> usize {
    let n = g.n();
    let nodes = 2 * n;
    // node 2v = v_in, 2v + 1 = v_out
    let mut residual = vec![vec![0i32; nodes]; nodes];
    for v in 0..n {
        residual[2 * v][2 * v + 1] = if v == s || v == t { INF } else { 1 };
        for w in g.neighbor_iter(v) {
            residual[2 * v + 1][2 * w] = INF;
        }
    }
    let source = 2 * s + 1;
    let sink = 2 * t;
    let mut flow = 0;
    let mut prev = vec![usize::MAX; nodes];
    while flow < cap {
        prev.fill(usize::MAX);
        prev[source] = source;
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            if x == sink {
                break;
            }
            for y in 0..nodes {
                if prev[y] == usize::MAX && residual[x][y] > 0 {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if prev[sink] == usize::MAX {
            break;
        }
        let mut y = sink;
        while y != source {
            let x = prev[y];
            residual[x][y] -= 1;
            residual[y][x] += 1;
            y = x;
        }
        flow += 1;
    }
    flow
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_values() {
        for n in 1..7 {
            assert_eq!(vertex_connectivity(&Graph::empty(n).unwrap().complement()), n - 1);
        }
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(vertex_connectivity(&p4), 1);
        let c6 = Graph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        assert_eq!(vertex_connectivity(&c6), 2);
        assert_eq!(vertex_connectivity(&Graph::empty(3).unwrap()), 0);
        // K_{3,3}
        let k33 = Graph::from_edges(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))).unwrap();
        assert_eq!(vertex_connectivity(&k33), 3);
    }
}
