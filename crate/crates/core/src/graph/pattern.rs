use super::{bits, Graph};

/// Whether some vertex subset of `g` induces a copy of `pattern`.
///
/// Backtracking over injections `pattern -> g`, placing high-degree pattern
/// vertices first and requiring `deg_g >= deg_pattern` for every candidate.
pub fn contains_induced(g: &Graph, pattern: &Graph) -> bool {
    let k = pattern.n();
    if k > g.n() {
        return false;
    }
    if k == 0 {
        return true;
    }
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&p| std::cmp::Reverse(pattern.degree(p)));
    let mut image = vec![usize::MAX; k];
    extend(g, pattern, &order, 0, &mut image, 0)
}

fn extend(g: &Graph, pattern: &Graph, order: &[usize], depth: usize, image: &mut [usize], used: u64) -> bool {
    if depth == order.len() {
        return true;
    }
    let p = order[depth];
    let need = pattern.degree(p);
    for x in bits::iter(g.vertex_mask() & !used) {
        if g.degree(x) < need {
            continue;
        }
        let consistent = order[..depth].iter().all(|&q| pattern.has_edge(p, q) == g.has_edge(x, image[q]));
        if consistent {
            image[p] = x;
            if extend(g, pattern, order, depth + 1, image, used | bits::bit(x)) {
                return true;
            }
        }
    }
    image[p] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_patterns() {
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let two_k1 = Graph::empty(2).unwrap();
        let two_k2 = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let k3 = Graph::empty(3).unwrap().complement();
        assert!(contains_induced(&p4, &two_k1));
        assert!(!contains_induced(&p4, &two_k2));
        assert!(!contains_induced(&p4, &k3));
        assert!(contains_induced(&p4, &Graph::empty(0).unwrap()));
        assert!(!contains_induced(&two_k1, &p4));
        let c6 = Graph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        assert!(contains_induced(&c6, &two_k2));
    }
}
