use proptest::prelude::*;

use tdlab::criticality::{
    critical_spanning_subgraph, is_induced_subgraph_critical, is_minor_critical, is_one_unique, is_one_unique_vertex,
    is_subgraph_critical,
};
use tdlab::families::fk_free;
use tdlab::graph::{canonical_form, parse_graph6, to_graph6};
use tdlab::labelings::{irreducible_core, is_reduced, is_t_unique, reduce_labeling, MAX_T_DEPTH};
use tdlab::search::enumerate_graphs;
use tdlab::solver::{surplus, td_value, tree_depth, verify_feasible};
use tdlab::{Graph, Labeling};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
            let edges = pairs.zip(bits).filter(|(_, b)| *b).map(|(p, _)| p);
            Graph::from_edges(n, edges.collect::<Vec<_>>()).unwrap()
        })
    })
}

fn graph_and_permutation(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph(max_n).prop_flat_map(|g| {
        let perm = Just((0..g.n()).collect::<Vec<_>>()).prop_shuffle();
        (Just(g), perm)
    })
}

fn graph_and_subset(max_n: usize) -> impl Strategy<Value = (Graph, Vec<bool>)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), prop::collection::vec(any::<bool>(), n))
    })
}

fn small_graphs() -> Vec<Graph> {
    (1..=7).flat_map(|n| enumerate_graphs(n).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph6_round_trip(g in graph(62)) {
        let s = to_graph6(&g).unwrap();
        prop_assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn canonical_form_ignores_labels((g, perm) in graph_and_permutation(8)) {
        prop_assert_eq!(canonical_form(&g.permute(&perm)).unwrap(), canonical_form(&g).unwrap());
    }

    #[test]
    fn witness_is_sound(g in graph(12)) {
        let w = tree_depth(&g).unwrap();
        prop_assert_eq!(verify_feasible(&g, &w.labeling).unwrap(), None);
        prop_assert_eq!(w.labeling.max_label(), w.value);
        for (v, parent) in w.elimination_forest.iter().enumerate() {
            if let Some(p) = parent {
                prop_assert!(w.labeling.get(*p) > w.labeling.get(v));
            }
        }
    }

    #[test]
    fn disjoint_union_takes_the_max(a in graph(6), b in graph(6)) {
        let u = a.disjoint_union(&b).unwrap();
        prop_assert_eq!(td_value(&u).unwrap(), td_value(&a).unwrap().max(td_value(&b).unwrap()));
    }

    #[test]
    fn single_minors_never_raise_td(g in graph(9)) {
        let td = td_value(&g).unwrap();
        for e in g.edges() {
            prop_assert!(td_value(&g.delete_edge(e).unwrap()).unwrap() <= td);
            prop_assert!(td_value(&g.contract_edge(e).unwrap()).unwrap() <= td);
        }
        for v in 0..g.n() {
            let d = td - td_value(&g.delete_vertex(v).unwrap()).unwrap();
            prop_assert!(d <= 1);
        }
    }

    #[test]
    fn induced_subgraphs_have_no_more_surplus((g, keep) in graph_and_subset(10)) {
        let vs: Vec<usize> = (0..g.n()).filter(|&v| keep[v]).collect();
        let h = g.induced_subgraph(&vs).unwrap();
        prop_assert!(td_value(&h).unwrap() <= td_value(&g).unwrap());
        prop_assert!(surplus(&h).unwrap() <= surplus(&g).unwrap());
    }

    #[test]
    fn reduced_witness_has_consistent_core(g in graph(10)) {
        let w = tree_depth(&g).unwrap();
        let reduced = reduce_labeling(&g, &w.labeling).unwrap();
        prop_assert!(is_reduced(&reduced));
        prop_assert_eq!(verify_feasible(&g, &reduced).unwrap(), None);
        prop_assert_eq!(reduced.distinct_labels(), w.labeling.distinct_labels());
        let core = irreducible_core(&g, &reduced).unwrap();
        let s = surplus(&g).unwrap();
        prop_assert_eq!(core.core_surplus(), s);
        prop_assert!(core.core_td <= s);
        for &l in core.restricted_labeling.labels() {
            prop_assert!(core.restricted_labeling.count(l) >= 2);
        }
    }
}

#[test]
fn reduce_preserves_feasibility_on_every_feasible_labeling() {
    for n in 1..=5usize {
        for g in enumerate_graphs(n).unwrap() {
            let total = n.pow(n as u32);
            for mut idx in 0..total {
                let labels: Vec<u32> = (0..n)
                    .map(|_| {
                        let l = (idx % n) as u32 + 1;
                        idx /= n;
                        l
                    })
                    .collect();
                let lab = Labeling::new(labels).unwrap();
                if verify_feasible(&g, &lab).unwrap().is_some() {
                    assert!(reduce_labeling(&g, &lab).is_err());
                    continue;
                }
                let r = reduce_labeling(&g, &lab).unwrap();
                assert_eq!(verify_feasible(&g, &r).unwrap(), None);
                assert_eq!(r.distinct_labels(), lab.distinct_labels());
                assert!(is_reduced(&r));
            }
        }
    }
}

#[test]
fn star_clique_keeps_the_f1_free_graphs_f1_free() {
    for g in small_graphs().iter().filter(|g| fk_free(g, 1)) {
        for v in 0..g.n() {
            assert!(fk_free(&g.star_clique_transform(v).unwrap(), 1), "{} at {v}", to_graph6(g).unwrap());
        }
    }
}

#[test]
fn contraction_shortcut_agrees_with_full_check() {
    for g in small_graphs() {
        assert_eq!(is_minor_critical(&g, true).unwrap(), is_minor_critical(&g, false).unwrap());
    }
}

#[test]
fn criticality_notions_are_nested() {
    for g in small_graphs() {
        let minor = is_minor_critical(&g, false).unwrap();
        let sub = is_subgraph_critical(&g).unwrap();
        let induced = is_induced_subgraph_critical(&g).unwrap();
        assert!(!minor || sub, "{}", to_graph6(&g).unwrap());
        // isolated vertices aside, every subgraph-critical graph is induced-critical
        if g.n() > 1 && g.degree_sequence().iter().all(|&d| d > 0) {
            assert!(!sub || induced, "{}", to_graph6(&g).unwrap());
        }
    }
}

#[test]
fn one_unique_graphs_shed_edges_down_to_a_critical_graph() {
    for g in small_graphs() {
        if !is_one_unique(&g).unwrap() {
            continue;
        }
        assert!((g.max_degree() as u32) < td_value(&g).unwrap());
        let (h, removed) = critical_spanning_subgraph(&g).unwrap();
        assert_eq!(td_value(&h).unwrap(), td_value(&g).unwrap());
        assert_eq!(h.edge_count() + removed.len(), g.edge_count());
        assert!(is_minor_critical(&h, false).unwrap(), "{}", to_graph6(&g).unwrap());
    }
}

#[test]
fn star_clique_test_matches_labeling_search_on_seven_vertices() {
    for g in enumerate_graphs(7).unwrap() {
        if td_value(&g).unwrap() > MAX_T_DEPTH {
            // only K_7, outside the labeling-search envelope
            assert!(g.is_complete());
            assert!(is_one_unique(&g).unwrap());
            continue;
        }
        for v in 0..g.n() {
            assert_eq!(is_one_unique_vertex(&g, v).unwrap(), is_t_unique(&g, v, 1).unwrap());
        }
    }
}
