use tdlab::criticality::criticality_report;
use tdlab::families::{complete, h_graph};
use tdlab::graph::{canonical_form, parse_graph6, to_graph6};
use tdlab::search::{enumerate_graphs, run_search, GraphSource, SearchFilters, SearchJob, SearchResult};

fn critical(non_one_unique: bool) -> SearchFilters {
    SearchFilters { critical: true, non_one_unique, connected_only: false }
}

fn search(source: GraphSource, td: u32, filters: SearchFilters) -> SearchResult {
    run_search(&SearchJob::new(source, td, filters)).unwrap()
}

#[test]
fn stream_and_built_in_sources_agree() {
    for n in 3..=6 {
        let text: String = enumerate_graphs(n).unwrap().iter().map(|g| to_graph6(g).unwrap() + "\n").collect();
        for td in 2..=n as u32 {
            let built_in = search(GraphSource::built_in(n), td, critical(false));
            let stream = search(GraphSource::graph6("enumeration", &text).unwrap(), td, critical(false));
            assert_eq!(built_in.hits, stream.hits);
            assert_eq!(built_in.counters, stream.counters);
        }
    }
}

#[test]
fn hits_reproduce_their_reports() {
    let r = search(GraphSource::built_in(7), 5, critical(true));
    assert!(!r.hits.is_empty());
    let mut forms: Vec<_> = r.hits.iter().map(|h| h.canonical.clone()).collect();
    forms.dedup();
    assert_eq!(forms.len(), r.hits.len());
    for hit in &r.hits {
        let g = parse_graph6(hit.canonical.as_str()).unwrap();
        assert_eq!(canonical_form(&g).unwrap(), hit.canonical);
        assert_eq!(criticality_report(&g).unwrap(), hit.report);
        // a critical graph that is not 1-unique, within the degree bound
        assert!(hit.report.is_minor_critical && !hit.report.is_one_unique_graph);
        assert!(hit.report.conjecture_checks.max_degree_bound);
    }
    let h4 = canonical_form(&h_graph(4).unwrap()).unwrap();
    assert!(forms.contains(&h4));
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let job = SearchJob::new(GraphSource::built_in(6), 4, critical(false));
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(|| run_search(&job).unwrap());
    let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap().install(|| run_search(&job).unwrap());
    assert_eq!(one, four);
    assert_eq!(serde_json::to_string(&one).unwrap(), serde_json::to_string(&four).unwrap());
}

#[test]
fn permuted_duplicates_collapse() {
    let k4 = complete(4).unwrap();
    let h = h_graph(4).unwrap();
    let shuffled = h.permute(&[6, 5, 4, 3, 2, 1, 0]);
    let text = [&k4, &h, &shuffled].iter().map(|g| to_graph6(g).unwrap() + "\n").collect::<String>();
    let r = search(GraphSource::graph6("mixed", &text).unwrap(), 5, critical(false));
    assert_eq!(r.hits.len(), 1);
    assert_eq!(r.counters.duplicates, 1);
    assert_eq!(r.counters.scanned, 3);
}

#[test]
fn provenance_is_stable() {
    let a = search(GraphSource::built_in(5), 4, critical(false));
    let b = search(GraphSource::built_in(5), 4, critical(false));
    assert_eq!(a.provenance, b.provenance);
    let c = search(GraphSource::built_in(5), 3, critical(false));
    assert_ne!(a.provenance.config_hash, c.provenance.config_hash);
}
