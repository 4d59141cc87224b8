//! Exhaustive screening of small graphs for critical and non-1-unique
//! critical graphs.
//!
//! Each graph passes through the cheapest rejector first: a tree-depth
//! decision at the target, then edge deletions, vertex deletions and
//! contractions (with the 1-uniqueness shortcut, cross-checked against the
//! full test on small graphs), and finally the full report for hits.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::criticality::{self, criticality_report, CriticalityError, CriticalityReport};
use crate::graph::{canonical_form, parse_graph6, to_graph6, CanonicalForm, Graph, Graph6Error};
use crate::solver::{tree_depth_decision_with_budget, SolverBudget, SolverError};

/// Largest order produced by the built-in enumerator.
pub const MAX_BUILTIN_ORDER: usize = 7;

/// Graphs up to this order get the full contraction check alongside the
/// shortcut, and a disagreement aborts the run.
pub const SHORTCUT_CROSSCHECK_ORDER: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("built-in enumeration supports 1 <= n <= {MAX_BUILTIN_ORDER}, got {0}")]
    OrderOutOfRange(usize),
    #[error("td_target must be at least 1")]
    BadTarget,
    #[error("line {line}: {source}")]
    Graph6 {
        line: usize,
        #[source]
        source: Graph6Error,
    },
    #[error("contraction shortcut disagrees with the full check on {0}")]
    ShortcutMismatch(String),
    #[error("report for {graph} disagrees with the screening verdict")]
    ReportMismatch { graph: String },
}

/// Every isomorphism class on `n` vertices, in canonical-form order.
///
/// Classes on `n` vertices are generated from those on `n - 1` by adding a
/// vertex with every possible neighbourhood, then deduplicated by canonical
/// form. Each returned graph is the canonical representative.
pub fn enumerate_graphs(n: usize) -> Result<Vec<Graph>, SearchError> {
    if !(1..=MAX_BUILTIN_ORDER).contains(&n) {
        return Err(SearchError::OrderOutOfRange(n));
    }
    Ok(classes(n).into_values().collect())
}

fn classes(n: usize) -> BTreeMap<CanonicalForm, Graph> {
    let mut level: BTreeMap<CanonicalForm, Graph> = BTreeMap::new();
    let k1 = Graph::empty(1).expect("K1");
    level.insert(canonical_form(&k1).expect("n <= 10"), k1);
    for m in 1..n {
        let next: Vec<(CanonicalForm, Graph)> = level
            .values()
            .collect::<Vec<_>>()
            .par_iter()
            .flat_map_iter(|g| {
                (0u64..1 << m).map(move |nbhd| {
                    let mut edges: Vec<(usize, usize)> = g.edges().into_iter().map(|e| (e.u, e.v)).collect();
                    edges.extend(crate::graph::bits::iter(nbhd).map(|u| (u, m)));
                    let h = Graph::from_edges(m + 1, edges).expect("valid extension");
                    let form = canonical_form(&h).expect("n <= 10");
                    (form, h)
                })
            })
            .collect();
        level = BTreeMap::new();
        for (form, _) in next {
            if let std::collections::btree_map::Entry::Vacant(slot) = level.entry(form) {
                let canon = parse_graph6(slot.key().as_str()).expect("canonical forms are valid graph6");
                slot.insert(canon);
            }
        }
    }
    level
}

/// Reads a graph6 stream: one graph per line, blank lines and lines starting
/// with `>>` ignored. Errors carry 1-based line numbers.
pub fn parse_graph6_stream(text: &str) -> Result<Vec<Graph>, SearchError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with(">>"))
        .map(|(i, l)| parse_graph6(l.trim_end()).map_err(|source| SearchError::Graph6 { line: i + 1, source }))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphSource {
    /// Every isomorphism class with `min_n <= n <= max_n`.
    BuiltIn { min_n: usize, max_n: usize },
    /// Graphs parsed from a graph6 stream; `descriptor` names the origin.
    Graph6 {
        descriptor: String,
        #[serde(skip)]
        graphs: Vec<Graph>,
    },
}

impl GraphSource {
    pub fn built_in(n: usize) -> Self {
        GraphSource::BuiltIn { min_n: n, max_n: n }
    }

    pub fn graph6(descriptor: impl Into<String>, text: &str) -> Result<Self, SearchError> {
        Ok(GraphSource::Graph6 { descriptor: descriptor.into(), graphs: parse_graph6_stream(text)? })
    }

    fn descriptor(&self) -> String {
        match self {
            GraphSource::BuiltIn { min_n, max_n } if min_n == max_n => format!("built-in n={min_n}"),
            GraphSource::BuiltIn { min_n, max_n } => format!("built-in n={min_n}..={max_n}"),
            GraphSource::Graph6 { descriptor, graphs } => format!("graph6 {descriptor} ({} graphs)", graphs.len()),
        }
    }

    fn graphs(&self) -> Result<Vec<Graph>, SearchError> {
        match self {
            GraphSource::BuiltIn { min_n, max_n } => {
                let mut out = Vec::new();
                for n in *min_n..=*max_n {
                    out.extend(enumerate_graphs(n)?);
                }
                Ok(out)
            }
            GraphSource::Graph6 { graphs, .. } => Ok(graphs.clone()),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchFilters {
    /// Keep only minor-critical graphs.
    pub critical: bool,
    /// Keep only graphs with a vertex that is not 1-unique.
    pub non_one_unique: bool,
    /// Ignore disconnected graphs entirely.
    pub connected_only: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchJob {
    pub source: GraphSource,
    pub td_target: u32,
    pub filters: SearchFilters,
    pub budget: SolverBudget,
    /// Accept budget overruns as recorded skips instead of failing the run.
    pub allow_skips: bool,
}

impl SearchJob {
    pub fn new(source: GraphSource, td_target: u32, filters: SearchFilters) -> Self {
        SearchJob { source, td_target, filters, budget: SolverBudget::default(), allow_skips: false }
    }

    fn validate(&self) -> Result<(), SearchError> {
        if self.td_target == 0 {
            return Err(SearchError::BadTarget);
        }
        if let GraphSource::BuiltIn { min_n, max_n } = self.source {
            for n in [min_n, max_n] {
                if !(1..=MAX_BUILTIN_ORDER).contains(&n) {
                    return Err(SearchError::OrderOutOfRange(n));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchCounters {
    pub scanned: usize,
    pub disconnected_ignored: usize,
    pub at_target_td: usize,
    pub critical: usize,
    pub counterexamples: usize,
    pub hits: usize,
    pub duplicates: usize,
    pub skipped: usize,
}

impl std::ops::Add for SearchCounters {
    type Output = SearchCounters;

    fn add(self, o: SearchCounters) -> SearchCounters {
        SearchCounters {
            scanned: self.scanned + o.scanned,
            disconnected_ignored: self.disconnected_ignored + o.disconnected_ignored,
            at_target_td: self.at_target_td + o.at_target_td,
            critical: self.critical + o.critical,
            counterexamples: self.counterexamples + o.counterexamples,
            hits: self.hits + o.hits,
            duplicates: self.duplicates + o.duplicates,
            skipped: self.skipped + o.skipped,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hit {
    pub canonical: CanonicalForm,
    pub report: CriticalityReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skip {
    /// Position of the graph in the source order.
    pub index: usize,
    pub graph6: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub source: String,
    pub config: serde_json::Value,
    /// FNV-1a 64 of the compact JSON of `config`, hex.
    pub config_hash: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    /// Sorted by canonical form, one per isomorphism class.
    pub hits: Vec<Hit>,
    pub counters: SearchCounters,
    pub skips: Vec<Skip>,
    /// False when graphs were skipped and the job did not allow it.
    pub complete: bool,
    pub provenance: Provenance,
}

enum Verdict {
    Ignored,
    Rejected(SearchCounters),
    Hit(SearchCounters, Box<Hit>),
    Skipped(String),
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3))
}

/// Runs `job` on the current rayon pool. Results do not depend on the pool
/// size or on completion order.
pub fn run_search(job: &SearchJob) -> Result<SearchResult, SearchError> {
    job.validate()?;
    let graphs = job.source.graphs()?;
    let verdicts: Vec<Result<Verdict, SearchError>> = graphs.par_iter().map(|g| screen(g, job)).collect();

    let mut counters = SearchCounters::default();
    let mut hits: BTreeMap<CanonicalForm, Hit> = BTreeMap::new();
    let mut skips = Vec::new();
    for (index, verdict) in verdicts.into_iter().enumerate() {
        counters.scanned += 1;
        match verdict? {
            Verdict::Ignored => counters.disconnected_ignored += 1,
            Verdict::Rejected(c) => counters = counters + c,
            Verdict::Hit(c, hit) => {
                counters = counters + c;
                if hits.contains_key(&hit.canonical) {
                    counters.duplicates += 1;
                } else {
                    counters.hits += 1;
                    hits.insert(hit.canonical.clone(), *hit);
                }
            }
            Verdict::Skipped(reason) => {
                counters.skipped += 1;
                let graph6 = to_graph6(&graphs[index]).unwrap_or_else(|_| "<unencodable>".into());
                skips.push(Skip { index, graph6, reason });
            }
        }
    }
    let config = serde_json::json!({
        "source": job.source,
        "td_target": job.td_target,
        "filters": job.filters,
        "budget": job.budget,
        "allow_skips": job.allow_skips,
    });
    let config_hash = format!("{:016x}", fnv1a(config.to_string().as_bytes()));
    Ok(SearchResult {
        hits: hits.into_values().collect(),
        complete: skips.is_empty() || job.allow_skips,
        counters,
        skips,
        provenance: Provenance { source: job.source.descriptor(), config, config_hash },
    })
}

fn screen(g: &Graph, job: &SearchJob) -> Result<Verdict, SearchError> {
    match screen_inner(g, job) {
        Ok(v) => Ok(v),
        Err(Screening::Skip(reason)) => Ok(Verdict::Skipped(reason)),
        Err(Screening::Fatal(e)) => Err(e),
    }
}

enum Screening {
    Skip(String),
    Fatal(SearchError),
}

impl From<SolverError> for Screening {
    fn from(e: SolverError) -> Self {
        Screening::Skip(e.to_string())
    }
}

impl From<CriticalityError> for Screening {
    fn from(e: CriticalityError) -> Self {
        Screening::Skip(e.to_string())
    }
}

fn screen_inner(g: &Graph, job: &SearchJob) -> Result<Verdict, Screening> {
    let filters = job.filters;
    if filters.connected_only && !g.is_connected() {
        return Ok(Verdict::Ignored);
    }
    let mut c = SearchCounters::default();
    let k = job.td_target;
    let at_target = g.n() > 0
        && tree_depth_decision_with_budget(g, k, job.budget)?
        && !tree_depth_decision_with_budget(g, k - 1, job.budget)?;
    if !at_target {
        return Ok(Verdict::Rejected(c));
    }
    c.at_target_td = 1;

    let critical = if filters.critical || filters.non_one_unique {
        let staged = criticality::is_subgraph_critical(g)?
            && criticality::is_induced_subgraph_critical(g)?
            && criticality::is_minor_critical(g, true)?;
        if g.n() <= SHORTCUT_CROSSCHECK_ORDER {
            let full = criticality::is_minor_critical(g, false)?;
            if full != staged {
                return Err(Screening::Fatal(SearchError::ShortcutMismatch(graph6_or_debug(g))));
            }
        }
        staged
    } else {
        false
    };
    if critical {
        c.critical = 1;
    }
    if filters.critical && !critical {
        return Ok(Verdict::Rejected(c));
    }

    let one_unique = criticality::is_one_unique(g)?;
    if critical && !one_unique {
        c.counterexamples = 1;
    }
    if filters.non_one_unique && one_unique {
        return Ok(Verdict::Rejected(c));
    }

    let canonical = canonical_form(g).map_err(|e| Screening::Skip(e.to_string()))?;
    let report = criticality_report(g)?;
    let critical_checked = filters.critical || filters.non_one_unique;
    if (critical_checked && report.is_minor_critical != critical) || report.is_one_unique_graph != one_unique {
        return Err(Screening::Fatal(SearchError::ReportMismatch { graph: graph6_or_debug(g) }));
    }
    Ok(Verdict::Hit(c, Box::new(Hit { canonical, report })))
}

fn graph6_or_debug(g: &Graph) -> String {
    to_graph6(g).unwrap_or_else(|_| format!("{g:?}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::complete;

    #[test]
    fn class_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| enumerate_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
        assert!(enumerate_graphs(0).is_err());
        assert!(enumerate_graphs(8).is_err());
    }

    #[test]
    fn stream_parsing() {
        let gs = parse_graph6_stream(">>graph6<<\nA_\n\n@\n").unwrap();
        assert_eq!(gs.len(), 2);
        assert_eq!(gs[0], complete(2).unwrap());
        assert!(matches!(parse_graph6_stream("A_\nA\n"), Err(SearchError::Graph6 { line: 2, .. })));
    }

    #[test]
    fn only_k5_at_five_vertices() {
        let job = SearchJob::new(
            GraphSource::BuiltIn { min_n: 1, max_n: 5 },
            5,
            SearchFilters { critical: true, ..Default::default() },
        );
        let r = run_search(&job).unwrap();
        assert_eq!(r.hits.len(), 1);
        assert_eq!(r.hits[0].canonical, canonical_form(&complete(5).unwrap()).unwrap());
        assert_eq!(r.counters.scanned, 1 + 2 + 4 + 11 + 34);
        assert_eq!(r.counters.at_target_td, 1);
        assert!(r.complete);
    }

    #[test]
    fn invalid_jobs() {
        let job = SearchJob::new(GraphSource::built_in(8), 5, SearchFilters::default());
        assert_eq!(run_search(&job), Err(SearchError::OrderOutOfRange(8)));
        let job = SearchJob::new(GraphSource::built_in(3), 0, SearchFilters::default());
        assert_eq!(run_search(&job), Err(SearchError::BadTarget));
    }

    #[test]
    fn budget_overruns_are_skips() {
        let text = "A_\n";
        let mut job = SearchJob::new(GraphSource::graph6("inline", text).unwrap(), 2, SearchFilters::default());
        job.budget = SolverBudget { max_vertices: 1, max_states: None };
        let r = run_search(&job).unwrap();
        assert_eq!(r.counters.skipped, 1);
        assert!(!r.complete);
        job.allow_skips = true;
        assert!(run_search(&job).unwrap().complete);
    }

    #[test]
    fn duplicate_stream_entries_collapse() {
        let job = SearchJob::new(GraphSource::graph6("dup", "A_\nA_\n").unwrap(), 2, SearchFilters::default());
        let r = run_search(&job).unwrap();
        assert_eq!(r.hits.len(), 1);
        assert_eq!(r.counters.duplicates, 1);
        // counters are per stream entry
        assert_eq!(r.counters.at_target_td, 2);
    }
}
