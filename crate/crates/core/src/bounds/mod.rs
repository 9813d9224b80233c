//! Shortest paths, routing ratios and the checks on `H` and `H'`.

mod certify;
mod lower_bound;
mod paths;

use std::io::Write;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::VertexId;
use crate::instance::{GeomGraph, GraphKind, Path};
use crate::router::{route, Algo, Outcome, RouteTrace};
use crate::triangulation::{build_h_prime, extract_h, AugmentedSubgraph, CrossedSubgraph, Triangulation};

pub use certify::{certified_le, compare_sqrt_sums, Certified, Verdict, PRECISION_STEPS};
pub use lower_bound::{
    gen_lower_bound, verify_every_triangulation_bound, verify_lower_bound, EveryTriangulationReport, LowerBoundInstance,
    LowerBoundParams, LowerBoundReport,
};
pub use paths::{distances_from, shortest_path, spanning_ratio, SpanningReport};

/// Shortest paths in `G`, `H` and `H'` between one pair and their ratios.
#[derive(Clone, Debug, Serialize)]
pub struct RatioReport {
    pub pi_g: Path,
    pub pi_h: Path,
    pub pi_h_prime: Path,
    pub ratio_h_g: f64,
    pub ratio_hp_g: f64,
    pub ratio_h_hp: f64,
    /// Routing-trace length over `|pi_G|`, when a trace was supplied.
    pub trace_ratio: Option<f64>,
}

fn ratio(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        if a == 0.0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        a / b
    }
}

fn path_in(g: &GeomGraph, s: VertexId, t: VertexId) -> Result<Path> {
    shortest_path(g, s, t)
        .ok_or_else(|| Error::Degenerate(format!("{t} is unreachable from {s} in the {} graph", g.kind())))
}

/// Builds `H` and `H'` for `st` and measures the three shortest paths.
pub fn ratio_report(
    tri: &Triangulation,
    s: VertexId,
    t: VertexId,
    trace: Option<&RouteTrace>,
) -> Result<(RatioReport, CrossedSubgraph, AugmentedSubgraph)> {
    let hsub = extract_h(tri, s, t);
    let aug = build_h_prime(&hsub);
    let pi_g = path_in(tri.graph(), s, t)?;
    let pi_h = path_in(&hsub.h, s, t)?;
    let pi_h_prime = path_in(&aug.h_prime, s, t)?;
    let rep = RatioReport {
        ratio_h_g: ratio(pi_h.length, pi_g.length),
        ratio_hp_g: ratio(pi_h_prime.length, pi_g.length),
        ratio_h_hp: ratio(pi_h.length, pi_h_prime.length),
        trace_ratio: trace.map(|tr| ratio(tr.total_length, pi_g.length)),
        pi_g,
        pi_h,
        pi_h_prime,
    };
    Ok((rep, hsub, aug))
}

/// All inequalities on one `(T, s, t)`, each certified exactly.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaCheck {
    pub s: VertexId,
    pub t: VertexId,
    /// `|pi_H'| <= |pi_G|`.
    pub hp_le_g: Verdict,
    /// `|pi_G| <= |pi_H|`.
    pub g_le_h: Verdict,
    /// `|pi_H| <= (n - 1) |pi_H'|`.
    pub h_le_hp: Verdict,
    /// `|pi_H| <= (n - 1) |pi_G|`.
    pub h_le_g: Verdict,
    pub report: RatioReport,
}

impl LemmaCheck {
    pub fn all_hold(&self) -> bool {
        [self.hp_le_g, self.g_le_h, self.h_le_hp, self.h_le_g].iter().all(|v| v.holds())
    }
}

/// `sum sqrt(a) <= factor * sum sqrt(b)`, or `Holds` outright when `b_path`
/// is itself a path of `a_graph` (then the shortest `a_graph` path is no longer).
fn path_le(inst: &crate::instance::Instance, a: &Path, b: &Path, factor: u64, a_graph: &GeomGraph) -> Verdict {
    if factor == 1 && b.edges().all(|(u, v)| a_graph.has_edge(u, v)) {
        return Verdict::Holds;
    }
    certified_le(&a.squared_lengths(inst), &b.squared_lengths(inst), factor)
}

/// Checks every inequality between `pi_G`, `pi_H` and `pi_H'` for `st`.
pub fn verify_lemmas(tri: &Triangulation, s: VertexId, t: VertexId) -> Result<LemmaCheck> {
    let (report, hsub, aug) = ratio_report(tri, s, t, None)?;
    let inst = tri.instance();
    let nm1 = (inst.n().max(2) - 1) as u64;
    Ok(LemmaCheck {
        s,
        t,
        hp_le_g: path_le(inst, &report.pi_h_prime, &report.pi_g, 1, &aug.h_prime),
        g_le_h: path_le(inst, &report.pi_g, &report.pi_h, 1, tri.graph()),
        h_le_hp: path_le(inst, &report.pi_h, &report.pi_h_prime, nm1, &hsub.h),
        h_le_g: path_le(inst, &report.pi_h, &report.pi_g, nm1, &hsub.h),
        report,
    })
}

/// `|pi_H'| <= |pi_G|`.
pub fn verify_lemma5(tri: &Triangulation, s: VertexId, t: VertexId) -> Result<(Verdict, RatioReport)> {
    let c = verify_lemmas(tri, s, t)?;
    Ok((c.hp_le_g, c.report))
}

/// `|pi_H| <= (n - 1) |pi_H'|` and `|pi_H| <= (n - 1) |pi_G|`.
pub fn verify_lemma6(tri: &Triangulation, s: VertexId, t: VertexId) -> Result<(Verdict, Verdict, RatioReport)> {
    let c = verify_lemmas(tri, s, t)?;
    Ok((c.h_le_hp, c.h_le_g, c.report))
}

/// Which ordered pairs to route.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairSelection {
    All,
    Sample { count: usize, seed: u64 },
}

impl PairSelection {
    pub fn pairs(&self, n: usize) -> Vec<(VertexId, VertexId)> {
        let all: Vec<(VertexId, VertexId)> =
            (0..n).flat_map(|s| (0..n).filter(move |&t| t != s).map(move |t| (s, t))).collect();
        match *self {
            PairSelection::All => all,
            PairSelection::Sample { count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut pick: Vec<_> = all.choose_multiple(&mut rng, count.min(all.len())).copied().collect();
                pick.sort_unstable();
                pick
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PairRatio {
    pub s: VertexId,
    pub t: VertexId,
    pub outcome: Option<Outcome>,
    pub trace_len: f64,
    pub shortest: f64,
    pub ratio: Option<f64>,
    /// Engine error, if the run was aborted.
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RoutingStats {
    pub algo: String,
    pub graph: GraphKind,
    pub pairs: usize,
    pub delivered: usize,
    pub undelivered: usize,
    pub max: f64,
    pub mean: f64,
    pub p50: f64,
    pub p90: f64,
    pub p99: f64,
    pub per_pair: Vec<PairRatio>,
}

fn percentile(sorted: &[f64], p: f64) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    let rank = ((p * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len());
    sorted[rank - 1]
}

/// Routes one pair and compares the trace length with the shortest path in `graph`.
pub fn measure_pair(graph: &GeomGraph, algo: Algo, s: VertexId, t: VertexId) -> PairRatio {
    let shortest = shortest_path(graph, s, t).map_or(f64::INFINITY, |p| p.length);
    match route(graph, algo, s, t) {
        Ok(tr) => {
            let delivered = tr.delivered;
            PairRatio {
                s,
                t,
                outcome: Some(tr.outcome),
                trace_len: tr.total_length,
                shortest,
                ratio: delivered.then(|| ratio(tr.total_length, shortest)),
                error: None,
            }
        }
        Err(e) => PairRatio { s, t, outcome: None, trace_len: f64::NAN, shortest, ratio: None, error: Some(e.to_string()) },
    }
}

/// Summarises already measured pairs; order of `per_pair` is kept.
pub fn summarize(algo: Algo, graph: GraphKind, per_pair: Vec<PairRatio>) -> RoutingStats {
    let mut ratios: Vec<f64> = per_pair.iter().filter_map(|p| p.ratio).collect();
    ratios.sort_by(f64::total_cmp);
    let delivered = ratios.len();
    RoutingStats {
        algo: algo.to_string(),
        graph,
        pairs: per_pair.len(),
        delivered,
        undelivered: per_pair.len() - delivered,
        max: ratios.last().copied().unwrap_or(f64::NAN),
        mean: if ratios.is_empty() { f64::NAN } else { ratios.iter().sum::<f64>() / delivered as f64 },
        p50: percentile(&ratios, 0.5),
        p90: percentile(&ratios, 0.9),
        p99: percentile(&ratios, 0.99),
        per_pair,
    }
}

/// Routes the selected pairs on `graph` and reports trace length over
/// shortest-path length.
pub fn measure_routing_ratio(graph: &GeomGraph, algo: Algo, pairs: &PairSelection) -> RoutingStats {
    let per_pair = pairs.pairs(graph.n()).into_iter().map(|(s, t)| measure_pair(graph, algo, s, t)).collect();
    summarize(algo, graph.kind(), per_pair)
}

/// One line of the CSV report.
#[derive(Clone, Debug, Serialize)]
pub struct ReportRow {
    pub instance_id: String,
    pub n: usize,
    pub constraints: usize,
    pub algo: String,
    pub s: VertexId,
    pub t: VertexId,
    pub delivered: bool,
    pub trace_len: Option<f64>,
    pub pi_g: f64,
    pub pi_h: f64,
    pub pi_hprime: f64,
    pub ratio_trace_g: Option<f64>,
    pub ratio_h_g: f64,
    pub ratio_hprime_g: f64,
    pub ratio_h_hprime: f64,
}

impl ReportRow {
    pub fn new(instance_id: impl Into<String>, tri: &Triangulation, algo: &str, rep: &RatioReport, trace: Option<&RouteTrace>) -> Self {
        let inst = tri.instance();
        ReportRow {
            instance_id: instance_id.into(),
            n: inst.n(),
            constraints: inst.constraints().len(),
            algo: algo.to_string(),
            s: rep.pi_g.vertices[0],
            t: *rep.pi_g.vertices.last().expect("non-empty path"),
            delivered: trace.is_some_and(|tr| tr.delivered),
            trace_len: trace.map(|tr| tr.total_length),
            pi_g: rep.pi_g.length,
            pi_h: rep.pi_h.length,
            pi_hprime: rep.pi_h_prime.length,
            ratio_trace_g: rep.trace_ratio,
            ratio_h_g: rep.ratio_h_g,
            ratio_hprime_g: rep.ratio_hp_g,
            ratio_h_hprime: rep.ratio_h_hp,
        }
    }
}

pub fn write_csv<W: Write>(rows: &[ReportRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
