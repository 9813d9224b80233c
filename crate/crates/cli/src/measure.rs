use std::fs::File;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use visroute_core::bounds::{measure_pair, ratio_report, summarize, write_csv, PairSelection, ReportRow, RoutingStats};
use visroute_core::instance::{random_instance, RandomInstanceParams};
use visroute_core::router::route;
use visroute_core::triangulation::build_cdt;
use visroute_core::{Algo, Instance};

use crate::{build_graph, check_algo_graph, emit, read_instance, with_jobs, AlgoArg, GraphArg, ReportFormat};

#[derive(Args, Debug)]
pub struct MeasureArgs {
    /// Measure this instance instead of generated ones.
    #[arg(long)]
    instance: Option<PathBuf>,
    #[arg(long, default_value_t = 20)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.3)]
    density: f64,
    #[arg(long, value_enum, default_value_t = GraphArg::HalfTheta6)]
    graph: GraphArg,
    #[arg(long, value_enum, default_value_t = AlgoArg::Face1)]
    algo: AlgoArg,
    /// Number of sampled ordered pairs per instance; all pairs when absent.
    #[arg(long)]
    pairs: Option<usize>,
    /// Per-pair CSV report. Its path columns are measured in the CDT.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct InstanceSummary {
    instance_id: String,
    seed: Option<u64>,
    n: usize,
    constraints: usize,
    pairs: usize,
    delivered: usize,
    undelivered: usize,
    max: f64,
    mean: f64,
    p50: f64,
    p90: f64,
    p99: f64,
}

impl InstanceSummary {
    fn new(instance_id: String, seed: Option<u64>, inst: &Instance, st: &RoutingStats) -> Self {
        InstanceSummary {
            instance_id,
            seed,
            n: inst.n(),
            constraints: inst.constraints().len(),
            pairs: st.pairs,
            delivered: st.delivered,
            undelivered: st.undelivered,
            max: st.max,
            mean: st.mean,
            p50: st.p50,
            p90: st.p90,
            p99: st.p99,
        }
    }
}

#[derive(Serialize)]
struct MeasureSummary {
    algo: String,
    graph: String,
    seed: u64,
    trials: usize,
    density: f64,
    pairs: Option<usize>,
    instances: Vec<InstanceSummary>,
}

struct Job {
    id: String,
    seed: Option<u64>,
    inst: Arc<Instance>,
}

fn jobs(a: &MeasureArgs) -> Result<Vec<Job>> {
    if let Some(path) = &a.instance {
        return Ok(vec![Job { id: path.display().to_string(), seed: None, inst: read_instance(path)? }]);
    }
    (0..a.trials)
        .map(|i| {
            let seed = a.seed.wrapping_add(i as u64);
            let inst = Arc::new(random_instance(&RandomInstanceParams::new(a.n, a.density, seed))?);
            Ok(Job { id: format!("seed-{seed}"), seed: Some(seed), inst })
        })
        .collect()
}

fn measure_one(a: &MeasureArgs, job: &Job) -> Result<(RoutingStats, Vec<ReportRow>)> {
    let algo: Algo = a.algo.into();
    let g = build_graph(&job.inst, a.graph)?;
    let selection = match a.pairs {
        Some(count) => PairSelection::Sample { count, seed: job.seed.unwrap_or(a.seed) },
        None => PairSelection::All,
    };
    let pairs = selection.pairs(g.n());
    let per_pair = pairs.iter().map(|&(s, t)| measure_pair(&g, algo, s, t)).collect();
    let stats = summarize(algo, g.kind(), per_pair);
    let mut rows = Vec::new();
    if a.csv.is_some() {
        let tri = build_cdt(&job.inst)?;
        for &(s, t) in &pairs {
            let trace = route(&g, algo, s, t).ok();
            let (rep, _, _) = ratio_report(&tri, s, t, trace.as_ref())?;
            rows.push(ReportRow::new(job.id.clone(), &tri, algo.as_str(), &rep, trace.as_ref()));
        }
    }
    Ok((stats, rows))
}

pub fn run(a: &MeasureArgs) -> Result<ExitCode> {
    check_algo_graph(a.algo, a.graph)?;
    let jobs = jobs(a)?;
    let results: Vec<Result<(RoutingStats, Vec<ReportRow>)>> =
        with_jobs(a.jobs, || jobs.par_iter().map(|j| measure_one(a, j)).collect())?;
    let mut summaries = Vec::new();
    let mut rows = Vec::new();
    for (job, res) in jobs.iter().zip(results) {
        let (stats, r) = res?;
        summaries.push(InstanceSummary::new(job.id.clone(), job.seed, &job.inst, &stats));
        rows.extend(r);
    }
    if let Some(path) = &a.csv {
        let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
        write_csv(&rows, f)?;
    }
    let undelivered: usize = summaries.iter().map(|s| s.undelivered).sum();
    let summary = MeasureSummary {
        algo: Algo::from(a.algo).to_string(),
        graph: a.graph.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default(),
        seed: a.seed,
        trials: jobs.len(),
        density: a.density,
        pairs: a.pairs,
        instances: summaries,
    };
    let body = match a.format {
        ReportFormat::Json => serde_json::to_string_pretty(&summary)? + "\n",
        ReportFormat::Text => {
            let mut s = format!("{} on {}\n", summary.algo, summary.graph);
            s += "instance           n   |S|  pairs  undelivered       max      mean       p50       p90       p99\n";
            for i in &summary.instances {
                s += &format!(
                    "{:<16} {:>3} {:>5} {:>6} {:>12} {:>9.4} {:>9.4} {:>9.4} {:>9.4} {:>9.4}\n",
                    i.instance_id, i.n, i.constraints, i.pairs, i.undelivered, i.max, i.mean, i.p50, i.p90, i.p99
                );
            }
            s
        }
    };
    emit(a.out.as_deref(), &body)?;
    if undelivered > 0 {
        eprintln!("{undelivered} pairs were not delivered");
    }
    Ok(ExitCode::SUCCESS)
}
