use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::Result;
use clap::{Args, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use visroute_core::bounds::{spanning_ratio, verify_lemmas, verify_lower_bound, LowerBoundParams, Verdict};
use visroute_core::cones::half_theta6_from_visibility;
use visroute_core::geom::properly_intersects;
use visroute_core::instance::{random_instance, RandomInstanceParams};
use visroute_core::router::{local_half_theta6_edges, route};
use visroute_core::triangulation::{build_cdt, extract_h};
use visroute_core::vis::{build_visibility_graph, neighborhood};
use visroute_core::{Algo, Coord, GeomGraph, Instance, Outcome, Segment, VertexId};

use crate::{emit, read_instance, with_jobs, ReportFormat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    LocalIdent,
    Planarity,
    Spanning,
    Lemma5,
    Lemma6,
    Lowerbound,
    HOnly,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    /// Instance size; for the lemma suites, the largest size drawn.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Constraint density; cycles through 0, 0.3 and 0.7 when absent.
    #[arg(long)]
    density: Option<f64>,
    /// Check this instance instead of generated ones.
    #[arg(long)]
    instance: Option<PathBuf>,
    #[arg(long, default_value = "1000")]
    x: Coord,
    #[arg(long, default_value = "1/1000")]
    eps: Coord,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    suite: Suite,
    seed: u64,
    trials: usize,
    cases: usize,
    violations: Vec<String>,
    /// Largest measured ratio where the suite measures one.
    max_ratio: Option<f64>,
    passed: bool,
}

struct Case {
    label: String,
    inst: Arc<Instance>,
    pair: (VertexId, VertexId),
}

const DENSITIES: [f64; 3] = [0.0, 0.3, 0.7];

/// The instances a suite runs on: the supplied file, or `trials` seeded
/// random instances. Lemma suites draw a size and an `(s, t)` pair per case.
fn cases(a: &VerifyArgs) -> Result<Vec<Case>> {
    let pairwise = matches!(a.suite, Suite::Lemma5 | Suite::Lemma6 | Suite::HOnly);
    if let Some(path) = &a.instance {
        let inst = read_instance(path)?;
        let n = inst.n();
        let pairs: Vec<(VertexId, VertexId)> = if pairwise {
            (0..n).flat_map(|s| (0..n).filter(move |&t| t != s).map(move |t| (s, t))).collect()
        } else {
            vec![(0, 0)]
        };
        return Ok(pairs
            .into_iter()
            .map(|pair| Case { label: format!("{} {}->{}", path.display(), pair.0, pair.1), inst: inst.clone(), pair })
            .collect());
    }
    let max_n = a.n.unwrap_or(if pairwise { 40 } else { 30 });
    let mut out = Vec::with_capacity(a.trials);
    for i in 0..a.trials {
        let seed = a.seed.wrapping_add(i as u64);
        let density = a.density.unwrap_or(DENSITIES[i % DENSITIES.len()]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = if pairwise { rng.gen_range(6.min(max_n)..=max_n) } else { max_n };
        let inst = Arc::new(random_instance(&RandomInstanceParams::new(n, density, seed))?);
        let pair = (rng.gen_range(0..n), rng.gen_range(0..n));
        out.push(Case { label: format!("seed {seed} n {n} density {density} {}->{}", pair.0, pair.1), inst, pair });
    }
    Ok(out)
}

fn crossing_count(g: &GeomGraph) -> usize {
    let inst = g.instance();
    let seg = |(a, b): (VertexId, VertexId)| Segment::new(inst.point(a).clone(), inst.point(b).clone()).expect("distinct points");
    let edges: Vec<_> = g.edges().collect();
    let mut count = 0;
    for (i, &e) in edges.iter().enumerate() {
        for &f in &edges[i + 1..] {
            count += usize::from(properly_intersects(&seg(e), &seg(f)));
        }
    }
    count
}

fn verdict_note(name: &str, v: Verdict) -> Option<String> {
    match v {
        Verdict::Holds => None,
        Verdict::Violated => Some(format!("{name} violated")),
        Verdict::Undecided => Some(format!("{name} undecided at maximum precision")),
    }
}

/// Violations for one case, plus the ratio the suite measures.
fn check(suite: Suite, case: &Case) -> Result<(Vec<String>, Option<f64>)> {
    let inst = &case.inst;
    let (s, t) = case.pair;
    let mut bad = Vec::new();
    let mut ratio = None;
    match suite {
        Suite::LocalIdent => {
            let vis = build_visibility_graph(inst);
            let half = half_theta6_from_visibility(&vis)?;
            for u in 0..inst.n() {
                let local = local_half_theta6_edges(&neighborhood(&vis, u))?;
                if local != half.neighbors(u) {
                    bad.push(format!("vertex {u}: local {local:?}, global {:?}", half.neighbors(u)));
                }
            }
        }
        Suite::Planarity => {
            let half = half_theta6_from_visibility(&build_visibility_graph(inst))?;
            let crossings = crossing_count(&half);
            if crossings > 0 {
                bad.push(format!("{crossings} crossing edge pairs"));
            }
        }
        Suite::Spanning => {
            let vis = build_visibility_graph(inst);
            let half = half_theta6_from_visibility(&vis)?;
            let rep = spanning_ratio(&half, &vis);
            ratio = Some(rep.max_ratio);
            if rep.max_ratio > 2.0 + 1e-9 {
                bad.push(format!("ratio {} at {:?}", rep.max_ratio, rep.worst_pair));
            }
            if rep.disconnected_pairs > 0 {
                bad.push(format!("{} pairs disconnected", rep.disconnected_pairs));
            }
        }
        Suite::Lemma5 | Suite::Lemma6 => {
            let tri = build_cdt(inst)?;
            let c = verify_lemmas(&tri, s, t)?;
            ratio = Some(c.report.ratio_h_g);
            let checks: &[(&str, Verdict)] = if suite == Suite::Lemma5 {
                &[("|pi_H'| <= |pi_G|", c.hp_le_g)]
            } else {
                &[("|pi_H| <= (n-1)|pi_H'|", c.h_le_hp), ("|pi_H| <= (n-1)|pi_G|", c.h_le_g)]
            };
            bad.extend(checks.iter().filter_map(|&(name, v)| verdict_note(name, v)));
        }
        Suite::HOnly => {
            let tri = build_cdt(inst)?;
            let h = extract_h(&tri, s, t);
            let tr = route(tri.graph(), Algo::Face1OnH, s, t)?;
            if tr.outcome != Outcome::Delivered {
                bad.push(format!("outcome {:?}", tr.outcome));
            }
            for st in &tr.steps {
                if !h.crossed_faces.iter().any(|f| f.contains(&st.from) && f.contains(&st.to)) {
                    bad.push(format!("edge ({}, {}) outside the crossed triangles", st.from, st.to));
                }
            }
            let shortest = visroute_core::bounds::shortest_path(tri.graph(), s, t).map_or(0.0, |p| p.length);
            ratio = Some(if shortest > 0.0 { tr.total_length / shortest } else { 1.0 });
        }
        Suite::Lowerbound => unreachable!("handled separately"),
    }
    Ok((bad, ratio))
}

fn lowerbound(a: &VerifyArgs) -> Result<VerifyReport> {
    let params = LowerBoundParams::new(a.n.unwrap_or(16), a.x.value().clone(), a.eps.value().clone())?;
    let rep = verify_lower_bound(&params)?;
    let mut violations = Vec::new();
    if !rep.within_tolerance || !rep.above_bound {
        violations.push(format!(
            "ratio {} vs closed form {} (relative tolerance {})",
            rep.ratio, rep.closed_form, rep.tolerance
        ));
    }
    Ok(VerifyReport {
        suite: a.suite,
        seed: a.seed,
        trials: 1,
        cases: 1,
        passed: violations.is_empty(),
        violations,
        max_ratio: Some(rep.ratio),
    })
}

pub fn run(a: &VerifyArgs) -> Result<ExitCode> {
    let report = if a.suite == Suite::Lowerbound {
        lowerbound(a)?
    } else {
        let cases = cases(a)?;
        let results: Vec<Result<(Vec<String>, Option<f64>)>> =
            with_jobs(a.jobs, || cases.par_iter().map(|c| check(a.suite, c)).collect())?;
        let mut violations = Vec::new();
        let mut max_ratio: Option<f64> = None;
        for (case, res) in cases.iter().zip(results) {
            let (bad, ratio) = res?;
            violations.extend(bad.into_iter().map(|b| format!("{}: {b}", case.label)));
            if let Some(r) = ratio {
                max_ratio = Some(max_ratio.map_or(r, |m: f64| m.max(r)));
            }
        }
        VerifyReport {
            suite: a.suite,
            seed: a.seed,
            trials: a.trials,
            cases: cases.len(),
            passed: violations.is_empty(),
            violations,
            max_ratio,
        }
    };
    let body = match a.format {
        ReportFormat::Json => serde_json::to_string_pretty(&report)? + "\n",
        ReportFormat::Text => {
            let name = a.suite.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
            let mut s = format!("{name}: {} cases, {} violations", report.cases, report.violations.len());
            if let Some(r) = report.max_ratio {
                s += &format!(", max ratio {r:.9}");
            }
            s.push('\n');
            for v in &report.violations {
                s += &format!("  {v}\n");
            }
            s
        }
    };
    emit(a.out.as_deref(), &body)?;
    Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
