//! `visroute`: generate instances, build graphs, route, verify and render.
//!
//! Exit codes are the machine contract. `route` exits 0 on delivery, 2 when
//! the router is stuck and 3 when it reports the target unreachable. Every
//! other command exits 0 on success and 1 on a violation or an error.
//! Human-readable progress goes to standard error.

mod measure;
mod render;
mod verify;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use visroute_core::bounds::{verify_every_triangulation_bound, verify_lower_bound, LowerBoundParams};
use visroute_core::cones::{build_constrained_half_theta6, build_constrained_theta};
use visroute_core::instance::{load_instance, random_instance, save_graph, save_instance, Format, RandomInstanceParams};
use visroute_core::router::route;
use visroute_core::triangulation::build_cdt;
use visroute_core::vis::build_visibility_graph;
use visroute_core::{fixtures, Algo, Coord, GeomGraph, Instance, Outcome};

#[derive(Parser, Debug)]
#[command(name = "visroute", version, about = "Local routing on constrained visibility graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a random or built-in instance.
    Gen(GenArgs),
    /// Build a graph on an instance and write it as JSON.
    Build(BuildArgs),
    /// Route one message and write its trace.
    Route(RouteArgs),
    /// Run a verification suite.
    Verify(verify::VerifyArgs),
    /// Measure the two-column lower-bound construction.
    Lowerbound(LowerboundArgs),
    /// Route many pairs and report routing ratios.
    Measure(measure::MeasureArgs),
    /// Draw an instance, a graph, shortest paths and a trace as SVG.
    Render(render::RenderArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphArg {
    Vis,
    Theta6,
    HalfTheta6,
    Cdt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    Theta,
    Face1,
    Face2,
    #[value(name = "face1-on-h")]
    Face1OnH,
}

impl From<AlgoArg> for Algo {
    fn from(a: AlgoArg) -> Algo {
        match a {
            AlgoArg::Theta => Algo::Theta,
            AlgoArg::Face1 => Algo::Face1,
            AlgoArg::Face2 => Algo::Face2,
            AlgoArg::Face1OnH => Algo::Face1OnH,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum InstanceFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Fixture {
    ThetaTrap,
    Subcone,
    Spiral,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, default_value_t = 20)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Probability of offering each candidate pair as a constraint.
    #[arg(long, default_value_t = 0.3)]
    density: f64,
    /// Emit a built-in instance instead of a random one (`spiral` uses `--n`).
    #[arg(long, value_enum)]
    fixture: Option<Fixture>,
    #[arg(long, value_enum, default_value_t = InstanceFormat::Text)]
    format: InstanceFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_enum, default_value_t = GraphArg::HalfTheta6)]
    graph: GraphArg,
    /// Embed the instance in the graph file.
    #[arg(long)]
    inline: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RouteArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_enum, default_value_t = GraphArg::Vis)]
    graph: GraphArg,
    #[arg(long, value_enum, default_value_t = AlgoArg::Face1)]
    algo: AlgoArg,
    #[arg(long)]
    s: usize,
    #[arg(long)]
    t: usize,
    /// Trace JSON destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct LowerboundArgs {
    #[arg(long, default_value_t = 16)]
    n: usize,
    #[arg(long, default_value = "1000")]
    x: Coord,
    #[arg(long, default_value = "1/1000")]
    eps: Coord,
    /// Also check the CDT's flip neighbours and this many random flip walks.
    #[arg(long, default_value_t = 0)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the generated instance here.
    #[arg(long)]
    instance_out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Writes `content` to `out`, or to standard output.
pub fn emit(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, content).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// Reads an instance in either format (JSON if it starts with `{`).
pub fn read_instance(path: &Path) -> Result<Arc<Instance>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let format = if text.trim_start().starts_with('{') { Format::Json } else { Format::Text };
    let inst = load_instance(&text, format).with_context(|| format!("loading {}", path.display()))?;
    Ok(Arc::new(inst))
}

pub fn build_graph(inst: &Arc<Instance>, kind: GraphArg) -> Result<GeomGraph> {
    Ok(match kind {
        GraphArg::Vis => build_visibility_graph(inst),
        GraphArg::Theta6 => build_constrained_theta(inst, 6)?,
        GraphArg::HalfTheta6 => build_constrained_half_theta6(inst)?,
        GraphArg::Cdt => build_cdt(inst)?.graph().clone(),
    })
}

pub fn check_algo_graph(algo: AlgoArg, graph: GraphArg) -> Result<()> {
    if algo == AlgoArg::Face1OnH && graph != GraphArg::Cdt {
        bail!("face1-on-h routes on a triangulation; use --graph cdt");
    }
    Ok(())
}

/// Runs `f` on a pool of `jobs` threads (0 picks the default).
pub fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    Ok(pool.install(f))
}

fn cmd_gen(a: &GenArgs) -> Result<ExitCode> {
    let inst = match a.fixture {
        Some(Fixture::ThetaTrap) => fixtures::theta_trap(),
        Some(Fixture::Subcone) => fixtures::subcone_example(),
        Some(Fixture::Spiral) => fixtures::spiral(a.n)?,
        None => Arc::new(random_instance(&RandomInstanceParams::new(a.n, a.density, a.seed))?),
    };
    let format = match a.format {
        InstanceFormat::Text => Format::Text,
        InstanceFormat::Json => Format::Json,
    };
    emit(a.out.as_deref(), &save_instance(&inst, format))?;
    eprintln!("{} points, {} constraints", inst.n(), inst.constraints().len());
    Ok(ExitCode::SUCCESS)
}

fn cmd_build(a: &BuildArgs) -> Result<ExitCode> {
    let inst = read_instance(&a.instance)?;
    let g = build_graph(&inst, a.graph)?;
    emit(a.out.as_deref(), &save_graph(&g, a.inline))?;
    eprintln!("{} graph: {} vertices, {} edges", g.kind(), g.n(), g.edge_count());
    Ok(ExitCode::SUCCESS)
}

fn cmd_route(a: &RouteArgs) -> Result<ExitCode> {
    check_algo_graph(a.algo, a.graph)?;
    let inst = read_instance(&a.instance)?;
    let g = build_graph(&inst, a.graph)?;
    let trace = match route(&g, a.algo.into(), a.s, a.t) {
        Ok(tr) => tr,
        Err(e) => {
            if let (Some(tr), Some(out)) = (e.trace(), a.out.as_deref()) {
                emit(Some(out), &tr.to_json())?;
            }
            bail!(e);
        }
    };
    emit(a.out.as_deref(), &trace.to_json())?;
    eprintln!(
        "{} on {}: {:?} after {} steps, length {:.6}",
        trace.algo,
        g.kind(),
        trace.outcome,
        trace.steps.len(),
        trace.total_length
    );
    Ok(match trace.outcome {
        Outcome::Delivered => ExitCode::SUCCESS,
        Outcome::Stuck => ExitCode::from(2),
        Outcome::Unreachable => ExitCode::from(3),
    })
}

fn cmd_lowerbound(a: &LowerboundArgs) -> Result<ExitCode> {
    let params = LowerBoundParams::new(a.n, a.x.value().clone(), a.eps.value().clone())?;
    if let Some(path) = &a.instance_out {
        let lb = visroute_core::bounds::gen_lower_bound(&params)?;
        emit(Some(path), &save_instance(&lb.instance, Format::Json))?;
    }
    let rep = verify_lower_bound(&params)?;
    let every = if a.trials > 0 { Some(verify_every_triangulation_bound(&params, a.trials, a.seed)?) } else { None };
    let ok = rep.within_tolerance && rep.above_bound && every.as_ref().map_or(true, |e| e.violations.is_empty());
    let body = match a.format {
        ReportFormat::Json => {
            let doc = serde_json::json!({ "report": rep, "every_triangulation": every, "passed": ok });
            serde_json::to_string_pretty(&doc)? + "\n"
        }
        ReportFormat::Text => {
            let mut s = format!(
                "n = {}, x = {}, eps = {}\nratio |pi_H| / |pi_G| = {:.9}\nclosed form        = {:.9}\nrelative tolerance = {:.6}\nwithin tolerance: {}\n",
                rep.n, a.x, a.eps, rep.ratio, rep.closed_form, rep.tolerance, rep.within_tolerance
            );
            if let Some(e) = &every {
                s += &format!("triangulations checked: {}, min ratio {:.9}, violations {}\n", e.triangulations, e.min_ratio, e.violations.len());
                for v in &e.violations {
                    s += &format!("  {v}\n");
                }
            }
            s
        }
    };
    emit(a.out.as_deref(), &body)?;
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen(a) => cmd_gen(&a),
        Command::Build(a) => cmd_build(&a),
        Command::Route(a) => cmd_route(&a),
        Command::Verify(a) => verify::run(&a),
        Command::Lowerbound(a) => cmd_lowerbound(&a),
        Command::Measure(a) => measure::run(&a),
        Command::Render(a) => render::run(&a),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
