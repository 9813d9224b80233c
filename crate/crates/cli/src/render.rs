use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use serde::Deserialize;
use visroute_core::bounds::shortest_path;
use visroute_core::instance::load_graph;
use visroute_core::triangulation::{build_cdt, extract_h};
use visroute_core::{GeomGraph, Instance, VertexId};

use crate::{build_graph, emit, read_instance, GraphArg};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
enum Layer {
    Graph,
    Constraints,
    Paths,
    Trace,
    Points,
    Labels,
}

#[derive(Args, Debug)]
pub struct RenderArgs {
    #[arg(long)]
    instance: PathBuf,
    /// Graph to draw, built from the instance.
    #[arg(long, value_enum, conflicts_with = "graph_file")]
    graph: Option<GraphArg>,
    /// Graph JSON as written by `build`.
    #[arg(long)]
    graph_file: Option<PathBuf>,
    /// Trace JSON as written by `route`.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Draw `pi_G` (dotted) and `pi_H` (dash-dotted) in the CDT for this pair.
    #[arg(long, num_args = 2, value_names = ["S", "T"])]
    st: Option<Vec<VertexId>>,
    /// Layers to leave out.
    #[arg(long, value_enum, value_delimiter = ',')]
    hide: Vec<Layer>,
    /// Drawing width in pixels.
    #[arg(long, default_value_t = 800.0)]
    width: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Deserialize)]
struct TraceStepFile {
    from: VertexId,
    to: VertexId,
}

#[derive(Deserialize)]
struct TraceFile {
    steps: Vec<TraceStepFile>,
}

/// Maps instance coordinates to the drawing: y grows upwards in the plane
/// and downwards in SVG.
struct Frame {
    min: [f64; 2],
    scale: f64,
    height: f64,
    pad: f64,
}

impl Frame {
    fn new(inst: &Instance, width: f64) -> Frame {
        let pts: Vec<[f64; 2]> = inst.points().iter().map(|p| p.pos.approx()).collect();
        let lo = |i: usize| pts.iter().map(|p| p[i]).fold(f64::INFINITY, f64::min);
        let hi = |i: usize| pts.iter().map(|p| p[i]).fold(f64::NEG_INFINITY, f64::max);
        let pad = 20.0;
        let span = (hi(0) - lo(0)).max(hi(1) - lo(1)).max(1e-12);
        let scale = (width - 2.0 * pad) / span;
        let height = (hi(1) - lo(1)) * scale + 2.0 * pad;
        Frame { min: [lo(0), hi(1)], scale, height, pad }
    }

    fn map(&self, inst: &Instance, v: VertexId) -> (f64, f64) {
        let [x, y] = inst.pos(v).approx();
        (self.pad + (x - self.min[0]) * self.scale, self.pad + (self.min[1] - y) * self.scale)
    }
}

fn line(svg: &mut String, f: &Frame, inst: &Instance, (a, b): (VertexId, VertexId), style: &str) {
    let (x1, y1) = f.map(inst, a);
    let (x2, y2) = f.map(inst, b);
    let _ = writeln!(svg, r#"  <line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" {style}/>"#);
}

fn polyline(svg: &mut String, f: &Frame, inst: &Instance, vertices: &[VertexId], style: &str) {
    let pts: Vec<String> = vertices
        .iter()
        .map(|&v| {
            let (x, y) = f.map(inst, v);
            format!("{x:.3},{y:.3}")
        })
        .collect();
    let _ = writeln!(svg, r#"  <polyline points="{}" fill="none" {style}/>"#, pts.join(" "));
}

pub fn run(a: &RenderArgs) -> Result<ExitCode> {
    let inst = read_instance(&a.instance)?;
    if inst.n() == 0 {
        bail!("nothing to render: the instance has no points");
    }
    let graph: Option<GeomGraph> = match (&a.graph, &a.graph_file) {
        (Some(kind), _) => Some(build_graph(&inst, *kind)?),
        (None, Some(path)) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Some(load_graph(&text, Some(inst.clone()))?)
        }
        (None, None) => None,
    };
    let trace: Option<Vec<(VertexId, VertexId)>> = match &a.trace {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let file: TraceFile = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
            let steps: Vec<_> = file.steps.iter().map(|s| (s.from, s.to)).collect();
            if let Some(&(a, b)) = steps.iter().find(|&&(a, b)| a.max(b) >= inst.n()) {
                bail!("trace step ({a}, {b}) is out of range for {} points", inst.n());
            }
            Some(steps)
        }
        None => None,
    };
    if let (Some(g), Some(steps)) = (&graph, &trace) {
        for &(a, b) in steps {
            if !g.has_edge(a, b) {
                eprintln!("warning: trace edge ({a}, {b}) is not an edge of the {} graph", g.kind());
            }
        }
    }
    let hidden: BTreeSet<Layer> = a.hide.iter().copied().collect();
    let shown = |l: Layer| !hidden.contains(&l);
    let f = Frame::new(&inst, a.width);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}" viewBox="0 0 {:.0} {:.0}">"#,
        a.width, f.height, a.width, f.height
    );
    let _ = writeln!(svg, r#"  <rect width="100%" height="100%" fill="white"/>"#);
    if let Some(g) = graph.as_ref().filter(|_| shown(Layer::Graph)) {
        let _ = writeln!(svg, r#"  <g id="graph">"#);
        for e in g.edges() {
            line(&mut svg, &f, &inst, e, r##"stroke="#444" stroke-width="1""##);
        }
        let _ = writeln!(svg, "  </g>");
    }
    if shown(Layer::Constraints) {
        let _ = writeln!(svg, r#"  <g id="constraints">"#);
        for &e in inst.constraints() {
            line(&mut svg, &f, &inst, e, r##"stroke="#d22" stroke-width="4""##);
        }
        let _ = writeln!(svg, "  </g>");
    }
    if let Some(st) = a.st.as_ref().filter(|_| shown(Layer::Paths)) {
        let (s, t) = (st[0], st[1]);
        if s.max(t) >= inst.n() {
            bail!("--st {s} {t} is out of range for {} points", inst.n());
        }
        let tri = build_cdt(&inst)?;
        let h = extract_h(&tri, s, t);
        let _ = writeln!(svg, r#"  <g id="paths">"#);
        if let Some(p) = shortest_path(tri.graph(), s, t) {
            polyline(&mut svg, &f, &inst, &p.vertices, r##"stroke="#16c" stroke-width="2.5" stroke-dasharray="2 4""##);
        }
        if let Some(p) = shortest_path(&h.h, s, t) {
            polyline(&mut svg, &f, &inst, &p.vertices, r##"stroke="#190" stroke-width="2.5" stroke-dasharray="10 4 2 4""##);
        }
        let _ = writeln!(svg, "  </g>");
    }
    if let Some(steps) = trace.as_ref().filter(|_| shown(Layer::Trace)) {
        let _ = writeln!(svg, r#"  <g id="trace">"#);
        for &e in steps {
            line(&mut svg, &f, &inst, e, r##"stroke="#e80" stroke-width="2" stroke-opacity="0.8""##);
        }
        let _ = writeln!(svg, "  </g>");
    }
    if shown(Layer::Points) {
        let _ = writeln!(svg, r#"  <g id="points">"#);
        for v in 0..inst.n() {
            let (x, y) = f.map(&inst, v);
            let _ = writeln!(svg, r#"    <circle cx="{x:.3}" cy="{y:.3}" r="3" fill="black"/>"#);
            if shown(Layer::Labels) {
                let _ = writeln!(svg, r#"    <text x="{:.3}" y="{:.3}" font-size="10">{v}</text>"#, x + 4.0, y - 4.0);
            }
        }
        let _ = writeln!(svg, "  </g>");
    }
    svg.push_str("</svg>\n");
    emit(a.out.as_deref(), &svg)?;
    Ok(ExitCode::SUCCESS)
}
