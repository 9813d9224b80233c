use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{GeomGraph, GraphKind, Instance, Validation};
use crate::error::{Error, InstanceError, Result};
use crate::geom::{Coord, Point, VertexId};

/// Serialization format of an instance file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" | "txt" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(Error::InvalidParams(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointJson {
    id: u64,
    x: String,
    y: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceJson {
    points: Vec<PointJson>,
    constraints: Vec<[u64; 2]>,
}

/// Graph export: the edge list, optionally with the instance inlined.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub kind: GraphKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    instance: Option<InstanceJson>,
    pub edges: Vec<[VertexId; 2]>,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

/// Parses and fully validates an instance.
pub fn load_instance(source: &str, format: Format) -> Result<Instance> {
    load_instance_with(source, format, Validation::Full)
}

pub fn load_instance_with(source: &str, format: Format, validation: Validation) -> Result<Instance> {
    let (raw_points, raw_constraints) = match format {
        Format::Text => parse_text(source)?,
        Format::Json => {
            let doc: InstanceJson = serde_json::from_str(source)
                .map_err(|e| parse_err(e.line(), e.column(), e.to_string()))?;
            from_json(doc)?
        }
    };
    assemble(raw_points, raw_constraints, validation)
}

type RawPoint = (u64, Coord, Coord);

fn from_json(doc: InstanceJson) -> Result<(Vec<RawPoint>, Vec<(u64, u64)>)> {
    let mut pts = Vec::with_capacity(doc.points.len());
    for (i, p) in doc.points.into_iter().enumerate() {
        let x = p.x.parse().map_err(|e| parse_err(0, 0, format!("points[{i}].x: {e}")))?;
        let y = p.y.parse().map_err(|e| parse_err(0, 0, format!("points[{i}].y: {e}")))?;
        pts.push((p.id, x, y));
    }
    Ok((pts, doc.constraints.into_iter().map(|[a, b]| (a, b)).collect()))
}

fn parse_text(source: &str) -> Result<(Vec<RawPoint>, Vec<(u64, u64)>)> {
    // (line number, [(column, token)])
    let mut lines = Vec::new();
    for (i, raw) in source.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut toks = Vec::new();
        let mut start = None;
        for (c, ch) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(c),
                (true, Some(s)) => {
                    toks.push((s + 1, &body[s..c]));
                    start = None;
                }
                _ => {}
            }
        }
        if !toks.is_empty() {
            lines.push((i + 1, toks));
        }
    }
    let mut it = lines.into_iter();
    let (hl, header) = it.next().ok_or_else(|| parse_err(1, 1, "empty input, expected `n m`"))?;
    if header.len() != 2 {
        return Err(parse_err(hl, 1, "header must be `n m`"));
    }
    let count = |(col, tok): (usize, &str)| {
        tok.parse::<usize>().map_err(|_| parse_err(hl, col, format!("expected a count, found {tok:?}")))
    };
    let n = count(header[0])?;
    let m = count(header[1])?;
    let int = |line: usize, (col, tok): (usize, &str)| {
        tok.parse::<u64>().map_err(|_| parse_err(line, col, format!("expected a vertex id, found {tok:?}")))
    };
    let mut pts = Vec::with_capacity(n);
    for k in 0..n {
        let (ln, toks) = it
            .next()
            .ok_or_else(|| parse_err(hl, 1, format!("expected {n} points, found {k}")))?;
        if toks.len() != 3 {
            return Err(parse_err(ln, 1, "point line must be `id x y`"));
        }
        let id = int(ln, toks[0])?;
        let coord = |(col, tok): (usize, &str)| {
            tok.parse::<Coord>().map_err(|e| parse_err(ln, col, e.to_string()))
        };
        pts.push((id, coord(toks[1])?, coord(toks[2])?));
    }
    let mut cons = Vec::with_capacity(m);
    for k in 0..m {
        let (ln, toks) = it
            .next()
            .ok_or_else(|| parse_err(hl, 1, format!("expected {m} constraints, found {k}")))?;
        if toks.len() != 2 {
            return Err(parse_err(ln, 1, "constraint line must be `a b`"));
        }
        cons.push((int(ln, toks[0])?, int(ln, toks[1])?));
    }
    if let Some((ln, _)) = it.next() {
        return Err(parse_err(ln, 1, "unexpected trailing content"));
    }
    Ok((pts, cons))
}

/// Maps arbitrary unique ids onto `0..n` in ascending order.
fn assemble(raw: Vec<RawPoint>, cons: Vec<(u64, u64)>, validation: Validation) -> Result<Instance> {
    let mut by_id = BTreeMap::new();
    for (id, x, y) in raw {
        if by_id.insert(id, (x, y)).is_some() {
            return Err(InstanceError::DuplicateId(id).into());
        }
    }
    let index: BTreeMap<u64, VertexId> = by_id.keys().enumerate().map(|(i, &id)| (id, i)).collect();
    let points = by_id
        .into_values()
        .enumerate()
        .map(|(i, (x, y))| Point::new(i, x, y))
        .collect();
    let lookup = |id: u64| index.get(&id).copied().ok_or(InstanceError::UnknownVertex(id));
    let mut constraints = Vec::with_capacity(cons.len());
    for (a, b) in cons {
        constraints.push((lookup(a)?, lookup(b)?));
    }
    Instance::with_validation(points, constraints, validation)
}

fn to_json(inst: &Instance) -> InstanceJson {
    InstanceJson {
        points: inst
            .points()
            .iter()
            .map(|p| PointJson { id: p.id as u64, x: p.x().to_string(), y: p.y().to_string() })
            .collect(),
        constraints: inst.constraints().iter().map(|&(a, b)| [a as u64, b as u64]).collect(),
    }
}

/// Canonical serialization; `load_instance(save_instance(x)) == x`.
pub fn save_instance(inst: &Instance, format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "{} {}", inst.n(), inst.constraints().len());
            for p in inst.points() {
                let _ = writeln!(out, "{} {} {}", p.id, p.x(), p.y());
            }
            for (a, b) in inst.constraints() {
                let _ = writeln!(out, "{a} {b}");
            }
            out
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&to_json(inst)).expect("instance json");
            s.push('\n');
            s
        }
    }
}

/// Graph JSON, optionally embedding the instance.
pub fn save_graph(g: &GeomGraph, with_instance: bool) -> String {
    let file = GraphFile {
        kind: g.kind(),
        instance: with_instance.then(|| to_json(g.instance())),
        edges: g.edges().map(|(a, b)| [a, b]).collect(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("graph json");
    s.push('\n');
    s
}

/// Reads graph JSON. The embedded instance is used when present, otherwise
/// `instance` must be supplied.
pub fn load_graph(source: &str, instance: Option<Arc<Instance>>) -> Result<GeomGraph> {
    let file: GraphFile =
        serde_json::from_str(source).map_err(|e| parse_err(e.line(), e.column(), e.to_string()))?;
    let inst = match (file.instance, instance) {
        (Some(doc), _) => {
            let (pts, cons) = from_json(doc)?;
            Arc::new(assemble(pts, cons, Validation::Full)?)
        }
        (None, Some(inst)) => inst,
        (None, None) => {
            return Err(Error::InvalidParams("graph file has no instance and none was given".into()))
        }
    };
    GeomGraph::from_edges(inst, file.kind, file.edges.into_iter().map(|[a, b]| (a, b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQUARE: &str = "# square\n4 1\n0 0 0\n1 10 1\n2 11 12\n3 -1 9\n0 2\n";

    #[test]
    fn text_round_trip() {
        let inst = load_instance(SQUARE, Format::Text).unwrap();
        assert_eq!(inst.n(), 4);
        assert_eq!(inst.constraints().len(), 1);
        let again = load_instance(&save_instance(&inst, Format::Text), Format::Text).unwrap();
        assert_eq!(inst, again);
    }

    #[test]
    fn json_round_trip_keeps_thirds() {
        let src = r#"{"points":[{"id":5,"x":"1/3","y":"0"},{"id":9,"x":"2","y":"7/3"}],"constraints":[[9,5]]}"#;
        let inst = load_instance(src, Format::Json).unwrap();
        assert_eq!(inst.point(0).x(), &Coord::ratio(1, 3));
        let text = save_instance(&inst, Format::Json);
        assert!(text.contains("\"1/3\""));
        assert_eq!(load_instance(&text, Format::Json).unwrap(), inst);
    }

    #[test]
    fn ids_are_normalised() {
        let inst = load_instance("2 1\n7 0 0\n3 1 5\n7 3\n", Format::Text).unwrap();
        assert_eq!(inst.point(0).y(), &Coord::from_int(5));
        assert_eq!(inst.constraints(), &[(0, 1)]);
    }

    #[test]
    fn parse_errors_carry_positions() {
        match load_instance("2 0\n0 0 0\n1 1e3 2\n", Format::Text) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (3, 3)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(load_instance("{", Format::Json), Err(Error::Parse { .. })));
        assert!(matches!(load_instance("2 0\n0 0 0\n", Format::Text), Err(Error::Parse { .. })));
    }

    #[test]
    fn graph_json_round_trip() {
        let inst = Arc::new(load_instance(SQUARE, Format::Text).unwrap());
        let g = GeomGraph::from_edges(inst.clone(), GraphKind::Triangulation, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let back = load_graph(&save_graph(&g, true), None).unwrap();
        assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
        assert_eq!(back.kind(), GraphKind::Triangulation);
        let bare = load_graph(&save_graph(&g, false), Some(inst)).unwrap();
        assert_eq!(bare.edge_count(), 3);
    }
}
