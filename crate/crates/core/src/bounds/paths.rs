use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::geom::VertexId;
use crate::instance::{GeomGraph, Path};

#[derive(Clone, Copy, PartialEq)]
struct Key {
    dist: f64,
    v: VertexId,
}

impl Eq for Key {}

impl Ord for Key {
    // reversed: the heap pops the smallest distance, then the smallest id
    fn cmp(&self, other: &Self) -> Ordering {
        other.dist.total_cmp(&self.dist).then_with(|| other.v.cmp(&self.v))
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Dijkstra from `s`: distances and predecessors. Stops early once `stop`
/// is settled.
fn dijkstra(g: &GeomGraph, s: VertexId, stop: Option<VertexId>) -> (Vec<f64>, Vec<Option<VertexId>>) {
    let n = g.n();
    let mut dist = vec![f64::INFINITY; n];
    let mut pred = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[s] = 0.0;
    heap.push(Key { dist: 0.0, v: s });
    while let Some(Key { dist: d, v: u }) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        if Some(u) == stop {
            break;
        }
        for &v in g.neighbors(u) {
            let nd = d + g.weight(u, v);
            if nd < dist[v] {
                dist[v] = nd;
                pred[v] = Some(u);
                heap.push(Key { dist: nd, v });
            }
        }
    }
    (dist, pred)
}

/// Euclidean shortest path from `s` to `t`, or `None` if `t` is unreachable.
pub fn shortest_path(g: &GeomGraph, s: VertexId, t: VertexId) -> Option<Path> {
    let (dist, pred) = dijkstra(g, s, Some(t));
    if dist[t].is_infinite() {
        return None;
    }
    let mut vertices = vec![t];
    let mut v = t;
    while let Some(p) = pred[v] {
        vertices.push(p);
        v = p;
    }
    vertices.reverse();
    Some(Path::through(g, vertices).expect("predecessor chain follows edges"))
}

/// Shortest-path distances from `s` to every vertex (infinite if unreachable).
pub fn distances_from(g: &GeomGraph, s: VertexId) -> Vec<f64> {
    dijkstra(g, s, None).0
}

/// Worst ratio of `sub` distance to `sup` distance over all connected pairs.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct SpanningReport {
    pub max_ratio: f64,
    pub worst_pair: Option<(VertexId, VertexId)>,
    /// Pairs connected in `sup` but not in `sub`.
    pub disconnected_pairs: usize,
}

pub fn spanning_ratio(sub: &GeomGraph, sup: &GeomGraph) -> SpanningReport {
    let mut rep = SpanningReport { max_ratio: 1.0, worst_pair: None, disconnected_pairs: 0 };
    for s in 0..sup.n() {
        let ds = distances_from(sub, s);
        let dg = distances_from(sup, s);
        for t in s + 1..sup.n() {
            if dg[t].is_infinite() {
                continue;
            }
            if ds[t].is_infinite() {
                rep.disconnected_pairs += 1;
                continue;
            }
            let r = ds[t] / dg[t];
            if r > rep.max_ratio {
                rep.max_ratio = r;
                rep.worst_pair = Some((s, t));
            }
        }
    }
    rep
}
