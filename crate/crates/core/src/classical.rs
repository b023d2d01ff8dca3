//! Classical connectivity: `λ(x,y;G)`, `λ(G)`, `κ(G)` by unit-capacity flow.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::{FlowNet, INF};
use crate::graph::{normalize, Edge, Graph};

/// A minimum cut with its witness.
///
/// `edges` and `vertices` together separate the designated pair (or sets);
/// `side` is the source side of the cut. Edge cuts leave `vertices` empty and
/// vertex cuts leave `edges` empty. A disconnected graph yields value 0, an
/// empty cut and `side` equal to one component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalCut {
    pub value: usize,
    pub edges: Vec<Edge>,
    pub vertices: Vec<usize>,
    pub side: Vec<usize>,
}

impl LocalCut {
    fn disconnected(g: &Graph) -> Self {
        let side = g.components().into_iter().next().unwrap_or_default();
        LocalCut {
            value: 0,
            edges: Vec::new(),
            vertices: Vec::new(),
            side,
        }
    }
}

/// Max flow between two vertex sets where every edge has capacity one and
/// vertices flagged in `capacitated` have capacity one as well.
///
/// Returns the cut and, when `want_paths`, a path decomposition (vertex
/// sequences from a source to a sink).
pub(crate) fn separation(
    n: usize,
    edges: impl Iterator<Item = Edge>,
    sources: &[usize],
    sinks: &[usize],
    capacitated: &[bool],
    limit: usize,
    want_paths: bool,
) -> (LocalCut, Vec<Vec<usize>>) {
    let split = capacitated.iter().any(|&c| c);
    type Map = fn(usize) -> usize;
    let (vin, vout): (Map, Map) = if split {
        (|v| 2 * v, |v| 2 * v + 1)
    } else {
        (|v| v, |v| v)
    };
    let nodes = if split { 2 * n } else { n };
    let (src, snk) = (nodes, nodes + 1);
    let mut net = FlowNet::new(nodes + 2);
    if split {
        for (v, &cap) in capacitated.iter().enumerate().take(n) {
            net.add_arc(vin(v), vout(v), if cap { 1 } else { INF });
        }
    }
    let edge_list: Vec<Edge> = edges.collect();
    for &(u, v) in &edge_list {
        if split {
            net.add_arc(vout(u), vin(v), 1);
            net.add_arc(vout(v), vin(u), 1);
        } else {
            net.add_edge(u, v, 1);
        }
    }
    for &s in sources {
        net.add_arc(src, vin(s), INF);
    }
    for &t in sinks {
        net.add_arc(vout(t), snk, INF);
    }
    let limit = limit.min(INF as usize - 1) as u32;
    let value = net.max_flow(src, snk, limit) as usize;
    let reach = net.source_side(src);
    let mut cut = LocalCut {
        value,
        edges: Vec::new(),
        vertices: Vec::new(),
        side: (0..n).filter(|&v| reach[vin(v)]).collect(),
    };
    if split {
        cut.vertices = (0..n)
            .filter(|&v| capacitated[v] && reach[vin(v)] && !reach[vout(v)])
            .collect();
    }
    for &(u, v) in &edge_list {
        let crosses = (reach[vout(u)] && !reach[vin(v)]) || (reach[vout(v)] && !reach[vin(u)]);
        if crosses {
            cut.edges.push(normalize(u, v));
        }
    }
    let paths = if want_paths {
        net.paths(src, snk)
            .into_iter()
            .map(|walk| {
                let mut p: Vec<usize> = Vec::new();
                for &node in &walk[1..walk.len() - 1] {
                    let v = if split { node / 2 } else { node };
                    if p.last() != Some(&v) {
                        p.push(v);
                    }
                }
                p
            })
            .collect()
    } else {
        Vec::new()
    };
    (cut, paths)
}

fn check_pair(g: &Graph, x: usize, y: usize) -> Result<()> {
    if x >= g.n() || y >= g.n() {
        return Err(Error::arg(format!(
            "vertex pair ({x}, {y}) is not in the graph"
        )));
    }
    if x == y {
        return Err(Error::arg("local connectivity needs two distinct vertices"));
    }
    Ok(())
}

/// `λ(x,y;G)` with a minimum edge cut as witness.
pub fn local_edge_connectivity(g: &Graph, x: usize, y: usize) -> Result<LocalCut> {
    check_pair(g, x, y)?;
    let none = vec![false; g.n()];
    Ok(separation(
        g.n(),
        g.edges().iter().copied(),
        &[x],
        &[y],
        &none,
        usize::MAX,
        false,
    )
    .0)
}

/// A maximum family of edge-disjoint `x`–`y` paths.
pub fn edge_disjoint_paths(g: &Graph, x: usize, y: usize) -> Result<Vec<Vec<usize>>> {
    check_pair(g, x, y)?;
    let none = vec![false; g.n()];
    Ok(separation(
        g.n(),
        g.edges().iter().copied(),
        &[x],
        &[y],
        &none,
        usize::MAX,
        true,
    )
    .1)
}

/// Maximum number of internally disjoint `x`–`y` paths; an edge `xy` counts as one.
/// The witness mixes vertices and (at most) the edge `xy`.
pub fn local_vertex_connectivity(g: &Graph, x: usize, y: usize) -> Result<LocalCut> {
    check_pair(g, x, y)?;
    let cap: Vec<bool> = (0..g.n()).map(|v| v != x && v != y).collect();
    Ok(separation(
        g.n(),
        g.edges().iter().copied(),
        &[x],
        &[y],
        &cap,
        usize::MAX,
        false,
    )
    .0)
}

pub fn internally_disjoint_paths(g: &Graph, x: usize, y: usize) -> Result<Vec<Vec<usize>>> {
    check_pair(g, x, y)?;
    let cap: Vec<bool> = (0..g.n()).map(|v| v != x && v != y).collect();
    Ok(separation(
        g.n(),
        g.edges().iter().copied(),
        &[x],
        &[y],
        &cap,
        usize::MAX,
        true,
    )
    .1)
}

/// `λ(G)`: zero when disconnected, otherwise `n − 1` flows from vertex 0.
pub fn edge_connectivity(g: &Graph) -> LocalCut {
    if !g.is_connected() || g.n() < 2 {
        return LocalCut::disconnected(g);
    }
    let none = vec![false; g.n()];
    let mut best: Option<LocalCut> = None;
    for y in 1..g.n() {
        let limit = best.as_ref().map_or(usize::MAX, |b| b.value);
        let (cut, _) = separation(
            g.n(),
            g.edges().iter().copied(),
            &[0],
            &[y],
            &none,
            limit,
            false,
        );
        if best.as_ref().is_none_or(|b| cut.value < b.value) {
            best = Some(cut);
        }
    }
    best.expect("n >= 2")
}

/// `κ(G)`: `n − 1` for complete graphs (with an empty witness), else the
/// minimum local vertex connectivity over non-adjacent pairs.
pub fn vertex_connectivity(g: &Graph) -> LocalCut {
    if !g.is_connected() {
        return LocalCut::disconnected(g);
    }
    let n = g.n();
    if g.is_complete() {
        return LocalCut {
            value: n - 1,
            edges: Vec::new(),
            vertices: Vec::new(),
            side: Vec::new(),
        };
    }
    let mut best: Option<LocalCut> = None;
    for x in 0..n {
        for y in x + 1..n {
            if g.has_edge(x, y) {
                continue;
            }
            let cap: Vec<bool> = (0..n).map(|v| v != x && v != y).collect();
            let limit = best.as_ref().map_or(usize::MAX, |b| b.value);
            let (cut, _) = separation(n, g.edges().iter().copied(), &[x], &[y], &cap, limit, false);
            if best.as_ref().is_none_or(|b| cut.value < b.value) {
                best = Some(cut);
            }
        }
    }
    best.expect("non-complete graph has a non-adjacent pair")
}

/// Whether every pair in `s` has `λ(x,y;G) ≥ threshold`.
pub fn is_set_edge_connected(g: &Graph, s: &[usize], threshold: usize) -> Result<bool> {
    if s.len() < 2 {
        return Err(Error::arg(
            "an edge-connected set needs at least two vertices",
        ));
    }
    for (i, &x) in s.iter().enumerate() {
        for &y in &s[i + 1..] {
            check_pair(g, x, y)?;
            if min_pair_edge_connectivity_capped(g, x, y, threshold) < threshold {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub(crate) fn min_pair_edge_connectivity_capped(
    g: &Graph,
    x: usize,
    y: usize,
    cap: usize,
) -> usize {
    let none = vec![false; g.n()];
    separation(
        g.n(),
        g.edges().iter().copied(),
        &[x],
        &[y],
        &none,
        cap,
        false,
    )
    .0
    .value
}

/// `min λ(x,y;G)` over pairs of `s`.
pub fn min_pair_edge_connectivity(g: &Graph, s: &[usize]) -> usize {
    let mut best = usize::MAX;
    for (i, &x) in s.iter().enumerate() {
        for &y in &s[i + 1..] {
            best = best.min(min_pair_edge_connectivity_capped(g, x, y, best));
        }
    }
    best
}
