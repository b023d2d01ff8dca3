//! Small-graph enumeration up to isomorphism and the bundled atlas corpus.
//!
//! Graphs on `n` vertices are grown from those on `n − 1` by adding a vertex
//! with every possible neighbourhood, then deduplicated by a canonical code:
//! the largest adjacency bit string over all relabellings that respect a
//! degree-based vertex ordering.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::format::parse_graph6_lines;
use crate::graph::Graph;

/// The bundled connected graphs of order 1 to 7, in atlas order.
pub const ATLAS_CONNECTED_N7: &str = include_str!("../data/atlas_connected_n1-7.g6");

/// Largest order [`canonical_code`] accepts (the code must fit 64 bits).
pub const CODE_LIMIT: usize = 11;

fn pair_bit(i: usize, j: usize) -> usize {
    // pairs (i, j), i < j, ordered by j then i
    j * (j - 1) / 2 + i
}

fn code_under(g: &Graph, pos: &[usize]) -> u64 {
    let mut code = 0u64;
    for &(u, v) in g.edges() {
        let (a, b) = (pos[u].min(pos[v]), pos[u].max(pos[v]));
        code |= 1 << pair_bit(a, b);
    }
    code
}

/// A code equal for two graphs exactly when they are isomorphic.
pub fn canonical_code(g: &Graph) -> Result<u64> {
    let n = g.n();
    if n > CODE_LIMIT {
        return Err(Error::Resource(format!(
            "canonical codes need n <= {CODE_LIMIT}, got {n}"
        )));
    }
    // cells of vertices sharing (degree, sorted neighbour degrees)
    let inv: Vec<(usize, Vec<usize>)> = (0..n)
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&w| g.degree(w)).collect();
            nd.sort_unstable();
            (g.degree(v), nd)
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| inv[a].cmp(&inv[b]));
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match cells.last_mut() {
            Some(c) if inv[c[0]] == inv[v] => c.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut pos = vec![0usize; n];
    let mut best = 0u64;
    fn go(
        g: &Graph,
        cells: &mut [Vec<usize>],
        ci: usize,
        base: usize,
        pos: &mut [usize],
        best: &mut u64,
    ) {
        if ci == cells.len() {
            *best = (*best).max(code_under(g, pos));
            return;
        }
        let len = cells[ci].len();
        heap_permute(&mut cells[ci].clone(), len, &mut |perm| {
            for (i, &v) in perm.iter().enumerate() {
                pos[v] = base + i;
            }
            go(g, cells, ci + 1, base + len, pos, best);
        });
    }
    go(g, &mut cells, 0, 0, &mut pos, &mut best);
    Ok(best)
}

fn heap_permute(a: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k <= 1 {
        f(a);
        return;
    }
    for i in 0..k - 1 {
        heap_permute(a, k - 1, f);
        if k.is_multiple_of(2) {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
    heap_permute(a, k - 1, f);
}

/// All graphs of order `n` up to isomorphism, ordered by canonical code.
pub fn all_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > CODE_LIMIT {
        return Err(Error::Resource(format!(
            "enumeration supports n <= {CODE_LIMIT}, got {n}"
        )));
    }
    let mut level = vec![Graph::empty(0)];
    for order in 1..=n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for g in &level {
            for nbhd in 0u32..(1 << (order - 1)) {
                let edges = g.edges().iter().copied().chain(
                    (0..order - 1)
                        .filter(|i| nbhd >> i & 1 == 1)
                        .map(|i| (i, order - 1)),
                );
                let h = Graph::new(order, edges)?;
                if seen.insert(canonical_code(&h)?) {
                    next.push(h);
                }
            }
        }
        level = next;
    }
    let mut keyed: Vec<(u64, Graph)> = level
        .into_iter()
        .map(|g| (canonical_code(&g).unwrap(), g))
        .collect();
    keyed.sort_by_key(|(c, _)| *c);
    Ok(keyed.into_iter().map(|(_, g)| g).collect())
}

/// All connected graphs with `1 <= m <= max_m` edges up to isomorphism,
/// ordered by edge count and then canonical code. Every connected graph with
/// `m` edges arises from one with `m − 1` by adding a pendant edge or an edge
/// between existing vertices, so growing level by level misses none.
pub fn connected_by_size(max_m: usize) -> Result<Vec<Graph>> {
    if max_m + 1 > CODE_LIMIT {
        return Err(Error::Resource(format!(
            "connected graphs with up to {max_m} edges need codes on {} vertices, limit {CODE_LIMIT}",
            max_m + 1
        )));
    }
    let mut out = Vec::new();
    let mut level = vec![Graph::complete(2)];
    for m in 1..=max_m {
        let mut keyed: Vec<(u64, Graph)> = level
            .iter()
            .map(|g| (canonical_code(g).unwrap(), g.clone()))
            .collect();
        keyed.sort_by_key(|(c, _)| *c);
        out.extend(keyed.into_iter().map(|(_, g)| g));
        if m == max_m {
            break;
        }
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for g in &level {
            let n = g.n();
            let mut grown = Vec::new();
            for u in 0..n {
                grown.push(Graph::new(
                    n + 1,
                    g.edges().iter().copied().chain([(u, n)]),
                )?);
                for v in u + 1..n {
                    if !g.has_edge(u, v) {
                        grown.push(Graph::new(n, g.edges().iter().copied().chain([(u, v)]))?);
                    }
                }
            }
            for h in grown {
                if h.n() <= CODE_LIMIT && seen.insert((h.n(), canonical_code(&h)?)) {
                    next.push(h);
                }
            }
        }
        level = next;
    }
    Ok(out)
}

/// The bundled connected graphs with `n <= max_n`.
pub fn bundled_connected(max_n: usize) -> Vec<Graph> {
    parse_graph6_lines(ATLAS_CONNECTED_N7)
        .expect("bundled atlas parses")
        .into_iter()
        .filter(|g| g.n() <= max_n)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (0..=5).map(|n| all_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34]);
    }

    #[test]
    fn connected_counts_by_edges() {
        let graphs = connected_by_size(5).unwrap();
        let counts: Vec<usize> = (1..=5)
            .map(|m| graphs.iter().filter(|g| g.m() == m).count())
            .collect();
        // OEIS A002905
        assert_eq!(counts, vec![1, 1, 3, 5, 12]);
        assert_eq!(
            connected_by_size(9)
                .unwrap()
                .iter()
                .filter(|g| g.m() == 9)
                .count(),
            710
        );
        assert!(graphs.iter().all(Graph::is_connected));
    }

    #[test]
    fn codes_identify_isomorphic_graphs() {
        let p = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let q = Graph::new(4, [(2, 0), (0, 3), (3, 1)]).unwrap();
        let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(canonical_code(&p).unwrap(), canonical_code(&q).unwrap());
        assert_ne!(canonical_code(&p).unwrap(), canonical_code(&star).unwrap());
    }
}
