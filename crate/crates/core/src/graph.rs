//! Simple undirected graphs on the vertex set `0..n`.
//!
//! A [`Graph`] is immutable once built. Every transform returns a new value,
//! and transforms that drop vertices also return the renumbering they applied
//! so that certificates computed on the result can be mapped back.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An unordered vertex pair stored with the smaller id first.
pub type Edge = (usize, usize);

/// Largest order the bitmask-based solvers accept.
pub const MASK_LIMIT: usize = 64;

#[inline]
pub fn normalize(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A set of normalized edges, e.g. the `M` in `K_n \ M`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeSet(BTreeSet<Edge>);

impl EdgeSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, u: usize, v: usize) -> bool {
        self.0.insert(normalize(u, v))
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.0.contains(&normalize(u, v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Edge> + '_ {
        self.0.iter().copied()
    }
}

impl FromIterator<Edge> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        EdgeSet(iter.into_iter().map(|(u, v)| normalize(u, v)).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

/// The structural edits a graph supports.
#[derive(Debug, Clone)]
pub enum Edit {
    DeleteEdges(EdgeSet),
    DeleteVertices(Vec<usize>),
    Induced(Vec<usize>),
    Join(Graph),
    DisjointUnion(Graph),
}

/// Result of an [`Edit`]: the new graph plus where each old vertex went.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edited {
    pub graph: Graph,
    /// `old_to_new[v]` is the id of old vertex `v`, or `None` if it was removed.
    /// For join and union the second operand's vertices follow the first's.
    pub old_to_new: Vec<Option<usize>>,
}

impl Graph {
    /// Builds a graph, rejecting loops, out-of-range endpoints and repeated pairs.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::arg(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::arg(format!("self-loop at vertex {u}")));
            }
            if !set.insert(normalize(u, v)) {
                return Err(Error::arg(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(Self::from_set(n, set))
    }

    /// Builds from pairs that may repeat; duplicates collapse.
    pub(crate) fn from_pairs(n: usize, edges: impl IntoIterator<Item = Edge>) -> Self {
        let set: BTreeSet<Edge> = edges
            .into_iter()
            .map(|(u, v)| {
                debug_assert!(u != v && u < n && v < n);
                normalize(u, v)
            })
            .collect();
        Self::from_set(n, set)
    }

    fn from_set(n: usize, set: BTreeSet<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &set {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph {
            n,
            edges: set.into_iter().collect(),
            adj,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_set(n, BTreeSet::new())
    }

    pub fn complete(n: usize) -> Self {
        Self::from_pairs(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    /// Vertex count `|G|`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Edge count `‖G‖`.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in increasing lexicographic order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_set(&self) -> EdgeSet {
        EdgeSet(self.edges.iter().copied().collect())
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Position of an edge in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&normalize(u, v)).ok()
    }

    /// `δ(G)`; zero for the graph on no vertices.
    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        self.m() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The one-vertex graph counts as connected; the empty graph does not.
    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    pub fn complement(&self) -> Graph {
        let pairs = (0..self.n)
            .flat_map(|u| (u + 1..self.n).map(move |v| (u, v)))
            .filter(|&(u, v)| !self.has_edge(u, v));
        Self::from_pairs(self.n, pairs)
    }

    /// `L(G)`. Vertex `i` of the result is `self.edges()[i]`; that slice is
    /// returned alongside for translating certificates.
    pub fn line_graph(&self) -> (Graph, Vec<Edge>) {
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            incident[u].push(i);
            incident[v].push(i);
        }
        let mut pairs = Vec::new();
        for list in &incident {
            for (a, &i) in list.iter().enumerate() {
                for &j in &list[a + 1..] {
                    pairs.push((i, j));
                }
            }
        }
        (Self::from_pairs(self.m(), pairs), self.edges.clone())
    }

    pub fn edit(&self, op: &Edit) -> Result<Edited> {
        match op {
            Edit::DeleteEdges(set) => {
                for (u, v) in set.iter() {
                    if !self.has_edge(u, v) {
                        return Err(Error::arg(format!("edge ({u}, {v}) is not in the graph")));
                    }
                }
                let kept = self
                    .edges
                    .iter()
                    .copied()
                    .filter(|&(u, v)| !set.contains(u, v));
                Ok(Edited {
                    graph: Self::from_pairs(self.n, kept),
                    old_to_new: (0..self.n).map(Some).collect(),
                })
            }
            Edit::DeleteVertices(vs) => {
                let drop = self.vertex_flags(vs)?;
                let keep: Vec<usize> = (0..self.n).filter(|&v| !drop[v]).collect();
                Ok(self.restrict(&keep))
            }
            Edit::Induced(vs) => {
                let flags = self.vertex_flags(vs)?;
                let keep: Vec<usize> = (0..self.n).filter(|&v| flags[v]).collect();
                Ok(self.restrict(&keep))
            }
            Edit::Join(other) => Ok(self.combine(other, true)),
            Edit::DisjointUnion(other) => Ok(self.combine(other, false)),
        }
    }

    pub fn delete_edges(&self, set: &EdgeSet) -> Result<Graph> {
        Ok(self.edit(&Edit::DeleteEdges(set.clone()))?.graph)
    }

    pub fn induced(&self, vs: &[usize]) -> Result<Edited> {
        self.edit(&Edit::Induced(vs.to_vec()))
    }

    /// `G ∨ H`.
    pub fn join(&self, other: &Graph) -> Graph {
        self.combine(other, true).graph
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        self.combine(other, false).graph
    }

    fn vertex_flags(&self, vs: &[usize]) -> Result<Vec<bool>> {
        let mut flags = vec![false; self.n];
        for &v in vs {
            if v >= self.n {
                return Err(Error::arg(format!("vertex {v} is not in the graph")));
            }
            flags[v] = true;
        }
        Ok(flags)
    }

    fn restrict(&self, keep: &[usize]) -> Edited {
        let mut old_to_new = vec![None; self.n];
        for (i, &v) in keep.iter().enumerate() {
            old_to_new[v] = Some(i);
        }
        let pairs = self
            .edges
            .iter()
            .filter_map(|&(u, v)| match (old_to_new[u], old_to_new[v]) {
                (Some(a), Some(b)) => Some((a, b)),
                _ => None,
            });
        Edited {
            graph: Self::from_pairs(keep.len(), pairs),
            old_to_new,
        }
    }

    fn combine(&self, other: &Graph, join: bool) -> Edited {
        let off = self.n;
        let mut pairs: Vec<Edge> = self.edges.clone();
        pairs.extend(other.edges.iter().map(|&(u, v)| (u + off, v + off)));
        if join {
            for u in 0..self.n {
                for v in 0..other.n {
                    pairs.push((u, v + off));
                }
            }
        }
        Edited {
            graph: Self::from_pairs(self.n + other.n, pairs),
            old_to_new: (0..self.n + other.n).map(Some).collect(),
        }
    }

    /// Neighbourhoods as bitmasks, for the solvers. Requires `n ≤ 64`.
    pub fn adjacency_masks(&self) -> Result<Vec<u64>> {
        if self.n > MASK_LIMIT {
            return Err(Error::Resource(format!(
                "solver supports at most {MASK_LIMIT} vertices, got {}",
                self.n
            )));
        }
        Ok(self
            .adj
            .iter()
            .map(|list| list.iter().fold(0u64, |m, &w| m | (1 << w)))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(Graph::new(3, [(0, 3)]), Err(Error::Argument(_))));
        assert!(matches!(Graph::new(3, [(1, 1)]), Err(Error::Argument(_))));
        assert!(matches!(
            Graph::new(3, [(0, 1), (1, 0)]),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(Graph::complete(3).complement(), Graph::empty(3));
        let c5c = cycle(5).complement();
        assert_eq!(c5c.m(), 5);
        assert!(c5c.is_connected());
        assert!((0..5).all(|v| c5c.degree(v) == 2));
        // K_{1,3} complement is a triangle on the leaves plus the isolated centre.
        let sc = star(3).complement();
        assert_eq!(sc.degree(0), 0);
        assert_eq!(sc.edges(), &[(1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn line_graph_examples() {
        let (l, map) = path(4).line_graph();
        assert_eq!(l, path(3));
        assert_eq!(map, vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(star(3).line_graph().0, Graph::complete(3));
        let (lc, _) = cycle(5).line_graph();
        assert_eq!(lc.m(), 5);
        assert!((0..5).all(|v| lc.degree(v) == 2) && lc.is_connected());
        let (le, map) = Graph::empty(4).line_graph();
        assert_eq!(le.n(), 0);
        assert!(map.is_empty());
    }

    #[test]
    fn edit_examples() {
        let mut e = EdgeSet::new();
        e.insert(1, 0);
        let g = Graph::complete(4).delete_edges(&e).unwrap();
        assert_eq!((g.m(), g.min_degree()), (5, 2));

        let j = Graph::complete(3).join(&Graph::empty(6));
        assert_eq!((j.n(), j.m()), (9, 21));

        let u = Graph::complete(2).disjoint_union(&Graph::complete(2));
        assert_eq!((u.n(), u.m(), u.is_connected()), (4, 2, false));

        let ed = cycle(5).edit(&Edit::DeleteVertices(vec![1])).unwrap();
        assert_eq!(
            ed.old_to_new,
            vec![Some(0), None, Some(1), Some(2), Some(3)]
        );
        assert_eq!(ed.graph.edges(), &[(0, 3), (1, 2), (2, 3)]);
    }

    #[test]
    fn edit_rejects_unknown_references() {
        let mut e = EdgeSet::new();
        e.insert(0, 2);
        assert!(path(3).delete_edges(&e).is_err());
        assert!(path(3).edit(&Edit::Induced(vec![7])).is_err());
    }
}
