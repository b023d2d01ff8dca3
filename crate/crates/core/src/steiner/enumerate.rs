//! Generation of minimal Steiner trees (every leaf a terminal).
//!
//! A minimal tree is grown from a seed by repeatedly attaching the smallest
//! terminal not yet covered through a path that meets the current tree only
//! at its last vertex. The attaching path of each terminal is determined by
//! the final tree, so every tree is produced exactly once. Trees are produced
//! in order of increasing size: one pass per size, each pass capping the
//! total number of edges.

use crate::error::{Error, Result};
use crate::graph::{normalize, Edge, Graph};

use super::SteinerTree;

pub(crate) fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Step {
    Continue,
    Stop,
}

#[derive(Debug, Clone, Copy)]
pub(crate) enum Seed {
    /// Start from a single terminal.
    Vertex(usize),
    /// Only trees containing the edge `(a, x)`, `a` a terminal.
    Edge(usize, usize),
}

struct Gen<'a> {
    adj: &'a [u64],
    alive: u64,
    tmask: u64,
    tv: u64,
    edges: Vec<Edge>,
    path: Vec<usize>,
    /// Non-terminal seed endpoint that must not end up a leaf.
    watch: Option<usize>,
    /// Exact number of edges of the trees produced in this pass.
    size: usize,
}

impl Gen<'_> {
    fn attach(&mut self, f: &mut dyn FnMut(&[Edge], u64) -> Step) -> Step {
        let pending = self.tmask & !self.tv;
        if pending == 0 {
            if self.edges.len() != self.size {
                return Step::Continue;
            }
            if let Some(x) = self.watch {
                if self
                    .edges
                    .iter()
                    .filter(|&&(u, v)| u == x || v == x)
                    .count()
                    < 2
                {
                    return Step::Continue;
                }
            }
            return f(&self.edges, self.tv);
        }
        let t = pending.trailing_zeros() as usize;
        let max_len = self.size.saturating_sub(self.edges.len());
        for len in 1..=max_len {
            self.path.push(t);
            let r = self.extend(t, len, 1 << t, f);
            self.path.pop();
            if r == Step::Stop {
                return Step::Stop;
            }
        }
        Step::Continue
    }

    fn extend(
        &mut self,
        cur: usize,
        left: usize,
        pmask: u64,
        f: &mut dyn FnMut(&[Edge], u64) -> Step,
    ) -> Step {
        let nb = self.adj[cur] & self.alive & !pmask;
        if left == 1 {
            for w in bits(nb & self.tv) {
                let saved_len = self.edges.len();
                let saved_tv = self.tv;
                for pair in self.path.windows(2) {
                    self.edges.push(normalize(pair[0], pair[1]));
                }
                self.edges.push(normalize(cur, w));
                self.tv |= pmask;
                let path = std::mem::take(&mut self.path);
                let r = self.attach(f);
                self.path = path;
                self.edges.truncate(saved_len);
                self.tv = saved_tv;
                if r == Step::Stop {
                    return Step::Stop;
                }
            }
        } else {
            for w in bits(nb & !self.tv) {
                // a path of `left - 1` more edges must still reach the tree
                if left == 2 && self.adj[w] & self.alive & self.tv == 0 {
                    continue;
                }
                self.path.push(w);
                let r = self.extend(w, left - 1, pmask | (1 << w), f);
                self.path.pop();
                if r == Step::Stop {
                    return Step::Stop;
                }
            }
        }
        Step::Continue
    }
}

/// Calls `f(edges, vertex_mask)` for every minimal Steiner tree on the
/// terminals in `tmask`, using only edges of `adj` between `alive` vertices.
pub(crate) fn for_each_tree(
    adj: &[u64],
    alive: u64,
    tmask: u64,
    seed: Seed,
    f: &mut dyn FnMut(&[Edge], u64) -> Step,
) -> Step {
    let mut g = Gen {
        adj,
        alive,
        tmask,
        tv: 0,
        edges: Vec::new(),
        path: Vec::new(),
        watch: None,
        size: 0,
    };
    match seed {
        Seed::Vertex(s) => g.tv = 1 << s,
        Seed::Edge(a, x) => {
            debug_assert!(adj[a] >> x & 1 == 1);
            g.tv = (1 << a) | (1 << x);
            g.edges.push(normalize(a, x));
            if tmask >> x & 1 == 0 {
                g.watch = Some(x);
            }
        }
    }
    let smallest = (tmask | g.tv).count_ones() as usize - 1;
    let largest = alive.count_ones() as usize - 1;
    for size in smallest..=largest {
        g.size = size;
        if g.attach(f) == Step::Stop {
            return Step::Stop;
        }
    }
    Step::Continue
}

pub(crate) fn terminal_mask(g: &Graph, s: &[usize]) -> Result<u64> {
    let mut mask = 0u64;
    for &v in s {
        if v >= g.n() {
            return Err(Error::arg(format!("terminal {v} is not a vertex")));
        }
        if v >= 64 || mask >> v & 1 == 1 {
            return Err(Error::arg(format!(
                "terminal {v} repeated or out of solver range"
            )));
        }
        mask |= 1 << v;
    }
    Ok(mask)
}

/// All minimal Steiner trees for `s`, in canonical (sorted edge list) order.
pub fn enumerate_minimal_steiner_trees(
    g: &Graph,
    s: &[usize],
    limit: usize,
) -> Result<Vec<SteinerTree>> {
    if s.len() < 2 {
        return Err(Error::arg("a terminal set needs at least two vertices"));
    }
    if limit == 0 {
        return Err(Error::arg("limit must be positive"));
    }
    let adj = g.adjacency_masks()?;
    let tmask = terminal_mask(g, s)?;
    let mut terms: Vec<usize> = s.to_vec();
    terms.sort_unstable();
    let all = if g.n() == 64 {
        u64::MAX
    } else {
        (1u64 << g.n()) - 1
    };
    let mut out = Vec::new();
    let mut overflow = false;
    for_each_tree(&adj, all, tmask, Seed::Vertex(terms[0]), &mut |edges, _| {
        if out.len() == limit {
            overflow = true;
            return Step::Stop;
        }
        out.push(SteinerTree::new(&terms, edges.to_vec()));
        Step::Continue
    });
    if overflow {
        return Err(Error::Overflow { limit });
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    /// Brute force: every edge subset that is a tree containing `s` with all leaves in `s`.
    fn brute(g: &Graph, s: &[usize]) -> BTreeSet<Vec<Edge>> {
        let m = g.m();
        let mut out = BTreeSet::new();
        for mask in 1u32..(1 << m) {
            let edges: Vec<Edge> = (0..m)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| g.edges()[i])
                .collect();
            let mut vs: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
            vs.sort_unstable();
            vs.dedup();
            if vs.len() != edges.len() + 1 || !s.iter().all(|t| vs.contains(t)) {
                continue;
            }
            let sub = Graph::new(g.n(), edges.clone())
                .unwrap()
                .induced(&vs)
                .unwrap()
                .graph;
            if !sub.is_connected() {
                continue;
            }
            let leaves_ok = vs.iter().all(|&v| {
                let d = edges.iter().filter(|&&(a, b)| a == v || b == v).count();
                d != 1 || s.contains(&v)
            });
            if leaves_ok {
                out.insert(edges);
            }
        }
        out
    }

    fn check(g: &Graph, s: &[usize]) {
        let got: Vec<Vec<Edge>> = enumerate_minimal_steiner_trees(g, s, 1_000_000)
            .unwrap()
            .into_iter()
            .map(|t| t.edges)
            .collect();
        let want: Vec<Vec<Edge>> = brute(g, s).into_iter().collect();
        assert_eq!(got, want, "terminals {s:?}");
    }

    #[test]
    fn small_examples() {
        assert_eq!(
            enumerate_minimal_steiner_trees(&Graph::complete(3), &[0, 1, 2], 10)
                .unwrap()
                .len(),
            3
        );
        let p4 = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let t = enumerate_minimal_steiner_trees(&p4, &[0, 3], 10).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].edges, p4.edges());
        let c4 = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(
            enumerate_minimal_steiner_trees(&c4, &[0, 2], 10)
                .unwrap()
                .len(),
            2
        );
    }

    #[test]
    fn matches_brute_force() {
        let k5 = Graph::complete(5);
        check(&k5, &[0, 1, 2]);
        check(&k5, &[1, 3]);
        check(&k5, &[0, 1, 2, 3, 4]);
        let petersen_ish = Graph::new(
            7,
            [
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (0, 5),
                (2, 5),
                (5, 6),
                (6, 3),
                (1, 6),
            ],
        )
        .unwrap();
        check(&petersen_ish, &[0, 3, 6]);
        check(&petersen_ish, &[1, 4, 5, 6]);
    }

    #[test]
    fn overflow_and_arguments() {
        assert_eq!(
            enumerate_minimal_steiner_trees(&Graph::complete(5), &[0, 1, 2], 5),
            Err(Error::Overflow { limit: 5 })
        );
        assert!(enumerate_minimal_steiner_trees(&Graph::complete(3), &[0], 5).is_err());
    }
}
