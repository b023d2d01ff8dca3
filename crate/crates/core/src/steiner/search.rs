//! Branch and bound over packings of minimal Steiner trees.
//!
//! At each node the terminal `a` of least residual degree and its smallest
//! live neighbour `x` are chosen. Either some tree of the packing uses the
//! edge `ax` (branch over the minimal trees through it, generated lazily), or
//! none does (delete `ax`). Every maximal packing of minimal trees is reached,
//! and a packing of arbitrary trees can always be trimmed to minimal ones.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::Edge;

use super::bounds::quick_bound;
use super::enumerate::{bits, for_each_tree, Seed, Step};
use super::{Budget, Mode};

pub(crate) struct Outcome {
    pub trees: Vec<Vec<Edge>>,
    /// The search either proved `trees` optimal or reached the target.
    pub complete: bool,
}

struct Search<'a> {
    tmask: u64,
    k: usize,
    mode: Mode,
    target: usize,
    budget: &'a Budget,
    work: u64,
    aborted: bool,
    stack: Vec<Vec<Edge>>,
    best: Vec<Vec<Edge>>,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.aborted || self.best.len() >= self.target
    }

    fn node(&mut self, adj: &[u64], alive: u64) -> Step {
        self.work += 1;
        if self.work > self.budget.max_nodes {
            self.aborted = true;
        }
        if self.done() {
            return Step::Stop;
        }
        let ub = quick_bound(adj, alive, self.tmask, self.k, self.mode);
        if self.stack.len() + ub <= self.best.len() {
            return Step::Continue;
        }
        let a = bits(self.tmask)
            .min_by_key(|&t| (adj[t] & alive).count_ones())
            .expect("terminal set is nonempty");
        let x = (adj[a] & alive).trailing_zeros() as usize;

        // some tree uses ax
        let mut generated = 0usize;
        let mut child = adj.to_vec();
        let step = for_each_tree(
            adj,
            alive,
            self.tmask,
            Seed::Edge(a, x),
            &mut |edges, vmask| {
                generated += 1;
                self.work += 1;
                if generated > self.budget.max_trees || self.work > self.budget.max_nodes {
                    self.aborted = true;
                    return Step::Stop;
                }
                for &(u, v) in edges {
                    child[u] &= !(1 << v);
                    child[v] &= !(1 << u);
                }
                let child_alive = match self.mode {
                    Mode::EdgeDisjoint => alive,
                    Mode::InternallyDisjoint => alive & !(vmask & !self.tmask),
                };
                self.stack.push(edges.to_vec());
                if self.stack.len() > self.best.len() {
                    self.best = self.stack.clone();
                }
                let r = self.node(&child, child_alive);
                self.stack.pop();
                for &(u, v) in edges {
                    child[u] = adj[u];
                    child[v] = adj[v];
                }
                if r == Step::Stop || self.stack.len() + ub <= self.best.len() {
                    return Step::Stop;
                }
                Step::Continue
            },
        );
        if step == Step::Stop && self.done() {
            return Step::Stop;
        }
        if self.stack.len() + ub <= self.best.len() {
            return Step::Continue;
        }

        // no tree uses ax
        child[a] &= !(1 << x);
        child[x] &= !(1 << a);
        self.node(&child, alive)
    }
}

/// Largest packing of Steiner trees for the terminals in `tmask`, stopping
/// early once `target` trees are found.
pub(crate) fn pack(
    adj: &[u64],
    alive: u64,
    tmask: u64,
    mode: Mode,
    target: usize,
    budget: &Budget,
) -> Outcome {
    let k = tmask.count_ones() as usize;
    debug_assert!(k >= 2);
    let mut s = Search {
        tmask,
        k,
        mode,
        target,
        budget,
        work: 0,
        aborted: false,
        stack: Vec::new(),
        best: Vec::new(),
    };
    if target > 0 {
        s.best = greedy(adj, alive, tmask, mode, target);
        if s.best.len() < target {
            s.node(adj, alive);
        }
    }
    let complete = !s.aborted || s.best.len() >= target;
    Outcome {
        trees: s.best,
        complete,
    }
}

/// Candidate trees inspected per greedy step.
const GREEDY_CANDIDATES: usize = 256;
const GREEDY_ROUNDS: u64 = 16;

fn remove_tree(
    adj: &mut [u64],
    alive: &mut u64,
    tmask: u64,
    mode: Mode,
    edges: &[Edge],
    vmask: u64,
) {
    for &(u, v) in edges {
        adj[u] &= !(1 << v);
        adj[v] &= !(1 << u);
    }
    if mode == Mode::InternallyDisjoint {
        *alive &= !(vmask & !tmask);
    }
}

/// Repeatedly removes a cheap tree: few edges at terminals, then few edges.
/// Ties are broken by a seeded shuffle that differs per round.
fn greedy(adj: &[u64], alive: u64, tmask: u64, mode: Mode, target: usize) -> Vec<Vec<Edge>> {
    let first = tmask.trailing_zeros() as usize;
    let mut best: Vec<Vec<Edge>> = Vec::new();
    for round in 0..GREEDY_ROUNDS {
        let mut rng = ChaCha8Rng::seed_from_u64(round);
        let mut adj = adj.to_vec();
        let mut alive = alive;
        let mut trees = Vec::new();
        let k = tmask.count_ones() as usize;
        while trees.len() < target && quick_bound(&adj, alive, tmask, k, mode) > 0 {
            let mut cands: Vec<(Vec<Edge>, u64)> = Vec::new();
            for_each_tree(
                &adj,
                alive,
                tmask,
                Seed::Vertex(first),
                &mut |edges, vmask| {
                    cands.push((edges.to_vec(), vmask));
                    if cands.len() >= GREEDY_CANDIDATES {
                        Step::Stop
                    } else {
                        Step::Continue
                    }
                },
            );
            if cands.is_empty() {
                break;
            }
            cands.shuffle(&mut rng);
            let at_terminals = |e: &[Edge]| {
                e.iter()
                    .map(|&(u, v)| (tmask >> u & 1) + (tmask >> v & 1))
                    .sum::<u64>()
            };
            let (edges, vmask) = cands
                .into_iter()
                .min_by_key(|(e, _)| {
                    if round == 0 {
                        (e.len() as u64, 0)
                    } else {
                        (at_terminals(e), e.len() as u64)
                    }
                })
                .expect("nonempty");
            remove_tree(&mut adj, &mut alive, tmask, mode, &edges, vmask);
            trees.push(edges);
        }
        if trees.len() > best.len() {
            best = trees;
            if best.len() >= target {
                break;
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn run(g: &Graph, s: &[usize], mode: Mode) -> usize {
        let adj = g.adjacency_masks().unwrap();
        let tmask = s.iter().fold(0u64, |m, &v| m | 1 << v);
        let out = pack(
            &adj,
            (1 << g.n()) - 1,
            tmask,
            mode,
            usize::MAX,
            &Budget::default(),
        );
        assert!(out.complete);
        out.trees.len()
    }

    #[test]
    fn complete_graphs() {
        // both are n - ⌈k/2⌉ in K_n
        assert_eq!(run(&Graph::complete(5), &[0, 1, 2], Mode::EdgeDisjoint), 3);
        assert_eq!(
            run(&Graph::complete(6), &[0, 1, 2, 3], Mode::EdgeDisjoint),
            4
        );
        assert_eq!(
            run(&Graph::complete(5), &[0, 1, 2], Mode::InternallyDisjoint),
            3
        );
        assert_eq!(
            run(&Graph::complete(6), &[0, 1, 2, 3], Mode::InternallyDisjoint),
            4
        );
        assert_eq!(
            run(&Graph::complete(6), &[0, 1, 2, 3, 4, 5], Mode::EdgeDisjoint),
            3
        );
    }

    #[test]
    fn cycle_and_path() {
        let c6 = Graph::new(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        assert_eq!(run(&c6, &[0, 2, 4], Mode::EdgeDisjoint), 1);
        assert_eq!(run(&c6, &[0, 3], Mode::EdgeDisjoint), 2);
        let p = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(run(&p, &[0, 3], Mode::InternallyDisjoint), 1);
    }
}
