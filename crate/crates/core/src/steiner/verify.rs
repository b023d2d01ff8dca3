//! Independent checking of a claimed packing.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::graph::{normalize, Edge, Graph};

use super::{Mode, Packing};

/// How one tree spends edges at the terminal set: a tree inside `G[S]` uses
/// exactly `k − 1` edges of `G[S] ∪ E[S, S̄]`, any other tree at least `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeAccounting {
    pub index: usize,
    pub inside: bool,
    pub counted_edges: usize,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingCheck {
    pub valid: bool,
    pub problems: Vec<String>,
    pub accounting: Vec<TreeAccounting>,
}

/// Checks that every tree is a tree of `g` containing the terminals, that
/// the trees are edge-disjoint, and in internally-disjoint mode that any two
/// share only terminals.
pub fn verify_packing(g: &Graph, packing: &Packing) -> PackingCheck {
    let mut problems = Vec::new();
    let s: BTreeSet<usize> = packing.terminals.iter().copied().collect();
    if s.len() != packing.terminals.len() || s.len() < 2 {
        problems.push("terminal set must have at least two distinct vertices".to_string());
    }
    if let Some(&v) = s.iter().find(|&&v| v >= g.n()) {
        problems.push(format!("terminal {v} is not a vertex"));
    }
    let k = s.len();
    let mut owner: BTreeMap<Edge, usize> = BTreeMap::new();
    let mut vertex_owner: BTreeMap<usize, usize> = BTreeMap::new();
    let mut accounting = Vec::new();
    for (i, tree) in packing.trees.iter().enumerate() {
        let mut vs = BTreeSet::new();
        let mut edges = BTreeSet::new();
        for &(u, v) in &tree.edges {
            if !g.has_edge(u, v) {
                problems.push(format!("tree {i}: ({u}, {v}) is not an edge"));
                continue;
            }
            if !edges.insert(normalize(u, v)) {
                problems.push(format!("tree {i}: edge ({u}, {v}) repeated"));
            }
            vs.insert(u);
            vs.insert(v);
        }
        if !s.iter().all(|v| vs.contains(v)) {
            problems.push(format!("tree {i}: does not contain every terminal"));
        }
        if vs.len() != edges.len() + 1 || !connected(&vs, &edges) {
            problems.push(format!("tree {i}: not a tree"));
        }
        for &e in &edges {
            if let Some(j) = owner.insert(e, i) {
                problems.push(format!("trees {j} and {i} share edge ({}, {})", e.0, e.1));
            }
        }
        if packing.mode == Mode::InternallyDisjoint {
            for &v in vs.iter().filter(|v| !s.contains(v)) {
                if let Some(j) = vertex_owner.insert(v, i) {
                    problems.push(format!("trees {j} and {i} share non-terminal {v}"));
                }
            }
        }
        let inside = vs.iter().all(|v| s.contains(v));
        let counted = edges
            .iter()
            .filter(|(u, v)| s.contains(u) || s.contains(v))
            .count();
        let ok = if inside {
            counted + 1 == k
        } else {
            counted >= k
        };
        if !ok {
            problems.push(format!("tree {i}: uses {counted} edges at the terminals"));
        }
        accounting.push(TreeAccounting {
            index: i,
            inside,
            counted_edges: counted,
            ok,
        });
    }
    PackingCheck {
        valid: problems.is_empty(),
        problems,
        accounting,
    }
}

fn connected(vs: &BTreeSet<usize>, edges: &BTreeSet<Edge>) -> bool {
    let Some(&start) = vs.iter().next() else {
        return false;
    };
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for &(a, b) in edges {
            let w = if a == u {
                b
            } else if b == u {
                a
            } else {
                continue;
            };
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == vs.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::steiner::SteinerTree;

    fn packing(mode: Mode, terms: &[usize], trees: &[&[Edge]]) -> Packing {
        Packing {
            terminals: terms.to_vec(),
            mode,
            trees: trees
                .iter()
                .map(|t| SteinerTree::new(terms, t.to_vec()))
                .collect(),
        }
    }

    #[test]
    fn accepts_and_rejects() {
        let g = Graph::complete(4);
        let ok = packing(
            Mode::EdgeDisjoint,
            &[0, 1, 2],
            &[&[(0, 1), (1, 2)], &[(0, 3), (1, 3), (2, 3)]],
        );
        assert!(verify_packing(&g, &ok).valid);

        let shared = packing(
            Mode::EdgeDisjoint,
            &[0, 1, 2],
            &[&[(0, 1), (1, 2)], &[(0, 1), (0, 2)]],
        );
        assert!(!verify_packing(&g, &shared).valid);

        let cycle = packing(Mode::EdgeDisjoint, &[0, 1, 2], &[&[(0, 1), (1, 2), (0, 2)]]);
        assert!(!verify_packing(&g, &cycle).valid);

        let missing = packing(Mode::EdgeDisjoint, &[0, 1, 2], &[&[(0, 1)]]);
        assert!(!verify_packing(&g, &missing).valid);
    }

    #[test]
    fn internally_disjoint_vertices() {
        let g = Graph::complete(5);
        let p = packing(
            Mode::InternallyDisjoint,
            &[0, 1],
            &[&[(0, 3), (1, 3)], &[(0, 4), (1, 4)], &[(0, 1)]],
        );
        assert!(verify_packing(&g, &p).valid);
        let bad = packing(
            Mode::InternallyDisjoint,
            &[0, 1],
            &[&[(0, 3), (1, 3)], &[(0, 4), (3, 4), (1, 4)]],
        );
        let check = verify_packing(&g, &bad);
        assert!(!check.valid);
    }
}
