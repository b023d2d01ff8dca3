//! Exact Steiner tree packing: `λ(S)`, `κ(S)`, `λ_k(G)`, `κ_k(G)` and the
//! spanning tree packing number, each returned with a checkable packing and,
//! where one is available, a matching upper-bound certificate.

mod bounds;
mod certificate;
mod enumerate;
mod global;
mod search;
mod verify;

use serde::{Deserialize, Serialize};

use crate::classical::LocalCut;
use crate::graph::Edge;

pub use bounds::{
    counting_upper_bound, partition_bound, tutte_partition_number, CountingBound,
    PartitionCertificate,
};
pub use certificate::{Certificate, CertificateCheck};
pub use enumerate::enumerate_minimal_steiner_trees;
pub use global::{
    generalized_connectivity, generalized_connectivity_capped, generalized_connectivity_with,
    max_tree_packing, max_tree_packing_capped, stp_number,
};
pub use verify::{verify_packing, PackingCheck, TreeAccounting};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Trees share no edge: `λ(S)`.
    EdgeDisjoint,
    /// Trees share no edge and meet only in `S`: `κ(S)`.
    InternallyDisjoint,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::EdgeDisjoint => "edge-disjoint",
            Mode::InternallyDisjoint => "internally-disjoint",
        })
    }
}

/// A tree subgraph together with the terminal set it connects.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SteinerTree {
    pub terminals: Vec<usize>,
    /// Sorted, normalized; this sorted list is the tree's canonical form.
    pub edges: Vec<Edge>,
}

impl SteinerTree {
    pub fn new(terminals: &[usize], mut edges: Vec<Edge>) -> Self {
        for e in &mut edges {
            *e = crate::graph::normalize(e.0, e.1);
        }
        edges.sort_unstable();
        SteinerTree {
            terminals: terminals.to_vec(),
            edges,
        }
    }

    /// Vertices spanned by the tree (or just the terminal, for a lone vertex).
    pub fn vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        if vs.is_empty() {
            vs.extend_from_slice(&self.terminals);
        }
        vs.sort_unstable();
        vs.dedup();
        vs
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Packing {
    pub terminals: Vec<usize>,
    pub mode: Mode,
    pub trees: Vec<SteinerTree>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Exact,
    /// A search budget ran out; `value` is the best packing found.
    LowerBoundOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum UpperCertificate {
    Partition(PartitionCertificate),
    Counting(CountingBound),
    Cut(LocalCut),
}

impl UpperCertificate {
    pub fn bound(&self) -> usize {
        match self {
            UpperCertificate::Partition(p) => p.bound,
            UpperCertificate::Counting(c) => c.bound,
            UpperCertificate::Cut(c) => c.value,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityResult {
    pub value: usize,
    pub status: Status,
    pub mode: Mode,
    pub witness_terminals: Vec<usize>,
    pub certificate: Packing,
    pub upper_certificate: Option<UpperCertificate>,
}

impl ConnectivityResult {
    pub fn is_exact(&self) -> bool {
        self.status == Status::Exact
    }
}

/// Search limits. Exceeding one downgrades a result to
/// [`Status::LowerBoundOnly`]; it never fails the call.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Candidate trees generated at a single branching point.
    pub max_trees: usize,
    /// Search nodes plus generated trees, per terminal set.
    pub max_nodes: u64,
    /// Largest order for which partitions are enumerated exhaustively.
    pub partition_limit: usize,
    /// Worker threads for subset fan-out; results do not depend on it.
    pub threads: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_trees: 200_000,
            max_nodes: 10_000_000,
            partition_limit: 12,
            threads: 1,
        }
    }
}
