//! `λ(S)`, `κ(S)`, `λ_k(G)`, `κ_k(G)` and the spanning tree packing number.

use crate::classical::{separation, LocalCut};
use crate::error::{Error, Result};
use crate::graph::{Graph, MASK_LIMIT};

use super::bounds::{
    best_terminal_cut, counting_upper_bound, partition_bound, quick_bound, tutte_partition_number,
};
use super::enumerate::terminal_mask;
use super::search::pack;
use super::{Budget, ConnectivityResult, Mode, Packing, Status, SteinerTree, UpperCertificate};

/// Labellings tried exhaustively by the partition bound before falling back
/// to local search.
const PARTITION_ENUMERATION: usize = 50_000;

/// Largest number of terminal sets scanned by the global minimum.
const MAX_SUBSETS: u128 = 5_000_000;

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn check_size(g: &Graph) -> Result<()> {
    if g.n() > MASK_LIMIT {
        return Err(Error::Resource(format!(
            "tree packing supports at most {MASK_LIMIT} vertices, got {}",
            g.n()
        )));
    }
    Ok(())
}

/// Best upper bound at the root with the certificate that attains it.
fn root_bound(g: &Graph, terms: &[usize], mode: Mode) -> Result<UpperCertificate> {
    let mut best = UpperCertificate::Counting(counting_upper_bound(g, terms)?);
    let cut = best_terminal_cut(g, terms, mode);
    if cut.value < best.bound() {
        best = UpperCertificate::Cut(cut);
    }
    let part = partition_bound(g, terms, PARTITION_ENUMERATION)?;
    if part.bound < best.bound() {
        best = UpperCertificate::Partition(part);
    }
    Ok(best)
}

struct Packed {
    trees: Vec<SteinerTree>,
    complete: bool,
    upper: UpperCertificate,
}

impl Packed {
    fn value(&self) -> usize {
        self.trees.len()
    }
}

fn pack_terminals(
    g: &Graph,
    adj: &[u64],
    terms: &[usize],
    mode: Mode,
    upper: UpperCertificate,
    cap: usize,
    budget: &Budget,
) -> Packed {
    if terms.len() == 2 {
        return pack_pair(g, terms, mode, upper, cap);
    }
    let tmask = terms.iter().fold(0u64, |m, &v| m | 1 << v);
    let alive = full_mask(g.n());
    let target = upper
        .bound()
        .min(quick_bound(adj, alive, tmask, terms.len(), mode))
        .min(cap);
    let out = pack(adj, alive, tmask, mode, target, budget);
    Packed {
        trees: out
            .trees
            .into_iter()
            .map(|e| SteinerTree::new(terms, e))
            .collect(),
        complete: out.complete,
        upper,
    }
}

/// Two terminals: Menger paths by flow.
fn pack_pair(
    g: &Graph,
    terms: &[usize],
    mode: Mode,
    upper: UpperCertificate,
    cap: usize,
) -> Packed {
    let capacitated: Vec<bool> = match mode {
        Mode::EdgeDisjoint => vec![false; g.n()],
        Mode::InternallyDisjoint => (0..g.n()).map(|v| !terms.contains(&v)).collect(),
    };
    let (cut, paths) = separation(
        g.n(),
        g.edges().iter().copied(),
        &terms[..1],
        &terms[1..],
        &capacitated,
        cap,
        true,
    );
    let trees = paths
        .iter()
        .map(|p| SteinerTree::new(terms, p.windows(2).map(|w| (w[0], w[1])).collect()))
        .collect();
    let upper = if cut.value < cap {
        UpperCertificate::Cut(cut)
    } else {
        upper
    };
    Packed {
        trees,
        complete: true,
        upper,
    }
}

fn result(packed: Packed, terms: Vec<usize>, mode: Mode) -> ConnectivityResult {
    let value = packed.value();
    let status = if packed.complete {
        Status::Exact
    } else {
        Status::LowerBoundOnly
    };
    let upper_certificate = (packed.upper.bound() == value).then_some(packed.upper);
    ConnectivityResult {
        value,
        status,
        mode,
        witness_terminals: terms.clone(),
        certificate: Packing {
            terminals: terms,
            mode,
            trees: packed.trees,
        },
        upper_certificate,
    }
}

fn sorted_terminals(g: &Graph, s: &[usize]) -> Result<Vec<usize>> {
    if s.len() < 2 {
        return Err(Error::arg("a terminal set needs at least two vertices"));
    }
    terminal_mask(g, s)?;
    let mut terms = s.to_vec();
    terms.sort_unstable();
    Ok(terms)
}

/// Maximum number of edge-disjoint (`λ(S)`) or internally disjoint (`κ(S)`)
/// Steiner trees connecting `s`.
pub fn max_tree_packing(
    g: &Graph,
    s: &[usize],
    mode: Mode,
    budget: &Budget,
) -> Result<ConnectivityResult> {
    max_tree_packing_capped(g, s, mode, usize::MAX, budget)
}

/// Like [`max_tree_packing`] but stops once `cap` trees are found. An exact
/// result with `value == cap` means "at least `cap`".
pub fn max_tree_packing_capped(
    g: &Graph,
    s: &[usize],
    mode: Mode,
    cap: usize,
    budget: &Budget,
) -> Result<ConnectivityResult> {
    check_size(g)?;
    let terms = sorted_terminals(g, s)?;
    let adj = g.adjacency_masks()?;
    let upper = root_bound(g, &terms, mode)?;
    let packed = pack_terminals(g, &adj, &terms, mode, upper, cap, budget);
    Ok(result(packed, terms, mode))
}

/// `λ_k(G)` or `κ_k(G)` with default limits.
pub fn generalized_connectivity(g: &Graph, k: usize, mode: Mode) -> Result<ConnectivityResult> {
    generalized_connectivity_with(g, k, mode, &Budget::default())
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
            return out;
        };
        c[i] += 1;
        for j in i + 1..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

/// The minimum of `λ(S)` (or `κ(S)`) over all `k`-subsets `S`, with the
/// lexicographically first minimizing subset as witness.
///
/// Subsets are scanned in parallel on `budget.threads` workers; the answer
/// does not depend on the thread count.
pub fn generalized_connectivity_with(
    g: &Graph,
    k: usize,
    mode: Mode,
    budget: &Budget,
) -> Result<ConnectivityResult> {
    generalized_connectivity_capped(g, k, mode, usize::MAX, budget)
}

/// Like [`generalized_connectivity_with`] but never searches past `cap`
/// trees per subset. An exact result with `value == cap` means "at least
/// `cap`"; its witness is then the first subset where `cap` trees were found.
pub fn generalized_connectivity_capped(
    g: &Graph,
    k: usize,
    mode: Mode,
    cap: usize,
    budget: &Budget,
) -> Result<ConnectivityResult> {
    let n = g.n();
    if k < 2 || k > n {
        return Err(Error::arg(format!(
            "k must satisfy 2 <= k <= n = {n}, got {k}"
        )));
    }
    check_size(g)?;
    if !g.is_connected() {
        return Ok(disconnected(g, k, mode));
    }
    if binomial(n, k) > MAX_SUBSETS {
        return Err(Error::Resource(format!(
            "C({n}, {k}) terminal sets exceed {MAX_SUBSETS}"
        )));
    }
    let adj = g.adjacency_masks()?;
    let all = subsets(n, k);
    let threads = budget.threads;

    let uppers: Vec<UpperCertificate> = crate::par::map(threads, &all, |s| root_bound(g, s, mode))?
        .into_iter()
        .collect::<Result<_>>()?;
    let m0 = uppers
        .iter()
        .map(UpperCertificate::bound)
        .min()
        .expect("at least one subset")
        .min(cap);

    let jobs: Vec<(&Vec<usize>, UpperCertificate)> = all.iter().zip(uppers).collect();
    let packed: Vec<Packed> = crate::par::map(threads, &jobs, |(s, up)| {
        pack_terminals(g, &adj, s, mode, up.clone(), m0, budget)
    })?;
    let value = packed
        .iter()
        .map(Packed::value)
        .min()
        .expect("at least one subset");
    let complete = packed.iter().all(|p| p.complete);

    // first subset whose true value is the minimum
    let mut witness = None;
    for (i, p) in packed.iter().enumerate() {
        if p.value() != value {
            continue;
        }
        if value < m0 || value == cap || p.upper.bound() == value || !p.complete {
            witness = Some(i);
            break;
        }
        let more = pack_terminals(g, &adj, &all[i], mode, p.upper.clone(), m0 + 1, budget);
        if more.value() == value {
            witness = Some(i);
            break;
        }
    }
    let i = witness.expect("some subset attains the minimum");
    let mut packed = packed;
    let mut chosen = packed.swap_remove(i);
    chosen.complete = complete;
    Ok(result(chosen, all[i].clone(), mode))
}

fn disconnected(g: &Graph, k: usize, mode: Mode) -> ConnectivityResult {
    let comps = g.components();
    let first = &comps[0];
    let j = (0..g.n())
        .find(|v| !first.contains(v))
        .expect("graph is disconnected");
    let terms: Vec<usize> = if j < k {
        (0..k).collect()
    } else {
        (0..k - 1).chain([j]).collect()
    };
    let cut = LocalCut {
        value: 0,
        edges: Vec::new(),
        vertices: Vec::new(),
        side: first.clone(),
    };
    ConnectivityResult {
        value: 0,
        status: Status::Exact,
        mode,
        witness_terminals: terms.clone(),
        certificate: Packing {
            terminals: terms,
            mode,
            trees: Vec::new(),
        },
        upper_certificate: Some(UpperCertificate::Cut(cut)),
    }
}

/// The maximum number of edge-disjoint spanning trees, found by search and
/// matched against the partition formula.
pub fn stp_number(g: &Graph, budget: &Budget) -> Result<ConnectivityResult> {
    check_size(g)?;
    let (bound, cert) = tutte_partition_number(g, budget.partition_limit)?;
    let terms: Vec<usize> = (0..g.n()).collect();
    let adj = g.adjacency_masks()?;
    let out = pack(
        &adj,
        full_mask(g.n()),
        full_mask(g.n()),
        Mode::EdgeDisjoint,
        bound,
        budget,
    );
    let packed = Packed {
        trees: out
            .trees
            .into_iter()
            .map(|e| SteinerTree::new(&terms, e))
            .collect(),
        complete: out.complete,
        upper: UpperCertificate::Partition(cert),
    };
    if packed.complete && packed.value() != bound {
        return Err(Error::Internal(format!(
            "spanning tree search found {} trees but the partition bound is {bound}",
            packed.value()
        )));
    }
    Ok(result(packed, terms, Mode::EdgeDisjoint))
}
