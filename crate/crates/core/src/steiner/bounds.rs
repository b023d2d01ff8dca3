//! Upper bounds on tree packings.
//!
//! All bounds here are instances of one counting argument. Split the vertex
//! set into blocks that each hold a terminal, plus an optional terminal-free
//! block. A tree confined to the terminal blocks crosses at least `t − 1`
//! block boundaries; a tree that enters the free block crosses at least `t`.
//! With `c` edges between terminal blocks and `f` edges into the free block,
//! at most `x* = ⌊c/(t−1)⌋` trees are of the first kind, so
//! `x* + ⌊(c + f − x*(t−1))/t⌋` bounds the packing. Singleton terminal
//! blocks with everything else free give the in/cut counting bound; all
//! terminals with no free block give the spanning-tree partition bound.

use serde::{Deserialize, Serialize};

use crate::classical::{separation, LocalCut};
use crate::error::{Error, Result};
use crate::graph::Graph;

use super::enumerate::{bits, terminal_mask};
use super::Mode;

/// The in/cut counting bound for a terminal set `S` with `|S| = k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountingBound {
    pub terminals: Vec<usize>,
    /// `|E(G[S])|`
    pub e_in: usize,
    /// `|E_G[S, V∖S]|`
    pub e_cut: usize,
    pub x_star: usize,
    pub bound: usize,
}

fn mixed_bound(crossing: usize, free_crossing: usize, t: usize) -> (usize, usize) {
    debug_assert!(t >= 2);
    let x_star = crossing / (t - 1);
    (
        x_star,
        x_star + (crossing + free_crossing - x_star * (t - 1)) / t,
    )
}

/// `x* + ⌊(e_in + e_cut − x*(k−1))/k⌋` with `x* = ⌊e_in/(k−1)⌋`.
pub fn counting_upper_bound(g: &Graph, s: &[usize]) -> Result<CountingBound> {
    if s.len() < 2 {
        return Err(Error::arg("counting bound needs at least two terminals"));
    }
    let mut inside = vec![false; g.n()];
    for &v in s {
        if v >= g.n() || inside[v] {
            return Err(Error::arg(format!("terminal {v} repeated or not a vertex")));
        }
        inside[v] = true;
    }
    let (mut e_in, mut e_cut) = (0, 0);
    for &(u, v) in g.edges() {
        match (inside[u], inside[v]) {
            (true, true) => e_in += 1,
            (true, false) | (false, true) => e_cut += 1,
            _ => {}
        }
    }
    let (x_star, bound) = mixed_bound(e_in, e_cut, s.len());
    let mut terminals = s.to_vec();
    terminals.sort_unstable();
    Ok(CountingBound {
        terminals,
        e_in,
        e_cut,
        x_star,
        bound,
    })
}

/// A vertex partition whose blocks each contain a terminal, plus an optional
/// terminal-free block.
///
/// With `free` empty this is the plain partition bound
/// `⌊crossing / (|blocks| − 1)⌋`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionCertificate {
    pub blocks: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub free: Vec<usize>,
    /// Edges between distinct blocks.
    pub crossing: usize,
    /// Edges between a block and the free block.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub free_crossing: usize,
    pub bound: usize,
}

fn is_zero(v: &usize) -> bool {
    *v == 0
}

impl PartitionCertificate {
    /// Builds the certificate for a labelling: `label[v] < t` is a block,
    /// `label[v] == t` is the free block.
    fn from_labels(g: &Graph, label: &[usize], t: usize) -> Self {
        let mut blocks = vec![Vec::new(); t];
        let mut free = Vec::new();
        for (v, &l) in label.iter().enumerate() {
            if l < t {
                blocks[l].push(v);
            } else {
                free.push(v);
            }
        }
        let (crossing, free_crossing) = count_crossings(g, label, t);
        let (_, bound) = mixed_bound(crossing, free_crossing, t);
        PartitionCertificate {
            blocks,
            free,
            crossing,
            free_crossing,
            bound,
        }
    }

    /// Recomputes the certificate against `g` and `terminals` (pass all
    /// vertices for a spanning-tree bound). Returns the bound if valid.
    pub fn check(&self, g: &Graph, terminals: &[usize]) -> Option<usize> {
        let t = self.blocks.len();
        if t < 2 {
            return None;
        }
        let mut label = vec![usize::MAX; g.n()];
        for (b, block) in self.blocks.iter().enumerate() {
            if block.is_empty() || !block.iter().any(|v| terminals.contains(v)) {
                return None;
            }
            for &v in block {
                if v >= g.n() || label[v] != usize::MAX {
                    return None;
                }
                label[v] = b;
            }
        }
        for &v in &self.free {
            if v >= g.n() || label[v] != usize::MAX || terminals.contains(&v) {
                return None;
            }
            label[v] = t;
        }
        if label.contains(&usize::MAX) {
            return None;
        }
        let (c, f) = count_crossings(g, &label, t);
        let (_, bound) = mixed_bound(c, f, t);
        (c == self.crossing && f == self.free_crossing && bound == self.bound).then_some(bound)
    }
}

fn count_crossings(g: &Graph, label: &[usize], t: usize) -> (usize, usize) {
    let (mut c, mut f) = (0, 0);
    for &(u, v) in g.edges() {
        let (a, b) = (label[u], label[v]);
        if a == b {
            continue;
        }
        if a < t && b < t {
            c += 1;
        } else {
            f += 1;
        }
    }
    (c, f)
}

/// Visits every restricted-growth string of length `len` (set partitions in
/// RGS order), with the number of blocks used.
fn for_each_rgs(len: usize, f: &mut dyn FnMut(&[usize], usize)) {
    fn go(rgs: &mut Vec<usize>, len: usize, blocks: usize, f: &mut dyn FnMut(&[usize], usize)) {
        if rgs.len() == len {
            f(rgs, blocks);
            return;
        }
        for b in 0..=blocks {
            rgs.push(b);
            go(rgs, len, blocks.max(b + 1), f);
            rgs.pop();
        }
    }
    go(&mut Vec::with_capacity(len), len, 0, f);
}

/// The spanning tree packing number via the partition formula: the minimum
/// over partitions `P` with `|P| ≥ 2` of `⌊‖G/P‖ / (|P| − 1)⌋`.
///
/// Partitions are enumerated as restricted-growth strings with incremental
/// crossing counts. Ties go to the partition with more blocks, then to the
/// earlier string. A disconnected graph gets 0 with its components as blocks.
pub fn tutte_partition_number(g: &Graph, limit: usize) -> Result<(usize, PartitionCertificate)> {
    let n = g.n();
    if n < 2 {
        return Err(Error::arg(
            "spanning tree packing needs at least two vertices",
        ));
    }
    let all: Vec<usize> = (0..n).collect();
    if !g.is_connected() {
        let blocks = g.components();
        let cert = PartitionCertificate {
            blocks,
            free: Vec::new(),
            crossing: 0,
            free_crossing: 0,
            bound: 0,
        };
        debug_assert_eq!(cert.check(g, &all), Some(0));
        return Ok((0, cert));
    }
    if n > limit {
        return Err(Error::Resource(format!(
            "partition enumeration is capped at n = {limit}, got n = {n}"
        )));
    }
    // best = (bound, -blocks) with the first RGS kept on ties
    let mut best: Option<(usize, usize, Vec<usize>)> = None;
    let mut rgs = vec![0usize; n];
    let mut cross = vec![0usize; n + 1];
    fn go(
        g: &Graph,
        i: usize,
        blocks: usize,
        rgs: &mut [usize],
        cross: &mut [usize],
        best: &mut Option<(usize, usize, Vec<usize>)>,
    ) {
        let n = rgs.len();
        if i == n {
            if blocks >= 2 {
                let bound = cross[n] / (blocks - 1);
                let better = match best {
                    None => true,
                    Some((b, p, _)) => bound < *b || (bound == *b && blocks > *p),
                };
                if better {
                    *best = Some((bound, blocks, rgs.to_vec()));
                }
            }
            return;
        }
        for b in 0..=blocks {
            rgs[i] = b;
            let added = g
                .neighbors(i)
                .iter()
                .take_while(|&&w| w < i)
                .filter(|&&w| rgs[w] != b)
                .count();
            cross[i + 1] = cross[i] + added;
            go(g, i + 1, blocks.max(b + 1), rgs, cross, best);
        }
    }
    go(g, 0, 0, &mut rgs, &mut cross, &mut best);
    let (bound, blocks, labels) = best.expect("n >= 2 has a two-block partition");
    let cert = PartitionCertificate::from_labels(g, &labels, blocks);
    debug_assert_eq!(cert.bound, bound);
    Ok((bound, cert))
}

/// Upper bound on `λ(S)` from partitions of `V` into terminal-bearing blocks
/// plus a free block. Exhaustive when the number of labellings is at most
/// `exhaustive_limit`; otherwise a nearest-terminal labelling improved by
/// single-vertex moves. Either way the returned certificate is valid.
pub fn partition_bound(
    g: &Graph,
    s: &[usize],
    exhaustive_limit: usize,
) -> Result<PartitionCertificate> {
    if s.len() < 2 {
        return Err(Error::arg("partition bound needs at least two terminals"));
    }
    let tmask = terminal_mask(g, s)?;
    let mut terms: Vec<usize> = s.to_vec();
    terms.sort_unstable();
    let others: Vec<usize> = (0..g.n()).filter(|&v| tmask >> v & 1 == 0).collect();
    let k = terms.len();

    // labellings per terminal partition with t blocks: (t + 1)^(n - k)
    let mut total: u128 = 0;
    for_each_rgs(k, &mut |_, t| {
        if t >= 2 {
            total += ((t + 1) as u128).saturating_pow(others.len() as u32);
        }
    });
    let key = |c: &PartitionCertificate| (c.bound, c.crossing + c.free_crossing);
    let mut best: Option<PartitionCertificate> = None;
    let consider = |cert: PartitionCertificate, best: &mut Option<PartitionCertificate>| {
        if best.as_ref().is_none_or(|b| key(&cert) < key(b)) {
            *best = Some(cert);
        }
    };
    if total <= exhaustive_limit as u128 {
        let mut label = vec![0usize; g.n()];
        for_each_rgs(k, &mut |rgs, t| {
            if t < 2 {
                return;
            }
            for (i, &v) in terms.iter().enumerate() {
                label[v] = rgs[i];
            }
            let mut odo = vec![0usize; others.len()];
            loop {
                for (i, &v) in others.iter().enumerate() {
                    label[v] = odo[i];
                }
                let (c, f) = count_crossings(g, &label, t);
                let (_, bound) = mixed_bound(c, f, t);
                if best.as_ref().is_none_or(|b| (bound, c + f) < key(b)) {
                    best = Some(PartitionCertificate::from_labels(g, &label, t));
                }
                // odometer over labels 0..=t
                let mut i = 0;
                while i < odo.len() && odo[i] == t {
                    odo[i] = 0;
                    i += 1;
                }
                if i == odo.len() {
                    break;
                }
                odo[i] += 1;
            }
        });
    } else {
        consider(local_search(g, &terms, tmask), &mut best);
        // two-block splits: each terminal alone against the rest
        for &t0 in &terms {
            let mut label = vec![1usize; g.n()];
            label[t0] = 0;
            consider(local_search_from(g, tmask, label, 2), &mut best);
        }
    }
    Ok(best.expect("k >= 2 has a two-block terminal partition"))
}

/// Nearest-terminal labelling (ties to the smaller terminal), each terminal
/// its own block, then improved by single-vertex moves.
fn local_search(g: &Graph, terms: &[usize], tmask: u64) -> PartitionCertificate {
    let t = terms.len();
    let mut label = vec![usize::MAX; g.n()];
    let mut frontier: Vec<usize> = Vec::new();
    for (b, &v) in terms.iter().enumerate() {
        label[v] = b;
        frontier.push(v);
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        let mut claim: Vec<(usize, usize)> = Vec::new();
        for &u in &frontier {
            for &w in g.neighbors(u) {
                if label[w] == usize::MAX {
                    claim.push((w, label[u]));
                }
            }
        }
        claim.sort_unstable();
        for (w, b) in claim {
            if label[w] == usize::MAX {
                label[w] = b;
                next.push(w);
            }
        }
        frontier = next;
    }
    for l in &mut label {
        if *l == usize::MAX {
            *l = t;
        }
    }
    local_search_from(g, tmask, label, t)
}

fn local_search_from(
    g: &Graph,
    tmask: u64,
    mut label: Vec<usize>,
    t: usize,
) -> PartitionCertificate {
    let score = |label: &[usize]| {
        let (c, f) = count_crossings(g, label, t);
        (mixed_bound(c, f, t).1, c + f)
    };
    let mut cur = score(&label);
    loop {
        let mut improved = false;
        for v in 0..g.n() {
            if tmask >> v & 1 == 1 {
                continue;
            }
            let orig = label[v];
            for l in 0..=t {
                if l == orig {
                    continue;
                }
                label[v] = l;
                let s = score(&label);
                if s < cur {
                    cur = s;
                    improved = true;
                    break;
                }
                label[v] = orig;
            }
        }
        if !improved {
            break;
        }
    }
    PartitionCertificate::from_labels(g, &label, t)
}

/// Smallest cut separating two groups of terminals. In internally-disjoint
/// mode non-terminal vertices may be cut too (each costs one).
pub(crate) fn best_terminal_cut(g: &Graph, terms: &[usize], mode: Mode) -> LocalCut {
    let k = terms.len();
    let capacitated: Vec<bool> = match mode {
        Mode::EdgeDisjoint => vec![false; g.n()],
        Mode::InternallyDisjoint => (0..g.n()).map(|v| !terms.contains(&v)).collect(),
    };
    // splits containing terms[0] on the source side; all of them for small k
    let splits: Vec<u64> = if k <= 8 {
        (0..(1u64 << (k - 1)) - 1).map(|m| (m << 1) | 1).collect()
    } else {
        (1..k).map(|i| !(1u64 << i) & ((1u64 << k) - 1)).collect()
    };
    let mut best: Option<LocalCut> = None;
    for split in splits {
        let a: Vec<usize> = bits(split).map(|i| terms[i]).collect();
        let b: Vec<usize> = (0..k)
            .filter(|i| split >> i & 1 == 0)
            .map(|i| terms[i])
            .collect();
        let limit = best.as_ref().map_or(usize::MAX, |c| c.value);
        let (cut, _) = separation(
            g.n(),
            g.edges().iter().copied(),
            &a,
            &b,
            &capacitated,
            limit,
            false,
        );
        if best.as_ref().is_none_or(|c| cut.value < c.value) {
            best = Some(cut);
        }
    }
    best.expect("k >= 2 has a split")
}

/// Cheap bound for a residual graph given as masks: terminal degrees,
/// connectivity, and the in/cut count (capped by usable outside vertices in
/// internally-disjoint mode).
pub(crate) fn quick_bound(adj: &[u64], alive: u64, tmask: u64, k: usize, mode: Mode) -> usize {
    let first = tmask.trailing_zeros() as usize;
    let mut seen = 1u64 << first;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for v in bits(frontier) {
            next |= adj[v] & alive;
        }
        frontier = next & !seen;
        seen |= next;
    }
    if tmask & !seen != 0 {
        return 0;
    }
    let mut min_deg = usize::MAX;
    let (mut e_in2, mut e_cut, mut outside) = (0usize, 0usize, 0u64);
    for t in bits(tmask) {
        let nb = adj[t] & alive;
        min_deg = min_deg.min(nb.count_ones() as usize);
        e_in2 += (nb & tmask).count_ones() as usize;
        e_cut += (nb & !tmask).count_ones() as usize;
        outside |= nb & !tmask;
    }
    let e_in = e_in2 / 2;
    let x_star = e_in / (k - 1);
    let mut y = (e_in + e_cut - x_star * (k - 1)) / k;
    if mode == Mode::InternallyDisjoint {
        y = y.min(outside.count_ones() as usize);
    }
    min_deg.min(x_star + y)
}
