//! Small integer-capacity max flow (BFS augmenting paths).
//!
//! Capacities here are tiny, so the number of augmentations is bounded by
//! the flow value and Edmonds–Karp is plenty.

use std::collections::VecDeque;

pub(crate) const INF: u32 = u32::MAX / 4;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: u32,
    rev: usize,
    /// Original capacity; zero for reverse arcs.
    orig: u32,
}

#[derive(Debug, Clone)]
pub(crate) struct FlowNet {
    arcs: Vec<Vec<Arc>>,
}

impl FlowNet {
    pub fn new(nodes: usize) -> Self {
        FlowNet {
            arcs: vec![Vec::new(); nodes],
        }
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: u32) {
        let rf = self.arcs[to].len();
        let rt = self.arcs[from].len();
        self.arcs[from].push(Arc {
            to,
            cap,
            rev: rf,
            orig: cap,
        });
        self.arcs[to].push(Arc {
            to: from,
            cap: 0,
            rev: rt,
            orig: 0,
        });
    }

    /// Undirected unit edge: one arc each way, sharing nothing.
    pub fn add_edge(&mut self, u: usize, v: usize, cap: u32) {
        self.add_arc(u, v, cap);
        self.add_arc(v, u, cap);
    }

    /// Pushes flow from `s` to `t`, stopping early once `limit` is reached.
    pub fn max_flow(&mut self, s: usize, t: usize, limit: u32) -> u32 {
        let mut total = 0;
        while total < limit {
            let Some(parent) = self.bfs(s, t) else { break };
            let mut v = t;
            let mut push = INF;
            while v != s {
                let (u, i) = parent[v].unwrap();
                push = push.min(self.arcs[u][i].cap);
                v = u;
            }
            push = push.min(limit - total);
            let mut v = t;
            while v != s {
                let (u, i) = parent[v].unwrap();
                self.arcs[u][i].cap -= push;
                let rev = self.arcs[u][i].rev;
                self.arcs[v][rev].cap += push;
                v = u;
            }
            total += push;
        }
        total
    }

    fn bfs(&self, s: usize, t: usize) -> Option<Vec<Option<(usize, usize)>>> {
        let mut parent = vec![None; self.arcs.len()];
        let mut seen = vec![false; self.arcs.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for (i, a) in self.arcs[u].iter().enumerate() {
                if a.cap > 0 && !seen[a.to] {
                    seen[a.to] = true;
                    parent[a.to] = Some((u, i));
                    if a.to == t {
                        return Some(parent);
                    }
                    queue.push_back(a.to);
                }
            }
        }
        None
    }

    /// Nodes reachable from `s` in the residual network (the source side of a min cut).
    pub fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.arcs.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for a in &self.arcs[u] {
                if a.cap > 0 && !seen[a.to] {
                    seen[a.to] = true;
                    queue.push_back(a.to);
                }
            }
        }
        seen
    }

    /// Net flow on each forward arc `from -> to`, as (from, to, amount).
    fn net_flows(&self) -> Vec<Vec<(usize, u32)>> {
        let mut out = vec![Vec::new(); self.arcs.len()];
        for (u, list) in self.arcs.iter().enumerate() {
            for a in list {
                if a.orig > 0 && a.cap < a.orig {
                    out[u].push((a.to, a.orig - a.cap));
                }
            }
        }
        // cancel opposite flows on undirected pairs
        for u in 0..out.len() {
            for i in 0..out[u].len() {
                let (v, f) = out[u][i];
                if f == 0 {
                    continue;
                }
                if let Some(j) = out[v].iter().position(|&(w, g)| w == u && g > 0) {
                    let c = f.min(out[v][j].1);
                    out[u][i].1 -= c;
                    out[v][j].1 -= c;
                }
            }
        }
        out
    }

    /// Decomposes the current flow into `s`–`t` walks with cycles removed.
    pub fn paths(&self, s: usize, t: usize) -> Vec<Vec<usize>> {
        let mut flow = self.net_flows();
        let mut out = Vec::new();
        loop {
            let mut walk = vec![s];
            let mut pos = vec![usize::MAX; self.arcs.len()];
            pos[s] = 0;
            let mut u = s;
            while u != t {
                let Some(i) = flow[u].iter().position(|&(_, f)| f > 0) else {
                    return out;
                };
                flow[u][i].1 -= 1;
                let v = flow[u][i].0;
                if pos[v] != usize::MAX {
                    // drop the cycle
                    for &w in &walk[pos[v] + 1..] {
                        pos[w] = usize::MAX;
                    }
                    walk.truncate(pos[v] + 1);
                } else {
                    pos[v] = walk.len();
                    walk.push(v);
                }
                u = v;
            }
            out.push(walk);
        }
    }
}
