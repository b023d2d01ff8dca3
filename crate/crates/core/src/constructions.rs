//! Named graph families with their known connectivity parameters, seeded
//! random graphs, and the star-plus-spanning-tree packing of `K_n ∖ M`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{normalize, Edge, EdgeSet, Graph};
use crate::steiner::{stp_number, Budget, Mode, Packing, SteinerTree};

/// A parameter value a family is known to have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Param {
    Kappa,
    Lambda,
    MinDegree,
    KappaK(usize),
    LambdaK(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    pub graph: Graph,
    pub declared: Vec<(Param, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Planar {
    Grid {
        rows: usize,
        cols: usize,
    },
    /// Hub plus a rim cycle; `n` counts all vertices.
    Wheel {
        n: usize,
    },
    /// `C_n × K_2`.
    Prism {
        n: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    Complete {
        n: usize,
    },
    CompleteBipartite {
        a: usize,
        b: usize,
    },
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Star {
        n: usize,
    },
    /// `K_n ∖ M` with `M` explicit, or `size` edges drawn with `seed`.
    CompleteMinus {
        n: usize,
        m: Option<EdgeSet>,
        size: usize,
        seed: u64,
    },
    Join {
        k: usize,
        n: usize,
    },
    Figure2 {
        s: usize,
        r: usize,
    },
    HGraph {
        t: usize,
    },
    Example3 {
        r: usize,
    },
    PendantComplete {
        n: usize,
    },
    Planar(Planar),
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Complete { n } => write!(f, "complete(n={n})"),
            FamilySpec::CompleteBipartite { a, b } => write!(f, "complete_bipartite(a={a},b={b})"),
            FamilySpec::Path { n } => write!(f, "path(n={n})"),
            FamilySpec::Cycle { n } => write!(f, "cycle(n={n})"),
            FamilySpec::Star { n } => write!(f, "star(n={n})"),
            FamilySpec::CompleteMinus { n, m: Some(m), .. } => {
                let list: Vec<String> = m.iter().map(|(u, v)| format!("{u}-{v}")).collect();
                write!(f, "complete_minus(n={n},m={})", list.join("+"))
            }
            FamilySpec::CompleteMinus {
                n,
                m: None,
                size,
                seed,
            } => {
                write!(f, "complete_minus(n={n},size={size},seed={seed})")
            }
            FamilySpec::Join { k, n } => write!(f, "join_family(k={k},n={n})"),
            FamilySpec::Figure2 { s, r } => write!(f, "figure2_family(s={s},r={r})"),
            FamilySpec::HGraph { t } => write!(f, "h_graph(t={t})"),
            FamilySpec::Example3 { r } => write!(f, "example3_pair(r={r})"),
            FamilySpec::PendantComplete { n } => write!(f, "pendant_complete(n={n})"),
            FamilySpec::Planar(Planar::Grid { rows, cols }) => {
                write!(f, "grid(rows={rows},cols={cols})")
            }
            FamilySpec::Planar(Planar::Wheel { n }) => write!(f, "wheel(n={n})"),
            FamilySpec::Planar(Planar::Prism { n }) => write!(f, "prism(n={n})"),
        }
    }
}

/// Family names accepted by [`FamilySpec::parse`].
pub const FAMILY_NAMES: &[&str] = &[
    "complete",
    "complete_bipartite",
    "path",
    "cycle",
    "star",
    "complete_minus",
    "join_family",
    "figure2_family",
    "h_graph",
    "example3_pair",
    "pendant_complete",
    "grid",
    "wheel",
    "prism",
];

impl FamilySpec {
    /// Parses a family name and `key=value` arguments, e.g.
    /// `("h_graph", ["t=2"])` or `("complete_minus", ["n=6", "m=0-1+2-3"])`.
    pub fn parse(name: &str, args: &[String]) -> Result<Self> {
        let mut kv: BTreeMap<&str, &str> = BTreeMap::new();
        for a in args {
            for part in a.split(',').filter(|p| !p.is_empty()) {
                let (k, v) = part.split_once('=').ok_or_else(|| {
                    Error::arg(format!("family argument `{part}` is not key=value"))
                })?;
                kv.insert(k.trim(), v.trim());
            }
        }
        let mut used = BTreeSet::new();
        let mut num = |key: &'static str| -> Result<usize> {
            used.insert(key);
            let v = kv
                .get(key)
                .ok_or_else(|| Error::arg(format!("{name} needs `{key}=`")))?;
            v.parse().map_err(|_| {
                Error::arg(format!("`{key}` must be a nonnegative integer, got `{v}`"))
            })
        };
        let spec = match name {
            "complete" => FamilySpec::Complete { n: num("n")? },
            "complete_bipartite" => FamilySpec::CompleteBipartite {
                a: num("a")?,
                b: num("b")?,
            },
            "path" => FamilySpec::Path { n: num("n")? },
            "cycle" => FamilySpec::Cycle { n: num("n")? },
            "star" => FamilySpec::Star { n: num("n")? },
            "join_family" => FamilySpec::Join {
                k: num("k")?,
                n: num("n")?,
            },
            "figure2_family" => FamilySpec::Figure2 {
                s: num("s")?,
                r: num("r")?,
            },
            "h_graph" => FamilySpec::HGraph { t: num("t")? },
            "example3_pair" => FamilySpec::Example3 { r: num("r")? },
            "pendant_complete" => FamilySpec::PendantComplete { n: num("n")? },
            "grid" => FamilySpec::Planar(Planar::Grid {
                rows: num("rows")?,
                cols: num("cols")?,
            }),
            "wheel" => FamilySpec::Planar(Planar::Wheel { n: num("n")? }),
            "prism" => FamilySpec::Planar(Planar::Prism { n: num("n")? }),
            "complete_minus" => {
                let n = num("n")?;
                if let Some(list) = kv.get("m") {
                    let mut m = EdgeSet::new();
                    for pair in list.split('+').filter(|p| !p.is_empty()) {
                        let (u, v) = pair
                            .split_once('-')
                            .and_then(|(u, v)| Some((u.parse().ok()?, v.parse().ok()?)))
                            .ok_or_else(|| Error::arg(format!("edge `{pair}` is not u-v")))?;
                        m.insert(u, v);
                    }
                    FamilySpec::CompleteMinus {
                        n,
                        m: Some(m),
                        size: 0,
                        seed: 0,
                    }
                } else {
                    let size = num("size")?;
                    let seed = kv.get("seed").map_or(Ok(0), |v| {
                        v.parse().map_err(|_| {
                            Error::arg(format!("`seed` must be an integer, got `{v}`"))
                        })
                    })?;
                    FamilySpec::CompleteMinus {
                        n,
                        m: None,
                        size,
                        seed,
                    }
                }
            }
            other => {
                return Err(Error::arg(format!(
                    "unknown family `{other}`; expected one of {}",
                    FAMILY_NAMES.join(", ")
                )))
            }
        };
        used.extend(["m", "seed"]);
        if let Some(extra) = kv.keys().find(|k| !used.contains(*k)) {
            return Err(Error::arg(format!("{name} does not take `{extra}`")));
        }
        Ok(spec)
    }
}

fn need(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::arg(what.to_string()))
    }
}

fn clique_on(vs: &[usize], out: &mut Vec<Edge>) {
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            out.push(normalize(a, b));
        }
    }
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::new(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j)))).expect("valid edges")
}

pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("valid edges")
}

pub fn cycle(n: usize) -> Result<Graph> {
    need(n >= 3, "a cycle needs n >= 3")?;
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// `K_{1,n−1}` centred at 0.
pub fn star(n: usize) -> Result<Graph> {
    need(n >= 1, "a star needs n >= 1")?;
    Graph::new(n, (1..n).map(|i| (0, i)))
}

/// `size` distinct edges of `K_n` drawn with `seed`.
pub fn random_edge_set(n: usize, size: usize, seed: u64) -> Result<EdgeSet> {
    let all: Vec<Edge> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    need(size <= all.len(), "cannot remove more edges than K_n has")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sample(&mut rng, all.len(), size)
        .into_iter()
        .map(|i| all[i])
        .collect())
}

pub fn complete_minus(n: usize, m: &EdgeSet) -> Result<Graph> {
    for (u, v) in m.iter() {
        need(v < n, "edges of M must lie in K_n")?;
        need(u != v, "M cannot contain loops")?;
    }
    Graph::complete(n).delete_edges(m)
}

/// `K_k ∨ (n−k)K_1` with the clique on `0..k`.
pub fn join_family(k: usize, n: usize) -> Result<Graph> {
    need(k >= 1 && n >= 3 * k, "join_family needs k >= 1 and n >= 3k")?;
    Ok(Graph::complete(k).join(&Graph::empty(n - k)))
}

/// Vertices `u = 0`, `v = 1`, `w = 2`, then `X_1`, `X_2`, `Y_1`, `Y_2`.
/// `P = X_1 ∪ X_2` and `Q = Y_1 ∪ Y_2` are cliques, `u ~ P`, `v ~ Q`,
/// `w ~ X_1 ∪ Y_1`, and `X_2`, `Y_2` are joined by a perfect matching.
pub fn figure2_family(s: usize, r: usize) -> Result<Graph> {
    need(s >= 1, "figure2_family needs s >= 1")?;
    let (a, b) = match r {
        0 => (2 * s, 2 * s),
        1 => (2 * s + 1, 2 * s),
        2 => (2 * s + 1, 2 * s + 1),
        3 => (2 * s + 2, 2 * s + 1),
        _ => return Err(Error::arg("figure2_family needs r in 0..=3")),
    };
    let x1: Vec<usize> = (3..3 + a).collect();
    let x2: Vec<usize> = (3 + a..3 + a + b).collect();
    let y1: Vec<usize> = (3 + a + b..3 + 2 * a + b).collect();
    let y2: Vec<usize> = (3 + 2 * a + b..3 + 2 * a + 2 * b).collect();
    let n = 3 + 2 * (a + b);
    let p: Vec<usize> = x1.iter().chain(&x2).copied().collect();
    let q: Vec<usize> = y1.iter().chain(&y2).copied().collect();
    let mut edges = Vec::new();
    clique_on(&p, &mut edges);
    clique_on(&q, &mut edges);
    edges.extend(p.iter().map(|&x| (0, x)));
    edges.extend(q.iter().map(|&y| (1, y)));
    edges.extend(x1.iter().chain(&y1).map(|&z| (2, z)));
    edges.extend(x2.iter().zip(&y2).map(|(&x, &y)| (x, y)));
    Graph::new(n, edges)
}

/// `t` copies of `K_4` glued at vertex 0 of each copy.
pub fn h_graph(t: usize) -> Result<Graph> {
    need(t >= 1, "h_graph needs t >= 1")?;
    let mut edges = Vec::new();
    for c in 0..t {
        let vs = [0, 3 * c + 1, 3 * c + 2, 3 * c + 3];
        clique_on(&vs, &mut edges);
    }
    Graph::new(3 * t + 1, edges)
}

/// `K_{n−1}` plus a pendant vertex `n−1` attached to vertex 0.
pub fn pendant_complete(n: usize) -> Result<Graph> {
    need(n >= 3, "pendant_complete needs n >= 3")?;
    let mut edges = Vec::new();
    clique_on(&(0..n - 1).collect::<Vec<_>>(), &mut edges);
    edges.push((0, n - 1));
    Graph::new(n, edges)
}

/// `G = K_{2r,2r+1} ∖ M` where `M` is the set of edges left over after the
/// first `r` edge-disjoint spanning trees the solver finds, and its
/// complement. Both have `κ_n = r`.
pub fn example3_pair(r: usize) -> Result<(Graph, Graph)> {
    need(r >= 1, "example3_pair needs r >= 1")?;
    let kb = complete_bipartite(2 * r, 2 * r + 1);
    let packing = stp_number(&kb, &Budget::default())?;
    if !packing.is_exact() || packing.value != r {
        return Err(Error::Internal(format!(
            "K_{{{},{}}} should have exactly {r} edge-disjoint spanning trees",
            2 * r,
            2 * r + 1
        )));
    }
    let used: BTreeSet<Edge> = packing
        .certificate
        .trees
        .iter()
        .flat_map(|t| t.edges.iter().copied())
        .collect();
    let m: EdgeSet = kb
        .edges()
        .iter()
        .copied()
        .filter(|e| !used.contains(e))
        .collect();
    let g = kb.delete_edges(&m)?;
    let gc = g.complement();
    Ok((g, gc))
}

pub fn planar_family(p: Planar) -> Result<Graph> {
    match p {
        Planar::Grid { rows, cols } => {
            need(rows >= 1 && cols >= 1, "grid needs rows, cols >= 1")?;
            let id = |i: usize, j: usize| i * cols + j;
            let mut edges = Vec::new();
            for i in 0..rows {
                for j in 0..cols {
                    if j + 1 < cols {
                        edges.push((id(i, j), id(i, j + 1)));
                    }
                    if i + 1 < rows {
                        edges.push((id(i, j), id(i + 1, j)));
                    }
                }
            }
            Graph::new(rows * cols, edges)
        }
        Planar::Wheel { n } => {
            need(n >= 4, "wheel needs n >= 4")?;
            let rim = n - 1;
            let edges = (1..n).flat_map(|i| [(0, i), (i, 1 + i % rim)]);
            Graph::new(n, edges)
        }
        Planar::Prism { n } => {
            need(n >= 3, "prism needs n >= 3")?;
            let edges =
                (0..n).flat_map(|i| [(i, (i + 1) % n), (n + i, n + (i + 1) % n), (i, n + i)]);
            Graph::new(2 * n, edges)
        }
    }
}

/// Builds a family member together with the parameter values it is known to
/// have (left empty where nothing closed-form is known).
pub fn construct_family(spec: &FamilySpec) -> Result<Family> {
    use Param::*;
    let (graph, declared) = match *spec {
        FamilySpec::Complete { n } => {
            need(n >= 1, "complete needs n >= 1")?;
            let declared = (2..=n).flat_map(|k| {
                [
                    (KappaK(k), n - k.div_ceil(2)),
                    (LambdaK(k), n - k.div_ceil(2)),
                ]
            });
            (Graph::complete(n), declared.collect())
        }
        FamilySpec::CompleteBipartite { a, b } => {
            need(a >= 1 && b >= 1, "complete_bipartite needs a, b >= 1")?;
            let stp = a * b / (a + b - 1);
            (
                complete_bipartite(a, b),
                vec![(LambdaK(a + b), stp), (KappaK(a + b), stp)],
            )
        }
        FamilySpec::Path { n } => {
            need(n >= 2, "path needs n >= 2")?;
            (path(n), vec![(Lambda, 1), (LambdaK(3.min(n)), 1)])
        }
        FamilySpec::Cycle { n } => (cycle(n)?, vec![(Lambda, 2), (LambdaK(3), 1)]),
        FamilySpec::Star { n } => {
            need(n >= 2, "star needs n >= 2")?;
            (star(n)?, vec![(Kappa, 1), (Lambda, 1)])
        }
        FamilySpec::CompleteMinus {
            n,
            ref m,
            size,
            seed,
        } => {
            let m = match m {
                Some(m) => m.clone(),
                None => random_edge_set(n, size, seed)?,
            };
            (complete_minus(n, &m)?, Vec::new())
        }
        FamilySpec::Join { k, n } => (
            join_family(k, n)?,
            vec![
                (KappaK(k), k),
                (LambdaK(k), k),
                (Kappa, k),
                (Lambda, k),
                (MinDegree, k),
            ],
        ),
        FamilySpec::Figure2 { s, r } => (
            figure2_family(s, r)?,
            vec![(Lambda, 4 * s + r), (LambdaK(3), 3 * s + r.div_ceil(2))],
        ),
        FamilySpec::HGraph { t } => (h_graph(t)?, vec![(Lambda, 3), (LambdaK(3), 2)]),
        FamilySpec::Example3 { r } => {
            let n = 4 * r + 1;
            (example3_pair(r)?.0, vec![(KappaK(n), r), (LambdaK(n), r)])
        }
        FamilySpec::PendantComplete { n } => {
            let declared = (2..=n).flat_map(|k| [(KappaK(k), 1), (LambdaK(k), 1)]);
            (pendant_complete(n)?, declared.collect())
        }
        FamilySpec::Planar(p) => (planar_family(p)?, Vec::new()),
    };
    Ok(Family { graph, declared })
}

/// Erdős–Rényi `G(n, p)`; each pair `(u, v)`, `u < v`, in lexicographic
/// order is kept with probability `p`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<Graph> {
    need(
        (0.0..=1.0).contains(&p),
        "edge probability must lie in [0, 1]",
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

/// `n − (k+1)/2` internally disjoint `S`-trees in `K_n ∖ M`, `k` odd,
/// `|M| ≤ (k−1)/2`.
///
/// Outside vertices `w` are taken in order of decreasing number of missing
/// edges into `S` (ties by id). Each gets the star on its neighbours in `S`;
/// every terminal `u` it misses is hung off the smallest-id star terminal `u'`
/// through an unused edge `uu'` of `G[S]`. The remaining edges of `G[S]` then
/// hold `(k−1)/2` edge-disjoint spanning trees of `S`.
pub fn theorem4_packing(n: usize, k: usize, m: &EdgeSet, s: &[usize]) -> Result<Packing> {
    need(
        k % 2 == 1 && k >= 3 && k <= n,
        "k must be odd with 3 <= k <= n",
    )?;
    need(m.len() <= (k - 1) / 2, "|M| must be at most (k-1)/2")?;
    need(s.len() == k, "|S| must equal k")?;
    let g = complete_minus(n, m)?;
    need(g.is_connected(), "K_n \\ M must be connected")?;
    let mut terms = s.to_vec();
    terms.sort_unstable();
    terms.dedup();
    need(
        terms.len() == k && terms[k - 1] < n,
        "S must be k distinct vertices of K_n",
    )?;
    let in_s = |v: usize| terms.binary_search(&v).is_ok();

    let mut outside: Vec<(usize, usize)> = (0..n)
        .filter(|&w| !in_s(w))
        .map(|w| (terms.iter().filter(|&&u| m.contains(u, w)).count(), w))
        .collect();
    outside.sort_by_key(|&(x, w)| (std::cmp::Reverse(x), w));

    // edges of G[S] not yet consumed
    let mut inner: BTreeSet<Edge> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(a, b)| in_s(a) && in_s(b))
        .collect();
    let mut trees = Vec::new();
    for &(_, w) in &outside {
        let (missing, star): (Vec<usize>, Vec<usize>) =
            terms.iter().partition(|&&u| m.contains(u, w));
        let mut edges: Vec<Edge> = star.iter().map(|&u| normalize(u, w)).collect();
        for &u in &missing {
            let Some(&r) = star.iter().find(|&&r| inner.contains(&normalize(u, r))) else {
                return Err(Error::Internal(format!(
                    "no unused edge of G[S] joins {u} to the neighbours of {w} in S"
                )));
            };
            inner.remove(&normalize(u, r));
            edges.push(normalize(u, r));
        }
        trees.push(SteinerTree::new(&terms, edges));
    }

    let want = (k - 1) / 2;
    let residual = Graph::new(n, inner.iter().copied())?.induced(&terms)?;
    let spanning = stp_number(&residual.graph, &Budget::default())?;
    if spanning.value < want {
        return Err(Error::Internal(format!(
            "residual G[S] has {} edge-disjoint spanning trees, needed {want}",
            spanning.value
        )));
    }
    for t in spanning.certificate.trees.iter().take(want) {
        let edges = t
            .edges
            .iter()
            .map(|&(a, b)| normalize(terms[a], terms[b]))
            .collect();
        trees.push(SteinerTree::new(&terms, edges));
    }
    Ok(Packing {
        terminals: terms,
        mode: Mode::InternallyDisjoint,
        trees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::steiner::verify_packing;

    #[test]
    fn family_sizes() {
        let g = join_family(3, 9).unwrap();
        assert_eq!((g.n(), g.m(), g.min_degree()), (9, 21, 3));
        let g = figure2_family(1, 0).unwrap();
        assert_eq!((g.n(), g.m()), (11, 26));
        let g = h_graph(2).unwrap();
        assert_eq!((g.n(), g.m()), (7, 12));
        let g = pendant_complete(5).unwrap();
        assert_eq!((g.n(), g.m(), g.min_degree()), (5, 7, 1));
        assert_eq!(planar_family(Planar::Wheel { n: 6 }).unwrap().m(), 10);
        assert_eq!(planar_family(Planar::Prism { n: 4 }).unwrap().m(), 12);
        assert_eq!(
            planar_family(Planar::Grid { rows: 2, cols: 3 })
                .unwrap()
                .m(),
            7
        );
    }

    #[test]
    fn example3_complement_edges() {
        let (g, gc) = example3_pair(1).unwrap();
        assert_eq!(g.n(), 5);
        assert!(gc.is_connected());
        assert_eq!(gc.m(), 4 + 2);
    }

    #[test]
    fn random_graph_extremes_and_determinism() {
        assert_eq!(random_graph(5, 0.0, 3).unwrap().m(), 0);
        assert!(random_graph(5, 1.0, 3).unwrap().is_complete());
        assert_eq!(
            random_graph(8, 0.5, 1).unwrap(),
            random_graph(8, 0.5, 1).unwrap()
        );
        assert!(random_graph(5, 1.5, 3).is_err());
    }

    #[test]
    fn parse_specs() {
        let spec = FamilySpec::parse("h_graph", &["t=2".into()]).unwrap();
        assert_eq!(spec, FamilySpec::HGraph { t: 2 });
        assert_eq!(spec.to_string(), "h_graph(t=2)");
        let spec = FamilySpec::parse("complete_minus", &["n=6,m=0-1+2-3".into()]).unwrap();
        assert_eq!(construct_family(&spec).unwrap().graph.m(), 13);
        assert!(FamilySpec::parse("h_graph", &["t=2".into(), "q=1".into()]).is_err());
        assert!(FamilySpec::parse("nope", &[]).is_err());
    }

    #[test]
    fn packing_both_cases() {
        let mut m = EdgeSet::new();
        m.insert(0, 1);
        let p = theorem4_packing(5, 3, &m, &[0, 1, 2]).unwrap();
        assert_eq!(p.trees.len(), 3);
        assert!(verify_packing(&complete_minus(5, &m).unwrap(), &p).valid);

        let mut m = EdgeSet::new();
        m.insert(5, 0);
        m.insert(5, 1);
        let p = theorem4_packing(7, 5, &m, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(p.trees.len(), 4);
        assert!(verify_packing(&complete_minus(7, &m).unwrap(), &p).valid);
    }
}
