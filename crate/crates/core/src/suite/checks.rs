//! The per-graph logic of every check.
//!
//! Values come from capped searches wherever only a threshold matters. A
//! [`Val`] records what was proven: `lo` is always a lower bound, and `exact`
//! says it is also the true value.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classical::{edge_connectivity, min_pair_edge_connectivity, vertex_connectivity};
use crate::constructions::{
    complete_minus, construct_family, example3_pair, theorem4_packing, FamilySpec, Param, Planar,
};
use crate::error::{Error, Result};
use crate::graph::{normalize, Edge, EdgeSet, Graph};
use crate::steiner::{
    generalized_connectivity_capped, max_tree_packing_capped, stp_number, verify_packing, Budget,
    Mode,
};

use super::{CheckConfig, CheckId, CorpusGraph, Outcome};

const BUDGET_SKIP: &str = "search budget exhausted before the instance was decided";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Val {
    lo: usize,
    exact: bool,
}

impl Val {
    fn exact(v: usize) -> Self {
        Val { lo: v, exact: true }
    }

    fn at_least(self, req: usize) -> Option<bool> {
        if self.lo >= req {
            Some(true)
        } else if self.exact {
            Some(false)
        } else {
            None
        }
    }

    fn at_most(self, bound: usize) -> Option<bool> {
        if self.lo > bound {
            Some(false)
        } else if self.exact {
            Some(true)
        } else {
            None
        }
    }

    fn equals(self, want: usize) -> Option<bool> {
        if self.lo > want {
            Some(false)
        } else if self.exact {
            Some(self.lo == want)
        } else {
            None
        }
    }
}

impl std::fmt::Display for Val {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.exact {
            write!(f, "{}", self.lo)
        } else {
            write!(f, ">= {}", self.lo)
        }
    }
}

/// `a <= b` when both are only partly known.
fn le(a: Val, b: Val) -> Option<bool> {
    if b.exact && a.lo > b.lo {
        Some(false)
    } else if a.exact && a.lo <= b.lo {
        Some(true)
    } else {
        None
    }
}

fn mode_param(mode: Mode) -> &'static str {
    match mode {
        Mode::EdgeDisjoint => "lambda",
        Mode::InternallyDisjoint => "kappa",
    }
}

/// `λ_k(G)` or `κ_k(G)`, searched up to `cap`.
fn gen(g: &Graph, k: usize, mode: Mode, cap: usize, budget: &Budget) -> Result<Val> {
    if !g.is_connected() {
        return Ok(Val::exact(0));
    }
    let r = generalized_connectivity_capped(g, k, mode, cap, budget)?;
    Ok(Val {
        lo: r.value,
        exact: r.is_exact() && r.value < cap,
    })
}

/// `λ(S)` or `κ(S)`, searched up to `cap`.
fn local(g: &Graph, s: &[usize], mode: Mode, cap: usize, budget: &Budget) -> Result<Val> {
    let r = max_tree_packing_capped(g, s, mode, cap, budget)?;
    Ok(Val {
        lo: r.value,
        exact: r.is_exact() && r.value < cap,
    })
}

/// Edge-disjoint spanning trees, searched up to `cap`.
fn spanning(g: &Graph, cap: usize, budget: &Budget) -> Result<Val> {
    if g.n() < 2 {
        return Ok(Val::exact(0));
    }
    let all: Vec<usize> = (0..g.n()).collect();
    local(g, &all, Mode::EdgeDisjoint, cap, budget)
}

fn ceil_div(x: i64, d: i64) -> i64 {
    -((-x).div_euclid(d))
}

fn edges_label(m: &[Edge]) -> String {
    if m.is_empty() {
        return "{}".into();
    }
    m.iter()
        .map(|(u, v)| format!("{u}-{v}"))
        .collect::<Vec<_>>()
        .join("+")
}

fn edge_subsets(
    edges: &[Edge],
    size: usize,
    f: &mut dyn FnMut(&[Edge]) -> Result<()>,
) -> Result<()> {
    fn go(
        edges: &[Edge],
        start: usize,
        size: usize,
        cur: &mut Vec<Edge>,
        f: &mut dyn FnMut(&[Edge]) -> Result<()>,
    ) -> Result<()> {
        if cur.len() == size {
            return f(cur);
        }
        for i in start..edges.len() {
            if edges.len() - i < size - cur.len() {
                break;
            }
            cur.push(edges[i]);
            go(edges, i + 1, size, cur, f)?;
            cur.pop();
        }
        Ok(())
    }
    go(edges, 0, size, &mut Vec::new(), f)
}

fn triples(n: usize) -> impl Iterator<Item = [usize; 3]> {
    (0..n).flat_map(move |a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| [a, b, c])))
}

/// Collects instance outcomes for one corpus graph.
struct Out {
    items: Vec<Outcome>,
}

impl Out {
    fn record(
        &mut self,
        verdict: Option<bool>,
        params: impl Into<String>,
        computed: impl ToString,
        expected: impl Into<String>,
    ) {
        let params = params.into();
        self.items.push(match verdict {
            Some(true) => Outcome::Pass,
            Some(false) => Outcome::Fail {
                params,
                computed: computed.to_string(),
                expected: expected.into(),
            },
            None => Outcome::Skip {
                params,
                reason: BUDGET_SKIP.into(),
            },
        });
    }
}

fn k_values(n: usize, cfg: &CheckConfig) -> std::ops::RangeInclusive<usize> {
    3..=n.min(cfg.k_max)
}

/// Evaluates one check on one corpus graph. Solver resource errors turn into
/// a skipped instance; anything else aborts the run.
pub(crate) fn evaluate(
    check: CheckId,
    cg: &CorpusGraph,
    cfg: &CheckConfig,
) -> Result<Vec<Outcome>> {
    let mut out = Out { items: Vec::new() };
    match run(check, cg, cfg, &mut out) {
        Ok(()) => Ok(out.items),
        Err(e @ (Error::Resource(_) | Error::Overflow { .. })) => {
            out.items.push(Outcome::Skip {
                params: String::new(),
                reason: e.to_string(),
            });
            Ok(out.items)
        }
        Err(e) => Err(e),
    }
}

fn run(check: CheckId, cg: &CorpusGraph, cfg: &CheckConfig, out: &mut Out) -> Result<()> {
    let g = &cg.graph;
    let n = g.n();
    let b = &cfg.budget;
    match check {
        CheckId::Thm2KappaComplete | CheckId::Thm3LambdaComplete => {
            if n < 2 || !g.is_complete() {
                return Ok(());
            }
            let mode = if check == CheckId::Thm2KappaComplete {
                Mode::InternallyDisjoint
            } else {
                Mode::EdgeDisjoint
            };
            for k in 2..=n.min(cfg.k_max) {
                let want = n - k.div_ceil(2);
                let v = gen(g, k, mode, want + 1, b)?;
                out.record(v.equals(want), format!("n={n} k={k}"), v, format!("{want}"));
            }
        }
        CheckId::Prop1Prop2Range => {
            if !g.is_connected() {
                return Ok(());
            }
            for k in k_values(n, cfg) {
                let upper = n - k.div_ceil(2);
                for mode in [Mode::InternallyDisjoint, Mode::EdgeDisjoint] {
                    let v = gen(g, k, mode, upper + 1, b)?;
                    let ok = match (v.at_least(1), v.at_most(upper)) {
                        (Some(false), _) | (_, Some(false)) => Some(false),
                        (Some(true), Some(true)) => Some(true),
                        _ => None,
                    };
                    out.record(
                        ok,
                        format!("{}_{k}", mode_param(mode)),
                        v,
                        format!("in [1, {upper}]"),
                    );
                }
            }
        }
        CheckId::Obs1Chain => {
            if !g.is_connected() {
                return Ok(());
            }
            let delta = g.min_degree();
            for k in k_values(n, cfg) {
                let lam = gen(g, k, Mode::EdgeDisjoint, delta + 1, b)?;
                let kap = gen(g, k, Mode::InternallyDisjoint, lam.lo + 1, b)?;
                let ok = match (le(kap, lam), lam.at_most(delta)) {
                    (Some(false), _) | (_, Some(false)) => Some(false),
                    (Some(true), Some(true)) => Some(true),
                    _ => None,
                };
                out.record(
                    ok,
                    format!("k={k}"),
                    format!("kappa_k={kap} lambda_k={lam} delta={delta}"),
                    "kappa_k <= lambda_k <= delta",
                );
            }
        }
        CheckId::Obs2Monotone => {
            if !g.is_connected() {
                return Ok(());
            }
            for k in k_values(n, cfg) {
                for mode in [Mode::InternallyDisjoint, Mode::EdgeDisjoint] {
                    let whole = gen(g, k, mode, usize::MAX, b)?;
                    for &(u, v) in g.edges() {
                        let mut e = EdgeSet::new();
                        e.insert(u, v);
                        let h = g.delete_edges(&e)?;
                        let sub = gen(&h, k, mode, whole.lo + 1, b)?;
                        out.record(
                            le(sub, whole),
                            format!("{}_{k} minus {u}-{v}", mode_param(mode)),
                            format!("{sub} vs {whole}"),
                            "subgraph value <= graph value",
                        );
                    }
                }
            }
        }
        CheckId::Obs3Product => {
            if n < 3 {
                return Ok(());
            }
            let gc = g.complement();
            let split = !g.is_connected() || !gc.is_connected();
            for k in k_values(n, cfg) {
                let a = gen(g, k, Mode::InternallyDisjoint, 1, b)?;
                let c = gen(&gc, k, Mode::InternallyDisjoint, 1, b)?;
                let zero = match (a.lo, c.lo) {
                    (0, _) if a.exact => Some(true),
                    (_, 0) if c.exact => Some(true),
                    _ if a.lo >= 1 && c.lo >= 1 => Some(false),
                    _ => None,
                };
                out.record(
                    zero.map(|z| z == split),
                    format!("k={k}"),
                    format!("product zero: {zero:?}, G or complement disconnected: {split}"),
                    "product is zero exactly when G or its complement is disconnected",
                );
            }
        }
        CheckId::Thm4Thm5Characterization => {
            if n < 3 || !g.is_complete() {
                return Ok(());
            }
            let all = g.edges().to_vec();
            for k in k_values(n, cfg) {
                let want = n - k.div_ceil(2);
                for size in 0..=(k.div_ceil(2) + 1).min(all.len()) {
                    edge_subsets(&all, size, &mut |m| {
                        let set: EdgeSet = m.iter().copied().collect();
                        let h = complete_minus(n, &set)?;
                        if !h.is_connected() {
                            return Ok(());
                        }
                        let expect = if k % 2 == 0 {
                            m.is_empty()
                        } else {
                            m.len() <= (k - 1) / 2
                        };
                        for mode in [Mode::InternallyDisjoint, Mode::EdgeDisjoint] {
                            let v = gen(&h, k, mode, want + 1, b)?;
                            let ok = v.equals(want).map(|eq| eq == expect);
                            let relation = if expect { "=" } else { "<" };
                            out.record(
                                ok,
                                format!("{}_{k} M={}", mode_param(mode), edges_label(m)),
                                v,
                                format!("{relation} {want}"),
                            );
                        }
                        Ok(())
                    })?;
                }
            }
        }
        CheckId::Lemma5Lemma6Strict => {
            if n < 3 || !g.is_complete() {
                return Ok(());
            }
            let all = g.edges().to_vec();
            for k in k_values(n, cfg) {
                let (size, want) = if k % 2 == 0 {
                    (1, n - k / 2)
                } else {
                    (k.div_ceil(2), n - k.div_ceil(2))
                };
                if size > all.len() {
                    continue;
                }
                edge_subsets(&all, size, &mut |m| {
                    let set: EdgeSet = m.iter().copied().collect();
                    let h = complete_minus(n, &set)?;
                    let v = gen(&h, k, Mode::EdgeDisjoint, want, b)?;
                    let ok = if v.lo >= want {
                        Some(false)
                    } else {
                        v.exact.then_some(true)
                    };
                    out.record(
                        ok,
                        format!("k={k} M={}", edges_label(m)),
                        v,
                        format!("< {want}"),
                    );
                    Ok(())
                })?;
            }
        }
        CheckId::Lemma7Packing => {
            if n < 3 || n.is_multiple_of(2) || !g.is_complete() {
                return Ok(());
            }
            let want = (n - 1) / 2;
            edge_subsets(g.edges(), want, &mut |m| {
                let set: EdgeSet = m.iter().copied().collect();
                let h = complete_minus(n, &set)?;
                let v = spanning(&h, want, b)?;
                out.record(
                    v.at_least(want),
                    format!("M={}", edges_label(m)),
                    v,
                    format!(">= {want}"),
                );
                Ok(())
            })?;
        }
        CheckId::Thm6NordhausGaddum => {
            let gc = g.complement();
            for k in k_values(n, cfg) {
                let bound = n - k.div_ceil(2);
                let a = gen(g, k, Mode::InternallyDisjoint, usize::MAX, b)?;
                let c = gen(&gc, k, Mode::InternallyDisjoint, usize::MAX, b)?;
                let both = a.exact && c.exact;
                let sum = a.lo + c.lo;
                let sum_ok = if sum > bound {
                    Some(false)
                } else if sum >= 1 {
                    both.then_some(true)
                } else {
                    both.then_some(false)
                };
                out.record(
                    sum_ok,
                    format!("k={k} sum"),
                    format!("{a} + {c}"),
                    format!("in [1, {bound}]"),
                );
                let prod_ok = if 4 * a.lo * c.lo > bound * bound {
                    Some(false)
                } else {
                    both.then_some(true)
                };
                out.record(
                    prod_ok,
                    format!("k={k} product"),
                    format!("{a} * {c}"),
                    format!("4 * product <= {}", bound * bound),
                );
            }
        }
        CheckId::Prop3Upper => {
            if !g.is_connected() {
                return Ok(());
            }
            let lam = edge_connectivity(g).value;
            for k in k_values(n, cfg) {
                let v = gen(g, k, Mode::EdgeDisjoint, lam + 1, b)?;
                out.record(
                    v.at_most(lam),
                    format!("k={k}"),
                    v,
                    format!("<= lambda = {lam}"),
                );
            }
        }
        CheckId::Prop4Lower => {
            if n < 3 || !g.is_connected() {
                return Ok(());
            }
            let lam = edge_connectivity(g).value;
            let (s, r) = (lam / 4, lam % 4);
            let want = 3 * s + r.div_ceil(2);
            let v = gen(g, 3, Mode::EdgeDisjoint, want, b)?;
            out.record(
                v.at_least(want),
                format!("lambda={lam}"),
                v,
                format!(">= {want}"),
            );
        }
        CheckId::PlanarCorollary => {
            if n < 3 || !g.is_connected() || !cg.family.as_ref().is_some_and(known_planar) {
                return Ok(());
            }
            let lam = edge_connectivity(g).value;
            let v = gen(g, 3, Mode::EdgeDisjoint, lam + 1, b)?;
            let ok = match (v.at_least(lam.saturating_sub(1)), v.at_most(lam)) {
                (Some(false), _) | (_, Some(false)) => Some(false),
                (Some(true), Some(true)) => Some(true),
                _ => None,
            };
            out.record(
                ok,
                format!("lambda={lam}"),
                v,
                format!("in [{}, {lam}]", lam.saturating_sub(1)),
            );
        }
        CheckId::Lemma1Kriesell => {
            for s in triples(n) {
                let ell = min_pair_edge_connectivity(g, &s);
                let ts: Vec<usize> = (1..=3).filter(|t| ell >= (8 * t + 3) / 6).collect();
                let Some(&top) = ts.last() else { continue };
                let v = local(g, &s, Mode::EdgeDisjoint, top, b)?;
                for t in ts {
                    out.record(
                        v.at_least(t),
                        format!("S={s:?} t={t} pairwise={ell}"),
                        v,
                        format!(">= {t}"),
                    );
                }
            }
        }
        CheckId::Lemma2Linegraph => {
            if g.m() == 0 || !g.is_connected() {
                return Ok(());
            }
            let lam = edge_connectivity(g).value;
            let (l, _) = g.line_graph();
            if lam >= 2 {
                let kl = vertex_connectivity(&l).value;
                out.record(
                    Some(kl >= lam),
                    "part 1",
                    format!("kappa(L)={kl}"),
                    format!(">= {lam}"),
                );
            }
            let ll = edge_connectivity(&l).value;
            let want = (2 * lam).saturating_sub(2);
            out.record(
                Some(ll >= want),
                "part 2",
                format!("lambda(L)={ll}"),
                format!(">= {want}"),
            );
            if n <= 5 {
                let (l2, _) = l.line_graph();
                let kg = vertex_connectivity(g).value;
                let k2 = vertex_connectivity(&l2).value;
                let want = (2 * kg).saturating_sub(2);
                out.record(
                    Some(k2 >= want),
                    "part 3",
                    format!("kappa(L(L))={k2}"),
                    format!(">= {want}"),
                );
            }
        }
        CheckId::Lemma3BipartiteStp => {
            let Some((a, c)) = complete_bipartite_sides(g) else {
                return Ok(());
            };
            let want = a * c / (a + c - 1);
            match stp_number(g, b) {
                Ok(r) => {
                    let v = Val {
                        lo: r.value,
                        exact: r.is_exact(),
                    };
                    out.record(
                        v.equals(want),
                        format!("K_{{{a},{c}}}"),
                        v,
                        format!("{want}"),
                    );
                }
                Err(Error::Internal(msg)) => out.record(
                    Some(false),
                    format!("K_{{{a},{c}}}"),
                    msg,
                    "search value equal to the partition value",
                ),
                Err(e) => return Err(e),
            }
        }
        CheckId::Prop5Linegraph => {
            if g.m() < 3 || g.m() > cfg.max_edges || !g.is_connected() {
                return Ok(());
            }
            let (l, _) = g.line_graph();
            let t = gen(g, 3, Mode::EdgeDisjoint, usize::MAX, b)?;
            if !t.exact {
                out.record(None, "lambda_3(G)", t, "exact value");
                return Ok(());
            }
            let kl = gen(&l, 3, Mode::InternallyDisjoint, t.lo, b)?;
            out.record(
                kl.at_least(t.lo),
                "part 1",
                format!("kappa_3(L)={kl}"),
                format!(">= lambda_3(G) = {}", t.lo),
            );
            let want = ceil_div(3 * t.lo as i64 - 4, 2);
            if want <= 0 {
                out.record(Some(true), "part 2", "any", format!(">= {want}"));
            } else {
                let v = gen(&l, 3, Mode::EdgeDisjoint, want as usize, b)?;
                out.record(
                    v.at_least(want as usize),
                    "part 2",
                    format!("lambda_3(L)={v}"),
                    format!(">= {want}"),
                );
            }
            let c = gen(g, 3, Mode::InternallyDisjoint, usize::MAX, b)?;
            let want = ceil_div(3 * c.lo as i64 - 4, 2);
            if !c.exact {
                out.record(None, "part 3", format!("kappa_3(G)={c}"), "exact value");
            } else if want <= 0 {
                out.record(Some(true), "part 3", "any", format!(">= {want}"));
            } else {
                let (l2, _) = l.line_graph();
                let v = gen(&l2, 3, Mode::InternallyDisjoint, want as usize, b)?;
                out.record(
                    v.at_least(want as usize),
                    "part 3",
                    format!("kappa_3(L(L))={v}"),
                    format!(">= {want}"),
                );
            }
        }
        CheckId::IteratedLinegraph => {
            if g.m() < 3 || g.m() > cfg.max_edges || !g.is_connected() {
                return Ok(());
            }
            let c = gen(g, 3, Mode::InternallyDisjoint, usize::MAX, b)?;
            if !c.exact {
                out.record(None, "kappa_3(G)", c, "exact value");
                return Ok(());
            }
            let base = c.lo as i64 - 4;
            let mut line = g.clone();
            for power in 1..=2u32 {
                line = line.line_graph().0;
                if line.n() < 3 {
                    break;
                }
                let scale = 2i64.pow(power);
                let lam_want = ceil_div(3i64.pow(power) * base + 4 * scale, scale);
                let half = power / 2;
                let kap_want = ceil_div(3i64.pow(half) * base + 4 * 2i64.pow(half), 2i64.pow(half));
                for (mode, want) in [
                    (Mode::EdgeDisjoint, lam_want),
                    (Mode::InternallyDisjoint, kap_want),
                ] {
                    let params = format!("{}_3(L^{power})", mode_param(mode));
                    if want <= 0 {
                        out.record(Some(true), params, "any", format!(">= {want}"));
                        continue;
                    }
                    let v = gen(&line, 3, mode, want as usize, b)?;
                    out.record(v.at_least(want as usize), params, v, format!(">= {want}"));
                }
            }
        }
        CheckId::Corollary2Spanning => {
            if n < 2 || !g.is_connected() {
                return Ok(());
            }
            let lam = edge_connectivity(g).value;
            let ell = lam / 2;
            let v = spanning(g, ell, b)?;
            out.record(
                v.at_least(ell),
                format!("lambda={lam}"),
                v,
                format!(">= {ell}"),
            );
        }
        CheckId::Conjecture3Scan => {
            for s in triples(n) {
                let ell = min_pair_edge_connectivity(g, &s);
                let want = ell / 2;
                if want == 0 {
                    continue;
                }
                let v = local(g, &s, Mode::EdgeDisjoint, want, b)?;
                out.record(
                    v.at_least(want),
                    format!("S={s:?} pairwise={ell}"),
                    v,
                    format!(">= {want}"),
                );
            }
        }
        CheckId::FamilyDeclared => {
            let Some(spec) = &cg.family else {
                return Ok(());
            };
            let family = construct_family(spec)?;
            for (param, want) in family.declared {
                let (label, v) = match param {
                    Param::Kappa => (
                        "kappa".to_string(),
                        Val::exact(vertex_connectivity(g).value),
                    ),
                    Param::Lambda => ("lambda".to_string(), Val::exact(edge_connectivity(g).value)),
                    Param::MinDegree => ("delta".to_string(), Val::exact(g.min_degree())),
                    Param::KappaK(k) | Param::LambdaK(k) => {
                        let mode = if matches!(param, Param::KappaK(_)) {
                            Mode::InternallyDisjoint
                        } else {
                            Mode::EdgeDisjoint
                        };
                        if k < 2 || k > n {
                            continue;
                        }
                        (
                            format!("{}_{k}", mode_param(mode)),
                            gen(g, k, mode, want + 1, b)?,
                        )
                    }
                };
                out.record(v.equals(want), label, v, format!("{want}"));
            }
        }
        CheckId::Thm4Construction => {
            if n < 3 || !g.is_complete() {
                return Ok(());
            }
            for k in k_values(n, cfg).filter(|k| k % 2 == 1) {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                rng.set_stream(((n as u64) << 16) | k as u64);
                for trial in 0..cfg.trials {
                    let crossing = trial % 2 == 1 && n > k;
                    let (s, m) = construction_config(n, k, crossing, &mut rng);
                    let params = format!(
                        "k={k} S={s:?} M={} case={}",
                        edges_label(&m),
                        if crossing { 2 } else { 1 }
                    );
                    let want = n - k.div_ceil(2);
                    let set: EdgeSet = m.iter().copied().collect();
                    match theorem4_packing(n, k, &set, &s) {
                        Ok(p) => {
                            let check = verify_packing(&complete_minus(n, &set)?, &p);
                            let ok = check.valid
                                && p.trees.len() == want
                                && p.mode == Mode::InternallyDisjoint;
                            let computed = if check.valid {
                                format!("{} trees", p.trees.len())
                            } else {
                                check.problems.join("; ")
                            };
                            out.record(
                                Some(ok),
                                params,
                                computed,
                                format!("{want} verified trees"),
                            );
                        }
                        Err(e) => {
                            out.record(Some(false), params, e, format!("{want} verified trees"))
                        }
                    }
                }
            }
        }
        CheckId::Example3Tightness => {
            let Some(FamilySpec::Example3 { r }) = cg.family else {
                return Ok(());
            };
            let (g, gc) = example3_pair(r)?;
            let n = g.n();
            let top = n - n.div_ceil(2);
            let a = gen(&g, n, Mode::InternallyDisjoint, usize::MAX, b)?;
            let c = gen(&gc, n, Mode::InternallyDisjoint, usize::MAX, b)?;
            out.record(a.equals(r), "kappa_n(G)", a, format!("{r}"));
            out.record(c.equals(r), "kappa_n(complement)", c, format!("{r}"));
            let both = a.exact && c.exact;
            out.record(
                both.then_some(a.lo + c.lo == top),
                "sum",
                a.lo + c.lo,
                format!("{top}"),
            );
            out.record(
                both.then_some(4 * a.lo * c.lo == top * top),
                "4 * product",
                4 * a.lo * c.lo,
                format!("{}", top * top),
            );
        }
    }
    Ok(())
}

/// Random `(S, M)` for the constructive packing, `|M| = (k−1)/2`. With
/// `crossing` set, at least one edge of `M` joins `S` to its complement;
/// otherwise none does.
fn construction_config(
    n: usize,
    k: usize,
    crossing: bool,
    rng: &mut ChaCha8Rng,
) -> (Vec<usize>, Vec<Edge>) {
    let mut s = sample(rng, n, k).into_vec();
    s.sort_unstable();
    let in_s = |v: usize| s.contains(&v);
    let pairs: Vec<Edge> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let (cross, same): (Vec<Edge>, Vec<Edge>) =
        pairs.iter().partition(|&&(u, v)| in_s(u) != in_s(v));
    let size = (k - 1) / 2;
    let mut m: Vec<Edge> = Vec::new();
    if crossing {
        m.push(cross[rng.gen_range(0..cross.len())]);
        let rest: Vec<Edge> = pairs.iter().copied().filter(|e| !m.contains(e)).collect();
        m.extend(
            sample(rng, rest.len(), size - 1)
                .into_iter()
                .map(|i| rest[i]),
        );
    } else {
        m.extend(sample(rng, same.len(), size).into_iter().map(|i| same[i]));
    }
    m.iter_mut().for_each(|e| *e = normalize(e.0, e.1));
    m.sort_unstable();
    (s, m)
}

/// Side sizes `(a, b)`, `a <= b`, if `g` is a complete bipartite graph.
fn complete_bipartite_sides(g: &Graph) -> Option<(usize, usize)> {
    if g.n() < 2 || !g.is_connected() {
        return None;
    }
    let mut side = vec![usize::MAX; g.n()];
    side[0] = 0;
    let mut queue = vec![0];
    while let Some(v) = queue.pop() {
        for &w in g.neighbors(v) {
            if side[w] == usize::MAX {
                side[w] = 1 - side[v];
                queue.push(w);
            } else if side[w] == side[v] {
                return None;
            }
        }
    }
    let a = side.iter().filter(|&&s| s == 0).count();
    let c = g.n() - a;
    (g.m() == a * c).then_some((a.min(c), a.max(c)))
}

/// Families whose members are all planar.
fn known_planar(f: &FamilySpec) -> bool {
    match *f {
        FamilySpec::Planar(Planar::Grid { .. } | Planar::Wheel { .. } | Planar::Prism { .. }) => {
            true
        }
        FamilySpec::Path { .. }
        | FamilySpec::Cycle { .. }
        | FamilySpec::Star { .. }
        | FamilySpec::HGraph { .. } => true,
        FamilySpec::Complete { n } => n <= 4,
        FamilySpec::CompleteBipartite { a, b } => a.min(b) <= 2,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_values_compare_conservatively() {
        let lower = Val {
            lo: 3,
            exact: false,
        };
        assert_eq!(lower.at_least(3), Some(true));
        assert_eq!(lower.at_least(4), None);
        assert_eq!(Val::exact(2).at_least(4), Some(false));
        assert_eq!(lower.at_most(2), Some(false));
        assert_eq!(lower.at_most(5), None);
        assert_eq!(le(Val::exact(2), lower), Some(true));
        assert_eq!(le(lower, Val::exact(2)), Some(false));
        assert_eq!(ceil_div(-1, 2), 0);
        assert_eq!(ceil_div(5, 2), 3);
        assert_eq!(ceil_div(-4, 2), -2);
    }

    #[test]
    fn detects_complete_bipartite() {
        assert_eq!(
            complete_bipartite_sides(&crate::constructions::complete_bipartite(3, 2)),
            Some((2, 3))
        );
        assert_eq!(complete_bipartite_sides(&Graph::complete(3)), None);
        assert_eq!(
            complete_bipartite_sides(&crate::constructions::path(4)),
            None
        );
    }

    #[test]
    fn construction_configs_hit_both_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for crossing in [false, true] {
            let (s, m) = construction_config(8, 5, crossing, &mut rng);
            assert_eq!((s.len(), m.len()), (5, 2));
            let crosses = m.iter().any(|&(u, v)| s.contains(&u) != s.contains(&v));
            assert_eq!(crosses, crossing);
        }
    }
}
