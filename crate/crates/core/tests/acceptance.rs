//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.
//!
//! Closed-form values and edge-set enumerations are computed in this file;
//! the corpus sweeps go through the check suite.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use genconn::classical::{edge_connectivity, vertex_connectivity};
use genconn::constructions::{
    complete_bipartite, example3_pair, figure2_family, h_graph, join_family,
};
use genconn::steiner::{
    generalized_connectivity_with, max_tree_packing, stp_number, tutte_partition_number, Budget,
    Certificate, ConnectivityResult, Mode,
};
use genconn::suite::{run_check, CheckConfig, CheckId, CorpusSpec, Verdict, VerificationReport};
use genconn::{EdgeSet, Graph};

/// What a criterion produced: failures found and a byte artifact for the
/// determinism comparison.
#[derive(Default)]
struct Run {
    problems: Vec<String>,
    artifact: String,
    summary: String,
}

impl Run {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.problems.push(what());
        }
    }

    fn record(&mut self, r: &ConnectivityResult) {
        self.artifact.push_str(&serde_json::to_string(r).unwrap());
        self.artifact.push('\n');
    }

    /// Runs a suite check, records its report and requires `want`.
    fn check(
        &mut self,
        check: &str,
        corpus: &str,
        cfg: &CheckConfig,
        want: Verdict,
    ) -> VerificationReport {
        let spec: CorpusSpec = corpus.parse().unwrap();
        let report = run_check(check.parse::<CheckId>().unwrap(), &spec, cfg).unwrap();
        self.artifact.push_str(&report.to_json());
        self.expect(
            report.verdict == want && report.failed == 0 && report.skipped == 0,
            || {
                format!(
                    "{check} on {corpus}: {:?}, {} failed, {} skipped, first counterexample {:?}",
                    report.verdict,
                    report.failed,
                    report.skipped,
                    report.counterexamples.first()
                )
            },
        );
        self.summary
            .push_str(&format!("{check} {}/{}; ", report.passed, report.evaluated));
        report
    }
}

fn budget(threads: usize) -> Budget {
    Budget {
        threads,
        ..Budget::default()
    }
}

fn config(threads: usize, k_max: usize) -> CheckConfig {
    CheckConfig {
        budget: budget(threads),
        k_max,
        ..CheckConfig::default()
    }
}

fn exact(g: &Graph, k: usize, mode: Mode, threads: usize, run: &mut Run) -> Option<usize> {
    let r = generalized_connectivity_with(g, k, mode, &budget(threads)).unwrap();
    run.record(&r);
    let check = Certificate::from(&r).check(g);
    run.expect(check.valid, || {
        format!("certificate rejected: {:?}", check.problems)
    });
    run.expect(r.is_exact(), || {
        format!("{mode} k={k} on n={} not exact (>= {})", g.n(), r.value)
    });
    r.is_exact().then_some(r.value)
}

fn families(members: impl IntoIterator<Item = String>) -> String {
    format!(
        "families:{}",
        members.into_iter().collect::<Vec<_>>().join(";")
    )
}

fn complete_graphs(threads: usize) -> Run {
    let mut run = Run::default();
    for n in 2..=7 {
        let g = Graph::complete(n);
        for k in 2..=n {
            let want = n - k.div_ceil(2);
            for mode in [Mode::InternallyDisjoint, Mode::EdgeDisjoint] {
                let got = exact(&g, k, mode, threads, &mut run);
                run.expect(got == Some(want), || {
                    format!("{mode} k={k} of K_{n}: {got:?}, want {want}")
                });
            }
        }
    }
    let corpus = families((2..=7).map(|n| format!("complete(n={n})")));
    run.check(
        "thm2_kappa_complete",
        &corpus,
        &config(threads, 7),
        Verdict::Pass,
    );
    run.check(
        "thm3_lambda_complete",
        &corpus,
        &config(threads, 7),
        Verdict::Pass,
    );
    run
}

fn bipartite_stp(threads: usize) -> Run {
    let mut run = Run::default();
    let mut members = Vec::new();
    for a in 2..=5 {
        for b in a..=5 {
            let g = complete_bipartite(a, b);
            let want = a * b / (a + b - 1);
            let r = stp_number(&g, &budget(threads)).unwrap();
            run.record(&r);
            let (tutte, _) = tutte_partition_number(&g, 12).unwrap();
            run.expect(r.is_exact() && r.value == want, || {
                format!("STP(K_{a},{b}) = {}, want {want}", r.value)
            });
            run.expect(tutte == r.value, || {
                format!("K_{a},{b}: packing {} but partition {tutte}", r.value)
            });
            members.push(format!("complete_bipartite(a={a},b={b})"));
        }
    }
    run.check(
        "lemma3_bipartite_stp",
        &families(members),
        &config(threads, 5),
        Verdict::Pass,
    );
    run
}

fn k6_minus_edges(threads: usize) -> Run {
    let mut run = Run::default();
    let all: Vec<(usize, usize)> = Graph::complete(6).edges().to_vec();
    let mut sets = 0;
    for mask in 0u32..1 << all.len() {
        let size = mask.count_ones() as usize;
        if size > 3 {
            continue;
        }
        let mut m = EdgeSet::new();
        for (i, &(u, v)) in all.iter().enumerate() {
            if mask >> i & 1 == 1 {
                m.insert(u, v);
            }
        }
        let g = Graph::complete(6).delete_edges(&m).unwrap();
        let got = exact(&g, 3, Mode::EdgeDisjoint, threads, &mut run);
        run.expect((got == Some(4)) == (size <= 1), || {
            format!("K_6 minus {m:?}: λ_3 = {got:?}")
        });
        sets += 1;
    }
    run.expect(sets == 576, || {
        format!("enumerated {sets} edge sets, want 576")
    });
    run.check(
        "thm4_thm5_characterization",
        "families:complete(n=6)",
        &config(threads, 3),
        Verdict::Pass,
    );
    run
}

fn constructive_packing(threads: usize) -> Run {
    let mut run = Run::default();
    let corpus = families((3..=9).map(|n| format!("complete(n={n})")));
    let report = run.check(
        "thm4_construction",
        &corpus,
        &config(threads, 5),
        Verdict::Pass,
    );
    // n = 3..9 with k = 3 and n = 5..9 with k = 5, 50 trials each
    run.expect(report.evaluated == 12 * 50, || {
        format!("{} configurations, want 600", report.evaluated)
    });
    run
}

fn figure2(threads: usize) -> Run {
    let mut run = Run::default();
    for r in 0..=3 {
        let g = figure2_family(1, r).unwrap();
        let lambda = edge_connectivity(&g).value;
        run.expect(lambda == 4 + r, || {
            format!("r={r}: λ = {lambda}, want {}", 4 + r)
        });
        let want = 3 + r.div_ceil(2);
        let got = exact(&g, 3, Mode::EdgeDisjoint, threads, &mut run);
        run.expect(got == Some(want), || {
            format!("r={r}: λ_3 = {got:?}, want {want}")
        });
        let uvw = max_tree_packing(&g, &[0, 1, 2], Mode::EdgeDisjoint, &budget(threads)).unwrap();
        run.record(&uvw);
        run.expect(uvw.is_exact() && uvw.value == want, || {
            format!("r={r}: λ(u,v,w) = {}", uvw.value)
        });
    }
    run
}

fn named_families(threads: usize) -> Run {
    let mut run = Run::default();
    for t in 1..=3 {
        let g = h_graph(t).unwrap();
        let lambda = edge_connectivity(&g).value;
        run.expect(lambda == 3, || format!("h_graph({t}): λ = {lambda}"));
        let got = exact(&g, 3, Mode::EdgeDisjoint, threads, &mut run);
        run.expect(got == Some(2), || format!("h_graph({t}): λ_3 = {got:?}"));
    }
    let g = join_family(3, 9).unwrap();
    let values = [
        exact(&g, 3, Mode::InternallyDisjoint, threads, &mut run),
        exact(&g, 3, Mode::EdgeDisjoint, threads, &mut run),
        Some(vertex_connectivity(&g).value),
        Some(edge_connectivity(&g).value),
        Some(g.min_degree()),
    ];
    run.expect(values.iter().all(|&v| v == Some(3)), || {
        format!("join_family(3,9): {values:?}")
    });
    run
}

fn example3(threads: usize) -> Run {
    let mut run = Run::default();
    let (g, gc) = example3_pair(1).unwrap();
    run.expect(g.n() == 5 && gc == g.complement(), || {
        "pair is not complementary on 5 vertices".into()
    });
    let a = exact(&g, 5, Mode::InternallyDisjoint, threads, &mut run);
    let b = exact(&gc, 5, Mode::InternallyDisjoint, threads, &mut run);
    let n = g.n();
    run.expect(a == Some(1) && b == Some(1), || {
        format!("κ_5 = {a:?}, {b:?}")
    });
    if let (Some(a), Some(b)) = (a, b) {
        run.expect(a + b == n - n.div_ceil(2) && a * b == 1, || {
            format!("sum {} product {}", a + b, a * b)
        });
    }
    run.check(
        "example3_tightness",
        "families:example3_pair(r=1)",
        &config(threads, 5),
        Verdict::Pass,
    );
    run
}

fn inequality_sweep(threads: usize) -> Run {
    let mut run = Run::default();
    let cfg = config(threads, 3);
    for check in [
        "obs1_chain",
        "prop1_prop2_range",
        "prop3_upper",
        "prop4_lower",
        "thm6_nordhaus_gaddum",
        "corollary2_spanning",
    ] {
        let report = run.check(check, "atlas:7", &cfg, Verdict::Pass);
        run.expect(report.corpus_size >= 995, || {
            format!("atlas holds {} graphs", report.corpus_size)
        });
    }
    run
}

fn line_graph_sweep(threads: usize) -> Run {
    let mut run = Run::default();
    let report = run.check(
        "prop5_linegraph",
        "connected-edges:9",
        &config(threads, 3),
        Verdict::Pass,
    );
    run.expect(report.corpus_size == 1068, || {
        format!("{} graphs with at most 9 edges", report.corpus_size)
    });
    run
}

fn kriesell(threads: usize) -> Run {
    let mut run = Run::default();
    run.check(
        "lemma1_kriesell",
        "atlas:7",
        &config(threads, 3),
        Verdict::Pass,
    );
    run
}

fn conjecture_scan(threads: usize) -> Run {
    let mut run = Run::default();
    let report = run.check(
        "conjecture3_scan",
        "random:8,0.5,100,1",
        &config(threads, 3),
        Verdict::NoCounterexampleFound,
    );
    run.expect(
        report.report_only && report.verdict != Verdict::Pass,
        || "scan claimed a pass".into(),
    );
    run
}

struct Criterion {
    id: usize,
    name: &'static str,
    limit: Duration,
    run: fn(usize) -> Run,
}

const fn minutes(m: u64) -> Duration {
    Duration::from_secs(60 * m)
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        name: "κ_k and λ_k of K_n, n ≤ 7",
        limit: minutes(2),
        run: complete_graphs,
    },
    Criterion {
        id: 2,
        name: "STP of K_{a,b}, a ≤ b ≤ 5",
        limit: minutes(1),
        run: bipartite_stp,
    },
    Criterion {
        id: 3,
        name: "λ_3 of K_6 minus up to 3 edges",
        limit: minutes(5),
        run: k6_minus_edges,
    },
    Criterion {
        id: 4,
        name: "constructive K_n minus M packings",
        limit: minutes(2),
        run: constructive_packing,
    },
    Criterion {
        id: 5,
        name: "figure-2 family, s = 1",
        limit: minutes(15),
        run: figure2,
    },
    Criterion {
        id: 6,
        name: "h_graph and join_family values",
        limit: minutes(2),
        run: named_families,
    },
    Criterion {
        id: 7,
        name: "complementary pair on 5 vertices",
        limit: minutes(1),
        run: example3,
    },
    Criterion {
        id: 8,
        name: "inequality sweep over the n ≤ 7 atlas",
        limit: minutes(30),
        run: inequality_sweep,
    },
    Criterion {
        id: 9,
        name: "line-graph sweep, at most 9 edges",
        limit: minutes(30),
        run: line_graph_sweep,
    },
    Criterion {
        id: 10,
        name: "pairwise-connectivity triples",
        limit: minutes(10),
        run: kriesell,
    },
    Criterion {
        id: 11,
        name: "open-conjecture scan",
        limit: minutes(5),
        run: conjecture_scan,
    },
];

fn line(id: usize, ok: bool, name: &str, detail: &str) {
    println!(
        "criterion {id:>2}  {}  {name}  ({detail})",
        if ok { "PASS" } else { "FAIL" }
    );
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut artifacts = Vec::new();
    for c in CRITERIA {
        let start = Instant::now();
        let mut run = (c.run)(1);
        let elapsed = start.elapsed();
        run.expect(elapsed <= c.limit, || {
            format!("took {elapsed:.1?}, limit {:?}", c.limit)
        });
        let ok = run.problems.is_empty();
        let detail = if ok {
            format!("{}{elapsed:.1?}", run.summary)
        } else {
            run.problems
                .iter()
                .take(3)
                .cloned()
                .collect::<Vec<_>>()
                .join("; ")
        };
        line(c.id, ok, c.name, &detail);
        failed += usize::from(!ok);
        artifacts.push(run.artifact);
    }

    let start = Instant::now();
    let differing: Vec<usize> = CRITERIA
        .iter()
        .zip(&artifacts)
        .filter(|(c, single)| (c.run)(4).artifact != **single)
        .map(|(c, _)| c.id)
        .collect();
    let ok = differing.is_empty();
    let detail = if ok {
        format!("criteria 1-11 byte-identical, {:.1?}", start.elapsed())
    } else {
        format!("output differs for criteria {differing:?}")
    };
    line(12, ok, "4 threads reproduce 1-thread output", &detail);
    failed += usize::from(!ok);

    println!("acceptance: {} of 12 criteria passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
