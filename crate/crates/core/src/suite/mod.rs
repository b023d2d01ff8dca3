//! Named property checks run over graph corpora.
//!
//! A check turns each corpus graph into zero or more instances. An instance
//! passes, fails with a replayable counterexample, or is skipped because a
//! search budget ran out before the answer was decided. Skips are never
//! counted as passes.

mod checks;

use std::fmt::{self, Write as _};
use std::path::PathBuf;
use std::str::FromStr;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::atlas::{bundled_connected, connected_by_size};
use crate::constructions::{construct_family, random_graph, FamilySpec};
use crate::error::{Error, Result};
use crate::format::{parse_graph, parse_graph6_lines, to_graph6, Format};
use crate::graph::Graph;
use crate::steiner::Budget;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckId {
    Thm2KappaComplete,
    Thm3LambdaComplete,
    Prop1Prop2Range,
    Obs1Chain,
    Obs2Monotone,
    Obs3Product,
    Thm4Thm5Characterization,
    Lemma5Lemma6Strict,
    Lemma7Packing,
    Thm6NordhausGaddum,
    Prop3Upper,
    Prop4Lower,
    PlanarCorollary,
    Lemma1Kriesell,
    Lemma2Linegraph,
    Lemma3BipartiteStp,
    Prop5Linegraph,
    IteratedLinegraph,
    Corollary2Spanning,
    Conjecture3Scan,
    /// Declared parameters of named families match computed values.
    FamilyDeclared,
    /// The constructive `K_n ∖ M` packing on seeded `(M, S)` configurations.
    Thm4Construction,
    /// `κ_n(G) = κ_n(Ḡ) = r` for the `n = 4r + 1` complementary pair.
    Example3Tightness,
}

impl CheckId {
    pub const ALL: &'static [CheckId] = &[
        CheckId::Thm2KappaComplete,
        CheckId::Thm3LambdaComplete,
        CheckId::Prop1Prop2Range,
        CheckId::Obs1Chain,
        CheckId::Obs2Monotone,
        CheckId::Obs3Product,
        CheckId::Thm4Thm5Characterization,
        CheckId::Lemma5Lemma6Strict,
        CheckId::Lemma7Packing,
        CheckId::Thm6NordhausGaddum,
        CheckId::Prop3Upper,
        CheckId::Prop4Lower,
        CheckId::PlanarCorollary,
        CheckId::Lemma1Kriesell,
        CheckId::Lemma2Linegraph,
        CheckId::Lemma3BipartiteStp,
        CheckId::Prop5Linegraph,
        CheckId::IteratedLinegraph,
        CheckId::Corollary2Spanning,
        CheckId::Conjecture3Scan,
        CheckId::FamilyDeclared,
        CheckId::Thm4Construction,
        CheckId::Example3Tightness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::Thm2KappaComplete => "thm2_kappa_complete",
            CheckId::Thm3LambdaComplete => "thm3_lambda_complete",
            CheckId::Prop1Prop2Range => "prop1_prop2_range",
            CheckId::Obs1Chain => "obs1_chain",
            CheckId::Obs2Monotone => "obs2_monotone",
            CheckId::Obs3Product => "obs3_product",
            CheckId::Thm4Thm5Characterization => "thm4_thm5_characterization",
            CheckId::Lemma5Lemma6Strict => "lemma5_lemma6_strict",
            CheckId::Lemma7Packing => "lemma7_packing",
            CheckId::Thm6NordhausGaddum => "thm6_nordhaus_gaddum",
            CheckId::Prop3Upper => "prop3_upper",
            CheckId::Prop4Lower => "prop4_lower",
            CheckId::PlanarCorollary => "planar_corollary",
            CheckId::Lemma1Kriesell => "lemma1_kriesell",
            CheckId::Lemma2Linegraph => "lemma2_linegraph",
            CheckId::Lemma3BipartiteStp => "lemma3_bipartite_stp",
            CheckId::Prop5Linegraph => "prop5_linegraph",
            CheckId::IteratedLinegraph => "iterated_linegraph",
            CheckId::Corollary2Spanning => "corollary2_spanning",
            CheckId::Conjecture3Scan => "conjecture3_scan",
            CheckId::FamilyDeclared => "family_declared",
            CheckId::Thm4Construction => "thm4_construction",
            CheckId::Example3Tightness => "example3_tightness",
        }
    }

    /// Scans for counterexamples to an open statement; never reports a pass.
    pub fn report_only(self) -> bool {
        self == CheckId::Conjecture3Scan
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .iter()
            .copied()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = CheckId::ALL.iter().map(|c| c.name()).collect();
                Error::arg(format!(
                    "unknown check `{s}`; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

/// Where corpus graphs come from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum CorpusSpec {
    /// The bundled connected graphs up to order `max_n` (at most 7).
    Atlas {
        max_n: usize,
    },
    /// A graph6 file, one graph per line.
    AtlasFile {
        path: PathBuf,
        max_n: usize,
    },
    Random {
        n: usize,
        p: f64,
        trials: usize,
        seed: u64,
    },
    Families {
        members: Vec<FamilySpec>,
    },
    /// Every connected graph with at most `max_edges` edges, up to isomorphism.
    ConnectedEdges {
        max_edges: usize,
    },
    /// Graphs read from a file (graph6 lines, or a single edge list).
    File {
        path: PathBuf,
    },
    #[serde(skip)]
    Explicit {
        graphs: Vec<Graph>,
    },
}

impl fmt::Display for CorpusSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorpusSpec::Atlas { max_n } => write!(f, "atlas:{max_n}"),
            CorpusSpec::AtlasFile { path, max_n } => {
                write!(f, "atlas-file:{}:{max_n}", path.display())
            }
            CorpusSpec::Random { n, p, trials, seed } => {
                write!(f, "random:{n},{p},{trials},{seed}")
            }
            CorpusSpec::Families { members } => {
                let names: Vec<String> = members.iter().map(ToString::to_string).collect();
                write!(f, "families:{}", names.join(";"))
            }
            CorpusSpec::ConnectedEdges { max_edges } => write!(f, "connected-edges:{max_edges}"),
            CorpusSpec::File { path } => write!(f, "file:{}", path.display()),
            CorpusSpec::Explicit { graphs } => write!(f, "explicit:{}", graphs.len()),
        }
    }
}

impl FromStr for CorpusSpec {
    type Err = Error;

    /// `atlas:7`, `atlas-file:PATH[:MAX_N]`, `random:N,P,TRIALS,SEED`,
    /// `families:h_graph(t=1);cycle(n=5)`, `connected-edges:9`, `file:PATH`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::arg(format!("corpus `{s}` must look like kind:arguments")))?;
        let int = |v: &str| -> Result<usize> {
            v.trim()
                .parse()
                .map_err(|_| Error::arg(format!("`{v}` is not a nonnegative integer")))
        };
        match kind {
            "atlas" => Ok(CorpusSpec::Atlas { max_n: int(rest)? }),
            "atlas-file" => {
                let (path, max_n) = match rest.rsplit_once(':') {
                    Some((p, m)) if m.trim().parse::<usize>().is_ok() => (p, int(m)?),
                    _ => (rest, usize::MAX),
                };
                Ok(CorpusSpec::AtlasFile {
                    path: path.into(),
                    max_n,
                })
            }
            "random" => {
                let parts: Vec<&str> = rest.split(',').collect();
                let [n, p, trials, seed] = parts[..] else {
                    return Err(Error::arg("random corpus needs N,P,TRIALS,SEED"));
                };
                Ok(CorpusSpec::Random {
                    n: int(n)?,
                    p: p.trim().parse().map_err(|_| Error::arg(format!("`{p}` is not a probability")))?,
                    trials: int(trials)?,
                    seed: seed.trim().parse().map_err(|_| Error::arg(format!("`{seed}` is not a seed")))?,
                })
            }
            "families" => {
                let mut members = Vec::new();
                for item in rest.split(';').map(str::trim).filter(|i| !i.is_empty()) {
                    let (name, args) = match item.split_once('(') {
                        Some((name, args)) => (name, args.strip_suffix(')').unwrap_or(args)),
                        None => (item, ""),
                    };
                    members.push(FamilySpec::parse(name.trim(), &[args.to_string()])?);
                }
                Ok(CorpusSpec::Families { members })
            }
            "connected-edges" => Ok(CorpusSpec::ConnectedEdges { max_edges: int(rest)? }),
            "file" => Ok(CorpusSpec::File { path: rest.into() }),
            other => Err(Error::arg(format!(
                "unknown corpus kind `{other}`; expected atlas, atlas-file, random, families, connected-edges or file"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusGraph {
    pub label: String,
    pub graph: Graph,
    pub family: Option<FamilySpec>,
}

/// Loads a corpus in its deterministic order (file, seed or parameter order).
pub fn load_corpus(spec: &CorpusSpec) -> Result<Vec<CorpusGraph>> {
    let plain = |label: String, graph: Graph| CorpusGraph {
        label,
        graph,
        family: None,
    };
    Ok(match spec {
        CorpusSpec::Atlas { max_n } => bundled_connected(*max_n)
            .into_iter()
            .enumerate()
            .map(|(i, g)| plain(format!("atlas#{i}"), g))
            .collect(),
        CorpusSpec::AtlasFile { path, max_n } => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            parse_graph6_lines(&text)?
                .into_iter()
                .enumerate()
                .filter(|(_, g)| g.n() <= *max_n)
                .map(|(i, g)| plain(format!("line {}", i + 1), g))
                .collect()
        }
        CorpusSpec::Random { n, p, trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            (0..*trials)
                .map(|i| {
                    Ok(plain(
                        format!("random#{i}"),
                        random_graph(*n, *p, rng.next_u64())?,
                    ))
                })
                .collect::<Result<_>>()?
        }
        CorpusSpec::Families { members } => members
            .iter()
            .map(|f| {
                Ok(CorpusGraph {
                    label: f.to_string(),
                    graph: construct_family(f)?.graph,
                    family: Some(f.clone()),
                })
            })
            .collect::<Result<_>>()?,
        CorpusSpec::ConnectedEdges { max_edges } => connected_by_size(*max_edges)?
            .into_iter()
            .enumerate()
            .map(|(i, g)| plain(format!("connected#{i}"), g))
            .collect(),
        CorpusSpec::File { path } => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let graphs = match Format::from_path(path) {
                Format::EdgeList => vec![parse_graph(&text, Format::EdgeList)?],
                _ => parse_graph6_lines(&text)?,
            };
            graphs
                .into_iter()
                .enumerate()
                .map(|(i, g)| plain(format!("line {}", i + 1), g))
                .collect()
        }
        CorpusSpec::Explicit { graphs } => graphs
            .iter()
            .enumerate()
            .map(|(i, g)| plain(format!("graph#{i}"), g.clone()))
            .collect(),
    })
}

/// Knobs shared by all checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckConfig {
    pub budget: Budget,
    /// Checks quantifying over `k` use `3 ≤ k ≤ min(n, k_max)`.
    pub k_max: usize,
    /// Seeded configurations per `(n, k)` for the constructive packing check.
    pub trials: usize,
    pub seed: u64,
    /// Edge limit for the line-graph checks.
    pub max_edges: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            budget: Budget::default(),
            k_max: 5,
            trials: 50,
            seed: 1,
            max_edges: 9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Position in the corpus.
    pub index: usize,
    pub label: String,
    pub graph6: String,
    pub params: String,
    pub computed: String,
    pub expected: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skipped {
    pub index: usize,
    pub label: String,
    pub params: String,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    CounterexampleFound,
    SkipsPresent,
    /// Report-only checks never pass; this is their clean outcome.
    NoCounterexampleFound,
}

impl Verdict {
    /// Process exit status: 0 clean, 1 counterexample, 3 undecided instances.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass | Verdict::NoCounterexampleFound => 0,
            Verdict::CounterexampleFound => 1,
            Verdict::SkipsPresent => 3,
        }
    }
}

/// Outcome of one check over one corpus. Timing is left out so that reports
/// are byte-identical across runs and thread counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub corpus: String,
    pub corpus_size: usize,
    pub evaluated: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub report_only: bool,
    pub verdict: Verdict,
    pub counterexamples: Vec<Counterexample>,
    pub skipped_instances: Vec<Skipped>,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "check      {}", self.check);
        let _ = writeln!(
            out,
            "corpus     {} ({} graphs)",
            self.corpus, self.corpus_size
        );
        let _ = writeln!(
            out,
            "instances  {} evaluated, {} passed, {} failed, {} skipped",
            self.evaluated, self.passed, self.failed, self.skipped
        );
        let _ = writeln!(
            out,
            "verdict    {}",
            serde_json::to_value(self.verdict)
                .unwrap()
                .as_str()
                .unwrap()
        );
        for c in &self.counterexamples {
            let _ = writeln!(
                out,
                "  FAIL {} [{}] {}: computed {}, expected {}",
                c.label, c.graph6, c.params, c.computed, c.expected
            );
        }
        for s in &self.skipped_instances {
            let _ = writeln!(out, "  SKIP {} {}: {}", s.label, s.params, s.reason);
        }
        out
    }
}

/// One instance outcome as produced by a check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Outcome {
    Pass,
    Fail {
        params: String,
        computed: String,
        expected: String,
    },
    Skip {
        params: String,
        reason: String,
    },
}

/// Runs `check` over the corpus described by `spec`.
pub fn run_check(
    check: CheckId,
    spec: &CorpusSpec,
    cfg: &CheckConfig,
) -> Result<VerificationReport> {
    let corpus = load_corpus(spec)?;
    run_check_on(check, &spec.to_string(), &corpus, cfg)
}

/// Runs `check` over an already loaded corpus. Graphs are evaluated on
/// `cfg.budget.threads` workers and aggregated in corpus order.
pub fn run_check_on(
    check: CheckId,
    corpus_name: &str,
    corpus: &[CorpusGraph],
    cfg: &CheckConfig,
) -> Result<VerificationReport> {
    let inner = CheckConfig {
        budget: Budget {
            threads: 1,
            ..cfg.budget
        },
        ..*cfg
    };
    let outcomes: Vec<Result<Vec<Outcome>>> = crate::par::map(cfg.budget.threads, corpus, |cg| {
        checks::evaluate(check, cg, &inner)
    })?;
    let mut report = VerificationReport {
        check: check.name().to_string(),
        corpus: corpus_name.to_string(),
        corpus_size: corpus.len(),
        evaluated: 0,
        passed: 0,
        failed: 0,
        skipped: 0,
        report_only: check.report_only(),
        verdict: Verdict::Pass,
        counterexamples: Vec::new(),
        skipped_instances: Vec::new(),
    };
    for (index, (cg, res)) in corpus.iter().zip(outcomes).enumerate() {
        for outcome in res? {
            report.evaluated += 1;
            match outcome {
                Outcome::Pass => report.passed += 1,
                Outcome::Fail {
                    params,
                    computed,
                    expected,
                } => {
                    report.failed += 1;
                    report.counterexamples.push(Counterexample {
                        index,
                        label: cg.label.clone(),
                        graph6: to_graph6(&cg.graph).unwrap_or_else(|_| "-".into()),
                        params,
                        computed,
                        expected,
                    });
                }
                Outcome::Skip { params, reason } => {
                    report.skipped += 1;
                    report.skipped_instances.push(Skipped {
                        index,
                        label: cg.label.clone(),
                        params,
                        reason,
                    });
                }
            }
        }
    }
    report.verdict = if report.failed > 0 {
        Verdict::CounterexampleFound
    } else if report.skipped > 0 {
        Verdict::SkipsPresent
    } else if report.report_only {
        Verdict::NoCounterexampleFound
    } else {
        Verdict::Pass
    };
    Ok(report)
}

/// Re-runs `check` on the counterexample's corpus entry and reports whether
/// the same instance fails again.
pub fn replay(
    check: CheckId,
    entry: &CorpusGraph,
    cx: &Counterexample,
    cfg: &CheckConfig,
) -> Result<bool> {
    let outcomes = checks::evaluate(check, entry, cfg)?;
    Ok(outcomes
        .iter()
        .any(|o| matches!(o, Outcome::Fail { params, .. } if *params == cx.params)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_specs_parse_and_load() {
        let spec: CorpusSpec = "atlas:5".parse().unwrap();
        let corpus = load_corpus(&spec).unwrap();
        assert_eq!(corpus.iter().filter(|c| c.graph.n() == 5).count(), 21);

        let spec: CorpusSpec = "random:6,0.5,10,7".parse().unwrap();
        let a = load_corpus(&spec).unwrap();
        assert_eq!(a.len(), 10);
        assert_eq!(a, load_corpus(&spec).unwrap());

        let spec: CorpusSpec = "families:h_graph(t=1);h_graph(t=2)".parse().unwrap();
        assert_eq!(load_corpus(&spec).unwrap().len(), 2);
        assert_eq!(spec.to_string(), "families:h_graph(t=1);h_graph(t=2)");

        assert!("nope:1".parse::<CorpusSpec>().is_err());
        assert!("bogus_check".parse::<CheckId>().is_err());
    }

    #[test]
    fn check_names_round_trip() {
        for &c in CheckId::ALL {
            assert_eq!(c.name().parse::<CheckId>().unwrap(), c);
        }
    }
}
