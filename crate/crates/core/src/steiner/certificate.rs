//! The flat JSON certificate document and its independent re-check.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

use super::bounds::counting_upper_bound;
use super::verify::verify_packing;
use super::{ConnectivityResult, Mode, Packing, Status, SteinerTree, UpperCertificate};

/// A connectivity result as written to disk: value, status, mode, witness
/// terminals, trees as edge-pair arrays and an optional upper bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub value: usize,
    pub status: Status,
    pub mode: Mode,
    pub witness_terminals: Vec<usize>,
    pub trees: Vec<Vec<Edge>>,
    pub upper_certificate: Option<UpperCertificate>,
}

impl From<&ConnectivityResult> for Certificate {
    fn from(r: &ConnectivityResult) -> Self {
        Certificate {
            value: r.value,
            status: r.status,
            mode: r.mode,
            witness_terminals: r.witness_terminals.clone(),
            trees: r
                .certificate
                .trees
                .iter()
                .map(|t| t.edges.clone())
                .collect(),
            upper_certificate: r.upper_certificate.clone(),
        }
    }
}

/// Outcome of [`Certificate::check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateCheck {
    pub valid: bool,
    pub problems: Vec<String>,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format {
            offset: 0,
            message: format!("certificate line {}, column {}: {e}", e.line(), e.column()),
        })
    }

    pub fn packing(&self) -> Packing {
        Packing {
            terminals: self.witness_terminals.clone(),
            mode: self.mode,
            trees: self
                .trees
                .iter()
                .map(|t| SteinerTree::new(&self.witness_terminals, t.clone()))
                .collect(),
        }
    }

    /// Re-verifies the packing and recomputes the upper bound against `g`.
    pub fn check(&self, g: &Graph) -> CertificateCheck {
        let mut problems = Vec::new();
        if self.trees.len() != self.value {
            problems.push(format!(
                "value {} but {} trees",
                self.value,
                self.trees.len()
            ));
        }
        // a disconnected graph certifies 0 with an empty packing
        if !self.trees.is_empty() || self.witness_terminals.len() >= 2 {
            problems.extend(verify_packing(g, &self.packing()).problems);
        }
        if let Some(up) = &self.upper_certificate {
            match self.upper_bound(g, up) {
                Ok(b) if b != up.bound() => problems.push(format!(
                    "upper bound recomputes to {b}, claimed {}",
                    up.bound()
                )),
                Ok(_) => {}
                Err(msg) => problems.push(msg),
            }
            if up.bound() < self.value {
                problems.push(format!(
                    "upper bound {} is below the value {}",
                    up.bound(),
                    self.value
                ));
            }
            if self.status == Status::Exact && up.bound() != self.value {
                problems.push(format!(
                    "exact value {} but upper bound {}",
                    self.value,
                    up.bound()
                ));
            }
        }
        CertificateCheck {
            valid: problems.is_empty(),
            problems,
        }
    }

    fn upper_bound(&self, g: &Graph, up: &UpperCertificate) -> std::result::Result<usize, String> {
        let terms = &self.witness_terminals;
        match up {
            UpperCertificate::Partition(p) => p
                .check(g, terms)
                .ok_or_else(|| "partition certificate does not check".to_string()),
            UpperCertificate::Counting(c) => {
                let again = counting_upper_bound(g, terms).map_err(|e| e.to_string())?;
                if again != *c {
                    return Err("counting record does not match the graph".into());
                }
                Ok(again.bound)
            }
            UpperCertificate::Cut(cut) => {
                if cut.edges.len() + cut.vertices.len() != cut.value {
                    return Err("cut value differs from its size".into());
                }
                if cut.vertices.iter().any(|v| terms.contains(v)) {
                    return Err("cut removes a terminal".into());
                }
                if self.mode == Mode::EdgeDisjoint && !cut.vertices.is_empty() {
                    return Err("edge-disjoint bound uses a vertex cut".into());
                }
                if cut
                    .edges
                    .iter()
                    .any(|&(u, v)| u >= g.n() || v >= g.n() || !g.has_edge(u, v))
                    || cut.vertices.iter().any(|&v| v >= g.n())
                {
                    return Err("cut names an element not in the graph".into());
                }
                if separates(g, cut.edges.as_slice(), &cut.vertices, terms) {
                    Ok(cut.value)
                } else {
                    Err("cut does not separate the terminals".into())
                }
            }
        }
    }
}

/// Whether removing `edges` and `vertices` leaves the terminals in more than
/// one component.
fn separates(g: &Graph, edges: &[Edge], vertices: &[usize], terms: &[usize]) -> bool {
    let n = g.n();
    let gone: Vec<bool> = (0..n).map(|v| vertices.contains(&v)).collect();
    let Some(&start) = terms.first() else {
        return false;
    };
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            let e = crate::graph::normalize(v, w);
            if !seen[w] && !gone[w] && !edges.contains(&e) {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    terms.iter().any(|&t| !seen[t])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::steiner::{generalized_connectivity, max_tree_packing, Budget};

    #[test]
    fn round_trip_and_tamper() {
        let g = Graph::complete(5);
        let r = generalized_connectivity(&g, 3, Mode::EdgeDisjoint).unwrap();
        let cert = Certificate::from(&r);
        let back = Certificate::from_json(&cert.to_json()).unwrap();
        assert_eq!(back, cert);
        assert!(back.check(&g).valid, "{:?}", back.check(&g).problems);

        let mut bad = back.clone();
        bad.trees[1] = bad.trees[0].clone();
        assert!(!bad.check(&g).valid);
        let mut bad = back;
        bad.value += 1;
        assert!(!bad.check(&g).valid);
    }

    #[test]
    fn cut_certificates_check() {
        let g = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let r = max_tree_packing(&g, &[0, 2], Mode::EdgeDisjoint, &Budget::default()).unwrap();
        let cert = Certificate::from(&r);
        assert_eq!(cert.value, 2);
        assert!(cert.check(&g).valid, "{:?}", cert.check(&g).problems);

        let split = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let r = generalized_connectivity(&split, 3, Mode::InternallyDisjoint).unwrap();
        assert!(Certificate::from(&r).check(&split).valid);
    }
}
