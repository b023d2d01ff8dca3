//! Text encodings: graph6 (short form, header-less) and a plain edge list.
//!
//! The edge-list format is a first line `n m` followed by `m` lines `u v`,
//! all whitespace-separated decimal. Serialization emits single spaces and a
//! trailing newline after every line.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const GRAPH6_MAX_N: usize = 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Graph6,
    EdgeList,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph6" | "g6" => Ok(Format::Graph6),
            "edge-list" | "edgelist" | "el" => Ok(Format::EdgeList),
            other => Err(Error::arg(format!("unknown format {other:?}"))),
        }
    }
}

impl Format {
    /// `.g6` selects graph6; anything else is read as an edge list.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("g6") | Some("graph6") => Format::Graph6,
            _ => Format::EdgeList,
        }
    }
}

pub fn parse_graph(text: &str, format: Format) -> Result<Graph> {
    match format {
        Format::Graph6 => parse_graph6(text.trim_end()),
        Format::EdgeList => parse_edge_list(text),
    }
}

pub fn serialize_graph(g: &Graph, format: Format) -> Result<String> {
    match format {
        Format::Graph6 => to_graph6(g),
        Format::EdgeList => Ok(to_edge_list(g)),
    }
}

fn format_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Format {
        offset,
        message: message.into(),
    }
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.as_bytes();
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(format_err(
            pos,
            format!("byte 0x{:02x} is outside the graph6 range", bytes[pos]),
        ));
    }
    let Some(&first) = bytes.first() else {
        return Err(format_err(0, "empty graph6 string"));
    };
    if first == 126 {
        let n = if bytes.len() >= 4 && bytes[1] != 126 {
            bytes[1..4]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize)
        } else {
            // eight-byte size field; exact n is irrelevant
            usize::MAX
        };
        return Err(Error::UnsupportedSize(n));
    }
    let n = (first - 63) as usize;
    let bits = n * n.saturating_sub(1) / 2;
    let expected = 1 + bits.div_ceil(6);
    if bytes.len() != expected {
        let at = bytes.len().min(expected);
        return Err(format_err(
            at,
            format!(
                "expected {expected} bytes for n = {n}, found {}",
                bytes.len()
            ),
        ));
    }
    let bit = |k: usize| {
        let byte = bytes[1 + k / 6] - 63;
        (byte >> (5 - k % 6)) & 1 == 1
    };
    for k in bits..(expected - 1) * 6 {
        if bit(k) {
            return Err(format_err(1 + k / 6, "nonzero padding bit"));
        }
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::new(n, edges)
}

pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > GRAPH6_MAX_N {
        return Err(Error::UnsupportedSize(n));
    }
    let mut out = String::with_capacity(1 + n * n / 12 + 1);
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    Ok(out)
}

/// Splits `text` into whitespace-separated tokens with their byte offsets.
fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = text;
    let mut base = 0;
    std::iter::from_fn(move || {
        let skip = rest.len() - rest.trim_start().len();
        rest = &rest[skip..];
        base += skip;
        if rest.is_empty() {
            return None;
        }
        let len = rest.find(char::is_whitespace).unwrap_or(rest.len());
        let tok = (base, &rest[..len]);
        rest = &rest[len..];
        base += len;
        Some(tok)
    })
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut toks = tokens(text);
    let mut number = |what: &str| -> Result<(usize, usize)> {
        match toks.next() {
            None => Err(format_err(
                text.len(),
                format!("unexpected end of input, expected {what}"),
            )),
            Some((off, t)) => t
                .parse::<usize>()
                .map(|v| (off, v))
                .map_err(|_| format_err(off, format!("expected {what}, found {t:?}"))),
        }
    };
    let (_, n) = number("vertex count")?;
    let (_, m) = number("edge count")?;
    let mut seen = std::collections::BTreeSet::new();
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (off, u) = number("edge endpoint")?;
        let (_, v) = number("edge endpoint")?;
        if u >= n || v >= n {
            return Err(format_err(off, format!("endpoint out of range 0..{n}")));
        }
        if u == v {
            return Err(format_err(off, "self-loop"));
        }
        if !seen.insert(crate::graph::normalize(u, v)) {
            return Err(format_err(off, "duplicate edge"));
        }
        edges.push((u, v));
    }
    if let Some((off, t)) = toks.next() {
        return Err(format_err(
            off,
            format!("trailing token {t:?} after {m} edges"),
        ));
    }
    Graph::new(n, edges)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Reads a file of graph6 lines, skipping blank lines. Errors name the line.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            parse_graph6(l.trim_end()).map_err(|e| match e {
                Error::Format { offset, message } => Error::Format {
                    offset,
                    message: format!("line {}: {message}", i + 1),
                },
                other => other,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph6_small_cases() {
        // expected strings from networkx.to_graph6_bytes(header=False)
        let k2 = parse_graph6("A_").unwrap();
        assert_eq!((k2.n(), k2.edges()), (2, &[(0, 1)][..]));
        assert_eq!(parse_graph6("Bw").unwrap(), Graph::complete(3));
        assert_eq!(to_graph6(&Graph::complete(3)).unwrap(), "Bw");
        assert_eq!(to_graph6(&Graph::empty(0)).unwrap(), "?");
        assert_eq!(parse_graph6("@").unwrap(), Graph::empty(1));
    }

    #[test]
    fn graph6_errors() {
        assert!(matches!(
            parse_graph6("B w"),
            Err(Error::Format { offset: 1, .. })
        ));
        assert!(matches!(parse_graph6("Bww"), Err(Error::Format { .. })));
        assert!(matches!(
            parse_graph6("Bx"),
            Err(Error::Format { offset: 1, .. })
        ));
        assert!(matches!(
            parse_graph6("~?@c"),
            Err(Error::UnsupportedSize(100))
        ));
        assert!(matches!(
            to_graph6(&Graph::empty(63)),
            Err(Error::UnsupportedSize(63))
        ));
    }

    #[test]
    fn edge_list_cases() {
        assert_eq!(parse_edge_list("2 1\n0 1\n").unwrap(), Graph::complete(2));
        assert_eq!(to_edge_list(&Graph::complete(2)), "2 1\n0 1\n");
        assert_eq!(to_edge_list(&Graph::empty(3)), "3 0\n");
        assert_eq!(parse_edge_list("  3\t0  ").unwrap(), Graph::empty(3));
    }

    #[test]
    fn edge_list_errors_carry_offsets() {
        assert_eq!(
            parse_edge_list("2 1\n0 x\n"),
            Err(Error::Format {
                offset: 6,
                message: "expected edge endpoint, found \"x\"".into()
            })
        );
        assert!(matches!(
            parse_edge_list("2 1\n0 2\n"),
            Err(Error::Format { offset: 4, .. })
        ));
        assert!(matches!(
            parse_edge_list("2 1\n0 1\n1 0\n"),
            Err(Error::Format { offset: 8, .. })
        ));
        assert!(matches!(
            parse_edge_list("3 2\n0 1\n"),
            Err(Error::Format { offset: 8, .. })
        ));
    }
}
