use std::collections::BTreeSet;

use genconn::atlas::{
    all_graphs, bundled_connected, canonical_code, connected_by_size, ATLAS_CONNECTED_N7,
};
use genconn::format::to_graph6;
use sha2::{Digest, Sha256};

fn codes<'a>(gs: impl Iterator<Item = &'a genconn::Graph>) -> BTreeSet<(usize, u64)> {
    gs.map(|g| (g.n(), canonical_code(g).unwrap())).collect()
}

/// Digest of the connected graphs of the networkx 3.4.2 graph atlas, exported
/// one graph6 line per graph in atlas order.
const ATLAS_SHA256: &str = "2bef914382c439409b8fb806bf8508d57d2cf6c44d6e7d9dbe1f6fa462443feb";

#[test]
fn bundled_atlas_digest() {
    let digest = Sha256::digest(ATLAS_CONNECTED_N7.as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    assert_eq!(hex, ATLAS_SHA256);
}

#[test]
fn bundled_counts_by_order() {
    let atlas = bundled_connected(7);
    let counts: Vec<usize> = (1..=7)
        .map(|n| atlas.iter().filter(|g| g.n() == n).count())
        .collect();
    // OEIS A001349
    assert_eq!(counts, vec![1, 1, 2, 6, 21, 112, 853]);
    assert!(atlas.iter().all(|g| g.is_connected()));
    assert_eq!(bundled_connected(5).len(), 31);
}

#[test]
fn bundled_atlas_matches_generator() {
    let atlas = bundled_connected(7);
    let bundled = codes(atlas.iter());
    assert_eq!(
        bundled.len(),
        atlas.len(),
        "bundled atlas holds isomorphic duplicates"
    );
    let generated: Vec<_> = (1..=7)
        .flat_map(|n| all_graphs(n).unwrap())
        .filter(|g| g.is_connected())
        .collect();
    assert_eq!(codes(generated.iter()), bundled);
}

#[test]
fn edge_ordered_corpus_agrees_with_atlas() {
    // every connected graph with at most 6 edges has at most 7 vertices
    let small = connected_by_size(6).unwrap();
    let atlas = bundled_connected(7);
    let expect = codes(atlas.iter().filter(|g| g.m() <= 6 && g.m() > 0));
    assert_eq!(codes(small.iter()), expect);
}

#[test]
fn bundled_graphs_serialize_canonically() {
    for g in bundled_connected(4) {
        let line = to_graph6(&g).unwrap();
        assert_eq!(genconn::format::parse_graph6(&line).unwrap(), g);
    }
}
