use genconn::classical::{edge_connectivity, local_edge_connectivity, vertex_connectivity};
use genconn::format::{parse_edge_list, parse_graph6, to_edge_list, to_graph6};
use genconn::steiner::{
    generalized_connectivity, max_tree_packing, verify_packing, Budget, Certificate, Mode,
};
use genconn::{Edge, Graph};
use proptest::prelude::*;

fn graph_from_bits(n: usize, bits: u64) -> Graph {
    let mut edges = Vec::new();
    let mut i = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits.rotate_right(i % 64) & 1 == 1 {
                edges.push((u, v));
            }
            i += 1;
        }
    }
    Graph::new(n, edges).unwrap()
}

prop_compose! {
    fn small_graph(max_n: usize)(n in 2..=max_n)(n in Just(n), bits in any::<u64>()) -> Graph {
        graph_from_bits(n, bits)
    }
}

prop_compose! {
    /// At most `max_m` edges, so subset enumeration stays cheap.
    fn sparse_graph(max_n: usize, max_m: usize)(g in small_graph(max_n), keep in any::<u64>()) -> Graph {
        let edges: Vec<Edge> = g.edges().iter().copied().enumerate()
            .filter(|(i, _)| keep >> i & 1 == 1)
            .map(|(_, e)| e)
            .take(max_m)
            .collect();
        Graph::new(g.n(), edges).unwrap()
    }
}

/// Every edge subset that is a tree containing `s` whose leaves all lie in `s`.
fn brute_minimal_trees(g: &Graph, s: &[usize]) -> Vec<Vec<Edge>> {
    let edges = g.edges();
    let mut out = Vec::new();
    for mask in 1u32..1 << edges.len() {
        let chosen: Vec<Edge> = (0..edges.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| edges[i])
            .collect();
        let mut verts: Vec<usize> = chosen.iter().flat_map(|&(u, v)| [u, v]).collect();
        verts.sort_unstable();
        verts.dedup();
        if chosen.len() + 1 != verts.len() || !s.iter().all(|x| verts.contains(x)) {
            continue;
        }
        // union-find connectivity; |E| = |V| - 1 plus connected means tree
        let mut parent: Vec<usize> = (0..g.n()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for &(u, v) in &chosen {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            parent[a] = b;
        }
        let root = find(&mut parent, verts[0]);
        if !verts.iter().all(|&v| find(&mut parent, v) == root) {
            continue;
        }
        let leaves_ok = verts.iter().all(|&v| {
            s.contains(&v) || chosen.iter().filter(|&&(a, b)| a == v || b == v).count() > 1
        });
        if leaves_ok {
            out.push(chosen);
        }
    }
    out
}

fn compatible(a: &[Edge], b: &[Edge], s: &[usize], mode: Mode) -> bool {
    if a.iter().any(|e| b.contains(e)) {
        return false;
    }
    match mode {
        Mode::EdgeDisjoint => true,
        Mode::InternallyDisjoint => {
            let touches = |t: &[Edge], v: usize| t.iter().any(|&(x, y)| x == v || y == v);
            !a.iter()
                .flat_map(|&(u, v)| [u, v])
                .any(|v| !s.contains(&v) && touches(b, v))
        }
    }
}

fn brute_max_packing(trees: &[Vec<Edge>], s: &[usize], mode: Mode) -> usize {
    fn go(
        trees: &[Vec<Edge>],
        chosen: &mut Vec<usize>,
        from: usize,
        s: &[usize],
        mode: Mode,
    ) -> usize {
        let mut best = chosen.len();
        for i in from..trees.len() {
            if chosen
                .iter()
                .all(|&j| compatible(&trees[i], &trees[j], s, mode))
            {
                chosen.push(i);
                best = best.max(go(trees, chosen, i + 1, s, mode));
                chosen.pop();
            }
        }
        best
    }
    go(trees, &mut Vec::new(), 0, s, mode)
}

fn min_over_subsets(g: &Graph, k: usize, f: impl Fn(&[usize]) -> usize) -> usize {
    let n = g.n();
    (0u64..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| f(&(0..n).filter(|i| m >> i & 1 == 1).collect::<Vec<_>>()))
        .min()
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn packing_matches_brute_force(g in sparse_graph(6, 10), pick in any::<u64>()) {
        let n = g.n();
        let k = 2 + (pick as usize % (n - 1));
        let mut s: Vec<usize> = (0..n).collect();
        s.rotate_left((pick >> 8) as usize % n);
        s.truncate(k);
        s.sort_unstable();
        let trees = brute_minimal_trees(&g, &s);
        for mode in [Mode::EdgeDisjoint, Mode::InternallyDisjoint] {
            let r = max_tree_packing(&g, &s, mode, &Budget::default()).unwrap();
            prop_assert!(r.is_exact());
            prop_assert_eq!(r.value, brute_max_packing(&trees, &s, mode), "S={:?} {}", s, mode);
            prop_assert!(verify_packing(&g, &r.certificate).valid);
        }
    }

    #[test]
    fn global_value_is_minimum_over_subsets(g in sparse_graph(5, 8), k in 2usize..=5) {
        prop_assume!(k <= g.n());
        for mode in [Mode::EdgeDisjoint, Mode::InternallyDisjoint] {
            let r = generalized_connectivity(&g, k, mode).unwrap();
            let expect = min_over_subsets(&g, k, |s| brute_max_packing(&brute_minimal_trees(&g, s), s, mode));
            prop_assert_eq!(r.value, expect);
        }
    }

    #[test]
    fn connectivity_chain(g in small_graph(7), k in 2usize..=7) {
        prop_assume!(k <= g.n());
        let kappa = generalized_connectivity(&g, k, Mode::InternallyDisjoint).unwrap();
        let lambda = generalized_connectivity(&g, k, Mode::EdgeDisjoint).unwrap();
        prop_assert!(kappa.value <= lambda.value);
        prop_assert!(lambda.value <= g.min_degree());
        if k == 2 {
            prop_assert_eq!(lambda.value, edge_connectivity(&g).value);
            prop_assert_eq!(kappa.value, vertex_connectivity(&g).value);
        }
        for r in [&kappa, &lambda] {
            let check = Certificate::from(r).check(&g);
            prop_assert!(check.valid, "{:?}", check.problems);
        }
    }

    #[test]
    fn local_cut_matches_flow_value(g in small_graph(7), x in 0usize..7, y in 0usize..7) {
        prop_assume!(x < g.n() && y < g.n() && x != y);
        let cut = local_edge_connectivity(&g, x, y).unwrap();
        prop_assert_eq!(cut.edges.len(), cut.value);
        let mut cut_set = genconn::EdgeSet::new();
        for &(u, v) in &cut.edges {
            cut_set.insert(u, v);
        }
        let rest = g.delete_edges(&cut_set).unwrap();
        prop_assert!(!rest.components().iter().any(|c| c.contains(&x) && c.contains(&y)));
    }

    #[test]
    fn formats_round_trip(g in small_graph(12)) {
        prop_assert_eq!(&parse_graph6(&to_graph6(&g).unwrap()).unwrap(), &g);
        prop_assert_eq!(&parse_edge_list(&to_edge_list(&g)).unwrap(), &g);
    }

    #[test]
    fn line_graph_counts(g in small_graph(8)) {
        let (l, map) = g.line_graph();
        prop_assert_eq!(l.n(), g.m());
        prop_assert_eq!(map.as_slice(), g.edges());
        let pairs: usize = (0..g.n()).map(|v| g.degree(v) * g.degree(v).saturating_sub(1) / 2).sum();
        prop_assert_eq!(l.m(), pairs);
    }

    #[test]
    fn complement_is_an_involution(g in small_graph(9)) {
        let c = g.complement();
        prop_assert_eq!(c.m() + g.m(), g.n() * (g.n() - 1) / 2);
        prop_assert_eq!(&c.complement(), &g);
    }
}
