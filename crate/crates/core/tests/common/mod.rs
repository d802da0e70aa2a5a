#![allow(dead_code)]

use critickit::dp::Cover;
use critickit::graph::Graph;
use critickit::ListAssignment;
use proptest::prelude::*;

/// Graph on `n` vertices from the low bits of `mask`, pairs in `(u, v)`
/// lexicographic order.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn arb_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n, any::<u64>()).prop_map(|(n, m)| graph_from_mask(n, m))
}

pub fn arb_connected_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    arb_graph(min_n, max_n).prop_filter("connected", |g| g.is_connected())
}

/// Every proper `L`-coloring, counted by brute force over the product of
/// the lists.
pub fn brute_list_colorings(g: &Graph, l: &ListAssignment) -> u64 {
    let lists: Vec<Vec<u32>> = l
        .lists()
        .iter()
        .map(|s| s.iter().copied().collect())
        .collect();
    let mut choice = vec![0u32; g.n()];
    fn rec(g: &Graph, lists: &[Vec<u32>], v: usize, choice: &mut [u32]) -> u64 {
        if v == lists.len() {
            return 1;
        }
        let mut total = 0;
        for &c in &lists[v] {
            if (0..v).all(|u| !g.has_edge(u, v) || choice[u] != c) {
                choice[v] = c;
                total += rec(g, lists, v + 1, choice);
            }
        }
        total
    }
    rec(g, &lists, 0, &mut choice)
}

/// Transversals counted over the full product of index choices.
pub fn brute_transversals(c: &Cover) -> u64 {
    let n = c.graph().n();
    let mut choice = vec![0usize; n];
    let mut count = 0;
    loop {
        if c.is_transversal(&choice) {
            count += 1;
        }
        let mut v = 0;
        loop {
            if v == n {
                return count;
            }
            choice[v] += 1;
            if choice[v] < c.size(v) {
                break;
            }
            choice[v] = 0;
            v += 1;
        }
    }
}

/// A cover of `g` with sizes in `1..=3` and random partial injections.
pub fn arb_cover(g: Graph) -> impl Strategy<Value = Cover> {
    let n = g.n();
    (proptest::collection::vec(1usize..=3, n), any::<u64>()).prop_map(move |(sizes, seed)| {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut c = Cover::empty(&g, sizes).unwrap();
        for (e, &(u, v)) in c.edges().to_vec().iter().enumerate() {
            let mut free: Vec<usize> = (0..c.size(v)).collect();
            let map = (0..c.size(u))
                .map(|_| {
                    if free.is_empty() || rng.gen_bool(0.3) {
                        None
                    } else {
                        Some(free.swap_remove(rng.gen_range(0..free.len())))
                    }
                })
                .collect();
            c.set_map(e, map).unwrap();
        }
        c
    })
}

/// Lists drawn from colors `1..=4`, sizes `1..=3`.
pub fn arb_lists(n: usize) -> impl Strategy<Value = ListAssignment> {
    proptest::collection::vec(proptest::collection::btree_set(1u32..=4, 1..=3), n)
        .prop_map(ListAssignment::new)
}

pub fn arb_perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}
