//! Simple undirected graphs on dense vertex ids `0..n`.
//!
//! Adjacency is stored as one `u64` neighbor mask per vertex, which caps the
//! order at [`MAX_VERTICES`]. Every search in this crate is exponential, so
//! the cap is far above anything the exact routines can handle anyway.

mod catalog;
mod edgelist;
mod generate;
mod graph6;

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

pub use catalog::corpus;
pub use edgelist::{format_edge_list, parse_edge_list};
pub use generate::{
    clique, complete_bipartite, cycle, edgeless, ekab, join, path, EkabParams, NamedGraph,
};
pub use graph6::{encode_graph6, parse_graph6};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex count {0} exceeds the supported maximum of {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    OutOfRange { u: usize, v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("({u}, {v}) is not an edge")]
    NotAnEdge { u: usize, v: usize },
    #[error("graph is disconnected: vertices {a} and {b} lie in different components")]
    Disconnected { a: usize, b: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("graph6 parse error at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },
    #[error("edge list parse error on line {line}: {message}")]
    EdgeList { line: usize, message: String },
}

/// A finite simple graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

#[inline]
pub(crate) fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Iterates the set bits of a mask in ascending order.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

impl Graph {
    /// The graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Builds a graph from an edge list. Duplicate edges collapse; self-loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::OutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.adj[u] |= bit(v);
            g.adj[v] |= bit(u);
        }
        Ok(g)
    }

    pub(crate) fn from_masks(adj: Vec<u64>) -> Self {
        debug_assert!(adj.len() <= MAX_VERTICES);
        Graph { n: adj.len(), adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|m| m.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Mask with one bit per vertex.
    pub fn vertex_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            bit(self.n) - 1
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    pub fn neighbor_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> {
        bits(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn min_degree(&self) -> usize {
        self.adj
            .iter()
            .map(|m| m.count_ones() as usize)
            .min()
            .unwrap_or(0)
    }

    /// All edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            out.extend(bits(self.adj[u]).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// Index of edge `uv` in [`Graph::edges`] order.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        if !self.has_edge(u, v) {
            return None;
        }
        let above = |w: usize| self.adj[w].checked_shr(w as u32 + 1).unwrap_or(0);
        let before: usize = (0..u).map(|w| above(w).count_ones() as usize).sum();
        let within = above(u) & (bit(v - u - 1) - 1);
        Some(before + within.count_ones() as usize)
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::NotAnEdge { u, v });
        }
        let mut g = self.clone();
        g.adj[u] &= !bit(v);
        g.adj[v] &= !bit(u);
        Ok(g)
    }

    /// Induced subgraph on the vertices of `keep`, renumbered in ascending
    /// order. The returned vector maps new ids to old ids.
    pub fn induced(&self, keep: u64) -> (Graph, Vec<usize>) {
        let keep = keep & self.vertex_mask();
        let old: Vec<usize> = bits(keep).collect();
        let mut new_of = vec![usize::MAX; self.n];
        for (i, &v) in old.iter().enumerate() {
            new_of[v] = i;
        }
        let adj = old
            .iter()
            .map(|&v| bits(self.adj[v] & keep).fold(0u64, |m, w| m | bit(new_of[w])))
            .collect();
        (Graph::from_masks(adj), old)
    }

    /// Deletes the given vertices (the rest are renumbered in order).
    pub fn without_vertices(&self, remove: &[usize]) -> (Graph, Vec<usize>) {
        let mask = remove.iter().fold(0u64, |m, &v| m | bit(v));
        self.induced(self.vertex_mask() & !mask)
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut adj = vec![0u64; self.n];
        for v in 0..self.n {
            adj[perm[v]] = bits(self.adj[v]).fold(0, |m, w| m | bit(perm[w]));
        }
        Graph::from_masks(adj)
    }

    pub fn is_independent(&self, set: u64) -> bool {
        bits(set).all(|v| self.adj[v] & set == 0)
    }

    /// Connected components as vertex masks, ordered by smallest member.
    pub fn components(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen & bit(s) != 0 {
                continue;
            }
            let mut comp = bit(s);
            let mut frontier = bit(s);
            while frontier != 0 {
                let next = bits(frontier).fold(0, |m, v| m | self.adj[v]) & !comp;
                comp |= next;
                frontier = next;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Breadth-first spanning tree from vertex 0, visiting neighbors in
    /// ascending order. Edges are returned as `(parent, child)` in discovery
    /// order.
    pub fn spanning_tree(&self) -> Result<Vec<(usize, usize)>, GraphError> {
        let forest = self.bfs_forest();
        if let [a, b, ..] = forest.roots[..] {
            return Err(GraphError::Disconnected { a, b });
        }
        Ok(forest.tree_edges)
    }

    pub(crate) fn bfs_forest(&self) -> BfsForest {
        let mut seen = 0u64;
        let mut roots = Vec::new();
        let mut tree_edges = Vec::with_capacity(self.n.saturating_sub(1));
        for s in 0..self.n {
            if seen & bit(s) != 0 {
                continue;
            }
            roots.push(s);
            seen |= bit(s);
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for w in bits(self.adj[v] & !seen) {
                    seen |= bit(w);
                    tree_edges.push((v, w));
                    queue.push_back(w);
                }
            }
        }
        BfsForest { roots, tree_edges }
    }

    /// Size of a maximum clique (exact, Bron–Kerbosch with pivoting).
    pub fn clique_number(&self) -> usize {
        fn expand(g: &Graph, size: usize, mut cand: u64, mut excl: u64, best: &mut usize) {
            if cand == 0 {
                if excl == 0 {
                    *best = (*best).max(size);
                }
                return;
            }
            if size + cand.count_ones() as usize <= *best {
                return;
            }
            let pivot = bits(cand | excl)
                .max_by_key(|&u| (g.adj[u] & cand).count_ones())
                .unwrap();
            for v in bits(cand & !g.adj[pivot]) {
                expand(g, size + 1, cand & g.adj[v], excl & g.adj[v], best);
                cand &= !bit(v);
                excl |= bit(v);
            }
        }
        let mut best = 0;
        expand(self, 0, self.vertex_mask(), 0, &mut best);
        best
    }

    /// Degeneracy: the largest minimum degree over all subgraphs.
    pub fn degeneracy(&self) -> usize {
        let mut alive = self.vertex_mask();
        let mut best = 0;
        while alive != 0 {
            let v = bits(alive)
                .min_by_key(|&v| (self.adj[v] & alive).count_ones())
                .unwrap();
            best = best.max((self.adj[v] & alive).count_ones() as usize);
            alive &= !bit(v);
        }
        best
    }

    /// Brute-force isomorphism test with degree-based pruning. Intended for
    /// the small graphs used in tests.
    pub fn is_isomorphic(&self, other: &Graph) -> bool {
        if self.n != other.n || self.edge_count() != other.edge_count() {
            return false;
        }
        let mut da: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let mut db: Vec<usize> = (0..other.n).map(|v| other.degree(v)).collect();
        da.sort_unstable();
        db.sort_unstable();
        if da != db {
            return false;
        }
        fn extend(a: &Graph, b: &Graph, map: &mut Vec<usize>, used: u64) -> bool {
            let v = map.len();
            if v == a.n {
                return true;
            }
            for w in bits(b.vertex_mask() & !used) {
                if a.degree(v) != b.degree(w) {
                    continue;
                }
                let consistent = (0..v).all(|u| a.has_edge(u, v) == b.has_edge(map[u], w));
                if consistent {
                    map.push(w);
                    if extend(a, b, map, used | bit(w)) {
                        return true;
                    }
                    map.pop();
                }
            }
            false
        }
        extend(self, other, &mut Vec::with_capacity(self.n), 0)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Component roots and `(parent, child)` tree edges in discovery order.
pub(crate) struct BfsForest {
    pub roots: Vec<usize>,
    pub tree_edges: Vec<(usize, usize)>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(g.edges(), vec![(0, 1)]);
        assert_eq!(g, clique(2).unwrap());
    }

    #[test]
    fn five_cycle_from_pairs() {
        let g = Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert_eq!(g.edge_count(), 5);
        assert!((0..5).all(|v| g.degree(v) == 2));
        assert_eq!(g, cycle(5).unwrap());
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::from_edges(3, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(
            Graph::from_edges(3, [(0, 3)]),
            Err(GraphError::OutOfRange { u: 0, v: 3, n: 3 })
        );
        assert!(Graph::empty(65).is_err());
    }

    #[test]
    fn duplicates_collapse() {
        let g = Graph::from_edges(3, [(0, 1), (1, 0), (0, 1), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn edge_index_matches_edges_order() {
        let g = ekab(EkabParams::new(6, 2, 3).unwrap());
        for (i, (u, v)) in g.edges().into_iter().enumerate() {
            assert_eq!(g.edge_index(u, v), Some(i));
            assert_eq!(g.edge_index(v, u), Some(i));
        }
        assert_eq!(g.edge_index(0, 5), None);
    }

    #[test]
    fn spanning_tree_of_five_cycle() {
        // BFS from 0 reaches 1 and 4 first, then 2 (via 1) and 3 (via 4), so
        // the chord that closes the cycle is 2-3.
        let tree = cycle(5).unwrap().spanning_tree().unwrap();
        assert_eq!(tree, vec![(0, 1), (0, 4), (1, 2), (4, 3)]);
    }

    #[test]
    fn spanning_tree_small_cases() {
        assert_eq!(clique(2).unwrap().spanning_tree().unwrap(), vec![(0, 1)]);
        let two = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            two.spanning_tree(),
            Err(GraphError::Disconnected { a: 0, b: 2 })
        );
        assert!(Graph::empty(1).unwrap().spanning_tree().unwrap().is_empty());
    }

    #[test]
    fn induced_and_deletion() {
        let c5 = cycle(5).unwrap();
        let (p, map) = c5.without_vertices(&[0]);
        assert_eq!(map, vec![1, 2, 3, 4]);
        assert_eq!(p, path(4).unwrap());
        let (q, _) = c5.without_vertices(&[0, 2]);
        assert_eq!(q.edge_count(), 1);
    }

    #[test]
    fn clique_number_and_degeneracy() {
        assert_eq!(cycle(5).unwrap().clique_number(), 2);
        assert_eq!(clique(5).unwrap().clique_number(), 5);
        assert_eq!(cycle(7).unwrap().degeneracy(), 2);
        let w = join(&cycle(5).unwrap(), &clique(1).unwrap()).unwrap();
        assert_eq!(w.clique_number(), 3);
        assert_eq!(w.degeneracy(), 3);
        assert_eq!(Graph::empty(0).unwrap().clique_number(), 0);
    }

    #[test]
    fn components_are_ordered() {
        let g = Graph::from_edges(5, [(3, 4), (0, 2)]).unwrap();
        assert_eq!(g.components(), vec![0b00101, 0b00010, 0b11000]);
        assert!(!g.is_connected());
    }
}
