//! Ordinary vertex coloring: exact k-colorability, chromatic number,
//! criticality, coloring counts and the chromatic polynomial.

mod polynomial;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::graph::{bit, bits, Graph, GraphError};

pub use polynomial::{chromatic_polynomial, Polynomial};

/// A single edge or vertex removal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Deletion {
    Edge { u: usize, v: usize },
    Vertex { vertex: usize },
}

impl Deletion {
    pub fn apply(&self, g: &Graph) -> Result<Graph, GraphError> {
        match *self {
            Deletion::Edge { u, v } => g.without_edge(u, v),
            Deletion::Vertex { vertex } => {
                if vertex >= g.n() {
                    return Err(GraphError::OutOfRange {
                        u: vertex,
                        v: vertex,
                        n: g.n(),
                    });
                }
                Ok(g.without_vertices(&[vertex]).0)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringVerdict {
    pub chromatic_number: usize,
    pub is_critical: bool,
    pub is_vertex_critical: bool,
    /// A deletion that leaves the chromatic number unchanged, present
    /// whenever the graph is not critical.
    pub witness: Option<Deletion>,
}

/// DSATUR-ordered backtracking for a proper coloring with colors `0..k`.
struct Dsatur<'a> {
    g: &'a Graph,
    k: usize,
    color: Vec<usize>,
}

const UNCOLORED: usize = usize::MAX;

impl Dsatur<'_> {
    fn used_around(&self, v: usize) -> u64 {
        self.g
            .neighbors(v)
            .filter(|&w| self.color[w] != UNCOLORED)
            .fold(0, |m, w| m | bit(self.color[w]))
    }

    fn pick(&self, uncolored: u64) -> (usize, u64) {
        let mut best = (0usize, 0u64);
        let mut key = (-1i64, -1i64);
        for v in bits(uncolored) {
            let used = self.used_around(v);
            let cand = (
                used.count_ones() as i64,
                (self.g.neighbor_mask(v) & uncolored).count_ones() as i64,
            );
            if cand > key {
                key = cand;
                best = (v, used);
            }
        }
        best
    }

    fn solve(&mut self, uncolored: u64, opened: usize) -> bool {
        if uncolored == 0 {
            return true;
        }
        let (v, used) = self.pick(uncolored);
        // Unopened colors are interchangeable, so only the first one is tried.
        let limit = self.k.min(opened + 1);
        for c in 0..limit {
            if used & bit(c) != 0 {
                continue;
            }
            self.color[v] = c;
            if self.solve(uncolored & !bit(v), opened.max(c + 1)) {
                return true;
            }
        }
        self.color[v] = UNCOLORED;
        false
    }

    fn greedy(&mut self) -> usize {
        let mut uncolored = self.g.vertex_mask();
        let mut opened = 0;
        while uncolored != 0 {
            let (v, used) = self.pick(uncolored);
            let c = (!used).trailing_zeros() as usize;
            self.color[v] = c;
            opened = opened.max(c + 1);
            uncolored &= !bit(v);
        }
        opened
    }
}

/// A proper coloring with colors `0..k`, if one exists.
pub fn k_coloring(g: &Graph, k: usize) -> Option<Vec<usize>> {
    let n = g.n();
    if n == 0 {
        return Some(Vec::new());
    }
    if k == 0 {
        return None;
    }
    if k >= n {
        return Some((0..n).collect());
    }
    let mut s = Dsatur {
        g,
        k,
        color: vec![UNCOLORED; n],
    };
    s.solve(g.vertex_mask(), 0).then_some(s.color)
}

pub fn is_k_colorable(g: &Graph, k: usize) -> bool {
    k_coloring(g, k).is_some()
}

/// True iff `coloring` is a proper coloring of `g` with colors below `k`.
pub fn is_proper_coloring(g: &Graph, coloring: &[usize], k: usize) -> bool {
    coloring.len() == g.n()
        && coloring.iter().all(|&c| c < k)
        && g.edges().iter().all(|&(u, v)| coloring[u] != coloring[v])
}

/// Number of colors used by a DSATUR greedy pass.
pub fn greedy_color_count(g: &Graph) -> usize {
    let mut s = Dsatur {
        g,
        k: usize::MAX,
        color: vec![UNCOLORED; g.n()],
    };
    s.greedy()
}

/// Exact chromatic number: clique lower bound, greedy upper bound, and an
/// exact colorability test for every value in between.
pub fn chromatic_number(g: &Graph) -> usize {
    if g.n() == 0 {
        return 0;
    }
    let lower = g.clique_number().max(1);
    let upper = greedy_color_count(g);
    (lower..upper)
        .find(|&k| is_k_colorable(g, k))
        .unwrap_or(upper)
}

/// Decides criticality and vertex-criticality. Every edge and every vertex
/// deletion is tested; edges are reported first when building the witness.
pub fn classify_criticality(g: &Graph) -> ColoringVerdict {
    let k = chromatic_number(g);
    if k == 0 {
        return ColoringVerdict {
            chromatic_number: 0,
            is_critical: false,
            is_vertex_critical: false,
            witness: None,
        };
    }
    // Deleting one edge or vertex lowers chi by at most one, so "drops" is
    // the same as "becomes (k-1)-colorable".
    let drops = |h: &Graph| is_k_colorable(h, k - 1);
    let edge_witness = g
        .edges()
        .into_iter()
        .map(|(u, v)| Deletion::Edge { u, v })
        .find(|d| !drops(&d.apply(g).unwrap()));
    let vertex_witness = (0..g.n())
        .map(|vertex| Deletion::Vertex { vertex })
        .find(|d| !drops(&d.apply(g).unwrap()));
    ColoringVerdict {
        chromatic_number: k,
        is_critical: edge_witness.is_none() && vertex_witness.is_none(),
        is_vertex_critical: vertex_witness.is_none(),
        witness: edge_witness.or(vertex_witness),
    }
}

/// `a[j]` = number of partitions of `V(g)` into exactly `j` independent sets.
pub fn stable_partition_counts(g: &Graph) -> Vec<BigUint> {
    fn rec(g: &Graph, v: usize, classes: &mut Vec<u64>, counts: &mut [u64]) {
        if v == g.n() {
            counts[classes.len()] += 1;
            return;
        }
        let nb = g.neighbor_mask(v);
        for i in 0..classes.len() {
            if classes[i] & nb == 0 {
                classes[i] |= bit(v);
                rec(g, v + 1, classes, counts);
                classes[i] &= !bit(v);
            }
        }
        classes.push(bit(v));
        rec(g, v + 1, classes, counts);
        classes.pop();
    }
    let mut counts = vec![0u64; g.n() + 1];
    rec(g, 0, &mut Vec::with_capacity(g.n()), &mut counts);
    counts.into_iter().map(BigUint::from).collect()
}

/// Number of proper colorings `V -> {0..k-1}`, computed from the stable
/// partition counts in the falling-factorial basis.
pub fn count_proper_colorings(g: &Graph, k: u64) -> BigUint {
    let counts = stable_partition_counts(g);
    let mut total = BigUint::zero();
    let mut falling = BigUint::one();
    for (j, a) in counts.iter().enumerate() {
        if j > 0 {
            if (j as u64) > k {
                break;
            }
            falling *= k - (j as u64 - 1);
        }
        total += a * &falling;
    }
    total
}
