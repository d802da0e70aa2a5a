//! Graph families: cliques, cycles, complete bipartite graphs, paths, the
//! two-clique-plus-apex family `E(k, a, b)` and joins.
//!
//! Vertex numbering is fixed for every family so that witnesses printed for
//! a generated graph can be reproduced:
//!
//! * clique, cycle, path: `0..n` in order (cycle edges `i ~ i+1 mod n`);
//! * complete bipartite `K(a, b)`: part A is `0..a`, part B is `a..a+b`;
//! * `E(k, a, b)`: `X1`, then `X2`, `Y1`, `Y2`, and the apex `z` last;
//! * join `G ∨ H`: the vertices of `G`, then those of `H` shifted by `|G|`.

use super::{bit, Graph, GraphError};

pub fn edgeless(n: usize) -> Result<Graph, GraphError> {
    Graph::empty(n)
}

pub fn clique(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidParameters("clique needs n >= 1".into()));
    }
    let mut g = Graph::empty(n)?;
    let all = g.vertex_mask();
    for v in 0..n {
        g.adj[v] = all & !bit(v);
    }
    Ok(g)
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::InvalidParameters(format!(
            "cycle needs n >= 3, got {n}"
        )));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, GraphError> {
    if a == 0 || b == 0 {
        return Err(GraphError::InvalidParameters(format!(
            "complete bipartite parts must be nonempty, got ({a}, {b})"
        )));
    }
    Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
}

/// Named families selectable by kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedGraph {
    Clique(usize),
    Cycle(usize),
    CompleteBipartite(usize, usize),
}

impl NamedGraph {
    pub fn build(self) -> Result<Graph, GraphError> {
        match self {
            NamedGraph::Clique(n) => clique(n),
            NamedGraph::Cycle(n) => cycle(n),
            NamedGraph::CompleteBipartite(a, b) => complete_bipartite(a, b),
        }
    }
}

/// Parameters of `E(k, a, b)`: `k >= 3`, `1 <= a, b <= k - 2`, `a + b >= k - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EkabParams {
    k: usize,
    a: usize,
    b: usize,
}

impl EkabParams {
    pub fn new(k: usize, a: usize, b: usize) -> Result<Self, GraphError> {
        let fail = |what: &str| {
            Err(GraphError::InvalidParameters(format!(
                "E({k},{a},{b}) requires {what}"
            )))
        };
        if k < 3 {
            return fail("k >= 3");
        }
        if a < 1 || a > k - 2 {
            return fail("1 <= a <= k-2");
        }
        if b < 1 || b > k - 2 {
            return fail("1 <= b <= k-2");
        }
        if a + b < k - 1 {
            return fail("a + b >= k-1");
        }
        if 2 * k - 1 > super::MAX_VERTICES {
            return Err(GraphError::TooManyVertices(2 * k - 1));
        }
        Ok(EkabParams { k, a, b })
    }

    pub fn k(&self) -> usize {
        self.k
    }
    pub fn a(&self) -> usize {
        self.a
    }
    pub fn b(&self) -> usize {
        self.b
    }

    /// Vertex ranges `(X1, X2, Y1, Y2, z)` of the fixed layout.
    pub fn layout(
        &self,
    ) -> (
        std::ops::Range<usize>,
        std::ops::Range<usize>,
        std::ops::Range<usize>,
        std::ops::Range<usize>,
        usize,
    ) {
        let (k, a, b) = (self.k, self.a, self.b);
        let x1 = 0..a;
        let x2 = a..k - 1;
        let y1 = k - 1..k - 1 + b;
        let y2 = k - 1 + b..2 * (k - 1);
        (x1, x2, y1, y2, 2 * k - 2)
    }
}

/// `E(k, a, b)` on `2k - 1` vertices: cliques `X = X1 ∪ X2` and
/// `Y = Y1 ∪ Y2` of size `k - 1`, apex `z` adjacent to `X1 ∪ Y1`, and every
/// `X2`-`Y2` pair adjacent.
pub fn ekab(p: EkabParams) -> Graph {
    let (x1, x2, y1, y2, z) = p.layout();
    let mut edges = Vec::new();
    let x = x1.start..x2.end;
    let y = y1.start..y2.end;
    for part in [x.clone(), y.clone()] {
        for u in part.clone() {
            for v in u + 1..part.end {
                edges.push((u, v));
            }
        }
    }
    edges.extend(x1.chain(y1).map(|v| (v, z)));
    for u in x2 {
        for v in y2.clone() {
            edges.push((u, v));
        }
    }
    Graph::from_edges(z + 1, edges).expect("layout is in range")
}

/// The join `G ∨ H`: disjoint union plus every cross edge.
pub fn join(g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
    let n = g.n() + h.n();
    if n > super::MAX_VERTICES {
        return Err(GraphError::TooManyVertices(n));
    }
    let g_mask = g.vertex_mask();
    let h_mask = h.vertex_mask().checked_shl(g.n() as u32).unwrap_or(0);
    let mut adj = Vec::with_capacity(n);
    adj.extend((0..g.n()).map(|v| g.adj[v] | h_mask));
    adj.extend((0..h.n()).map(|v| h.adj[v].checked_shl(g.n() as u32).unwrap_or(0) | g_mask));
    Ok(Graph::from_masks(adj))
}
