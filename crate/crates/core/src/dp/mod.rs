//! DP-coloring: covers, transversals, canonicity, tree normalization,
//! full-cover enumeration and the verdicts built on it.
//!
//! A cover stores a list size per vertex and, for every host edge `uv` with
//! `u < v`, a partial injection from indices of `u` to indices of `v`. The
//! colors of vertex `v` are the pairs `(v, i)` with `i < size(v)`.

mod canonical;
mod enumerate;
mod json;
mod transversal;
mod verdict;

use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::list::{ListAssignment, ListError};

pub use canonical::{canonical_labeling, normalize_cover, CanonicalLabeling};
pub use enumerate::{permutations, FullCoverEnumerator};
pub use json::{validate_cover, CoverDoc, MatchingDoc, COVER_SCHEMA};
pub use transversal::{count_transversals, find_transversal};
pub use verdict::{
    dp_chromatic_number, pdp_value, robust_criticality_verdict, DpNumber, Pdp, RobustDecision,
    RobustVerdict, RobustWitness,
};

/// Largest supported list size.
pub const MAX_LIST_SIZE: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DpError {
    #[error("({u}, {v}) is not an edge of the host graph")]
    NotAnEdge { u: usize, v: usize },
    #[error("matching on ({u}, {v}) sends two indices to {index}")]
    NotInjective { u: usize, v: usize, index: usize },
    #[error("index {index} out of range for vertex {vertex} (list size {size})")]
    IndexOutOfRange {
        vertex: usize,
        index: usize,
        size: usize,
    },
    #[error("{found} list sizes given for {expected} vertices")]
    SizeCount { expected: usize, found: usize },
    #[error("list of vertex {vertex} has size {size}, above the supported {MAX_LIST_SIZE}")]
    ListTooLarge { vertex: usize, size: usize },
    #[error("lists of {u} and {v} have different sizes")]
    UnequalSizes { u: usize, v: usize },
    #[error("matching on ({u}, {v}) is not perfect")]
    NotFull { u: usize, v: usize },
    #[error("matching on ({u}, {v}) is given twice")]
    DuplicateMatching { u: usize, v: usize },
    #[error("{count} normalized covers exceed the cap of {cap}")]
    TooManyCovers { count: u128, cap: u128 },
    #[error("host graph is disconnected")]
    Disconnected,
    #[error("relabeling of vertex {vertex} is not a bijection of its list")]
    BadRelabeling { vertex: usize },
    #[error("unsupported schema {0:?}")]
    Schema(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Lists(#[from] ListError),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cover {
    graph: Graph,
    sizes: Vec<usize>,
    edges: Vec<(usize, usize)>,
    /// `maps[e][i]`: index of `v` matched to index `i` of `u`, for `edges[e] = (u, v)`.
    maps: Vec<Vec<Option<usize>>>,
}

impl std::fmt::Debug for Cover {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut d = f.debug_struct("Cover");
        d.field("sizes", &self.sizes);
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            d.field(&format!("{u}-{v}"), &self.pairs(e));
        }
        d.finish()
    }
}

impl Cover {
    /// The cover with the given list sizes and every matching empty.
    pub fn empty(graph: &Graph, sizes: Vec<usize>) -> Result<Cover, DpError> {
        if sizes.len() != graph.n() {
            return Err(DpError::SizeCount {
                expected: graph.n(),
                found: sizes.len(),
            });
        }
        if let Some(vertex) = sizes.iter().position(|&s| s > MAX_LIST_SIZE) {
            return Err(DpError::ListTooLarge {
                vertex,
                size: sizes[vertex],
            });
        }
        let edges = graph.edges();
        let maps = edges.iter().map(|&(u, _)| vec![None; sizes[u]]).collect();
        Ok(Cover {
            graph: graph.clone(),
            sizes,
            edges,
            maps,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn size(&self, v: usize) -> usize {
        self.sizes[v]
    }

    /// Host edges `(u, v)` with `u < v`, in the order the matchings are stored.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Common list size, if there is one.
    pub fn uniform_size(&self) -> Option<usize> {
        let first = self.sizes.first().copied().unwrap_or(0);
        self.sizes.iter().all(|&s| s == first).then_some(first)
    }

    pub fn map(&self, e: usize) -> &[Option<usize>] {
        &self.maps[e]
    }

    /// Matched pairs of edge `e`, ascending in the lower endpoint's index.
    pub fn pairs(&self, e: usize) -> Vec<(usize, usize)> {
        self.maps[e]
            .iter()
            .enumerate()
            .filter_map(|(i, j)| j.map(|j| (i, j)))
            .collect()
    }

    fn edge_of(&self, u: usize, v: usize) -> Result<usize, DpError> {
        self.graph
            .edge_index(u, v)
            .ok_or(DpError::NotAnEdge { u, v })
    }

    /// Index of `v` matched to index `i` of `u`.
    pub fn matched(&self, u: usize, v: usize, i: usize) -> Option<usize> {
        let e = self.graph.edge_index(u, v)?;
        if u < v {
            self.maps[e].get(i).copied().flatten()
        } else {
            self.maps[e].iter().position(|&j| j == Some(i))
        }
    }

    /// Replaces the matching on edge `e` after checking it.
    pub fn set_map(&mut self, e: usize, map: Vec<Option<usize>>) -> Result<(), DpError> {
        let (u, v) = self.edges[e];
        if map.len() != self.sizes[u] {
            return Err(DpError::SizeCount {
                expected: self.sizes[u],
                found: map.len(),
            });
        }
        let mut seen = 0u64;
        for &j in map.iter().flatten() {
            if j >= self.sizes[v] {
                return Err(DpError::IndexOutOfRange {
                    vertex: v,
                    index: j,
                    size: self.sizes[v],
                });
            }
            if seen >> j & 1 == 1 {
                return Err(DpError::NotInjective { u, v, index: j });
            }
            seen |= 1 << j;
        }
        self.maps[e] = map;
        Ok(())
    }

    /// Adds the pair `(i, j)` (index of `u`, index of `v`) to the matching on
    /// `uv`; both indices must be unmatched on that edge.
    pub fn add_pair(&mut self, u: usize, v: usize, i: usize, j: usize) -> Result<(), DpError> {
        let e = self.edge_of(u, v)?;
        let (a, b, ia, jb) = if u < v { (u, v, i, j) } else { (v, u, j, i) };
        for (vertex, index) in [(a, ia), (b, jb)] {
            if index >= self.sizes[vertex] {
                return Err(DpError::IndexOutOfRange {
                    vertex,
                    index,
                    size: self.sizes[vertex],
                });
            }
        }
        if self.maps[e][ia].is_some() {
            return Err(DpError::NotInjective {
                u: a,
                v: b,
                index: ia,
            });
        }
        if self.maps[e].contains(&Some(jb)) {
            return Err(DpError::NotInjective {
                u: a,
                v: b,
                index: jb,
            });
        }
        self.maps[e][ia] = Some(jb);
        Ok(())
    }

    /// The same cover with the matching on `uv` emptied.
    pub fn without_matching(&self, u: usize, v: usize) -> Result<Cover, DpError> {
        let e = self.edge_of(u, v)?;
        let mut c = self.clone();
        c.maps[e].iter_mut().for_each(|j| *j = None);
        Ok(c)
    }

    /// Full: equal list sizes and every matching a bijection.
    pub fn is_full(&self) -> bool {
        self.uniform_size().is_some() && self.maps.iter().all(|m| m.iter().all(Option::is_some))
    }

    /// Extends every matching to a bijection by pairing the unmatched indices
    /// of both sides in ascending order.
    pub fn complete_to_full(&self) -> Result<Cover, DpError> {
        if let Some(&(u, v)) = self
            .edges
            .iter()
            .find(|&&(u, v)| self.sizes[u] != self.sizes[v])
        {
            return Err(DpError::UnequalSizes { u, v });
        }
        let mut c = self.clone();
        for (e, &(_, v)) in self.edges.iter().enumerate() {
            let used: Vec<bool> = (0..self.sizes[v])
                .map(|j| self.maps[e].contains(&Some(j)))
                .collect();
            let mut free = (0..self.sizes[v]).filter(|&j| !used[j]);
            for slot in c.maps[e].iter_mut().filter(|s| s.is_none()) {
                *slot = free.next();
            }
        }
        Ok(c)
    }

    /// Renames index `i` of vertex `v` to `perms[v][i]`.
    pub fn relabel(&self, perms: &[Vec<usize>]) -> Result<Cover, DpError> {
        if perms.len() != self.graph.n() {
            return Err(DpError::SizeCount {
                expected: self.graph.n(),
                found: perms.len(),
            });
        }
        for (vertex, p) in perms.iter().enumerate() {
            let mut seen = vec![false; self.sizes[vertex]];
            if p.len() != seen.len() {
                return Err(DpError::BadRelabeling { vertex });
            }
            for &x in p {
                if x >= seen.len() || std::mem::replace(&mut seen[x], true) {
                    return Err(DpError::BadRelabeling { vertex });
                }
            }
        }
        let mut c = self.clone();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            let mut map = vec![None; self.sizes[u]];
            for (i, j) in self.pairs(e) {
                map[perms[u][i]] = Some(perms[v][j]);
            }
            c.maps[e] = map;
        }
        Ok(c)
    }

    /// True iff `choice` picks a valid index per vertex with no matched pair.
    pub fn is_transversal(&self, choice: &[usize]) -> bool {
        choice.len() == self.graph.n()
            && choice.iter().zip(&self.sizes).all(|(&i, &s)| i < s)
            && self
                .edges
                .iter()
                .enumerate()
                .all(|(e, &(u, v))| self.maps[e][choice[u]] != Some(choice[v]))
    }
}

/// The canonical `k`-fold cover: identity matching on every edge.
pub fn make_canonical_cover(g: &Graph, k: usize) -> Result<Cover, DpError> {
    let mut c = Cover::empty(g, vec![k; g.n()])?;
    for map in &mut c.maps {
        *map = (0..k).map(Some).collect();
    }
    Ok(c)
}

/// The canonical cover with the matching of edge `uv` emptied.
pub fn make_near_canonical(g: &Graph, k: usize, u: usize, v: usize) -> Result<Cover, DpError> {
    if !g.has_edge(u, v) {
        return Err(DpError::NotAnEdge { u, v });
    }
    make_canonical_cover(g, k)?.without_matching(u, v)
}

/// The cover whose colorings correspond to the `L`-colorings: indices list
/// `L(v)` in ascending color order and equal colors are matched.
pub fn cover_from_assignment(g: &Graph, l: &ListAssignment) -> Result<Cover, DpError> {
    if l.len() < g.n() {
        return Err(ListError::MissingList { vertex: l.len() }.into());
    }
    if l.len() > g.n() {
        return Err(ListError::ExtraLists {
            expected: g.n(),
            found: l.len(),
        }
        .into());
    }
    let colors: Vec<Vec<u32>> = l
        .lists()
        .iter()
        .map(|s| s.iter().copied().collect())
        .collect();
    let mut c = Cover::empty(g, colors.iter().map(Vec::len).collect())?;
    for (e, &(u, v)) in c.edges.clone().iter().enumerate() {
        c.maps[e] = colors[u]
            .iter()
            .map(|col| colors[v].binary_search(col).ok())
            .collect();
    }
    Ok(c)
}
