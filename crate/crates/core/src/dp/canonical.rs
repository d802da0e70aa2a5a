//! Canonicity by label propagation, and tree normalization.

use serde::{Deserialize, Serialize};

use super::{Cover, DpError};

/// `labels[v][i]`: the common label of index `i` of vertex `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CanonicalLabeling {
    pub labels: Vec<Vec<usize>>,
}

impl CanonicalLabeling {
    /// Checks bijectivity per vertex and that matched pairs are exactly the
    /// pairs with equal labels.
    pub fn verify(&self, c: &Cover) -> bool {
        let Some(k) = c.uniform_size() else {
            return false;
        };
        if self.labels.len() != c.graph().n() {
            return false;
        }
        let bijective = self.labels.iter().all(|l| {
            let mut seen = vec![false; k];
            l.len() == k
                && l.iter()
                    .all(|&x| x < k && !std::mem::replace(&mut seen[x], true))
        });
        bijective
            && c.edges().iter().enumerate().all(|(e, &(u, v))| {
                (0..k).all(|i| {
                    (0..k).all(|j| {
                        (c.map(e)[i] == Some(j)) == (self.labels[u][i] == self.labels[v][j])
                    })
                })
            })
    }
}

/// Spreads labels from the roots along `tree` (edges in any orientation).
/// Requires a full cover. Returns `None` if some vertex stays unlabeled.
fn propagate(c: &Cover, roots: &[usize], tree: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    let n = c.graph().n();
    let mut labels: Vec<Option<Vec<usize>>> = vec![None; n];
    for &r in roots {
        labels[r] = Some((0..c.size(r)).collect());
    }
    let mut pending: Vec<(usize, usize)> = tree.to_vec();
    while !pending.is_empty() {
        let before = pending.len();
        pending.retain(|&(a, b)| {
            let (from, to) = match (&labels[a], &labels[b]) {
                (Some(_), None) => (a, b),
                (None, Some(_)) => (b, a),
                _ => return labels[a].is_none(),
            };
            let src = labels[from].clone().unwrap();
            let mut dst = vec![usize::MAX; c.size(to)];
            for (i, &lab) in src.iter().enumerate() {
                if let Some(j) = c.matched(from, to, i) {
                    dst[j] = lab;
                }
            }
            labels[to] = Some(dst);
            false
        });
        if pending.len() == before {
            break;
        }
    }
    labels.into_iter().collect()
}

/// A canonical labeling if the cover is canonical. Labels start as the
/// identity at each component root of a BFS forest and follow the tree
/// matchings; the cover is canonical iff every remaining edge agrees.
pub fn canonical_labeling(c: &Cover) -> Option<CanonicalLabeling> {
    if !c.is_full() {
        return None;
    }
    let forest = c.graph().bfs_forest();
    let labeling = CanonicalLabeling {
        labels: propagate(c, &forest.roots, &forest.tree_edges)?,
    };
    let k = c.uniform_size()?;
    let agrees = c.edges().iter().enumerate().all(|(e, &(u, v))| {
        (0..k).all(|i| c.map(e)[i].is_some_and(|j| labeling.labels[u][i] == labeling.labels[v][j]))
    });
    agrees.then_some(labeling)
}

/// Relabels a full cover so that every matching on `tree` is the identity.
/// The tree must span the connected host; labels are fixed at vertex 0.
pub fn normalize_cover(c: &Cover, tree: &[(usize, usize)]) -> Result<Cover, DpError> {
    let g = c.graph();
    if let Some(&(u, v)) = tree.iter().find(|&&(u, v)| !g.has_edge(u, v)) {
        return Err(DpError::NotAnEdge { u, v });
    }
    if !c.is_full() {
        if let Some(&(u, v)) = c.edges().iter().find(|&&(u, v)| c.size(u) != c.size(v)) {
            return Err(DpError::UnequalSizes { u, v });
        }
        let e = (0..c.edges().len())
            .find(|&e| c.map(e).iter().any(Option::is_none))
            .unwrap();
        let (u, v) = c.edges()[e];
        return Err(DpError::NotFull { u, v });
    }
    if g.n() == 0 {
        return Ok(c.clone());
    }
    let labels = propagate(c, &[0], tree).ok_or(DpError::Disconnected)?;
    c.relabel(&labels)
}
