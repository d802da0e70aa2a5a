//! Cover JSON:
//! `{"schema", "graph6", "k", "sizes"?, "matchings": [{"u", "v", "pairs"}]}`.
//!
//! `sizes` is present only when list sizes differ; `k` is then the largest
//! size. Edges without an entry have an empty matching.

use serde::{Deserialize, Serialize};

use super::{Cover, DpError};
use crate::graph::{encode_graph6, parse_graph6};

pub const COVER_SCHEMA: &str = "critickit.cover/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingDoc {
    pub u: usize,
    pub v: usize,
    /// `[i, j]`: index `i` of `u` matched to index `j` of `v`.
    pub pairs: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverDoc {
    pub schema: String,
    pub graph6: String,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sizes: Option<Vec<usize>>,
    pub matchings: Vec<MatchingDoc>,
}

impl From<&Cover> for CoverDoc {
    fn from(c: &Cover) -> Self {
        let uniform = c.uniform_size();
        CoverDoc {
            schema: COVER_SCHEMA.to_string(),
            graph6: encode_graph6(c.graph()),
            k: uniform.unwrap_or_else(|| c.sizes().iter().copied().max().unwrap_or(0)),
            sizes: uniform.is_none().then(|| c.sizes().to_vec()),
            matchings: c
                .edges()
                .iter()
                .enumerate()
                .map(|(e, &(u, v))| MatchingDoc {
                    u,
                    v,
                    pairs: c.pairs(e).into_iter().map(|(i, j)| [i, j]).collect(),
                })
                .collect(),
        }
    }
}

/// Checks a cover document and builds the cover. The first violated
/// condition is reported with its location.
pub fn validate_cover(doc: &CoverDoc) -> Result<Cover, DpError> {
    if doc.schema != COVER_SCHEMA {
        return Err(DpError::Schema(doc.schema.clone()));
    }
    let g = parse_graph6(&doc.graph6)?;
    let sizes = doc.sizes.clone().unwrap_or_else(|| vec![doc.k; g.n()]);
    let mut c = Cover::empty(&g, sizes)?;
    let mut seen = vec![false; c.edges().len()];
    for m in &doc.matchings {
        if m.u >= g.n() || m.v >= g.n() || !g.has_edge(m.u, m.v) {
            return Err(DpError::NotAnEdge { u: m.u, v: m.v });
        }
        let e = g.edge_index(m.u, m.v).unwrap();
        if std::mem::replace(&mut seen[e], true) {
            return Err(DpError::DuplicateMatching { u: m.u, v: m.v });
        }
        for &[i, j] in &m.pairs {
            c.add_pair(m.u, m.v, i, j)?;
        }
    }
    Ok(c)
}

impl Cover {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&CoverDoc::from(self)).expect("cover documents serialize")
    }

    pub fn from_json(text: &str) -> Result<Cover, DpError> {
        let doc: CoverDoc = serde_json::from_str(text)
            .map_err(|e| DpError::Schema(format!("bad cover JSON: {e}")))?;
        validate_cover(&doc)
    }
}
