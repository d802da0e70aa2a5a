//! List coloring: list assignments, L-colorability, exhaustive search for bad
//! assignments, choosability and strong criticality.

mod blocks;
mod search;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{bit, bits, Graph};

pub use blocks::{assignment_from_blocks, for_each_block_system, BlockSystem};
pub use search::{
    find_bad_assignment, find_bad_nonconstant_assignment, list_chromatic_number,
    strong_criticality_verdict, Choosability, CriticalityMode, StrongDecision, StrongVerdict,
    StrongWitness,
};

pub const LISTS_SCHEMA: &str = "critickit.lists/1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ListError {
    #[error("no list given for vertex {vertex}")]
    MissingList { vertex: usize },
    #[error("{found} lists given for a graph on {expected} vertices")]
    ExtraLists { expected: usize, found: usize },
    #[error("vertex {vertex} lies in {count} blocks, expected {expected}")]
    Coverage {
        vertex: usize,
        count: usize,
        expected: usize,
    },
    #[error("block {index} is empty or reaches outside 0..{n}")]
    BadBlock { index: usize, n: usize },
    #[error("lists have unequal sizes ({0} and {1})")]
    NonUniform(usize, usize),
    #[error("unsupported schema {0:?}")]
    Schema(String),
}

/// Per-vertex color lists. Colors are arbitrary non-negative ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ListAssignment {
    lists: Vec<BTreeSet<u32>>,
}

impl ListAssignment {
    pub fn new(lists: Vec<BTreeSet<u32>>) -> Self {
        ListAssignment { lists }
    }

    pub fn from_slices(lists: &[&[u32]]) -> Self {
        ListAssignment::new(lists.iter().map(|l| l.iter().copied().collect()).collect())
    }

    /// Every vertex gets `{1, ..., k}`.
    pub fn constant(n: usize, k: usize) -> Self {
        ListAssignment::new(vec![(1..=k as u32).collect(); n])
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn list(&self, v: usize) -> &BTreeSet<u32> {
        &self.lists[v]
    }

    pub fn lists(&self) -> &[BTreeSet<u32>] {
        &self.lists
    }

    /// True iff all lists are equal as sets.
    pub fn is_constant(&self) -> bool {
        self.lists.windows(2).all(|w| w[0] == w[1])
    }

    /// Common list size, if all lists have the same size.
    pub fn uniform_size(&self) -> Option<usize> {
        let first = self.lists.first().map_or(0, BTreeSet::len);
        self.lists.iter().all(|l| l.len() == first).then_some(first)
    }

    /// Renames colors through `f` (which should be injective).
    pub fn recolor(&self, f: impl Fn(u32) -> u32) -> Self {
        ListAssignment::new(
            self.lists
                .iter()
                .map(|l| l.iter().map(|&c| f(c)).collect())
                .collect(),
        )
    }

    /// Checks membership and properness of `coloring`.
    pub fn is_proper_coloring(&self, g: &Graph, coloring: &[u32]) -> bool {
        coloring.len() == g.n()
            && self.lists.len() == g.n()
            && coloring
                .iter()
                .enumerate()
                .all(|(v, c)| self.lists[v].contains(c))
            && g.edges().iter().all(|&(u, v)| coloring[u] != coloring[v])
    }

    fn check_against(&self, g: &Graph) -> Result<(), ListError> {
        match self.lists.len().cmp(&g.n()) {
            std::cmp::Ordering::Less => Err(ListError::MissingList {
                vertex: self.lists.len(),
            }),
            std::cmp::Ordering::Greater => Err(ListError::ExtraLists {
                expected: g.n(),
                found: self.lists.len(),
            }),
            std::cmp::Ordering::Equal => Ok(()),
        }
    }
}

pub fn is_constant_assignment(l: &ListAssignment) -> bool {
    l.is_constant()
}

/// A proper L-coloring of `g`, if one exists.
pub fn list_coloring(g: &Graph, l: &ListAssignment) -> Result<Option<Vec<u32>>, ListError> {
    l.check_against(g)?;
    let n = g.n();
    let lists: Vec<Vec<u32>> = l
        .lists
        .iter()
        .map(|s| s.iter().copied().collect())
        .collect();
    let mut color: Vec<Option<u32>> = vec![None; n];

    fn available(g: &Graph, lists: &[Vec<u32>], color: &[Option<u32>], v: usize) -> Vec<u32> {
        lists[v]
            .iter()
            .copied()
            .filter(|c| g.neighbors(v).all(|w| color[w] != Some(*c)))
            .collect()
    }

    fn solve(g: &Graph, lists: &[Vec<u32>], color: &mut [Option<u32>], uncolored: u64) -> bool {
        if uncolored == 0 {
            return true;
        }
        // Fewest remaining options first.
        let (v, options) = bits(uncolored)
            .map(|v| (v, available(g, lists, color, v)))
            .min_by_key(|(_, opts)| opts.len())
            .unwrap();
        for c in options {
            color[v] = Some(c);
            if solve(g, lists, color, uncolored & !bit(v)) {
                return true;
            }
        }
        color[v] = None;
        false
    }

    if solve(g, &lists, &mut color, g.vertex_mask()) {
        Ok(Some(color.into_iter().map(Option::unwrap).collect()))
    } else {
        Ok(None)
    }
}

pub fn is_list_colorable(g: &Graph, l: &ListAssignment) -> Result<bool, ListError> {
    list_coloring(g, l).map(|c| c.is_some())
}

/// Colorability for lists given as bitmasks over at most 128 colors.
///
/// Vertices whose available colors outnumber their uncolored neighbors are
/// set aside (they can always be colored last) before branching on the most
/// constrained vertex.
pub(crate) fn colorable_masks(g: &Graph, lists: &[u128]) -> bool {
    let mut avail = lists.to_vec();
    masks_rec(g, &mut avail, g.vertex_mask())
}

fn masks_rec(g: &Graph, avail: &mut [u128], mut active: u64) -> bool {
    loop {
        let mut peeled = false;
        for v in bits(active) {
            let open = (g.neighbor_mask(v) & active).count_ones();
            if avail[v].count_ones() > open {
                active &= !bit(v);
                peeled = true;
            }
        }
        if !peeled {
            break;
        }
    }
    if active == 0 {
        return true;
    }
    let mut v = usize::MAX;
    let mut fewest = u32::MAX;
    for w in bits(active) {
        let c = avail[w].count_ones();
        if c == 0 {
            return false;
        }
        if c < fewest {
            fewest = c;
            v = w;
        }
    }
    let nb = g.neighbor_mask(v) & active;
    let rest = active & !bit(v);
    let mut choices = avail[v];
    while choices != 0 {
        let cb = choices & choices.wrapping_neg();
        choices &= !cb;
        let touched = bits(nb)
            .filter(|&w| avail[w] & cb != 0)
            .fold(0u64, |m, w| m | bit(w));
        for w in bits(touched) {
            avail[w] &= !cb;
        }
        let ok = masks_rec(g, avail, rest);
        for w in bits(touched) {
            avail[w] |= cb;
        }
        if ok {
            return true;
        }
    }
    false
}

/// JSON form `{"schema": ..., "lists": {"0": [..], ...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListsDoc {
    pub schema: String,
    #[serde(deserialize_with = "vertex_keys")]
    pub lists: BTreeMap<usize, Vec<u32>>,
}

// Keys are read as strings first: inside tagged enums serde buffers the
// document and no longer converts "0" to an integer key by itself.
fn vertex_keys<'de, D>(d: D) -> Result<BTreeMap<usize, Vec<u32>>, D::Error>
where
    D: serde::Deserializer<'de>,
{
    let raw = BTreeMap::<String, Vec<u32>>::deserialize(d)?;
    raw.into_iter()
        .map(|(k, v)| {
            k.parse::<usize>()
                .map(|k| (k, v))
                .map_err(|_| serde::de::Error::custom(format!("vertex key {k:?} is not an index")))
        })
        .collect()
}

impl From<&ListAssignment> for ListsDoc {
    fn from(l: &ListAssignment) -> Self {
        ListsDoc {
            schema: LISTS_SCHEMA.to_string(),
            lists: l
                .lists
                .iter()
                .enumerate()
                .map(|(v, s)| (v, s.iter().copied().collect()))
                .collect(),
        }
    }
}

impl TryFrom<ListsDoc> for ListAssignment {
    type Error = ListError;

    fn try_from(doc: ListsDoc) -> Result<Self, ListError> {
        if doc.schema != LISTS_SCHEMA {
            return Err(ListError::Schema(doc.schema));
        }
        let mut lists = Vec::with_capacity(doc.lists.len());
        for (i, (v, colors)) in doc.lists.into_iter().enumerate() {
            if v != i {
                return Err(ListError::MissingList { vertex: i });
            }
            lists.push(colors.into_iter().collect());
        }
        Ok(ListAssignment::new(lists))
    }
}
