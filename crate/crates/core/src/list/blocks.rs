//! Block systems: a k-assignment up to color renaming, stored as the multiset
//! of color supports.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::ControlFlow;

use super::{ListAssignment, ListError};
use crate::graph::{bit, bits};

/// Nonempty vertex subsets (as bitmasks), sorted ascending, covering every
/// vertex exactly `multiplicity` times.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockSystem {
    n: usize,
    multiplicity: usize,
    blocks: Vec<u64>,
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        bit(n) - 1
    }
}

impl BlockSystem {
    pub fn new(n: usize, multiplicity: usize, mut blocks: Vec<u64>) -> Result<Self, ListError> {
        let full = full_mask(n);
        if let Some(index) = blocks.iter().position(|&b| b == 0 || b & !full != 0) {
            return Err(ListError::BadBlock { index, n });
        }
        for v in 0..n {
            let count = blocks.iter().filter(|&&b| b & bit(v) != 0).count();
            if count != multiplicity {
                return Err(ListError::Coverage {
                    vertex: v,
                    count,
                    expected: multiplicity,
                });
            }
        }
        blocks.sort_unstable();
        Ok(BlockSystem {
            n,
            multiplicity,
            blocks,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    pub fn blocks(&self) -> &[u64] {
        &self.blocks
    }

    pub fn is_constant(&self) -> bool {
        let full = full_mask(self.n);
        self.blocks.iter().all(|&b| b == full)
    }

    /// Color `i + 1` is given to the vertices of the `i`-th block.
    pub fn to_assignment(&self) -> ListAssignment {
        let mut lists = vec![BTreeSet::new(); self.n];
        for (i, &b) in self.blocks.iter().enumerate() {
            for v in bits(b) {
                lists[v].insert(i as u32 + 1);
            }
        }
        ListAssignment::new(lists)
    }

    /// The supports of the colors of a uniform assignment.
    pub fn from_assignment(l: &ListAssignment) -> Result<Self, ListError> {
        let k = l.lists().first().map_or(0, BTreeSet::len);
        if let Some(bad) = l.lists().iter().find(|s| s.len() != k) {
            return Err(ListError::NonUniform(k, bad.len()));
        }
        let mut support: BTreeMap<u32, u64> = BTreeMap::new();
        for (v, s) in l.lists().iter().enumerate() {
            for &c in s {
                *support.entry(c).or_default() |= bit(v);
            }
        }
        BlockSystem::new(l.len(), k, support.into_values().collect())
    }
}

/// Validating readout of a block list into an assignment. Colors are numbered
/// from 1 in the order the blocks are given.
pub fn assignment_from_blocks(
    n: usize,
    multiplicity: usize,
    blocks: &[u64],
) -> Result<ListAssignment, ListError> {
    BlockSystem::new(n, multiplicity, blocks.to_vec())?;
    let mut lists = vec![BTreeSet::new(); n];
    for (i, &b) in blocks.iter().enumerate() {
        for v in bits(b) {
            lists[v].insert(i as u32 + 1);
        }
    }
    Ok(ListAssignment::new(lists))
}

/// Visits every block system on `n` vertices with the given multiplicity, in
/// lexicographic order of the sorted block sequences.
pub fn for_each_block_system<F>(n: usize, multiplicity: usize, mut f: F) -> ControlFlow<()>
where
    F: FnMut(&[u64]) -> ControlFlow<()>,
{
    let mut remaining = vec![multiplicity; n];
    let mut blocks = Vec::new();
    let open = if multiplicity == 0 { 0 } else { full_mask(n) };
    walk(&mut remaining, open, 1, &mut blocks, &mut f)
}

fn walk<F>(
    remaining: &mut [usize],
    open: u64,
    lo: u64,
    blocks: &mut Vec<u64>,
    f: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[u64]) -> ControlFlow<()>,
{
    if open == 0 {
        return f(blocks);
    }
    for m in subsets_from(open, lo) {
        let mut closed = 0;
        for v in bits(m) {
            remaining[v] -= 1;
            if remaining[v] == 0 {
                closed |= bit(v);
            }
        }
        blocks.push(m);
        let flow = walk(remaining, open & !closed, m, blocks, f);
        blocks.pop();
        for v in bits(m) {
            remaining[v] += 1;
        }
        flow?;
    }
    ControlFlow::Continue(())
}

/// Nonempty subsets of `set` that are `>= lo`, ascending.
pub(crate) fn subsets_from(set: u64, lo: u64) -> impl Iterator<Item = u64> {
    let mut s = 0u64;
    let mut done = set == 0;
    std::iter::from_fn(move || loop {
        if done {
            return None;
        }
        s = s.wrapping_sub(set) & set;
        if s == 0 {
            done = true;
            return None;
        }
        if s >= lo {
            return Some(s);
        }
    })
}
