//! Exhaustive search for bad assignments.
//!
//! The search runs over block systems, but not all of them. If two colors have
//! disjoint supports they can be merged into one color without making the
//! assignment colorable, because a coloring of the merged assignment uses the
//! merged color on an independent set and can be split back. Repeating the
//! merge ends in an assignment whose supports pairwise intersect, so a bad
//! assignment exists iff a bad intersecting one does. Merging may turn a
//! non-constant assignment into the constant one; the chains that do so pass
//! through a system `V^(k-1) + {A, V \ A}`, and those are tested directly.
//!
//! Inside the intersecting search a subtree is skipped as soon as every vertex
//! has a color and the partial assignment is already colorable: completing it
//! only adds colors.

use serde::{Deserialize, Serialize};

use super::blocks::subsets_from;
use super::{colorable_masks, BlockSystem, ListAssignment};
use crate::coloring::{classify_criticality, is_k_colorable, Deletion};
use crate::graph::{bit, bits, Graph};
use crate::limits::{first_witness, Cancel, Exhausted, Limits, Meter, SearchOutcome};

struct Dfs<'a> {
    g: &'a Graph,
    k: usize,
    full: u64,
    skip_constant: bool,
    meter: &'a Meter,
    cancel: &'a Cancel<'a>,
    remaining: Vec<usize>,
    lists: Vec<u128>,
    blocks: Vec<u64>,
}

impl Dfs<'_> {
    fn push(&mut self, m: u64) -> u64 {
        let idx = self.blocks.len();
        let mut closed = 0;
        for v in bits(m) {
            self.remaining[v] -= 1;
            self.lists[v] |= 1u128 << idx;
            if self.remaining[v] == 0 {
                closed |= bit(v);
            }
        }
        self.blocks.push(m);
        closed
    }

    fn pop(&mut self) {
        let m = self.blocks.pop().unwrap();
        let idx = self.blocks.len();
        for v in bits(m) {
            self.remaining[v] += 1;
            self.lists[v] &= !(1u128 << idx);
        }
    }

    fn go(&mut self, open: u64, lo: u64) -> Result<bool, Exhausted> {
        self.meter.tick()?;
        if self.cancel.cancelled() {
            return Ok(false);
        }
        if open == 0 {
            if self.skip_constant && self.blocks.iter().all(|&b| b == self.full) {
                return Ok(false);
            }
            return Ok(!colorable_masks(self.g, &self.lists));
        }
        let covered = (0..self.g.n())
            .filter(|&v| self.remaining[v] < self.k)
            .fold(0u64, |m, v| m | bit(v));
        if covered == self.full && colorable_masks(self.g, &self.lists) {
            return Ok(false);
        }
        for m in subsets_from(open, lo) {
            if self.blocks.iter().any(|&b| b & m == 0) {
                continue;
            }
            let closed = self.push(m);
            if self.go(open & !closed, m)? {
                return Ok(true);
            }
            self.pop();
        }
        Ok(false)
    }
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        bit(n) - 1
    }
}

fn search(g: &Graph, k: usize, skip_constant: bool, limits: &Limits) -> SearchOutcome<Vec<u64>> {
    let n = g.n();
    if n == 0 {
        return SearchOutcome::NoneExists;
    }
    if k == 0 {
        // The only 0-assignment is the (constant) empty one, and it is bad.
        return if skip_constant {
            SearchOutcome::NoneExists
        } else {
            SearchOutcome::Found(Vec::new())
        };
    }
    if n * k > 128 {
        return SearchOutcome::Unknown { nodes: 0 };
    }
    let full = full_mask(n);
    let meter = Meter::new(limits);
    let firsts: Vec<u64> = subsets_from(full, 1).collect();
    let main = first_witness(limits, &meter, firsts.len(), |i, cancel| {
        let mut dfs = Dfs {
            g,
            k,
            full,
            skip_constant,
            meter: &meter,
            cancel,
            remaining: vec![k; n],
            lists: vec![0; n],
            blocks: Vec::with_capacity(n * k),
        };
        let m = firsts[i];
        let closed = dfs.push(m);
        Ok(dfs.go(full & !closed, m)?.then(|| dfs.blocks.clone()))
    });
    if !matches!(main, SearchOutcome::NoneExists) {
        return main;
    }

    // Splits of one color class: V^(k-1) + {A, V \ A} with 0 in A.
    for a in std::iter::once(1).chain(subsets_from(full & !1, 0).map(|s| s | 1)) {
        if a == full {
            continue;
        }
        if meter.tick().is_err() {
            return SearchOutcome::Unknown {
                nodes: meter.used(),
            };
        }
        let mut blocks = vec![a, full & !a];
        blocks.extend(std::iter::repeat_n(full, k - 1));
        let lists: Vec<u128> = (0..n)
            .map(|v| {
                blocks
                    .iter()
                    .enumerate()
                    .filter(|(_, &b)| b & bit(v) != 0)
                    .fold(0u128, |acc, (i, _)| acc | 1 << i)
            })
            .collect();
        if !colorable_masks(g, &lists) {
            blocks.sort_unstable();
            return SearchOutcome::Found(blocks);
        }
    }
    SearchOutcome::NoneExists
}

fn to_assignment(g: &Graph, k: usize, blocks: Vec<u64>) -> ListAssignment {
    BlockSystem::new(g.n(), k, blocks)
        .expect("search produces valid block systems")
        .to_assignment()
}

/// A bad `k`-assignment other than the constant one, if any exists.
pub fn find_bad_nonconstant_assignment(
    g: &Graph,
    k: usize,
    limits: &Limits,
) -> SearchOutcome<ListAssignment> {
    match search(g, k, true, limits) {
        SearchOutcome::Found(b) => SearchOutcome::Found(to_assignment(g, k, b)),
        SearchOutcome::NoneExists => SearchOutcome::NoneExists,
        SearchOutcome::Unknown { nodes } => SearchOutcome::Unknown { nodes },
    }
}

/// Any bad `k`-assignment, the constant one included.
pub fn find_bad_assignment(g: &Graph, k: usize, limits: &Limits) -> SearchOutcome<ListAssignment> {
    match search(g, k, false, limits) {
        SearchOutcome::Found(b) => SearchOutcome::Found(to_assignment(g, k, b)),
        SearchOutcome::NoneExists => SearchOutcome::NoneExists,
        SearchOutcome::Unknown { nodes } => SearchOutcome::Unknown { nodes },
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Choosability {
    /// `bad` is a bad `(value - 1)`-assignment when `value >= 1`.
    Exact {
        value: usize,
        bad: Option<ListAssignment>,
    },
    Unknown {
        lower_bound: usize,
        nodes: u64,
    },
}

/// Least `k` with no bad `k`-assignment. Starts at the chromatic number and
/// stops at degeneracy + 1, where greedy coloring always succeeds.
pub fn list_chromatic_number(g: &Graph, limits: &Limits) -> Choosability {
    let n = g.n();
    if n == 0 {
        return Choosability::Exact {
            value: 0,
            bad: None,
        };
    }
    let chi = crate::coloring::chromatic_number(g);
    let ceiling = g.degeneracy() + 1;
    let mut bad = Some(ListAssignment::constant(n, chi - 1));
    for k in chi..ceiling {
        match find_bad_assignment(g, k, limits) {
            SearchOutcome::Found(l) => bad = Some(l),
            SearchOutcome::NoneExists => return Choosability::Exact { value: k, bad },
            SearchOutcome::Unknown { nodes } => {
                return Choosability::Unknown {
                    lower_bound: k,
                    nodes,
                }
            }
        }
    }
    Choosability::Exact {
        value: ceiling,
        bad,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CriticalityMode {
    /// Strongly critical: criticality plus the list condition.
    Critical,
    /// Strongly chromatic-choosable: vertex-criticality plus the list condition.
    VertexCritical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrongDecision {
    Holds,
    NotCritical,
    NonconstantBadAssignmentFound,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrongWitness {
    Deletion(Deletion),
    Assignment(ListAssignment),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongVerdict {
    pub decision: StrongDecision,
    pub mode: CriticalityMode,
    pub k: usize,
    pub witness: Option<StrongWitness>,
}

pub fn strong_criticality_verdict(
    g: &Graph,
    mode: CriticalityMode,
    limits: &Limits,
) -> StrongVerdict {
    let cv = classify_criticality(g);
    let k = cv.chromatic_number;
    let verdict = |decision, witness| StrongVerdict {
        decision,
        mode,
        k,
        witness,
    };
    if k == 0 {
        return verdict(StrongDecision::NotCritical, None);
    }
    match mode {
        CriticalityMode::Critical if !cv.is_critical => {
            return verdict(
                StrongDecision::NotCritical,
                cv.witness.map(StrongWitness::Deletion),
            );
        }
        CriticalityMode::VertexCritical if !cv.is_vertex_critical => {
            let vertex = (0..g.n())
                .find(|&v| !is_k_colorable(&g.without_vertices(&[v]).0, k - 1))
                .expect("a vertex witness exists");
            return verdict(
                StrongDecision::NotCritical,
                Some(StrongWitness::Deletion(Deletion::Vertex { vertex })),
            );
        }
        _ => {}
    }
    match find_bad_nonconstant_assignment(g, k - 1, limits) {
        SearchOutcome::Found(l) => verdict(
            StrongDecision::NonconstantBadAssignmentFound,
            Some(StrongWitness::Assignment(l)),
        ),
        SearchOutcome::NoneExists => verdict(StrongDecision::Holds, None),
        SearchOutcome::Unknown { .. } => verdict(StrongDecision::Unknown, None),
    }
}
