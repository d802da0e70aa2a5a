//! Tree-normalized full covers: identity on the BFS spanning tree, every
//! permutation on each remaining edge ("chord").
//!
//! Covers are addressed by a digit per chord (an index into the
//! lexicographic permutation list); the first chord is the most significant.
//! Digit 0 is the identity, so the first cover is the canonical one.

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicU64, Ordering};

use super::{count_transversals, find_transversal, Cover, DpError};
use crate::graph::Graph;
use crate::limits::{Cancel, Exhausted, Meter};

/// All permutations of `0..k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(k), &mut vec![false; k], &mut out);
    out
}

/// Largest list size for which permutation tables are built.
const MAX_ENUM_K: usize = 9;

pub struct FullCoverEnumerator {
    base: Cover,
    tree: Vec<(usize, usize)>,
    chords: Vec<usize>,
    perms: Vec<Vec<usize>>,
    count: u128,
    next: Option<Vec<usize>>,
}

impl FullCoverEnumerator {
    pub fn new(g: &Graph, k: usize) -> Result<Self, DpError> {
        let tree = g.spanning_tree().map_err(|_| DpError::Disconnected)?;
        let edges = g.edges();
        let chords: Vec<usize> = (0..edges.len())
            .filter(|&e| {
                let (u, v) = edges[e];
                !tree.contains(&(u, v)) && !tree.contains(&(v, u))
            })
            .collect();
        let factorial: u128 = (1..=k as u128).product();
        let count = (0..chords.len()).fold(1u128, |acc, _| acc.saturating_mul(factorial));
        if k > MAX_ENUM_K {
            return Err(DpError::TooManyCovers { count, cap: 0 });
        }
        let base = super::make_canonical_cover(g, k)?;
        let perms = permutations(k);
        let start = vec![0; chords.len()];
        Ok(FullCoverEnumerator {
            base,
            tree,
            chords,
            perms,
            count,
            next: Some(start),
        })
    }

    /// Number of normalized covers, `(k!)^(|E| - n + 1)` (saturating).
    pub fn total(&self) -> u128 {
        self.count
    }

    pub fn k(&self) -> usize {
        self.perms.first().map_or(0, Vec::len)
    }

    pub fn tree(&self) -> &[(usize, usize)] {
        &self.tree
    }

    /// Chords as `(u, v)` with `u < v`, most significant first.
    pub fn chords(&self) -> Vec<(usize, usize)> {
        self.chords.iter().map(|&e| self.base.edges()[e]).collect()
    }

    pub fn permutation_list(&self) -> &[Vec<usize>] {
        &self.perms
    }

    /// The cover with permutation `perms[digits[c]]` on chord `c`.
    pub fn cover_for(&self, digits: &[usize]) -> Cover {
        let mut c = self.base.clone();
        for (&e, &d) in self.chords.iter().zip(digits) {
            c.maps[e] = self.perms[d].iter().map(|&j| Some(j)).collect();
        }
        c
    }

    /// Independent scan units: one per permutation on the first chord.
    pub(crate) fn partitions(&self) -> usize {
        if self.chords.is_empty() {
            1
        } else {
            self.perms.len()
        }
    }

    /// Prepares the per-partition scan (builds the bitset tables once).
    pub(crate) fn scanner(&self) -> Scanner<'_> {
        match BitScan::new(self) {
            Some(b) => Scanner::Bits(b),
            None => Scanner::Slow(self),
        }
    }

    fn scan_slow(
        &self,
        part: usize,
        meter: &Meter,
        cancel: Option<&Cancel>,
        scanned: &AtomicU64,
        visit: &mut dyn FnMut(&[usize], &Leaf) -> ControlFlow<()>,
    ) -> Result<(), Exhausted> {
        let r = self.chords.len();
        let mut digits = vec![0; r];
        if r > 0 {
            digits[0] = part;
        }
        let base = self.perms.len();
        loop {
            meter.tick()?;
            if cancel.is_some_and(|c| c.cancelled()) {
                return Ok(());
            }
            let cover = self.cover_for(&digits);
            scanned.fetch_add(1, Ordering::Relaxed);
            if visit(&digits, &Leaf::Cover(&cover)).is_break() {
                return Ok(());
            }
            // odometer over digits 1..r, last digit fastest
            let mut i = r;
            loop {
                if i <= 1 {
                    return Ok(());
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < base {
                    break;
                }
                digits[i] = 0;
            }
        }
    }
}

impl Iterator for FullCoverEnumerator {
    type Item = Cover;

    fn next(&mut self) -> Option<Cover> {
        let digits = self.next.take()?;
        let r = self.chords.len();
        let cover = self.cover_for(&digits);
        let mut succ = digits;
        let mut i = r;
        self.next = loop {
            if i == 0 {
                break None;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.perms.len() {
                break Some(succ);
            }
            succ[i] = 0;
        };
        Some(cover)
    }
}

pub(crate) enum Scanner<'a> {
    Bits(BitScan<'a>),
    Slow(&'a FullCoverEnumerator),
}

impl Scanner<'_> {
    /// Visits every cover of one partition in enumeration order.
    pub fn run(
        &self,
        part: usize,
        meter: &Meter,
        cancel: Option<&Cancel>,
        scanned: &AtomicU64,
        visit: &mut dyn FnMut(&[usize], &Leaf) -> ControlFlow<()>,
    ) -> Result<(), Exhausted> {
        match self {
            Scanner::Bits(b) => b.run(part, meter, cancel, scanned, visit),
            Scanner::Slow(en) => en.scan_slow(part, meter, cancel, scanned, visit),
        }
    }
}

/// What a scan knows about one cover.
pub(crate) enum Leaf<'a> {
    /// Transversal set as the AND of two bitsets over index tuples.
    Bits(&'a [u64], Option<&'a [u64]>),
    Cover(&'a Cover),
}

impl Leaf<'_> {
    pub fn is_bad(&self) -> bool {
        match self {
            Leaf::Bits(a, Some(b)) => a.iter().zip(b.iter()).all(|(x, y)| x & y == 0),
            Leaf::Bits(a, None) => a.iter().all(|&x| x == 0),
            Leaf::Cover(c) => find_transversal(c).is_none(),
        }
    }

    pub fn count(&self) -> u64 {
        match self {
            Leaf::Bits(a, Some(b)) => a
                .iter()
                .zip(b.iter())
                .map(|(x, y)| (x & y).count_ones() as u64)
                .sum(),
            Leaf::Bits(a, None) => a.iter().map(|x| x.count_ones() as u64).sum(),
            Leaf::Cover(c) => count_transversals(c),
        }
    }
}

/// Bitset over all index tuples `t = sum T(v) k^v`. The tree part of every
/// normalized cover is the same, so its transversals are computed once and
/// each chord permutation contributes a precomputed mask of the tuples it
/// leaves alone.
pub(crate) struct BitScan<'a> {
    en: &'a FullCoverEnumerator,
    words: usize,
    init: Vec<u64>,
    /// `allowed[c][p]`
    allowed: Vec<Vec<Vec<u64>>>,
}

const MAX_TUPLES: u128 = 1 << 20;
const MAX_TABLE_WORDS: u128 = 1 << 23;
const MAX_BUILD_STEPS: u128 = 200_000_000;

impl<'a> BitScan<'a> {
    fn new(en: &'a FullCoverEnumerator) -> Option<Self> {
        let g = en.base.graph();
        let n = g.n();
        let k = en.k();
        let tuples = (0..n).try_fold(1u128, |acc, _| acc.checked_mul(k as u128))?;
        let r = en.chords.len() as u128;
        let p = en.perms.len() as u128;
        let words = tuples.div_ceil(64);
        if tuples > MAX_TUPLES
            || r * p * words > MAX_TABLE_WORDS
            || tuples * (r * p + n as u128 * n as u128) > MAX_BUILD_STEPS
        {
            return None;
        }
        let tuples = tuples as usize;
        let words = words as usize;
        let chords = en.chords();
        let mut init = vec![0u64; words];
        let mut allowed = vec![vec![vec![0u64; words]; en.perms.len()]; chords.len()];
        let mut digit = vec![0usize; n];
        for t in 0..tuples {
            let (w, b) = (t / 64, 1u64 << (t % 64));
            if en.tree.iter().all(|&(u, v)| digit[u] != digit[v]) {
                init[w] |= b;
            }
            for (c, &(u, v)) in chords.iter().enumerate() {
                for (pi, perm) in en.perms.iter().enumerate() {
                    if perm[digit[u]] != digit[v] {
                        allowed[c][pi][w] |= b;
                    }
                }
            }
            for d in digit.iter_mut() {
                *d += 1;
                if *d < k {
                    break;
                }
                *d = 0;
            }
        }
        Some(BitScan {
            en,
            words,
            init,
            allowed,
        })
    }

    fn run(
        &self,
        part: usize,
        meter: &Meter,
        cancel: Option<&Cancel>,
        scanned: &AtomicU64,
        visit: &mut dyn FnMut(&[usize], &Leaf) -> ControlFlow<()>,
    ) -> Result<(), Exhausted> {
        let r = self.allowed.len();
        if r == 0 {
            meter.tick()?;
            scanned.fetch_add(1, Ordering::Relaxed);
            let _ = visit(&[], &Leaf::Bits(&self.init, None));
            return Ok(());
        }
        let mut digits = vec![0; r];
        digits[0] = part;
        if r == 1 {
            meter.tick()?;
            scanned.fetch_add(1, Ordering::Relaxed);
            let _ = visit(
                &digits,
                &Leaf::Bits(&self.init, Some(&self.allowed[0][part])),
            );
            return Ok(());
        }
        let mut stack = vec![vec![0u64; self.words]; r];
        and_into(&mut stack[1], &self.init, &self.allowed[0][part]);
        let _ = self.dfs(1, &mut stack, &mut digits, meter, cancel, scanned, visit)?;
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &self,
        d: usize,
        stack: &mut [Vec<u64>],
        digits: &mut [usize],
        meter: &Meter,
        cancel: Option<&Cancel>,
        scanned: &AtomicU64,
        visit: &mut dyn FnMut(&[usize], &Leaf) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>, Exhausted> {
        if cancel.is_some_and(|c| c.cancelled()) {
            return Ok(ControlFlow::Break(()));
        }
        let r = self.allowed.len();
        let np = self.en.perms.len();
        if d == r - 1 {
            meter.tick_n(np as u64)?;
            scanned.fetch_add(np as u64, Ordering::Relaxed);
            let cur = &stack[d];
            for p in 0..np {
                digits[d] = p;
                if visit(digits, &Leaf::Bits(cur, Some(&self.allowed[d][p]))).is_break() {
                    return Ok(ControlFlow::Break(()));
                }
            }
            return Ok(ControlFlow::Continue(()));
        }
        meter.tick()?;
        for p in 0..np {
            digits[d] = p;
            let (lo, hi) = stack.split_at_mut(d + 1);
            and_into(&mut hi[0], &lo[d], &self.allowed[d][p]);
            if self
                .dfs(d + 1, stack, digits, meter, cancel, scanned, visit)?
                .is_break()
            {
                return Ok(ControlFlow::Break(()));
            }
        }
        digits[d] = 0;
        Ok(ControlFlow::Continue(()))
    }
}

fn and_into(dst: &mut [u64], a: &[u64], b: &[u64]) {
    for ((d, x), y) in dst.iter_mut().zip(a).zip(b) {
        *d = x & y;
    }
}
