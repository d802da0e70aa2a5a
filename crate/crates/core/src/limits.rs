//! Resource limits shared by the exhaustive searches.
//!
//! A search that runs out of budget reports `Unknown`; it never turns an
//! unfinished enumeration into a negative answer.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

/// Default number of search nodes before a search gives up.
pub const DEFAULT_NODE_BUDGET: u64 = 2_000_000_000;

/// Default cap on the number of normalized covers an enumeration may need.
pub const DEFAULT_MAX_COVERS: u128 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Search nodes (block placements, scanned covers, visited instances).
    pub node_budget: u64,
    pub time_budget: Option<Duration>,
    /// Upper bound on the size of a cover enumeration, checked before it starts.
    pub max_covers: u128,
    /// Worker threads for partitioned searches; `<= 1` runs inline.
    pub workers: usize,
    /// Report the first witness in enumeration order instead of whichever
    /// worker finds one first.
    pub deterministic: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            node_budget: DEFAULT_NODE_BUDGET,
            time_budget: None,
            max_covers: DEFAULT_MAX_COVERS,
            workers: 1,
            deterministic: true,
        }
    }
}

impl Limits {
    pub fn with_node_budget(mut self, nodes: u64) -> Self {
        self.node_budget = nodes;
        self
    }

    pub fn with_max_covers(mut self, covers: u128) -> Self {
        self.max_covers = covers;
        self
    }
}

/// Outcome of a witness search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    /// The enumeration completed without finding a witness.
    NoneExists,
    /// A limit tripped before the enumeration completed.
    Unknown {
        nodes: u64,
    },
}

impl<T> SearchOutcome<T> {
    pub fn found(&self) -> Option<&T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_none_exists(&self) -> bool {
        matches!(self, SearchOutcome::NoneExists)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Exhausted;

/// Shared node counter and deadline.
pub(crate) struct Meter {
    used: AtomicU64,
    budget: u64,
    deadline: Option<Instant>,
    tripped: AtomicBool,
}

impl Meter {
    pub fn new(limits: &Limits) -> Self {
        Meter {
            used: AtomicU64::new(0),
            budget: limits.node_budget,
            deadline: limits.time_budget.map(|d| Instant::now() + d),
            tripped: AtomicBool::new(false),
        }
    }

    #[inline]
    pub fn tick(&self) -> Result<(), Exhausted> {
        self.tick_n(1)
    }

    /// Charges `n` nodes at once.
    #[inline]
    pub fn tick_n(&self, n: u64) -> Result<(), Exhausted> {
        let used = self.used.fetch_add(n, Ordering::Relaxed) + n;
        if used > self.budget {
            self.tripped.store(true, Ordering::Relaxed);
            return Err(Exhausted);
        }
        if used / 4096 != (used - n) / 4096 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.tripped.store(true, Ordering::Relaxed);
                    return Err(Exhausted);
                }
            }
        }
        if self.tripped.load(Ordering::Relaxed) {
            return Err(Exhausted);
        }
        Ok(())
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed).min(self.budget)
    }

    pub fn tripped(&self) -> bool {
        self.tripped.load(Ordering::Relaxed)
    }
}

/// Runs `work` on every partition index, in parallel when `limits.workers`
/// asks for it. Results come back in partition order.
pub(crate) fn run_partitions<T, F>(limits: &Limits, parts: usize, work: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    if limits.workers <= 1 || parts <= 1 {
        return (0..parts).map(work).collect();
    }
    match rayon::ThreadPoolBuilder::new()
        .num_threads(limits.workers)
        .build()
    {
        Ok(pool) => pool.install(|| (0..parts).into_par_iter().map(&work).collect()),
        Err(_) => (0..parts).map(work).collect(),
    }
}

/// Early-exit signal handed to one partition of a witness search.
pub(crate) struct Cancel<'a> {
    best: &'a AtomicUsize,
    index: usize,
    deterministic: bool,
}

impl Cancel<'_> {
    /// In deterministic mode only partitions after the earliest witness stop.
    #[inline]
    pub fn cancelled(&self) -> bool {
        let best = self.best.load(Ordering::Relaxed);
        if self.deterministic {
            best < self.index
        } else {
            best != usize::MAX
        }
    }
}

/// Runs a partitioned witness search and merges the partition results.
///
/// In deterministic mode the witness of the lowest partition wins, and a
/// budget trip in any earlier partition makes the answer `Unknown`.
pub(crate) fn first_witness<T, F>(
    limits: &Limits,
    meter: &Meter,
    parts: usize,
    work: F,
) -> SearchOutcome<T>
where
    T: Send,
    F: Fn(usize, &Cancel) -> Result<Option<T>, Exhausted> + Sync + Send,
{
    let best = AtomicUsize::new(usize::MAX);
    let results = run_partitions(limits, parts, |index| {
        let cancel = Cancel {
            best: &best,
            index,
            deterministic: limits.deterministic,
        };
        if cancel.cancelled() {
            return Ok(None);
        }
        let r = work(index, &cancel);
        if let Ok(Some(_)) = r {
            best.fetch_min(index, Ordering::Relaxed);
        }
        r
    });
    let mut exhausted = false;
    for r in results {
        match r {
            Ok(Some(t)) if !(exhausted && limits.deterministic) => return SearchOutcome::Found(t),
            Ok(_) => {}
            Err(Exhausted) => exhausted = true,
        }
    }
    if exhausted || meter.tripped() {
        SearchOutcome::Unknown {
            nodes: meter.used(),
        }
    } else {
        SearchOutcome::NoneExists
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn meter_trips_at_budget() {
        let m = Meter::new(&Limits::default().with_node_budget(3));
        assert!(m.tick().is_ok());
        assert!(m.tick().is_ok());
        assert!(m.tick().is_ok());
        assert_eq!(m.tick(), Err(Exhausted));
        assert!(m.tripped());
        assert_eq!(m.used(), 3);
    }

    #[test]
    fn partitions_keep_order() {
        let limits = Limits {
            workers: 3,
            ..Limits::default()
        };
        let out = run_partitions(&limits, 10, |i| i * i);
        assert_eq!(out, (0..10).map(|i| i * i).collect::<Vec<_>>());
    }

    #[test]
    fn first_witness_prefers_lowest_partition() {
        for workers in [1, 4] {
            let limits = Limits {
                workers,
                ..Limits::default()
            };
            let meter = Meter::new(&limits);
            let out = first_witness(&limits, &meter, 8, |i, _| {
                meter.tick()?;
                Ok((i % 3 == 2).then_some(i))
            });
            assert_eq!(out, SearchOutcome::Found(2));
        }
    }

    #[test]
    fn earlier_trip_is_unknown() {
        let limits = Limits::default().with_node_budget(1);
        let meter = Meter::new(&limits);
        let out = first_witness(&limits, &meter, 3, |i, _| {
            if i == 0 {
                meter.tick()?;
                meter.tick()?;
            }
            Ok((i == 2).then_some(i))
        });
        assert_eq!(out, SearchOutcome::Unknown { nodes: 1 });
    }
}
