//! DP-chromatic number, robust criticality and minimum transversal counts.
//!
//! All three scan tree-normalized full covers only. Adding matched pairs
//! never creates a transversal, so every cover has a full extension at least
//! as bad, and every full cover is a relabeling of exactly one normal form.
//! In normal form a cover is canonical iff every chord carries the identity.

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use super::enumerate::Leaf;
use super::{
    canonical_labeling, find_transversal, make_canonical_cover, Cover, DpError, FullCoverEnumerator,
};
use crate::coloring::{chromatic_number, classify_criticality, count_proper_colorings, Deletion};
use crate::graph::Graph;
use crate::limits::{first_witness, run_partitions, Limits, Meter, SearchOutcome};

/// First cover (in enumeration order) satisfying `pred`.
fn scan_first(
    en: &FullCoverEnumerator,
    limits: &Limits,
    pred: impl Fn(&[usize], &Leaf) -> bool + Sync,
) -> (SearchOutcome<Vec<usize>>, u64) {
    let meter = Meter::new(limits);
    let scanned = AtomicU64::new(0);
    let scanner = en.scanner();
    let out = first_witness(limits, &meter, en.partitions(), |part, cancel| {
        let mut found = None;
        scanner.run(part, &meter, Some(cancel), &scanned, &mut |digits, leaf| {
            if pred(digits, leaf) {
                found = Some(digits.to_vec());
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        Ok(found)
    });
    (out, scanned.load(Ordering::Relaxed))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DpNumber {
    /// `bad` is a bad full `(value - 1)`-fold cover when `value >= 1`.
    Exact { value: usize, bad: Option<Cover> },
    Unknown {
        lower_bound: usize,
        covers_scanned: u64,
    },
}

/// Least `k` such that every `k`-fold cover has a transversal. The scan
/// starts at the chromatic number; past the degeneracy greedy coloring
/// always succeeds.
pub fn dp_chromatic_number(g: &Graph, limits: &Limits) -> Result<DpNumber, DpError> {
    if g.n() == 0 {
        return Ok(DpNumber::Exact {
            value: 0,
            bad: None,
        });
    }
    if !g.is_connected() {
        return Err(DpError::Disconnected);
    }
    let chi = chromatic_number(g);
    let degeneracy = g.degeneracy();
    let mut bad = Some(make_canonical_cover(g, chi - 1)?);
    for k in chi..=degeneracy {
        let unknown = |covers_scanned| DpNumber::Unknown {
            lower_bound: k,
            covers_scanned,
        };
        let en = match FullCoverEnumerator::new(g, k) {
            Ok(en) if en.total() <= limits.max_covers => en,
            Ok(_) | Err(DpError::TooManyCovers { .. }) => return Ok(unknown(0)),
            Err(e) => return Err(e),
        };
        match scan_first(&en, limits, |_, leaf| leaf.is_bad()) {
            (SearchOutcome::Found(d), _) => bad = Some(en.cover_for(&d)),
            (SearchOutcome::NoneExists, _) => return Ok(DpNumber::Exact { value: k, bad }),
            (SearchOutcome::Unknown { .. }, scanned) => return Ok(unknown(scanned)),
        }
    }
    Ok(DpNumber::Exact {
        value: degeneracy + 1,
        bad,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RobustDecision {
    RobustlyCritical,
    NotCritical,
    NoncanonicalBadCoverFound,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RobustWitness {
    Deletion(Deletion),
    Cover(Cover),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RobustVerdict {
    pub decision: RobustDecision,
    pub k: usize,
    pub witness: Option<RobustWitness>,
    pub covers_scanned: u64,
    /// Size of the normalized enumeration, when it was set up.
    pub covers_total: Option<u128>,
}

/// Criticality first; then a scan of the normalized full `(k-1)`-fold covers
/// for one that is bad and not canonical.
pub fn robust_criticality_verdict(g: &Graph, limits: &Limits) -> RobustVerdict {
    let cv = classify_criticality(g);
    let k = cv.chromatic_number;
    let mut verdict = RobustVerdict {
        decision: RobustDecision::NotCritical,
        k,
        witness: None,
        covers_scanned: 0,
        covers_total: None,
    };
    if !cv.is_critical {
        verdict.witness = cv.witness.map(RobustWitness::Deletion);
        return verdict;
    }
    verdict.decision = RobustDecision::Unknown;
    // critical graphs are connected
    let en = match FullCoverEnumerator::new(g, k - 1) {
        Ok(en) => en,
        Err(DpError::TooManyCovers { count, .. }) => {
            verdict.covers_total = Some(count);
            return verdict;
        }
        Err(_) => return verdict,
    };
    verdict.covers_total = Some(en.total());
    if en.total() > limits.max_covers {
        return verdict;
    }
    let (out, scanned) = scan_first(&en, limits, |digits, leaf| {
        digits.iter().any(|&d| d != 0) && leaf.is_bad()
    });
    verdict.covers_scanned = scanned;
    match out {
        SearchOutcome::Found(d) => {
            let cover = en.cover_for(&d);
            assert!(find_transversal(&cover).is_none() && canonical_labeling(&cover).is_none());
            verdict.decision = RobustDecision::NoncanonicalBadCoverFound;
            verdict.witness = Some(RobustWitness::Cover(cover));
        }
        SearchOutcome::NoneExists => verdict.decision = RobustDecision::RobustlyCritical,
        SearchOutcome::Unknown { .. } => {}
    }
    verdict
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pdp {
    /// Minimum transversal count and the first normal form attaining it.
    Exact {
        value: u64,
        argmin: Cover,
        covers_scanned: u64,
    },
    /// Limits tripped; `best` bounds the minimum from above.
    Bounded {
        best: u64,
        argmin: Cover,
        covers_scanned: u64,
    },
}

impl Pdp {
    pub fn value(&self) -> u64 {
        match self {
            Pdp::Exact { value, .. } => *value,
            Pdp::Bounded { best, .. } => *best,
        }
    }

    pub fn argmin(&self) -> &Cover {
        match self {
            Pdp::Exact { argmin, .. } | Pdp::Bounded { argmin, .. } => argmin,
        }
    }
}

/// Minimum number of transversals over all `k`-fold covers.
pub fn pdp_value(g: &Graph, k: usize, limits: &Limits) -> Result<Pdp, DpError> {
    if !g.is_connected() {
        return Err(DpError::Disconnected);
    }
    let canonical = make_canonical_cover(g, k)?;
    let fallback = || -> Result<Pdp, DpError> {
        let best = u64::try_from(count_proper_colorings(g, k as u64)).unwrap_or(u64::MAX);
        Ok(Pdp::Bounded {
            best,
            argmin: canonical.clone(),
            covers_scanned: 0,
        })
    };
    let en = match FullCoverEnumerator::new(g, k) {
        Ok(en) if en.total() <= limits.max_covers => en,
        Ok(_) | Err(DpError::TooManyCovers { .. }) => return fallback(),
        Err(e) => return Err(e),
    };
    let meter = Meter::new(limits);
    let scanned = AtomicU64::new(0);
    let scanner = en.scanner();
    let parts = run_partitions(limits, en.partitions(), |part| {
        let mut best: Option<(u64, Vec<usize>)> = None;
        let status = scanner.run(part, &meter, None, &scanned, &mut |digits, leaf| {
            let c = leaf.count();
            if best.as_ref().is_none_or(|(b, _)| c < *b) {
                best = Some((c, digits.to_vec()));
            }
            if c == 0 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        (best, status.is_err())
    });
    let mut best: Option<(u64, Vec<usize>)> = None;
    let mut exhausted = false;
    for (b, ex) in parts {
        exhausted |= ex;
        if let Some((c, d)) = b {
            if best.as_ref().is_none_or(|(bc, _)| c < *bc) {
                best = Some((c, d));
            }
        }
    }
    let covers_scanned = scanned.load(Ordering::Relaxed);
    let Some((value, digits)) = best else {
        return fallback();
    };
    let argmin = en.cover_for(&digits);
    Ok(if exhausted && value > 0 {
        Pdp::Bounded {
            best: value,
            argmin,
            covers_scanned,
        }
    } else {
        Pdp::Exact {
            value,
            argmin,
            covers_scanned,
        }
    })
}
