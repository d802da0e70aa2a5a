//! Instance checks for the structural lemmas on small graphs.
//!
//! Every check returns a [`LemmaReport`]. A report carrying a counterexample
//! can be replayed: [`LemmaReport::replay`] re-derives the violation from the
//! serialized payload alone.

mod checks;
mod space;

use serde::{Deserialize, Serialize};

use crate::coloring::{chromatic_number, is_k_colorable, Deletion};
use crate::dp::{canonical_labeling, find_transversal, validate_cover, Cover, CoverDoc};
use crate::graph::{parse_graph6, Graph};
use crate::list::{is_list_colorable, ListAssignment, ListsDoc};

pub use checks::{
    check_excess_lemma, check_full_extension_lemma, check_induction_lemma, check_join_preserves,
    check_pair_reduction,
};
pub use space::partial_injections;

pub const LEMMA_SCHEMA: &str = "critickit.lemma/1";

/// Instance counts up to this are scanned exhaustively.
pub const EXHAUSTIVE_LIMIT: u128 = 10_000_000;
/// Sample size and seed used above [`EXHAUSTIVE_LIMIT`].
pub const SAMPLES: u64 = 200_000;
pub const SAMPLE_SEED: u64 = 0x5eed_c0de;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaId {
    Excess,
    FullExtension,
    Pair,
    Induction,
    Join,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    AllPass,
    Counterexample,
    SkippedPrecondition,
    /// A cap or budget stopped the check before it was complete.
    Truncated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMode {
    Exhaustive,
    /// Only covers whose matchings saturate the smaller list; complete
    /// because removing cover edges never destroys a transversal.
    MaximalMatchings,
    /// Seeded uniform sampling; `seed` is set.
    Sampled,
    /// A delegated decision procedure (robust or strong verdict).
    Verdict,
}

/// A recorded violation. Each variant states what it claims; `replay`
/// checks that claim from scratch.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Counterexample {
    /// A bad cover that is not a canonical `(k-1)`-fold cover.
    BadCover { k: usize, cover: CoverDoc },
    /// A bad non-full `(k-1)`-fold cover with a canonical full extension.
    FullExtension {
        k: usize,
        cover: CoverDoc,
        extension: CoverDoc,
    },
    /// A bad full `(k-1)`-fold cover with a valid labeling of the lists of
    /// `independent`, yet not canonical. `labeling[t][i]` labels index `i`
    /// of vertex `independent[t]`.
    Labeled {
        k: usize,
        independent: Vec<usize>,
        labeling: Vec<Vec<usize>>,
        cover: CoverDoc,
    },
    /// The tested graph has chromatic number `k` but this deletion does not
    /// lower it.
    Deletion { k: usize, deletion: Deletion },
    /// A non-constant `(k-1)`-assignment of the tested graph that is bad.
    BadAssignment { k: usize, lists: ListsDoc },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub schema: String,
    pub lemma: LemmaId,
    /// The graph the lemma was instantiated on (for joins, the join).
    pub graph6: String,
    pub checked: u64,
    pub outcome: Outcome,
    pub mode: Option<CheckMode>,
    pub seed: Option<u64>,
    pub detail: String,
    pub counterexample: Option<Counterexample>,
}

impl LemmaReport {
    pub(crate) fn new(lemma: LemmaId, g: &Graph) -> Self {
        LemmaReport {
            schema: LEMMA_SCHEMA.to_string(),
            lemma,
            graph6: crate::graph::encode_graph6(g),
            checked: 0,
            outcome: Outcome::AllPass,
            mode: None,
            seed: None,
            detail: String::new(),
            counterexample: None,
        }
    }

    pub(crate) fn finish(mut self, outcome: Outcome, detail: impl Into<String>) -> Self {
        self.outcome = outcome;
        self.detail = detail.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::AllPass
    }

    /// `None` without a counterexample; otherwise whether the payload
    /// reproduces the violation.
    pub fn replay(&self) -> Option<bool> {
        let ce = self.counterexample.as_ref()?;
        Some(parse_graph6(&self.graph6).is_ok_and(|g| ce.replay(&g)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

fn canonical_of_size(c: &Cover, k: usize) -> bool {
    k >= 1 && c.sizes().iter().all(|&s| s == k - 1) && canonical_labeling(c).is_some()
}

/// Whether `labeling` satisfies both conditions of the induction lemma.
pub(crate) fn labeling_is_valid(c: &Cover, independent: &[usize], labeling: &[Vec<usize>]) -> bool {
    let g = c.graph();
    let bijective = labeling.len() == independent.len()
        && independent.iter().zip(labeling).all(|(&x, lab)| {
            let mut seen = vec![false; c.size(x)];
            lab.len() == c.size(x)
                && lab
                    .iter()
                    .all(|&l| l < seen.len() && !std::mem::replace(&mut seen[l], true))
        });
    if !bijective {
        return false;
    }
    // colors of L(I) sharing a neighbor must share a label
    (0..g.n()).filter(|w| !independent.contains(w)).all(|w| {
        (0..c.size(w)).all(|j| {
            let mut labels = independent
                .iter()
                .zip(labeling)
                .filter(|&(&x, _)| g.has_edge(x, w))
                .filter_map(|(&x, lab)| {
                    (0..c.size(x))
                        .find(|&i| c.matched(x, w, i) == Some(j))
                        .map(|i| lab[i])
                });
            labels.next().is_none_or(|first| labels.all(|l| l == first))
        })
    })
}

impl Counterexample {
    /// Re-verifies the claimed violation on the tested graph `g`.
    pub fn replay(&self, g: &Graph) -> bool {
        let cover = |doc: &CoverDoc| validate_cover(doc).ok().filter(|c| c.graph() == g);
        match self {
            Counterexample::BadCover { k, cover: doc } => cover(doc)
                .is_some_and(|c| find_transversal(&c).is_none() && !canonical_of_size(&c, *k)),
            Counterexample::FullExtension {
                k,
                cover: doc,
                extension,
            } => {
                let (Some(c), Some(x)) = (cover(doc), cover(extension)) else {
                    return false;
                };
                let contained = (0..c.edges().len())
                    .all(|e| c.pairs(e).iter().all(|&(i, j)| x.map(e)[i] == Some(j)));
                *k >= 1
                    && c.sizes().iter().all(|&s| s == k - 1)
                    && x.sizes() == c.sizes()
                    && !c.is_full()
                    && find_transversal(&c).is_none()
                    && contained
                    && x.is_full()
                    && canonical_labeling(&x).is_some()
            }
            Counterexample::Labeled {
                k,
                independent,
                labeling,
                cover: doc,
            } => {
                let Some(c) = cover(doc) else {
                    return false;
                };
                let set = independent.iter().try_fold(0u64, |acc, &x| {
                    (x < g.n() && acc & (1 << x) == 0).then_some(acc | 1 << x)
                });
                *k >= 1
                    && set.is_some_and(|s| g.is_independent(s))
                    && c.sizes().iter().all(|&s| s == k - 1)
                    && c.is_full()
                    && find_transversal(&c).is_none()
                    && labeling_is_valid(&c, independent, labeling)
                    && canonical_labeling(&c).is_none()
            }
            Counterexample::Deletion { k, deletion } => {
                *k >= 1
                    && chromatic_number(g) == *k
                    && deletion.apply(g).is_ok_and(|h| !is_k_colorable(&h, k - 1))
            }
            Counterexample::BadAssignment { k, lists } => {
                let Ok(l) = ListAssignment::try_from(lists.clone()) else {
                    return false;
                };
                *k >= 1
                    && l.len() == g.n()
                    && l.uniform_size() == Some(k - 1)
                    && !l.is_constant()
                    && is_list_colorable(g, &l) == Ok(false)
            }
        }
    }
}
