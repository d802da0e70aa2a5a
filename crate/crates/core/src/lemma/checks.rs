use crate::coloring::classify_criticality;
use crate::dp::{
    canonical_labeling, find_transversal, permutations, robust_criticality_verdict, Cover,
    CoverDoc, DpError, FullCoverEnumerator, RobustDecision, RobustWitness,
};
use crate::graph::{clique, join, Graph};
use crate::limits::{Limits, Meter};
use crate::list::{
    strong_criticality_verdict, CriticalityMode, ListsDoc, StrongDecision, StrongWitness,
};

use super::space::{completions, maximal_injections, partial_injections, CoverSpace};
use super::{
    canonical_of_size, labeling_is_valid, CheckMode, Counterexample, LemmaId, LemmaReport, Outcome,
    EXHAUSTIVE_LIMIT, SAMPLES, SAMPLE_SEED,
};

/// Largest list size whose pair grid fits a 64-bit mask.
const MAX_LEMMA_LIST: usize = 8;
/// Cap on labelings tried per cover in the induction check.
const MAX_LABELINGS: u128 = 1_000_000;

/// Result of scanning one cover: keep going or record a violation.
#[allow(clippy::large_enum_variant)]
enum Step {
    Next,
    Violation(Counterexample),
}

/// Runs `check` over `space`, exhaustively or sampled depending on its
/// size, and fills the report.
fn scan_space(
    mut report: LemmaReport,
    space: &CoverSpace,
    base_mode: CheckMode,
    limits: &Limits,
    mut check: impl FnMut(&Cover) -> Step,
) -> LemmaReport {
    let meter = Meter::new(limits);
    let mut violation = None;
    let mut tripped = false;
    let mut visit = |c: &Cover| {
        if meter.tick().is_err() {
            tripped = true;
            return false;
        }
        report.checked += 1;
        match check(c) {
            Step::Next => true,
            Step::Violation(ce) => {
                violation = Some(ce);
                false
            }
        }
    };
    let total = space.total();
    if total <= EXHAUSTIVE_LIMIT {
        report.mode = Some(base_mode);
        space.for_each(&mut visit);
    } else {
        report.mode = Some(CheckMode::Sampled);
        report.seed = Some(SAMPLE_SEED);
        space.sample(SAMPLE_SEED, SAMPLES, &mut visit);
    }
    if let Some(ce) = violation {
        report.counterexample = Some(ce);
        let checked = report.checked;
        return report.finish(
            Outcome::Counterexample,
            format!("violation at instance {checked}"),
        );
    }
    if tripped {
        return report.finish(Outcome::Truncated, "node or time budget exhausted");
    }
    let note = format!("{} of {} covers", report.checked, total);
    report.finish(Outcome::AllPass, note)
}

fn oversized(sizes: &[usize]) -> bool {
    sizes.iter().any(|&s| s > MAX_LEMMA_LIST)
}

/// A bad cover whose lists all have at least `k - 1` colors is a canonical
/// `(k-1)`-fold cover, when `g` is robustly `k`-critical.
///
/// With some list longer than `k - 1` the claim is that no cover is bad, and
/// only matchings saturating the smaller list need to be tried.
pub fn check_excess_lemma(g: &Graph, sizes: &[usize], limits: &Limits) -> LemmaReport {
    let report = LemmaReport::new(LemmaId::Excess, g);
    if sizes.len() != g.n() {
        return report.finish(
            Outcome::SkippedPrecondition,
            format!("{} list sizes for {} vertices", sizes.len(), g.n()),
        );
    }
    let rv = robust_criticality_verdict(g, limits);
    match rv.decision {
        RobustDecision::RobustlyCritical => {}
        RobustDecision::Unknown => {
            return report.finish(Outcome::Truncated, "robustness of the host undecided")
        }
        _ => {
            return report.finish(
                Outcome::SkippedPrecondition,
                "host is not robustly critical",
            )
        }
    }
    let k = rv.k;
    if let Some(v) = (0..g.n()).find(|&v| sizes[v] + 1 < k) {
        return report.finish(
            Outcome::SkippedPrecondition,
            format!("vertex {v} has {} colors, fewer than {}", sizes[v], k - 1),
        );
    }
    if oversized(sizes) {
        return report.finish(Outcome::Truncated, "lists longer than 8 are not enumerated");
    }
    let excess = sizes.iter().any(|&s| s + 1 > k);
    let (choose, mode): (fn(usize, usize) -> _, _) = if excess {
        (maximal_injections, CheckMode::MaximalMatchings)
    } else {
        (partial_injections, CheckMode::Exhaustive)
    };
    let space = CoverSpace::new(g, sizes.to_vec(), choose).expect("sizes match the host");
    scan_space(report, &space, mode, limits, |c| {
        if find_transversal(c).is_none() && !canonical_of_size(c, k) {
            Step::Violation(Counterexample::BadCover {
                k,
                cover: CoverDoc::from(c),
            })
        } else {
            Step::Next
        }
    })
}

/// Every full extension of a bad non-full `(k-1)`-fold cover of a
/// `k`-critical graph is non-canonical.
pub fn check_full_extension_lemma(g: &Graph, limits: &Limits) -> LemmaReport {
    let report = LemmaReport::new(LemmaId::FullExtension, g);
    let cv = classify_criticality(g);
    if !cv.is_critical {
        return report.finish(Outcome::SkippedPrecondition, "host is not critical");
    }
    let k = cv.chromatic_number;
    if k - 1 > MAX_LEMMA_LIST {
        return report.finish(Outcome::Truncated, "lists longer than 8 are not enumerated");
    }
    let space = CoverSpace::new(g, vec![k - 1; g.n()], partial_injections).expect("uniform sizes");
    scan_space(report, &space, CheckMode::Exhaustive, limits, |c| {
        if c.is_full() || find_transversal(c).is_some() {
            return Step::Next;
        }
        let choices = (0..c.edges().len())
            .map(|e| completions(c.map(e), k - 1))
            .collect();
        let extensions =
            CoverSpace::with_choices(g, vec![k - 1; g.n()], choices).expect("uniform sizes");
        let mut found = None;
        extensions.for_each(|x| {
            if canonical_labeling(x).is_some() {
                found = Some(x.clone());
            }
            found.is_none()
        });
        match found {
            Some(x) => Step::Violation(Counterexample::FullExtension {
                k,
                cover: CoverDoc::from(c),
                extension: CoverDoc::from(&x),
            }),
            None => Step::Next,
        }
    })
}

/// Robust criticality of `g` from that of `g - x - y`, for non-adjacent `x`
/// and `y` with at most one common neighbor in a critical `g`.
pub fn check_pair_reduction(g: &Graph, x: usize, y: usize, limits: &Limits) -> LemmaReport {
    let mut report = LemmaReport::new(LemmaId::Pair, g);
    let skip = |r: LemmaReport, why: String| r.finish(Outcome::SkippedPrecondition, why);
    if x >= g.n() || y >= g.n() || x == y {
        return skip(
            report,
            format!("x = {x} and y = {y} must be distinct vertices"),
        );
    }
    if g.has_edge(x, y) {
        return skip(report, format!("x = {x} and y = {y} are adjacent"));
    }
    let common = (g.neighbor_mask(x) & g.neighbor_mask(y)).count_ones();
    if common > 1 {
        return skip(report, format!("x and y have {common} common neighbors"));
    }
    if !classify_criticality(g).is_critical {
        return skip(report, "G is not critical".into());
    }
    let (rest, _) = g.without_vertices(&[x, y]);
    let sub = robust_criticality_verdict(&rest, limits);
    match sub.decision {
        RobustDecision::RobustlyCritical => {}
        RobustDecision::Unknown => {
            return report.finish(Outcome::Truncated, "robustness of G - x - y undecided")
        }
        _ => return skip(report, "G - x - y is not robustly critical".into()),
    }
    report.mode = Some(CheckMode::Verdict);
    let rv = robust_criticality_verdict(g, limits);
    report.checked = rv.covers_scanned;
    conclude_robust(report, rv.decision, rv.k, rv.witness)
}

fn conclude_robust(
    mut report: LemmaReport,
    decision: RobustDecision,
    k: usize,
    witness: Option<RobustWitness>,
) -> LemmaReport {
    match (decision, witness) {
        (RobustDecision::RobustlyCritical, _) => {
            report.finish(Outcome::AllPass, format!("robustly {k}-critical"))
        }
        (RobustDecision::Unknown, _) => {
            report.finish(Outcome::Truncated, "cover scan exceeded its caps")
        }
        (_, Some(RobustWitness::Cover(c))) => {
            report.counterexample = Some(Counterexample::BadCover {
                k,
                cover: CoverDoc::from(&c),
            });
            report.finish(Outcome::Counterexample, "non-canonical bad cover")
        }
        (_, Some(RobustWitness::Deletion(deletion))) => {
            report.counterexample = Some(Counterexample::Deletion { k, deletion });
            report.finish(Outcome::Counterexample, "not critical")
        }
        (_, None) => report.finish(Outcome::Counterexample, "not critical"),
    }
}

/// Every bad full `(k-1)`-fold cover admitting a labeling of the lists of
/// the independent set `independent` with the lemma's two properties is
/// canonical, when `g - independent` is robustly `(k-1)`-critical.
pub fn check_induction_lemma(g: &Graph, independent: &[usize], limits: &Limits) -> LemmaReport {
    let mut report = LemmaReport::new(LemmaId::Induction, g);
    let skip = |r: LemmaReport, why: &str| r.finish(Outcome::SkippedPrecondition, why);
    let mut set = 0u64;
    for &x in independent {
        if x >= g.n() || set & (1 << x) != 0 {
            return skip(report, "I must list distinct vertices of G");
        }
        set |= 1 << x;
    }
    if !g.is_independent(set) {
        return skip(report, "I is not independent");
    }
    let (rest, _) = g.without_vertices(independent);
    let sub = robust_criticality_verdict(&rest, limits);
    match sub.decision {
        RobustDecision::RobustlyCritical => {}
        RobustDecision::Unknown => {
            return report.finish(Outcome::Truncated, "robustness of G - I undecided")
        }
        _ => return skip(report, "G - I is not robustly critical"),
    }
    let k = sub.k + 1;
    let en = match FullCoverEnumerator::new(g, k - 1) {
        Ok(en) => en,
        Err(DpError::Disconnected) => return skip(report, "G must be connected"),
        Err(_) => return report.finish(Outcome::Truncated, "cover lists too large"),
    };
    let perms = permutations(k - 1);
    let per_cover =
        (0..independent.len()).fold(1u128, |acc, _| acc.saturating_mul(perms.len() as u128));
    if per_cover > MAX_LABELINGS {
        return report.finish(Outcome::Truncated, "too many labelings per cover");
    }
    let meter = Meter::new(limits);
    let mut bad = 0u64;
    let mut labeled = 0u64;
    let mut check = |c: &Cover| -> Option<Step> {
        meter.tick().ok()?;
        if find_transversal(c).is_some() {
            return Some(Step::Next);
        }
        bad += 1;
        let canonical = canonical_labeling(c).is_some();
        let mut digits = vec![0; independent.len()];
        loop {
            let labeling: Vec<Vec<usize>> = digits.iter().map(|&d| perms[d].clone()).collect();
            if labeling_is_valid(c, independent, &labeling) {
                labeled += 1;
                if !canonical {
                    return Some(Step::Violation(Counterexample::Labeled {
                        k,
                        independent: independent.to_vec(),
                        labeling,
                        cover: CoverDoc::from(c),
                    }));
                }
            }
            let Some(t) = (0..digits.len())
                .rev()
                .find(|&t| digits[t] + 1 < perms.len())
            else {
                return Some(Step::Next);
            };
            digits[t] += 1;
            digits[t + 1..].iter_mut().for_each(|d| *d = 0);
        }
    };
    let total = en.total();
    let mut outcome = None;
    let mut run = |digits: &[usize], checked: &mut u64| -> bool {
        *checked += 1;
        match check(&en.cover_for(digits)) {
            None => {
                outcome = Some(Outcome::Truncated);
                false
            }
            Some(Step::Next) => true,
            Some(Step::Violation(ce)) => {
                report.counterexample = Some(ce);
                outcome = Some(Outcome::Counterexample);
                false
            }
        }
    };
    let mut checked = 0;
    let chords = en.chords().len();
    let base = perms.len();
    if total <= EXHAUSTIVE_LIMIT {
        report.mode = Some(CheckMode::Exhaustive);
        let mut digits = vec![0; chords];
        loop {
            if !run(&digits, &mut checked) {
                break;
            }
            let Some(t) = (0..chords).rev().find(|&t| digits[t] + 1 < base) else {
                break;
            };
            digits[t] += 1;
            digits[t + 1..].iter_mut().for_each(|d| *d = 0);
        }
    } else {
        use rand::{Rng, SeedableRng};
        report.mode = Some(CheckMode::Sampled);
        report.seed = Some(SAMPLE_SEED);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        for _ in 0..SAMPLES {
            let digits: Vec<usize> = (0..chords).map(|_| rng.gen_range(0..base)).collect();
            if !run(&digits, &mut checked) {
                break;
            }
        }
    }
    report.checked = checked;
    let detail = format!("{checked} normalized covers, {bad} bad, {labeled} valid labelings");
    match outcome {
        Some(o) if o == Outcome::Truncated => report.finish(o, "node or time budget exhausted"),
        Some(o) => report.finish(o, detail),
        None => report.finish(Outcome::AllPass, detail),
    }
}

/// Joining a robustly critical graph with `K_t` keeps it robustly critical,
/// and (through the list search) strongly critical.
pub fn check_join_preserves(g: &Graph, t: usize, limits: &Limits) -> LemmaReport {
    let joined = clique(t).and_then(|kt| join(g, &kt));
    let Ok(j) = joined else {
        let report = LemmaReport::new(LemmaId::Join, g);
        return report.finish(Outcome::Truncated, "join exceeds 64 vertices");
    };
    let mut report = LemmaReport::new(LemmaId::Join, &j);
    match robust_criticality_verdict(g, limits).decision {
        RobustDecision::RobustlyCritical => {}
        RobustDecision::Unknown => {
            return report.finish(Outcome::Truncated, "robustness of G undecided")
        }
        _ => return report.finish(Outcome::SkippedPrecondition, "G is not robustly critical"),
    }
    report.mode = Some(CheckMode::Verdict);
    let rv = robust_criticality_verdict(&j, limits);
    report.checked = rv.covers_scanned;
    let k = rv.k;
    let report = conclude_robust(report, rv.decision, k, rv.witness);
    if report.outcome != Outcome::AllPass {
        return report;
    }
    let sv = strong_criticality_verdict(&j, CriticalityMode::Critical, limits);
    let mut report = report;
    match (sv.decision, sv.witness) {
        (StrongDecision::Holds, _) => report.finish(
            Outcome::AllPass,
            format!("robustly and strongly {k}-critical"),
        ),
        (StrongDecision::Unknown, _) => {
            report.finish(Outcome::Truncated, "list search exceeded its budget")
        }
        (_, Some(StrongWitness::Assignment(l))) => {
            report.counterexample = Some(Counterexample::BadAssignment {
                k,
                lists: ListsDoc::from(&l),
            });
            report.finish(Outcome::Counterexample, "non-constant bad assignment")
        }
        (_, Some(StrongWitness::Deletion(deletion))) => {
            report.counterexample = Some(Counterexample::Deletion { k, deletion });
            report.finish(Outcome::Counterexample, "not critical")
        }
        (_, None) => report.finish(Outcome::Counterexample, "not critical"),
    }
}
