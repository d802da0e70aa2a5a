//! End-to-end acceptance run. One line per criterion, non-zero exit if any
//! fails. Built with `harness = false` so the lines always reach stdout.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use critickit::coloring::{chromatic_number, chromatic_polynomial, classify_criticality};
use critickit::dp::{
    canonical_labeling, count_transversals, cover_from_assignment, dp_chromatic_number,
    find_transversal, make_canonical_cover, pdp_value, robust_criticality_verdict, Cover, DpNumber,
    Pdp, RobustDecision,
};
use critickit::graph::{
    clique, complete_bipartite, corpus, cycle, ekab, encode_graph6, join, parse_graph6,
};
use critickit::lemma::{
    check_excess_lemma, check_full_extension_lemma, check_induction_lemma, check_pair_reduction,
    Outcome,
};
use critickit::list::{
    find_bad_nonconstant_assignment, is_list_colorable, list_chromatic_number,
    strong_criticality_verdict, Choosability, CriticalityMode, StrongDecision,
};
use critickit::report::{NumberDoc, VerdictDoc};
use critickit::{EkabParams, Graph, LemmaReport, Limits, ListAssignment, SearchOutcome};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = fn() -> Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn main() {
    let criteria: [(&str, Option<Duration>, Check); 10] = [
        ("1 robust odd cycles and cliques", None, c1),
        ("2 robust E(k,a,b)", None, c2),
        ("3 robust join with K1", Some(Duration::from_secs(60)), c3),
        ("4 robust implies strong", None, c4),
        ("5 negative controls", None, c5),
        ("6 dp separations and chain", None, c6),
        ("7 pdp counting", Some(Duration::from_secs(10)), c7),
        ("8 lemma suites", None, c8),
        ("9 bridges and invariants", None, c9),
        ("10 formats and exit codes", None, c10),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let result = match catch_unwind(AssertUnwindSafe(check)) {
            Ok(r) => r,
            Err(e) => Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into())),
        };
        let took = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(l)) if took > l => Err(format!("took {took:.2?}, limit {l:?}")),
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("PASS criterion {name} ({took:.2?}): {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name} ({took:.2?}): {why}");
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

fn timed<T>(limit: Duration, what: &str, f: impl FnOnce() -> T) -> Result<T, String> {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    ensure!(took <= limit, "{what} took {took:.2?}, limit {limit:?}");
    Ok(out)
}

fn expect_robust(
    name: &str,
    g: &Graph,
    k: usize,
    scanned: Option<u64>,
    limit: Duration,
) -> Result<(), String> {
    let rv = timed(limit, name, || {
        robust_criticality_verdict(g, &Limits::default())
    })?;
    ensure!(
        rv.decision == RobustDecision::RobustlyCritical && rv.k == k,
        "{name}: {:?} k={}",
        rv.decision,
        rv.k
    );
    if let Some(s) = scanned {
        ensure!(
            rv.covers_scanned == s,
            "{name}: scanned {} covers, expected {s}",
            rv.covers_scanned
        );
    }
    Ok(())
}

fn e(k: usize, a: usize, b: usize) -> Graph {
    ekab(EkabParams::new(k, a, b).unwrap())
}

fn wheel5() -> Graph {
    join(&cycle(5).unwrap(), &clique(1).unwrap()).unwrap()
}

fn c1() -> Result<String, String> {
    let five = Duration::from_secs(5);
    for n in [5, 7] {
        expect_robust(&format!("C{n}"), &cycle(n).unwrap(), 3, None, five)?;
    }
    for n in 1..=5 {
        expect_robust(&format!("K{n}"), &clique(n).unwrap(), n, None, five)?;
    }
    Ok("C5 C7 at k=3, K1..K5 at k=n".into())
}

fn c2() -> Result<String, String> {
    for (a, b) in [(2, 2), (1, 2)] {
        expect_robust(
            &format!("E4,{a},{b}"),
            &e(4, a, b),
            4,
            Some(7776),
            Duration::from_secs(60),
        )?;
    }
    Ok("E4,2,2 and E4,1,2 at k=4 over 7776 covers each".into())
}

fn c3() -> Result<String, String> {
    expect_robust("C5+K1", &wheel5(), 4, Some(7776), Duration::from_secs(60))?;
    Ok("k=4 over 7776 covers".into())
}

fn c4() -> Result<String, String> {
    let lim = Limits::default();
    let mut named: Vec<(String, Graph)> = vec![
        ("C5".into(), cycle(5).unwrap()),
        ("C7".into(), cycle(7).unwrap()),
        ("E4,2,2".into(), e(4, 2, 2)),
        ("E4,1,2".into(), e(4, 1, 2)),
        ("C5+K1".into(), wheel5()),
    ];
    named.extend((1..=5).map(|n| (format!("K{n}"), clique(n).unwrap())));
    for (name, g) in &named {
        let sv = strong_criticality_verdict(g, CriticalityMode::Critical, &lim);
        ensure!(
            sv.decision == StrongDecision::Holds,
            "{name}: strong gave {:?}",
            sv.decision
        );
    }
    let (mut robust, mut undecided) = (0, 0);
    let graphs = corpus();
    for (name, g) in &graphs {
        let rv = robust_criticality_verdict(g, &lim);
        match rv.decision {
            RobustDecision::RobustlyCritical => {
                robust += 1;
                let sv = strong_criticality_verdict(g, CriticalityMode::Critical, &lim);
                ensure!(
                    sv.decision == StrongDecision::Holds,
                    "{name}: robust but strong gave {:?}",
                    sv.decision
                );
            }
            RobustDecision::Unknown => undecided += 1,
            _ => {}
        }
    }
    Ok(format!(
        "{} named graphs strong; {robust} of {} corpus graphs robust, all strong ({undecided} undecided)",
        named.len(),
        graphs.len()
    ))
}

fn c5() -> Result<String, String> {
    let lim = Limits::default();
    let pendant = Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap();
    for (name, g) in [("C4", cycle(4).unwrap()), ("K3+pendant", pendant)] {
        let cv = classify_criticality(&g);
        ensure!(!cv.is_critical, "{name} classified critical");
        let d = cv.witness.ok_or(format!("{name}: no deletion witness"))?;
        let h = d.apply(&g).map_err(|e| e.to_string())?;
        ensure!(
            chromatic_number(&h) == cv.chromatic_number,
            "{name}: deletion {d:?} lowers chi"
        );
        let rv = VerdictDoc::robust(&g, &robust_criticality_verdict(&g, &lim));
        let sv = VerdictDoc::strong(
            &g,
            &strong_criticality_verdict(&g, CriticalityMode::Critical, &lim),
        );
        for doc in [rv, sv] {
            ensure!(
                doc.decision == "not_critical",
                "{name}: {:?} gave {}",
                doc.check,
                doc.decision
            );
            ensure!(
                doc.replay() == Some(true),
                "{name}: witness does not replay"
            );
        }
    }
    let k24 = complete_bipartite(2, 4).unwrap();
    let SearchOutcome::Found(l) = find_bad_nonconstant_assignment(&k24, 2, &lim) else {
        return Err("K2,4: no bad non-constant 2-assignment".into());
    };
    ensure!(
        !l.is_constant() && l.uniform_size() == Some(2),
        "K2,4: malformed assignment {l:?}"
    );
    ensure!(
        !is_list_colorable(&k24, &l).unwrap(),
        "K2,4: assignment is colorable"
    );
    ensure!(
        brute_list_colorings(&k24, &l) == 0,
        "K2,4: brute force finds a coloring"
    );
    Ok(format!("deletions replay; K2,4 lists {:?}", l.lists()))
}

fn c6() -> Result<String, String> {
    let lim = Limits::default();
    let c4 = cycle(4).unwrap();
    let DpNumber::Exact {
        value: 3,
        bad: Some(bad),
    } = dp_chromatic_number(&c4, &lim).unwrap()
    else {
        return Err("dp(C4) is not 3 with a witness".into());
    };
    ensure!(
        bad.is_full() && bad.uniform_size() == Some(2),
        "bad cover is not a full 2-fold cover"
    );
    let swaps = (0..bad.edges().len())
        .filter(|&e| bad.map(e) != [Some(0), Some(1)])
        .count();
    ensure!(swaps == 1, "bad cover has {swaps} swapped matchings");
    ensure!(
        brute_transversals(&bad) == 0,
        "exhaustive search finds a transversal"
    );
    let Choosability::Exact { value: 2, .. } = list_chromatic_number(&c4, &lim) else {
        return Err("list(C4) is not 2".into());
    };
    let graphs = corpus();
    for (name, g) in &graphs {
        let chi = chromatic_number(g);
        let ch = match list_chromatic_number(g, &lim) {
            Choosability::Exact { value, .. } => value,
            Choosability::Unknown { .. } => return Err(format!("{name}: list number undecided")),
        };
        let dp = match dp_chromatic_number(g, &lim).unwrap() {
            DpNumber::Exact { value, .. } => value,
            DpNumber::Unknown { .. } => return Err(format!("{name}: dp number undecided")),
        };
        ensure!(chi <= ch && ch <= dp, "{name}: chi {chi} ch {ch} dp {dp}");
    }
    Ok(format!(
        "dp(C4)=3 by one swap; chain on {} corpus graphs",
        graphs.len()
    ))
}

fn c7() -> Result<String, String> {
    let lim = Limits::default();
    for (name, g, k, want) in [
        ("C5", cycle(5).unwrap(), 3, 30u64),
        ("K4", clique(4).unwrap(), 4, 24),
    ] {
        let p = pdp_value(&g, k, &lim).map_err(|e| e.to_string())?;
        let Pdp::Exact { value, argmin, .. } = &p else {
            return Err(format!("{name}: pdp bounded only"));
        };
        let poly = chromatic_polynomial(&g).eval_u64(k as u64);
        ensure!(
            *value == want && poly == want.into(),
            "{name}: pdp {value}, P = {poly}"
        );
        let canon = make_canonical_cover(&g, k).unwrap();
        ensure!(
            count_transversals(&canon) == *value,
            "{name}: canonical cover is not a minimizer"
        );
        ensure!(
            *argmin == canon,
            "{name}: reported minimizer is not the canonical form"
        );
    }
    Ok("pdp(C5,3)=30=P(C5,3), pdp(K4,4)=24=P(K4,4)".into())
}

fn expect_pass(what: &str, rep: &LemmaReport, checked: Option<u64>) -> Result<(), String> {
    ensure!(
        rep.outcome == Outcome::AllPass,
        "{what}: {:?} ({})",
        rep.outcome,
        rep.detail
    );
    if let Some(c) = checked {
        ensure!(
            rep.checked == c,
            "{what}: checked {} instead of {c}",
            rep.checked
        );
    }
    Ok(())
}

fn c8() -> Result<String, String> {
    let lim = Limits::default();
    let suite = Duration::from_secs(300);
    let c5 = cycle(5).unwrap();
    timed(suite, "full extension", || -> Result<(), String> {
        expect_pass(
            "full extension C5",
            &check_full_extension_lemma(&c5, &lim),
            Some(16807),
        )?;
        expect_pass(
            "full extension K3",
            &check_full_extension_lemma(&clique(3).unwrap(), &lim),
            Some(343),
        )
    })??;
    let profiles = timed(suite, "excess", || -> Result<usize, String> {
        let mut n = 0;
        for bits in 1u32..32 {
            let sizes: Vec<usize> = (0..5).map(|i| 2 + (bits >> i & 1) as usize).collect();
            expect_pass(
                &format!("excess {sizes:?}"),
                &check_excess_lemma(&c5, &sizes, &lim),
                None,
            )?;
            n += 1;
        }
        Ok(n)
    })??;
    timed(suite, "induction", || {
        expect_pass(
            "induction C5+K1 apex",
            &check_induction_lemma(&wheel5(), &[5], &lim),
            None,
        )
    })??;
    let p = EkabParams::new(4, 2, 2).unwrap();
    let (x1, _, y1, _, _) = p.layout();
    timed(suite, "pair", || {
        expect_pass(
            "pair E4,2,2",
            &check_pair_reduction(&ekab(p), x1.start, y1.start, &lim),
            None,
        )
    })??;
    Ok(format!(
        "full extension C5 K3; excess on {profiles} profiles; induction; pair ({}, {})",
        x1.start, y1.start
    ))
}

fn brute_list_colorings(g: &Graph, l: &ListAssignment) -> u64 {
    fn rec(g: &Graph, lists: &[Vec<u32>], v: usize, choice: &mut Vec<u32>) -> u64 {
        if v == lists.len() {
            return 1;
        }
        let mut total = 0;
        for &c in &lists[v] {
            if (0..v).all(|u| !g.has_edge(u, v) || choice[u] != c) {
                choice.push(c);
                total += rec(g, lists, v + 1, choice);
                choice.pop();
            }
        }
        total
    }
    let lists: Vec<Vec<u32>> = l
        .lists()
        .iter()
        .map(|s| s.iter().copied().collect())
        .collect();
    rec(g, &lists, 0, &mut Vec::new())
}

fn brute_transversals(c: &Cover) -> u64 {
    let n = c.graph().n();
    let total: usize = c.sizes().iter().product();
    (0..total)
        .filter(|&code| {
            let mut rest = code;
            let choice: Vec<usize> = (0..n)
                .map(|v| {
                    let i = rest % c.size(v);
                    rest /= c.size(v);
                    i
                })
                .collect();
            c.is_transversal(&choice)
        })
        .count() as u64
}

fn brute_colorings(g: &Graph, k: usize) -> u64 {
    let n = g.n();
    let total = (k as u64).pow(n as u32);
    (0..total)
        .filter(|&code| {
            let color: Vec<u64> = (0..n as u32)
                .map(|v| code / (k as u64).pow(v) % k as u64)
                .collect();
            g.edges().iter().all(|&(u, v)| color[u] != color[v])
        })
        .count() as u64
}

fn random_graph(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    let n = rng.gen_range(1..=max_n);
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    Graph::from_edges(n, edges).unwrap()
}

fn random_cover(rng: &mut ChaCha8Rng, g: &Graph) -> Cover {
    let sizes: Vec<usize> = (0..g.n()).map(|_| rng.gen_range(1..=3)).collect();
    let mut c = Cover::empty(g, sizes).unwrap();
    for (e, &(u, v)) in c.edges().to_vec().iter().enumerate() {
        let mut free: Vec<usize> = (0..c.size(v)).collect();
        let map = (0..c.size(u))
            .map(|_| {
                if free.is_empty() || rng.gen_bool(0.3) {
                    None
                } else {
                    Some(free.swap_remove(rng.gen_range(0..free.len())))
                }
            })
            .collect();
        c.set_map(e, map).unwrap();
    }
    c
}

fn shuffled(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

fn c9() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..200 {
        let g = random_graph(&mut rng, 5);
        let lists = (0..g.n())
            .map(|_| {
                let size = rng.gen_range(1..=3);
                let mut s = std::collections::BTreeSet::new();
                while s.len() < size {
                    s.insert(rng.gen_range(1..=4u32));
                }
                s
            })
            .collect();
        let l = ListAssignment::new(lists);
        let c = cover_from_assignment(&g, &l).unwrap();
        let want = brute_list_colorings(&g, &l);
        ensure!(
            is_list_colorable(&g, &l).unwrap() == (want > 0),
            "instance {i}: colorability"
        );
        ensure!(
            find_transversal(&c).is_some() == (want > 0),
            "instance {i}: transversal existence"
        );
        ensure!(
            count_transversals(&c) == want,
            "instance {i}: counts differ"
        );
    }
    for i in 0..200 {
        let g = random_graph(&mut rng, 6);
        let c = random_cover(&mut rng, &g);
        let perms: Vec<Vec<usize>> = c.sizes().iter().map(|&s| shuffled(&mut rng, s)).collect();
        let r = c.relabel(&perms).unwrap();
        let count = count_transversals(&c);
        ensure!(
            count == brute_transversals(&c),
            "cover {i}: counter disagrees with brute force"
        );
        ensure!(
            count_transversals(&r) == count,
            "cover {i}: relabeling changes the count"
        );
        ensure!(
            canonical_labeling(&r).is_some() == canonical_labeling(&c).is_some(),
            "cover {i}: canonicity"
        );
        for &(u, v) in c.edges() {
            let thinner = c.without_matching(u, v).unwrap();
            ensure!(
                count_transversals(&thinner) >= count,
                "cover {i}: removing ({u},{v}) lost transversals"
            );
        }
        if let Ok(f) = c.complete_to_full() {
            ensure!(
                count_transversals(&f) <= count,
                "cover {i}: completing gained transversals"
            );
        }
    }
    let mut polys = 0;
    for (name, g) in corpus().iter().filter(|(_, g)| g.n() <= 7) {
        let p = chromatic_polynomial(g);
        for k in 0..=4 {
            ensure!(
                p.eval_u64(k as u64) == brute_colorings(g, k).into(),
                "{name}: P({k}) differs"
            );
        }
        polys += 1;
    }
    Ok(format!(
        "200 list instances, 200 covers, {polys} polynomials"
    ))
}

fn c10() -> Result<String, String> {
    let graphs = corpus();
    for (name, g) in &graphs {
        let w = encode_graph6(g);
        ensure!(
            parse_graph6(&w).as_ref() == Ok(g),
            "{name}: graph6 {w} does not round-trip"
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for i in 0..1000 {
        let n = rng.gen_range(0..=8);
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(0.5))
            .collect();
        let g = Graph::from_edges(n, edges).unwrap();
        ensure!(
            parse_graph6(&encode_graph6(&g)).as_ref() == Ok(&g),
            "random graph {i} does not round-trip"
        );
    }
    for i in 0..200 {
        let g = random_graph(&mut rng, 6);
        let c = random_cover(&mut rng, &g);
        let text = c.to_json();
        let back = Cover::from_json(&text).map_err(|e| format!("cover {i}: {e}"))?;
        ensure!(
            back == c && back.to_json() == text,
            "cover {i}: JSON is not bit-exact"
        );
    }
    let lim = Limits::default();
    let c4 = cycle(4).unwrap();
    let k24 = complete_bipartite(2, 4).unwrap();
    let verdicts = [
        VerdictDoc::robust(&c4, &robust_criticality_verdict(&c4, &lim)),
        VerdictDoc::robust(
            &cycle(5).unwrap(),
            &robust_criticality_verdict(&cycle(5).unwrap(), &lim),
        ),
        VerdictDoc::strong(
            &k24,
            &strong_criticality_verdict(&k24, CriticalityMode::VertexCritical, &lim),
        ),
        VerdictDoc::criticality(&c4, &classify_criticality(&c4), true),
    ];
    for doc in &verdicts {
        let text = doc.to_json();
        let back = VerdictDoc::from_json(&text).map_err(|e| e.to_string())?;
        ensure!(
            back == *doc && back.to_json() == text,
            "verdict JSON is not bit-exact: {text}"
        );
    }
    let numbers = [
        NumberDoc::chromatic(&cycle(5).unwrap()),
        NumberDoc::list(&k24, &list_chromatic_number(&k24, &lim)),
        NumberDoc::dp(&c4, &dp_chromatic_number(&c4, &lim).unwrap()),
    ];
    for doc in &numbers {
        let text = doc.to_json();
        let back = NumberDoc::from_json(&text).map_err(|e| e.to_string())?;
        ensure!(
            back == *doc && back.to_json() == text,
            "number JSON is not bit-exact: {text}"
        );
        ensure!(
            back.replay() == Some(true),
            "witness in {text} does not replay"
        );
    }
    let lemma = check_excess_lemma(&cycle(4).unwrap(), &[2, 2, 2, 2], &lim);
    let text = lemma.to_json();
    ensure!(
        LemmaReport::from_json(&text)
            .map_err(|e| e.to_string())?
            .to_json()
            == text,
        "lemma JSON drifts"
    );

    let cases: &[(&[&str], i32)] = &[
        (&["check", "robust", "--cycle", "5"], 0),
        (&["check", "robust", "--cycle", "4"], 1),
        (&["check", "strong", "--clique", "4"], 0),
        (&["check", "strong-cc", "--bipartite", "2", "4"], 1),
        (&["check", "vertex-critical", "--cycle", "7"], 0),
        (&["check", "critical", "--graph6", "C~"], 0),
        (
            &["check", "robust", "--cycle", "5", "--join", "clique:2"],
            2,
        ),
        (&["check", "strong", "--cycle", "7", "--budget", "5"], 2),
        (&["chi", "plain", "--cycle", "5"], 0),
        (&["chi", "list", "--bipartite", "2", "4"], 0),
        (&["chi", "dp", "--cycle", "4"], 0),
        (
            &["chi", "list", "--bipartite", "3", "3", "--budget", "3"],
            2,
        ),
        (&["count", "colorings", "--cycle", "5", "--k", "3"], 0),
        (&["count", "chromatic-poly", "--clique", "3"], 0),
        (
            &["count", "pdp", "--cycle", "5", "--k", "3", "--budget", "1"],
            2,
        ),
        (&["lemma", "full-extension", "--clique", "3"], 0),
        (
            &[
                "lemma",
                "induction",
                "--cycle",
                "5",
                "--join",
                "clique:1",
                "--set",
                "5",
            ],
            0,
        ),
        (
            &["lemma", "excess", "--cycle", "4", "--sizes", "2,2,2,2"],
            2,
        ),
        (&["gen", "--ekab", "4", "2", "2"], 0),
        (&["check", "robust", "--cycle", "2"], 64),
        (&["check", "robust", "--graph6", "?!"], 64),
        (&["chi", "dp"], 64),
        (&["count", "pdp", "--cycle", "5"], 64),
        (&["lemma", "excess", "--cycle", "5", "--sizes", "2,x"], 64),
        (&["--workers", "0", "chi", "plain", "--cycle", "3"], 64),
        (&["nonsense"], 64),
    ];
    for (args, want) in cases {
        let out = Command::new(env!("CARGO_BIN_EXE_critickit"))
            .args(*args)
            .env_remove("CRITICKIT_BUDGET")
            .output()
            .map_err(|e| e.to_string())?;
        let code = out.status.code().unwrap_or(-1);
        ensure!(code == *want, "{args:?} exited {code}, expected {want}");
        if *want == 64 {
            ensure!(!out.stderr.is_empty(), "{args:?} exited 64 silently");
        }
    }
    Ok(format!(
        "{} corpus + 1000 random graph6, 200 covers, documents, {} exit cases",
        graphs.len(),
        cases.len()
    ))
}
