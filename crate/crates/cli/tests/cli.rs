use std::io::Write;
use std::process::{Command, Stdio};

use critickit::dp::Cover;
use critickit::lemma::LemmaReport;
use critickit::report::{CountDoc, NumberDoc, VerdictDoc, WitnessDoc};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn critickit(args: &[&str], stdin: Option<&str>, env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_critickit"));
    cmd.args(args).env_remove("CRITICKIT_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("binary runs");
    if let Some(text) = stdin {
        child
            .stdin
            .as_mut()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
    }
    drop(child.stdin.take());
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().expect("exited"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn run(args: &[&str]) -> Run {
    critickit(args, None, &[])
}

#[test]
fn documented_examples() {
    let r = run(&["check", "robust", "--cycle", "5"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("robustly_critical k=3"));
    let r = run(&["check", "robust", "--cycle", "4"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.starts_with("not_critical"));
    assert!(r.stdout.contains("edge"));
    let r = run(&["chi", "dp", "--cycle", "4"]);
    assert_eq!((r.code, r.stdout.lines().next()), (0, Some("3")));
}

#[test]
fn json_mode_emits_one_replayable_document() {
    let r = run(&["--json", "check", "robust", "--cycle", "5"]);
    assert_eq!(r.stdout.lines().count(), 1);
    let doc = VerdictDoc::from_json(r.stdout.trim()).unwrap();
    assert_eq!(
        (doc.decision.as_str(), doc.k, doc.covers_scanned),
        ("robustly_critical", 3, Some(2))
    );
    assert_eq!(doc.to_json(), r.stdout.trim());

    let r = run(&["chi", "list", "--bipartite", "2", "4", "--json"]);
    let doc = NumberDoc::from_json(r.stdout.trim()).unwrap();
    assert_eq!((doc.value, doc.replay()), (Some(3), Some(true)));

    let r = run(&["--json", "lemma", "full-extension", "--clique", "3"]);
    assert_eq!(r.code, 0);
    let rep = LemmaReport::from_json(r.stdout.trim()).unwrap();
    assert!(r.stdout.contains(r#""outcome":"all_pass""#));
    assert_eq!(rep.checked, 343);
}

#[test]
fn exit_status_contract() {
    let cases: &[(&[&str], i32)] = &[
        (&["check", "critical", "--cycle", "5"], 0),
        (&["check", "critical", "--cycle", "4"], 1),
        (&["check", "vertex-critical", "--ekab", "4", "2", "2"], 0),
        (&["check", "strong", "--cycle", "7"], 0),
        (&["check", "strong-cc", "--bipartite", "2", "4"], 1),
        (
            &["check", "robust", "--cycle", "5", "--join", "clique:2"],
            2,
        ),
        (&["check", "strong", "--cycle", "7", "--budget", "5"], 2),
        (&["lemma", "full-extension", "--cycle", "4"], 2),
        (&["lemma", "join", "--cycle", "5", "--t", "2"], 2),
        (
            &["lemma", "pair", "--cycle", "5", "--x", "0", "--y", "1"],
            2,
        ),
        (&["count", "pdp", "--clique", "4", "--k", "4"], 0),
        (
            &["count", "pdp", "--cycle", "5", "--k", "3", "--budget", "1"],
            2,
        ),
        (&["check", "robust"], 64),
        (&["check", "robust", "--graph6", "~~~"], 64),
        (&["check", "robust", "--cycle", "2"], 64),
        (&["chi", "dp", "--graph6", "C`"], 64),
        (&["count", "pdp", "--cycle", "5"], 64),
        (&["frobnicate"], 64),
    ];
    for (args, code) in cases {
        let r = run(args);
        assert_eq!(r.code, *code, "{args:?}: {}{}", r.stdout, r.stderr);
        if *code == 64 {
            assert!(!r.stderr.is_empty(), "{args:?} should explain itself");
        }
    }
}

#[test]
fn budget_from_environment() {
    let args = ["check", "strong", "--cycle", "7"];
    assert_eq!(critickit(&args, None, &[("CRITICKIT_BUDGET", "5")]).code, 2);
    // an explicit flag beats the variable
    assert_eq!(
        critickit(
            &["check", "strong", "--cycle", "7", "--budget", "100000000"],
            None,
            &[("CRITICKIT_BUDGET", "5")]
        )
        .code,
        0
    );
}

#[test]
fn edge_lists_and_cover_files() {
    let r = critickit(
        &["--json", "count", "colorings", "--edges", "-", "--k", "3"],
        Some("5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n"),
        &[],
    );
    assert_eq!(r.code, 0);
    assert_eq!(
        CountDoc::from_json(r.stdout.trim())
            .unwrap()
            .value
            .as_deref(),
        Some("30")
    );
    let r = critickit(&["gen", "--edges", "-"], Some("3 1\n0 5\n"), &[]);
    assert_eq!(r.code, 64);
    assert!(r.stderr.contains("line 2"), "{}", r.stderr);

    // the bad cover printed by `chi dp` feeds back into `count transversals`
    let r = run(&["--json", "chi", "dp", "--cycle", "4"]);
    let doc = NumberDoc::from_json(r.stdout.trim()).unwrap();
    let Some(WitnessDoc::Cover { cover }) = doc.witness else {
        panic!("no cover witness");
    };
    let cover = serde_json::to_string(&cover).unwrap();
    assert!(r.stdout.contains(&cover));
    assert_eq!(Cover::from_json(&cover).unwrap().to_json(), cover);
    let r = critickit(
        &["count", "transversals", "--cover", "-"],
        Some(&cover),
        &[],
    );
    assert_eq!((r.code, r.stdout.trim()), (0, "0"));
    let r = critickit(
        &["count", "transversals", "--cover", "-"],
        Some("{\"schema\":\"nope\"}"),
        &[],
    );
    assert_eq!(r.code, 64);
}

#[test]
fn deterministic_runs_are_byte_identical() {
    for args in [
        &[
            "--json",
            "--workers",
            "4",
            "--deterministic",
            "check",
            "strong-cc",
            "--bipartite",
            "2",
            "4",
        ][..],
        &[
            "--json",
            "--workers",
            "3",
            "--deterministic",
            "chi",
            "dp",
            "--cycle",
            "6",
        ][..],
        &[
            "--json",
            "lemma",
            "excess",
            "--cycle",
            "5",
            "--sizes",
            "3,2,2,2,2",
        ][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.code, b.code);
    }
    // with one worker the deterministic answer is the default
    let one = run(&["--json", "chi", "dp", "--cycle", "6"]);
    let many = run(&[
        "--json",
        "--workers",
        "3",
        "--deterministic",
        "chi",
        "dp",
        "--cycle",
        "6",
    ]);
    assert_eq!(one.stdout, many.stdout);
}
