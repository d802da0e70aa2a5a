//! The `critickit` command line. [`run`] does all the work and returns the
//! exit status with captured output, so tests can drive it without a
//! subprocess.
//!
//! Exit status: 0 decided yes, 1 decided no, 2 unknown or budget-limited,
//! 64 usage or input error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use critickit::coloring::{chromatic_polynomial, classify_criticality, count_proper_colorings};
use critickit::dp::{
    count_transversals, dp_chromatic_number, make_canonical_cover, pdp_value,
    robust_criticality_verdict, Pdp,
};
use critickit::graph::{
    clique, complete_bipartite, cycle, ekab, encode_graph6, format_edge_list, join,
    parse_edge_list, parse_graph6, EkabParams,
};
use critickit::lemma::{
    check_excess_lemma, check_full_extension_lemma, check_induction_lemma, check_join_preserves,
    check_pair_reduction, Outcome,
};
use critickit::list::{list_chromatic_number, strong_criticality_verdict, CriticalityMode};
use critickit::report::{Answer, CountDoc, CountKind, GraphDoc, NumberDoc, VerdictDoc, WitnessDoc};
use critickit::{Cover, Graph, LemmaReport, Limits};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "critickit",
    version,
    about = "Exact criticality checks for small graphs"
)]
struct Cli {
    #[command(flatten)]
    run: RunArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Emit exactly one JSON document on standard output.
    #[arg(long, global = true)]
    json: bool,
    /// Report the first witness in enumeration order (always on with one worker).
    #[arg(long, global = true)]
    deterministic: bool,
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    workers: u64,
    /// Search-node budget.
    #[arg(long, global = true, env = "CRITICKIT_BUDGET", value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,
    /// Wall-clock budget in milliseconds.
    #[arg(long = "time-ms", global = true, value_parser = clap::value_parser!(u64).range(1..))]
    time_ms: Option<u64>,
    /// Largest normalized cover enumeration to attempt.
    #[arg(long = "max-covers", global = true)]
    max_covers: Option<u128>,
}

#[derive(Debug, Args, Default)]
struct Source {
    #[arg(long)]
    graph6: Option<String>,
    /// Edge-list file (`n m` header, then `u v` lines); `-` reads stdin.
    #[arg(long)]
    edges: Option<String>,
    #[arg(long, value_name = "N")]
    clique: Option<usize>,
    #[arg(long, value_name = "N")]
    cycle: Option<usize>,
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    bipartite: Option<Vec<usize>>,
    #[arg(long, num_args = 3, value_names = ["K", "A", "B"])]
    ekab: Option<Vec<usize>>,
    /// Join with another graph, left to right: `clique:N`, `cycle:N`,
    /// `bipartite:A,B`, `ekab:K,A,B` or `graph6:WORD`.
    #[arg(long, value_name = "SPEC")]
    join: Vec<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a graph in graph6 (default) or edge-list form.
    Gen {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = GenFormat::Graph6)]
        format: GenFormat,
    },
    /// Chromatic, list-chromatic or DP-chromatic number.
    Chi {
        #[arg(value_enum)]
        which: ChiKind,
        #[command(flatten)]
        source: Source,
    },
    /// Decide a criticality property.
    Check {
        #[arg(value_enum)]
        which: CheckWhich,
        #[command(flatten)]
        source: Source,
    },
    /// Exact counts.
    Count {
        #[arg(value_enum)]
        which: CountWhich,
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        k: Option<usize>,
        /// Cover JSON file for `transversals`; `-` reads stdin.
        #[arg(long)]
        cover: Option<String>,
    },
    /// Run a lemma check on one instance.
    Lemma {
        #[command(subcommand)]
        which: LemmaCmd,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GenFormat {
    Graph6,
    Edges,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ChiKind {
    Plain,
    List,
    Dp,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CheckWhich {
    Critical,
    VertexCritical,
    Strong,
    StrongCc,
    Robust,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CountWhich {
    Colorings,
    Transversals,
    Pdp,
    ChromaticPoly,
}

#[derive(Debug, Subcommand)]
enum LemmaCmd {
    Excess {
        #[command(flatten)]
        source: Source,
        /// Per-vertex list sizes, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
    },
    FullExtension {
        #[command(flatten)]
        source: Source,
    },
    Pair {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        x: usize,
        #[arg(long)]
        y: usize,
    },
    Induction {
        #[command(flatten)]
        source: Source,
        /// The independent set, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<usize>,
    },
    Join {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        t: usize,
    },
}

/// Exit status and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn usage(message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Output {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr,
        }
    }

    fn text(code: i32, stdout: String) -> Self {
        Output {
            code,
            stdout,
            stderr: String::new(),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Output::text(EXIT_YES, rendered)
                }
                _ => Output::usage(rendered),
            };
        }
    };
    match execute(&cli) {
        Ok(out) => out,
        Err(message) => Output::usage(format!("error: {message}")),
    }
}

fn limits(run: &RunArgs) -> Limits {
    let mut l = Limits::default();
    if let Some(b) = run.budget {
        l.node_budget = b;
    }
    l.time_budget = run.time_ms.map(Duration::from_millis);
    if let Some(c) = run.max_covers {
        l.max_covers = c;
    }
    l.workers = run.workers as usize;
    l.deterministic = run.deterministic || run.workers <= 1;
    l
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| format!("reading stdin: {e}"))
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))
    }
}

fn named(kind: &str, params: &[usize]) -> Result<Graph, String> {
    let g = match (kind, params) {
        ("clique", [n]) => clique(*n),
        ("cycle", [n]) => cycle(*n),
        ("bipartite", [a, b]) => complete_bipartite(*a, *b),
        ("ekab", [k, a, b]) => EkabParams::new(*k, *a, *b).map(ekab),
        _ => return Err(format!("bad parameters for {kind}: {params:?}")),
    };
    g.map_err(|e| e.to_string())
}

fn join_spec(spec: &str) -> Result<Graph, String> {
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| format!("join spec {spec:?} needs the form kind:params"))?;
    if kind == "graph6" {
        return parse_graph6(rest).map_err(|e| e.to_string());
    }
    let params = rest
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad number {p:?} in {spec:?}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    named(kind, &params)
}

impl Source {
    fn graph(&self) -> Result<Graph, String> {
        let mut picked = Vec::new();
        if let Some(w) = &self.graph6 {
            picked.push(parse_graph6(w).map_err(|e| e.to_string()));
        }
        if let Some(path) = &self.edges {
            picked.push(
                read_input(path).and_then(|t| parse_edge_list(&t).map_err(|e| e.to_string())),
            );
        }
        if let Some(n) = self.clique {
            picked.push(named("clique", &[n]));
        }
        if let Some(n) = self.cycle {
            picked.push(named("cycle", &[n]));
        }
        if let Some(p) = &self.bipartite {
            picked.push(named("bipartite", p));
        }
        if let Some(p) = &self.ekab {
            picked.push(named("ekab", p));
        }
        if picked.len() != 1 {
            return Err(
                "give exactly one graph source (--graph6, --edges, --clique, --cycle, --bipartite, --ekab)"
                    .into(),
            );
        }
        let mut g = picked.pop().unwrap()?;
        for spec in &self.join {
            g = join(&g, &join_spec(spec)?).map_err(|e| e.to_string())?;
        }
        Ok(g)
    }
}

fn answer_code(a: Answer) -> i32 {
    match a {
        Answer::Yes => EXIT_YES,
        Answer::No => EXIT_NO,
        Answer::Unknown => EXIT_UNKNOWN,
    }
}

fn describe_witness(w: &WitnessDoc) -> String {
    match w {
        WitnessDoc::Edge { u, v } => format!("deleting edge {u}-{v} keeps the chromatic number"),
        WitnessDoc::Vertex { vertex } => {
            format!("deleting vertex {vertex} keeps the chromatic number")
        }
        WitnessDoc::Cover { cover } => {
            format!("bad cover {}", serde_json::to_string(cover).unwrap())
        }
        WitnessDoc::Assignment { lists } => {
            format!("bad lists {}", serde_json::to_string(&lists.lists).unwrap())
        }
        WitnessDoc::Coloring { colors } => format!("coloring {colors:?}"),
    }
}

fn execute(cli: &Cli) -> Result<Output, String> {
    let lim = limits(&cli.run);
    let json = cli.run.json;
    match &cli.command {
        Command::Gen { source, format } => {
            let g = source.graph()?;
            let text = if json {
                serde_json::to_string(&GraphDoc::from(&g)).unwrap()
            } else {
                match format {
                    GenFormat::Graph6 => encode_graph6(&g),
                    GenFormat::Edges => format_edge_list(&g).trim_end().to_string(),
                }
            };
            Ok(Output::text(EXIT_YES, text + "\n"))
        }
        Command::Chi { which, source } => {
            let g = source.graph()?;
            let doc = match which {
                ChiKind::Plain => NumberDoc::chromatic(&g),
                ChiKind::List => NumberDoc::list(&g, &list_chromatic_number(&g, &lim)),
                ChiKind::Dp => NumberDoc::dp(
                    &g,
                    &dp_chromatic_number(&g, &lim).map_err(|e| e.to_string())?,
                ),
            };
            let code = if doc.value.is_some() {
                EXIT_YES
            } else {
                EXIT_UNKNOWN
            };
            let text = if json {
                doc.to_json()
            } else {
                match (doc.value, doc.lower_bound) {
                    (Some(v), _) => {
                        let mut s = v.to_string();
                        if let Some(w) = &doc.witness {
                            let _ = write!(s, "\nwitness: {}", describe_witness(w));
                        }
                        s
                    }
                    (None, lb) => format!("unknown (at least {})", lb.unwrap_or(0)),
                }
            };
            Ok(Output::text(code, text + "\n"))
        }
        Command::Check { which, source } => {
            let g = source.graph()?;
            let doc = match which {
                CheckWhich::Critical => {
                    VerdictDoc::criticality(&g, &classify_criticality(&g), false)
                }
                CheckWhich::VertexCritical => {
                    VerdictDoc::criticality(&g, &classify_criticality(&g), true)
                }
                CheckWhich::Strong => VerdictDoc::strong(
                    &g,
                    &strong_criticality_verdict(&g, CriticalityMode::Critical, &lim),
                ),
                CheckWhich::StrongCc => VerdictDoc::strong(
                    &g,
                    &strong_criticality_verdict(&g, CriticalityMode::VertexCritical, &lim),
                ),
                CheckWhich::Robust => VerdictDoc::robust(&g, &robust_criticality_verdict(&g, &lim)),
            };
            let text = if json {
                doc.to_json()
            } else {
                let mut s = format!("{} k={}", doc.decision, doc.k);
                if let Some(n) = doc.covers_scanned {
                    let _ = write!(s, " covers_scanned={n}");
                }
                if let Some(w) = &doc.witness {
                    let _ = write!(s, "\nwitness: {}", describe_witness(w));
                }
                s
            };
            Ok(Output::text(answer_code(doc.answer), text + "\n"))
        }
        Command::Count {
            which,
            source,
            k,
            cover,
        } => count(*which, source, *k, cover.as_deref(), &lim, json),
        Command::Lemma { which } => {
            let report = lemma(which, &lim)?;
            let code = match report.outcome {
                Outcome::AllPass => EXIT_YES,
                Outcome::Counterexample => EXIT_NO,
                Outcome::SkippedPrecondition | Outcome::Truncated => EXIT_UNKNOWN,
            };
            let text = if json {
                report.to_json()
            } else {
                let outcome = serde_json::to_value(report.outcome).unwrap();
                format!(
                    "{} checked={} {}",
                    outcome.as_str().unwrap(),
                    report.checked,
                    report.detail
                )
            };
            Ok(Output::text(code, text + "\n"))
        }
    }
}

fn need_k(k: Option<usize>) -> Result<usize, String> {
    k.ok_or_else(|| "this count needs --k".to_string())
}

fn count(
    which: CountWhich,
    source: &Source,
    k: Option<usize>,
    cover: Option<&str>,
    lim: &Limits,
    json: bool,
) -> Result<Output, String> {
    let mut code = EXIT_YES;
    let doc = match which {
        CountWhich::Colorings => {
            let g = source.graph()?;
            let k = need_k(k)?;
            let mut doc = CountDoc::new(CountKind::Colorings, &g, Some(k));
            doc.value = Some(count_proper_colorings(&g, k as u64).to_string());
            doc
        }
        CountWhich::ChromaticPoly => {
            let g = source.graph()?;
            let p = chromatic_polynomial(&g);
            let mut doc = CountDoc::new(CountKind::ChromaticPoly, &g, k);
            doc.polynomial = Some(p.to_string());
            doc.coefficients = Some(p.coefficients().iter().map(|c| c.to_string()).collect());
            doc.value = k.map(|k| p.eval_u64(k as u64).to_string());
            doc
        }
        CountWhich::Transversals => {
            let c = match cover {
                Some(path) => Cover::from_json(&read_input(path)?).map_err(|e| e.to_string())?,
                None => {
                    make_canonical_cover(&source.graph()?, need_k(k)?).map_err(|e| e.to_string())?
                }
            };
            let mut doc = CountDoc::new(CountKind::Transversals, c.graph(), c.uniform_size());
            doc.value = Some(count_transversals(&c).to_string());
            doc
        }
        CountWhich::Pdp => {
            let g = source.graph()?;
            let k = need_k(k)?;
            let p = pdp_value(&g, k, lim).map_err(|e| e.to_string())?;
            let mut doc = CountDoc::new(CountKind::Pdp, &g, Some(k));
            doc.value = Some(p.value().to_string());
            doc.argmin = Some(p.argmin().into());
            let scanned = match &p {
                Pdp::Exact { covers_scanned, .. } => *covers_scanned,
                Pdp::Bounded { covers_scanned, .. } => {
                    doc.exact = false;
                    code = EXIT_UNKNOWN;
                    *covers_scanned
                }
            };
            doc.covers_scanned = Some(scanned);
            doc
        }
    };
    let text = if json {
        doc.to_json()
    } else {
        let mut s = String::new();
        if let Some(p) = &doc.polynomial {
            s.push_str(p);
            if let Some(v) = &doc.value {
                let _ = write!(s, "\nP({}) = {v}", doc.k.unwrap());
            }
        } else {
            s.push_str(doc.value.as_deref().unwrap_or("?"));
            if !doc.exact {
                s.push_str(" (upper bound; budget exhausted)");
            }
        }
        s
    };
    Ok(Output::text(code, text + "\n"))
}

fn lemma(which: &LemmaCmd, lim: &Limits) -> Result<LemmaReport, String> {
    Ok(match which {
        LemmaCmd::Excess { source, sizes } => check_excess_lemma(&source.graph()?, sizes, lim),
        LemmaCmd::FullExtension { source } => check_full_extension_lemma(&source.graph()?, lim),
        LemmaCmd::Pair { source, x, y } => check_pair_reduction(&source.graph()?, *x, *y, lim),
        LemmaCmd::Induction { source, set } => check_induction_lemma(&source.graph()?, set, lim),
        LemmaCmd::Join { source, t } => check_join_preserves(&source.graph()?, *t, lim),
    })
}
