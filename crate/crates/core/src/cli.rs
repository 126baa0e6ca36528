//! Command-line front end. [`run`] does all the work and returns the exit code
//! with the produced text, so the binary is a thin wrapper and the reports can
//! be checked in tests.
//!
//! Exit codes: 0 for definitive results, 2 if any result is indeterminate, 1
//! for usage, input and per-graph errors or a falsified theorem check. In a
//! corpus run, graphs that are not r-graphs are reported as skipped by the
//! predicates that require one.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::covers::{
    fixed_f_family, fulkerson_cover, proper_edge_coloring, triple_empty_family, Budget, Outcome,
    SearchResult, DEFAULT_NODE_BUDGET, DEFAULT_PM_CAP,
};
use crate::error::{Error, Result};
use crate::format::parse_all_lenient;
use crate::gadget::{
    build_gadget, is_unslicable, verify_gadget_is_rgraph, verify_no_fixed_f_family, GadgetExport,
    Slicability,
};
use crate::matching::{enumerate_perfect_matchings, PerfectMatching};
use crate::multigraph::{boundary, bridges, is_bipartite, vertex_connectivity_at_least, Multigraph};
use crate::oddcut::{
    check_brick_theorem, classify, contract_side, find_nontrivial_r_cut, is_r_graph, min_odd_cut,
};

#[derive(Debug, Parser)]
#[command(name = "rgraphs", version, about = "Matching and odd-cut toolkit for r-graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Regularity / odd-cut bound.
    #[arg(long, global = true, default_value_t = 3)]
    pub r: usize,
    /// Gadget parameter; the gadget is (2k+1)-regular.
    #[arg(long, global = true, default_value_t = 1)]
    pub k: usize,
    /// Number of colours for `color` (default r + 1).
    #[arg(long, global = true)]
    pub colors: Option<usize>,
    /// Search node budget.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET)]
    pub budget: u64,
    /// Perfect matchings enumerated before truncation.
    #[arg(long = "pm-cap", global = true, default_value_t = DEFAULT_PM_CAP)]
    pub pm_cap: usize,
    /// One JSON object per line instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for corpus runs.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Include wall time in reports (makes output non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
}

impl Options {
    fn search_budget(&self) -> Budget {
        Budget {
            nodes: self.budget,
            pm_cap: self.pm_cap,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Predicate {
    Classify,
    Rgraph,
    Fulkerson,
    Fanraspaud,
    BrickTheorem,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decomposition trichotomy: bipartite / non-trivial r-cut / bicritical.
    Classify { files: Vec<PathBuf> },
    /// Is the graph an r-graph? Reports the first failing clause.
    Rgraph { files: Vec<PathBuf> },
    /// Minimum odd cut via a Gomory-Hu tree.
    Oddcut { files: Vec<PathBuf> },
    /// Non-trivial odd cut of size r and the two contractions across it.
    Tightcut { files: Vec<PathBuf> },
    /// Brick recognition.
    Brick { files: Vec<PathBuf> },
    /// Proper edge colouring with --colors colours.
    Color { files: Vec<PathBuf> },
    /// Berge-Fulkerson cover: 2r perfect matchings covering each edge twice.
    Fulkerson { files: Vec<PathBuf> },
    /// r perfect matchings (or --t) with every three intersecting trivially.
    Fanraspaud {
        #[arg(long)]
        t: Option<usize>,
        files: Vec<PathBuf>,
    },
    /// r-1 perfect matchings F_i with F ∩ F_i ∩ F_j empty, for a fixed F.
    Fixedf {
        /// Comma-separated edge ids of F; every perfect matching if omitted.
        #[arg(long)]
        matching: Option<String>,
        files: Vec<PathBuf>,
    },
    /// Expand every vertex into a (2k+1)-cycle of multiplicity k.
    Gadget { files: Vec<PathBuf> },
    /// Does removing any perfect matching leave an (r-1)-graph?
    Unslicable { files: Vec<PathBuf> },
    /// Build the gadget and confirm no 2k matchings avoid F pairwise.
    #[command(name = "verify-t5")]
    VerifyT5 { files: Vec<PathBuf> },
    /// Run a predicate over every graph of a file or directory.
    Corpus {
        #[arg(long, value_enum)]
        predicate: Predicate,
        path: PathBuf,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Classify { .. } => "classify",
            Command::Rgraph { .. } => "rgraph",
            Command::Oddcut { .. } => "oddcut",
            Command::Tightcut { .. } => "tightcut",
            Command::Brick { .. } => "brick",
            Command::Color { .. } => "color",
            Command::Fulkerson { .. } => "fulkerson",
            Command::Fanraspaud { .. } => "fanraspaud",
            Command::Fixedf { .. } => "fixedf",
            Command::Gadget { .. } => "gadget",
            Command::Unslicable { .. } => "unslicable",
            Command::VerifyT5 { .. } => "verify-t5",
            Command::Corpus { .. } => "corpus",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Found,
    Refuted,
    Indeterminate,
    True,
    False,
    /// Corpus graph outside the predicate's precondition.
    Skipped,
    Error,
}

impl Status {
    fn from_bool(b: bool) -> Self {
        if b {
            Status::True
        } else {
            Status::False
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Status::Found => "found",
            Status::Refuted => "refuted",
            Status::Indeterminate => "indeterminate",
            Status::True => "true",
            Status::False => "false",
            Status::Skipped => "skipped",
            Status::Error => "error",
        }
    }
}

/// One result per input graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub input: String,
    pub index: usize,
    pub digest: Option<String>,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub status: Status,
    pub witness: Option<Value>,
    pub nodes: Option<u64>,
    pub budget: Option<Budget>,
    pub falsified: bool,
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

/// Aggregate over a corpus run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub graphs: usize,
    pub found: usize,
    pub refuted: usize,
    pub indeterminate: usize,
    #[serde(rename = "true")]
    pub yes: usize,
    #[serde(rename = "false")]
    pub no: usize,
    pub skipped: usize,
    pub error: usize,
    pub falsified: usize,
}

impl Summary {
    pub fn of(reports: &[Report]) -> Self {
        let mut s = Summary {
            graphs: reports.len(),
            ..Summary::default()
        };
        for r in reports {
            match r.status {
                Status::Found => s.found += 1,
                Status::Refuted => s.refuted += 1,
                Status::Indeterminate => s.indeterminate += 1,
                Status::True => s.yes += 1,
                Status::False => s.no += 1,
                Status::Skipped => s.skipped += 1,
                Status::Error => s.error += 1,
            }
            s.falsified += r.falsified as usize;
        }
        s
    }
}

/// Hex SHA-256 of the normalized, sorted edge list. Not invariant under
/// relabelling.
pub fn graph_digest(g: &Multigraph) -> String {
    let mut pairs: Vec<(usize, usize)> = g.edges().iter().map(|e| e.normalized()).collect();
    pairs.sort_unstable();
    let mut h = Sha256::new();
    h.update(format!("{} {}\n", g.vertex_count(), pairs.len()));
    for (u, v) in pairs {
        h.update(format!("{u} {v}\n"));
    }
    hex::encode(h.finalize())
}

pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Outcome of one command on one graph, before report bookkeeping.
struct Verdict {
    status: Status,
    witness: Option<Value>,
    nodes: Option<u64>,
    budget: Option<Budget>,
    falsified: bool,
}

impl Verdict {
    fn plain(status: Status, witness: Value) -> Self {
        Verdict {
            status,
            witness: Some(witness),
            nodes: None,
            budget: None,
            falsified: false,
        }
    }

    fn search<T: Serialize>(r: &SearchResult<T>, budget: Budget) -> Self {
        let (status, witness) = match &r.outcome {
            Outcome::Found(w) => (Status::Found, Some(to_value(w))),
            Outcome::Refuted => (Status::Refuted, None),
            Outcome::Indeterminate(why) => (Status::Indeterminate, Some(to_value(why))),
        };
        Verdict {
            status,
            witness,
            nodes: Some(r.nodes),
            budget: Some(budget),
            falsified: false,
        }
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report payloads serialize")
}

fn parse_matching(g: &Multigraph, spec: &str) -> Result<PerfectMatching> {
    let ids = spec
        .split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|e| Error::InvalidArgument(format!("bad edge id {s:?}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    PerfectMatching::new(g, ids)
}

fn evaluate(cmd: &Command, opts: &Options, g: &Multigraph) -> Result<Verdict> {
    let r = opts.r;
    let budget = opts.search_budget();
    Ok(match cmd {
        Command::Classify { .. } => evaluate_predicate(Predicate::Classify, opts, g)?,
        Command::Rgraph { .. } => evaluate_predicate(Predicate::Rgraph, opts, g)?,
        Command::Fulkerson { .. } => evaluate_predicate(Predicate::Fulkerson, opts, g)?,
        Command::Fanraspaud { t, .. } => {
            let res = triple_empty_family(g, t.unwrap_or(r), &budget)?;
            Verdict::search(&res, budget)
        }
        Command::Oddcut { .. } => Verdict::plain(Status::Found, to_value(&min_odd_cut(g)?)),
        Command::Tightcut { .. } => match find_nontrivial_r_cut(g, r)? {
            None => Verdict::plain(Status::False, Value::Null),
            Some(x) => {
                let cut = boundary(g, &x)?;
                let pair = contract_side(g, &x)?;
                Verdict::plain(
                    Status::Found,
                    json!({
                        "side": x,
                        "cut_edges": cut.boundary,
                        "g1": pair.g1,
                        "g2": pair.g2,
                        "g1_is_r_graph": is_r_graph(&pair.g1, r).holds,
                        "g2_is_r_graph": is_r_graph(&pair.g2, r).holds,
                    }),
                )
            }
        },
        Command::Brick { .. } => {
            let bipartite = is_bipartite(g).is_some();
            let bicritical = crate::matching::is_bicritical(g);
            let connected3 = vertex_connectivity_at_least(g, 3);
            Verdict::plain(
                Status::from_bool(!bipartite && bicritical && connected3),
                json!({
                    "bipartite": bipartite,
                    "bicritical": bicritical,
                    "three_connected": connected3,
                }),
            )
        }
        Command::Color { .. } => {
            let colors = opts.colors.unwrap_or(r + 1);
            let res = proper_edge_coloring(g, colors, &budget)?;
            Verdict::search(&res, budget)
        }
        Command::Fixedf { matching, .. } => {
            let t = r.saturating_sub(1);
            match matching {
                Some(spec) => {
                    let f = parse_matching(g, spec)?;
                    let res = fixed_f_family(g, &f, t, &budget)?;
                    Verdict::search(&res, budget)
                }
                None => {
                    // every perfect matching as F; refuted if some F admits no family
                    let pms = enumerate_perfect_matchings(g, budget.pm_cap);
                    let mut nodes = 0;
                    let mut status = Status::Found;
                    let mut witness = json!({ "matchings": pms.matchings.len() });
                    for f in &pms.matchings {
                        let res = fixed_f_family(g, f, t, &budget)?;
                        nodes += res.nodes;
                        match res.outcome {
                            Outcome::Found(_) => {}
                            Outcome::Refuted => {
                                status = Status::Refuted;
                                witness = json!({ "fixed": f });
                                break;
                            }
                            Outcome::Indeterminate(_) => status = Status::Indeterminate,
                        }
                    }
                    if pms.truncated && status == Status::Found {
                        status = Status::Indeterminate;
                    }
                    Verdict {
                        status,
                        witness: Some(witness),
                        nodes: Some(nodes),
                        budget: Some(budget),
                        falsified: false,
                    }
                }
            }
        }
        Command::Gadget { .. } => {
            let res = build_gadget(g, opts.k)?;
            Verdict::plain(Status::True, to_value(&GadgetExport::from(&res)))
        }
        Command::Unslicable { .. } => {
            let s = is_unslicable(g, r, &budget)?;
            let status = match &s {
                Slicability::Unslicable => Status::True,
                Slicability::Slicable { .. } => Status::False,
                Slicability::Indeterminate => Status::Indeterminate,
            };
            Verdict {
                status,
                witness: Some(to_value(&s)),
                nodes: None,
                budget: Some(budget),
                falsified: false,
            }
        }
        Command::VerifyT5 { .. } => {
            let k = opts.k;
            let rr = 2 * k + 1;
            let h_is_r_graph = is_r_graph(g, rr);
            let slicability = is_unslicable(g, rr, &budget)?;
            let res = build_gadget(g, k)?;
            let rcheck = verify_gadget_is_rgraph(&res)?;
            let verdict = verify_no_fixed_f_family(&res, &budget)?;
            let status = match verdict.confirmed() {
                Some(b) => Status::from_bool(b),
                None => Status::Indeterminate,
            };
            // an unslicable (2k+1)-graph must give a (2k+1)-graph with no family
            let falsified = slicability == Slicability::Unslicable
                && (!rcheck.holds() || verdict.confirmed() == Some(false));
            let family = match &verdict.outcome {
                Outcome::Found(fam) => to_value(fam),
                _ => Value::Null,
            };
            Verdict {
                status,
                witness: Some(json!({
                    "h_is_r_graph": h_is_r_graph,
                    "h_slicability": slicability,
                    "gadget_vertices": res.graph.vertex_count(),
                    "gadget_edges": res.graph.edge_count(),
                    "gadget_r_graph": rcheck,
                    "f": res.f,
                    "canonical_f": verdict.canonical_f,
                    "matchings_enumerated": verdict.matchings_enumerated,
                    "family": family,
                })),
                nodes: Some(verdict.nodes),
                budget: Some(budget),
                falsified,
            }
        }
        Command::Corpus { predicate, .. } => evaluate_predicate(*predicate, opts, g)?,
    })
}

fn evaluate_predicate(p: Predicate, opts: &Options, g: &Multigraph) -> Result<Verdict> {
    let r = opts.r;
    let budget = opts.search_budget();
    Ok(match p {
        Predicate::Classify => {
            let c = classify(g, r)?;
            Verdict {
                falsified: !c.satisfied,
                ..Verdict::plain(Status::from_bool(c.satisfied), to_value(&c))
            }
        }
        Predicate::Rgraph => {
            let check = is_r_graph(g, r);
            let mut witness = to_value(&check);
            let mut falsified = false;
            // cubic connected graphs of even order: 3-graph iff bridgeless
            if r == 3 && g.is_regular(3) && g.is_connected() && g.vertex_count() % 2 == 0 {
                let bridgeless = bridges(g).is_empty();
                witness["bridgeless"] = Value::Bool(bridgeless);
                falsified = bridgeless != check.holds;
            }
            Verdict {
                falsified,
                ..Verdict::plain(Status::from_bool(check.holds), witness)
            }
        }
        Predicate::Fulkerson => {
            let res = fulkerson_cover(g, r, &budget)?;
            Verdict::search(&res, budget)
        }
        Predicate::Fanraspaud => {
            let res = triple_empty_family(g, r, &budget)?;
            Verdict::search(&res, budget)
        }
        Predicate::BrickTheorem => {
            let c = check_brick_theorem(g, r)?;
            Verdict {
                falsified: !c.holds(),
                ..Verdict::plain(Status::from_bool(c.holds()), to_value(&c))
            }
        }
    })
}

fn report_for(
    cmd: &Command,
    opts: &Options,
    input: &str,
    index: usize,
    parsed: &Result<Multigraph>,
) -> Report {
    let start = Instant::now();
    let mut report = Report {
        command: cmd.name().to_string(),
        input: input.to_string(),
        index,
        digest: None,
        n: None,
        m: None,
        status: Status::Error,
        witness: None,
        nodes: None,
        budget: None,
        falsified: false,
        error: None,
        wall_ms: None,
    };
    match parsed {
        Err(e) => report.error = Some(e.to_string()),
        Ok(g) => {
            report.digest = Some(graph_digest(g));
            report.n = Some(g.vertex_count());
            report.m = Some(g.edge_count());
            match evaluate(cmd, opts, g) {
                Ok(v) => {
                    report.status = v.status;
                    report.witness = v.witness;
                    report.nodes = v.nodes;
                    report.budget = v.budget;
                    report.falsified = v.falsified;
                }
                Err(e) => {
                    if matches!(cmd, Command::Corpus { .. }) && matches!(e, Error::NotRGraph { .. }) {
                        report.status = Status::Skipped;
                    }
                    report.error = Some(e.to_string());
                }
            }
        }
    }
    if opts.timing {
        report.wall_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    report
}

fn corpus_files(path: &Path) -> std::io::Result<Vec<PathBuf>> {
    if path.is_dir() {
        let mut files: Vec<PathBuf> = fs::read_dir(path)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| {
                p.is_file()
                    && matches!(
                        p.extension().and_then(|e| e.to_str()),
                        Some("g6") | Some("mg")
                    )
            })
            .collect();
        files.sort();
        Ok(files)
    } else {
        Ok(vec![path.to_path_buf()])
    }
}

/// Per-graph inputs, in file order then line order.
fn load(files: &[PathBuf]) -> std::result::Result<Vec<(String, usize, Result<Multigraph>)>, String> {
    let mut items = Vec::new();
    for path in files {
        let name = path.display().to_string();
        let text = fs::read_to_string(path).map_err(|e| format!("{name}: {e}"))?;
        match parse_all_lenient(&text) {
            Ok(graphs) => {
                for (i, g) in graphs.into_iter().enumerate() {
                    items.push((name.clone(), i, g));
                }
            }
            Err(e) => items.push((name.clone(), 0, Err(e))),
        }
    }
    Ok(items)
}

/// Runs a command over pre-parsed inputs; parallel over `opts.jobs` workers,
/// output in input order.
pub fn run_reports(
    cmd: &Command,
    opts: &Options,
    items: &[(String, usize, Result<Multigraph>)],
) -> Vec<Report> {
    let work = || -> Vec<Report> {
        items
            .par_iter()
            .map(|(name, i, g)| report_for(cmd, opts, name, *i, g))
            .collect()
    };
    if opts.jobs <= 1 {
        return items
            .iter()
            .map(|(name, i, g)| report_for(cmd, opts, name, *i, g))
            .collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(opts.jobs).build() {
        Ok(pool) => pool.install(work),
        Err(_) => work(),
    }
}

fn render_text(r: &Report) -> String {
    let mut line = format!("{}[{}] {}: {}", r.input, r.index, r.command, r.status.as_str());
    if let (Some(n), Some(m)) = (r.n, r.m) {
        line.push_str(&format!(" (n={n}, m={m})"));
    }
    if r.falsified {
        line.push_str(" FALSIFIED");
    }
    if let Some(e) = &r.error {
        line.push_str(&format!(" error: {e}"));
    }
    if let Some(w) = &r.witness {
        if !w.is_null() {
            line.push_str(&format!(" witness: {w}"));
        }
    }
    if let Some(ms) = r.wall_ms {
        line.push_str(&format!(" [{ms:.1} ms]"));
    }
    line
}

pub fn exit_code(reports: &[Report]) -> i32 {
    if reports
        .iter()
        .any(|r| r.falsified || r.status == Status::Error)
    {
        1
    } else if reports.iter().any(|r| r.status == Status::Indeterminate) {
        2
    } else {
        0
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 {
                (text, String::new())
            } else {
                (String::new(), text)
            };
            return RunOutput {
                code,
                stdout,
                stderr,
            };
        }
    };
    execute(&cli)
}

pub fn execute(cli: &Cli) -> RunOutput {
    let fail = |msg: String| RunOutput {
        code: 1,
        stdout: String::new(),
        stderr: msg + "\n",
    };
    let files = match &cli.command {
        Command::Corpus { path, .. } => match corpus_files(path) {
            Ok(f) => f,
            Err(e) => return fail(format!("{}: {e}", path.display())),
        },
        Command::Classify { files }
        | Command::Rgraph { files }
        | Command::Oddcut { files }
        | Command::Tightcut { files }
        | Command::Brick { files }
        | Command::Color { files }
        | Command::Fulkerson { files }
        | Command::Fanraspaud { files, .. }
        | Command::Fixedf { files, .. }
        | Command::Gadget { files }
        | Command::Unslicable { files }
        | Command::VerifyT5 { files } => {
            if files.is_empty() {
                return fail("no input files given".into());
            }
            files.clone()
        }
    };
    let items = match load(&files) {
        Ok(items) => items,
        Err(e) => return fail(e),
    };
    let reports = run_reports(&cli.command, &cli.opts, &items);
    let mut stdout = String::new();
    let mut stderr = String::new();
    for r in &reports {
        if cli.opts.json {
            stdout.push_str(&serde_json::to_string(r).expect("report serializes"));
        } else {
            stdout.push_str(&render_text(r));
        }
        stdout.push('\n');
        if r.falsified {
            stderr.push_str(&format!(
                "THEOREM FALSIFIED on {}[{}] ({})\n",
                r.input, r.index, r.command
            ));
        }
    }
    if let Command::Corpus { predicate, .. } = &cli.command {
        let summary = Summary::of(&reports);
        if cli.opts.json {
            stdout.push_str(
                &serde_json::to_string(&json!({ "predicate": predicate, "summary": summary }))
                    .expect("summary serializes"),
            );
        } else {
            stdout.push_str(&format!(
                "summary: {} graphs, {} true, {} false, {} found, {} refuted, {} indeterminate, {} skipped, {} errors, {} falsified",
                summary.graphs,
                summary.yes,
                summary.no,
                summary.found,
                summary.refuted,
                summary.indeterminate,
                summary.skipped,
                summary.error,
                summary.falsified
            ));
        }
        stdout.push('\n');
    }
    RunOutput {
        code: exit_code(&reports),
        stdout,
        stderr,
    }
}
