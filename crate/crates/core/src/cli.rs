//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 verification failure or an
//! asserted outcome that did not hold, 3 search budget exhausted.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::bounds::{
    book_bound, lemma2_bound, lemma_p3_bound, parsons_bound, stars_bound, theorem_mt_bound, BoundQuery,
};
use crate::coloring::EdgeColoring;
use crate::derive::{DerivationTree, Planner, DEFAULT_DEPTH};
use crate::graph6;
use crate::registry::{RamseyFact, Registry};
use crate::search::{
    degree_caps_from_registry, merge_colors, partition_check, search_coloring, SearchBudget, SearchOutcome,
    SearchStatus,
};
use crate::target::{parse_targets, render_targets, Target, TargetList};
use crate::witness::{extend_with_disjoint_clique, verify_lower_bound};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILED: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "c4-ramsey", version, about = "Upper-bound derivations and coloring search for Ramsey numbers of C4")]
struct Cli {
    /// Registry file; the bundled seed registry is used when absent.
    #[arg(long, global = true, value_name = "PATH")]
    registry: Option<PathBuf>,
    /// Start from an empty registry instead of the bundled seed.
    #[arg(long, global = true, conflicts_with = "registry")]
    no_registry: bool,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a single bound formula.
    Bound(BoundArgs),
    /// Derive the best upper bound for a target list.
    Derive {
        targets: String,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
    },
    /// Check a coloring against targets, or replay a derivation tree.
    Verify {
        #[arg(long, value_name = "@FILE", required_unless_present = "tree")]
        coloring: Option<String>,
        #[arg(long, requires = "coloring")]
        targets: Option<String>,
        /// Derivation tree in JSON form.
        #[arg(long, value_name = "@FILE", conflicts_with = "coloring")]
        tree: Option<String>,
    },
    /// Search for good colorings of K_N.
    Search(SearchArgs),
    /// Split the non-edges of a C4-free graph into two target-free classes.
    PartitionCheck {
        #[arg(long, value_name = "STR|@FILE")]
        graph6: String,
        #[arg(long, default_value = "K3,K4")]
        targets: String,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, value_name = "PATH")]
        witness_out: Option<PathBuf>,
    },
    /// Transform or certify a witness coloring.
    Witness(WitnessArgs),
    /// Inspect or edit the registry.
    Registry {
        #[command(subcommand)]
        action: RegistryAction,
    },
}

#[derive(Args, Debug)]
#[group(skip)]
#[command(group = ArgGroup::new("formula").required(true).multiple(false))]
struct BoundArgs {
    #[arg(long, group = "formula")]
    mt: bool,
    #[arg(long, group = "formula")]
    lemma2: bool,
    #[arg(long = "lemma-p3", group = "formula")]
    lemma_p3: bool,
    #[arg(long, group = "formula")]
    parsons: bool,
    #[arg(long, group = "formula")]
    book: bool,
    #[arg(long, group = "formula")]
    stars: bool,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
    /// Child bounds r_i, comma-separated; a single value is repeated n times.
    #[arg(long, value_delimiter = ',')]
    r: Vec<u64>,
    /// Star or book sizes, comma-separated.
    #[arg(long, value_delimiter = ',')]
    k: Vec<u64>,
}

#[derive(Args, Debug, Clone)]
struct BudgetArgs {
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long)]
    node_limit: Option<u64>,
    /// Seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    /// Run without a time limit unless one is given.
    #[arg(long)]
    exhaustive: bool,
}

impl BudgetArgs {
    fn budget(&self) -> Result<SearchBudget, String> {
        let mut b = if self.exhaustive { SearchBudget::unlimited() } else { SearchBudget::default() };
        b = b.with_threads(self.threads);
        if let Some(n) = self.node_limit {
            if n == 0 {
                return Err("--node-limit must be positive".into());
            }
            b = b.with_nodes(n);
        }
        if let Some(t) = self.time_limit {
            if !(t > 0.0 && t.is_finite()) {
                return Err("--time-limit must be a positive number of seconds".into());
            }
            b = b.with_time(Duration::from_secs_f64(t));
        }
        Ok(b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Expect {
    Feasible,
    Infeasible,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long)]
    targets: String,
    #[arg(long, conflicts_with = "range", required_unless_present = "range")]
    n: Option<usize>,
    /// Inclusive range `A..B`.
    #[arg(long, value_name = "A..B")]
    range: Option<String>,
    #[arg(long, value_enum)]
    expect: Option<Expect>,
    /// Prune with degree caps derived from the registry.
    #[arg(long)]
    registry_caps: bool,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long, value_name = "PATH")]
    witness_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct WitnessArgs {
    #[arg(long, value_name = "@FILE")]
    coloring: String,
    #[arg(long)]
    targets: String,
    /// Add a disjoint clique of this size.
    #[arg(long, value_name = "K")]
    extend: Option<usize>,
    #[arg(long, default_value_t = 0)]
    c4_color: usize,
    #[arg(long)]
    clique_color: Option<usize>,
    /// Merge colors `I,J` (J is recolored I).
    #[arg(long, value_name = "I,J", value_delimiter = ',', conflicts_with = "extend")]
    merge: Vec<usize>,
    /// Targets the merged coloring is certified against.
    #[arg(long, requires = "merge")]
    merged_targets: Option<String>,
    #[arg(long, value_name = "PATH")]
    witness_out: Option<PathBuf>,
    /// Append the resulting lower bound to the registry file.
    #[arg(long, requires = "registry")]
    record: bool,
}

#[derive(Subcommand, Debug)]
enum RegistryAction {
    /// Print every fact.
    List,
    /// Add a `targets | kind | value | citation | trust` line and save.
    Add { line: String },
    /// Print the bundled seed registry.
    Seed,
}

/// Machine-readable search result.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub n: usize,
    pub targets: String,
    pub status: String,
    pub nodes: u64,
    pub wall_ms: f64,
    pub note: String,
    pub witness_path: Option<String>,
    pub witness: Option<String>,
}

impl SearchReport {
    fn new(n: usize, targets: &[Target], out: &SearchOutcome, path: Option<&Path>) -> Self {
        SearchReport {
            n,
            targets: render_targets(targets),
            status: out.status.name().to_string(),
            nodes: out.nodes_explored,
            wall_ms: out.elapsed.as_secs_f64() * 1e3,
            note: out.certificate_note.clone(),
            witness_path: path.map(|p| p.display().to_string()),
            witness: out.status.witness().map(EdgeColoring::to_text),
        }
    }

    /// The witness coloring, parsed back from its text form.
    pub fn coloring(&self) -> Option<EdgeColoring> {
        self.witness.as_deref().and_then(|w| EdgeColoring::parse_text(w).ok())
    }
}

/// Machine-readable bound evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub formula: String,
    pub value: u64,
}

struct Failure {
    code: i32,
    msg: String,
}

impl Failure {
    fn usage(msg: impl ToString) -> Self {
        Failure { code: EXIT_USAGE, msg: msg.to_string() }
    }

    fn failed(msg: impl ToString) -> Self {
        Failure { code: EXIT_FAILED, msg: msg.to_string() }
    }
}

type Outcome = Result<i32, Failure>;

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    match &cli.cmd {
        Command::Bound(a) => cmd_bound(cli, a, out),
        Command::Derive { targets, depth } => cmd_derive(cli, targets, *depth, out),
        Command::Verify { coloring, targets, tree } => cmd_verify(cli, coloring, targets, tree, out),
        Command::Search(a) => cmd_search(cli, a, out),
        Command::PartitionCheck { graph6, targets, budget, witness_out } => {
            cmd_partition(cli, graph6, targets, budget, witness_out.as_deref(), out)
        }
        Command::Witness(a) => cmd_witness(cli, a, out),
        Command::Registry { action } => cmd_registry(cli, action, out),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Outcome {
    writeln!(out, "{text}").map_err(|e| Failure::usage(format!("write failed: {e}")))?;
    Ok(EXIT_OK)
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes")
}

fn load_registry(cli: &Cli) -> Result<Registry, Failure> {
    if cli.no_registry {
        return Ok(Registry::new());
    }
    match &cli.registry {
        Some(p) => Registry::load(p).map_err(Failure::usage),
        None => Ok(Registry::seed()),
    }
}

/// Reads `@path`, or a bare path.
fn read_file_arg(arg: &str) -> Result<String, Failure> {
    let path = arg.strip_prefix('@').unwrap_or(arg);
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{path}: {e}")))
}

fn parse_target_arg(text: &str) -> Result<Vec<Target>, Failure> {
    parse_targets(text).map_err(Failure::usage)
}

fn write_witness(path: Option<&Path>, w: &EdgeColoring) -> Result<(), Failure> {
    if let Some(p) = path {
        std::fs::write(p, w.to_text()).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn cmd_bound(cli: &Cli, a: &BoundArgs, out: &mut dyn Write) -> Outcome {
    let need = |x: Option<u64>, flag: &str| x.ok_or_else(|| Failure::usage(format!("--{flag} is required")));
    let one_k = || match a.k.as_slice() {
        [k] => Ok(*k),
        _ => Err(Failure::usage("exactly one --k value is required")),
    };
    let main_query = || -> Result<BoundQuery, Failure> {
        let m = need(a.m, "m")?;
        let n = need(a.n, "n")?;
        let r = match a.r.as_slice() {
            [] if n == 0 => vec![],
            [x] => vec![*x; n as usize],
            rs if rs.len() as u64 == n => rs.to_vec(),
            rs => return Err(Failure::usage(format!("--r has {} values but --n is {n}", rs.len()))),
        };
        Ok(BoundQuery::new(m, r))
    };
    let (formula, value) = if a.mt {
        ("main", theorem_mt_bound(&main_query()?))
    } else if a.lemma2 {
        ("lemma2", lemma2_bound(&main_query()?))
    } else if a.lemma_p3 {
        ("lemma-p3", lemma_p3_bound(&main_query()?))
    } else if a.parsons {
        ("parsons", parsons_bound(one_k()?))
    } else if a.book {
        let k = one_k()?;
        let reg = load_registry(cli)?;
        let key = TargetList::new([Target::Cycle4, Target::Star(k as u32)]);
        ("book", book_bound(k, reg.upper(&key)))
    } else {
        if a.k.is_empty() {
            return Err(Failure::usage("--k is required for --stars"));
        }
        ("stars", stars_bound(need(a.m, "m")?, &a.k))
    };
    let value = value.map_err(Failure::usage)?;
    if cli.json {
        emit(out, &to_json(&BoundReport { formula: formula.into(), value }))
    } else {
        emit(out, &value.to_string())
    }
}

fn cmd_derive(cli: &Cli, targets: &str, depth: usize, out: &mut dyn Write) -> Outcome {
    let list = TargetList::new(parse_target_arg(targets)?);
    let reg = load_registry(cli)?;
    let tree = Planner::new(&reg).with_depth(depth).derive(&list).map_err(Failure::failed)?;
    tree.replay(Some(&reg)).map_err(Failure::failed)?;
    if cli.json {
        emit(out, &tree.to_json())
    } else {
        emit(out, &format!("{}\n{}", tree.value(), tree.render_text().trim_end()))
    }
}

fn cmd_verify(
    cli: &Cli,
    coloring: &Option<String>,
    targets: &Option<String>,
    tree: &Option<String>,
    out: &mut dyn Write,
) -> Outcome {
    if let Some(t) = tree {
        let tree: DerivationTree =
            serde_json::from_str(&read_file_arg(t)?).map_err(|e| Failure::usage(format!("bad tree: {e}")))?;
        let reg = load_registry(cli)?;
        tree.replay(Some(&reg)).map_err(Failure::failed)?;
        return emit(out, &format!("replay ok: {}", tree.conclusion));
    }
    let coloring = coloring.as_deref().expect("clap enforces --coloring");
    let targets = targets.as_deref().ok_or_else(|| Failure::usage("--targets is required with --coloring"))?;
    let w = EdgeColoring::parse_text(&read_file_arg(coloring)?).map_err(Failure::usage)?;
    let t = parse_target_arg(targets)?;
    let fact = verify_lower_bound(&w, &t).map_err(Failure::failed)?;
    if cli.json {
        emit(out, &to_json(&fact))
    } else {
        emit(out, &fact.to_line())
    }
}

fn parse_range(s: &str) -> Result<(usize, usize), Failure> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| Failure::usage(format!("range {s:?} must look like A..B")))?;
    let p = |x: &str| x.trim().trim_start_matches('=').parse::<usize>().map_err(|_| Failure::usage(format!("bad range {s:?}")));
    let (a, b) = (p(a)?, p(b.trim_start_matches('='))?);
    if a == 0 || a > b {
        return Err(Failure::usage(format!("empty range {s:?}")));
    }
    Ok((a, b))
}

fn status_code(status: &SearchStatus, expect: Option<Expect>) -> i32 {
    match (status, expect) {
        (SearchStatus::Unknown, _) => EXIT_UNKNOWN,
        (SearchStatus::Feasible(_), Some(Expect::Infeasible)) | (SearchStatus::Infeasible, Some(Expect::Feasible)) => {
            EXIT_FAILED
        }
        _ => EXIT_OK,
    }
}

fn cmd_search(cli: &Cli, a: &SearchArgs, out: &mut dyn Write) -> Outcome {
    let targets = parse_target_arg(&a.targets)?;
    let budget = a.budget.budget().map_err(Failure::usage)?;
    let (lo, hi) = match (&a.range, a.n) {
        (Some(r), _) => parse_range(r)?,
        (None, Some(n)) => (n, n),
        (None, None) => return Err(Failure::usage("--n or --range is required")),
    };
    let reg = if a.registry_caps { Some(load_registry(cli)?) } else { None };
    let mut reports = Vec::new();
    let mut code = EXIT_OK;
    let mut ramsey = None;
    let mut all_feasible = true;
    for n in lo..=hi {
        let caps = reg.as_ref().map(|r| degree_caps_from_registry(n, &targets, r));
        let outcome = search_coloring(n, &targets, &budget, caps.as_deref()).map_err(Failure::usage)?;
        let path = if lo == hi {
            a.witness_out.clone()
        } else {
            a.witness_out.as_ref().map(|p| PathBuf::from(format!("{}.{n}", p.display())))
        };
        let path = outcome.status.witness().and(path);
        if let Some(w) = outcome.status.witness() {
            write_witness(path.as_deref(), w)?;
        }
        code = code.max(status_code(&outcome.status, a.expect));
        match outcome.status {
            SearchStatus::Infeasible if all_feasible && ramsey.is_none() => ramsey = Some(n),
            SearchStatus::Feasible(_) => {}
            _ => all_feasible = false,
        }
        reports.push(SearchReport::new(n, &targets, &outcome, path.as_deref()));
        if outcome.is_infeasible() && lo != hi {
            break;
        }
    }
    if cli.json {
        if lo == hi {
            emit(out, &to_json(&reports[0]))?;
        } else {
            emit(out, &to_json(&reports))?;
        }
    } else {
        for r in &reports {
            emit(out, &format!("N={} {} nodes={} ({:.1} ms) {}", r.n, r.status, r.nodes, r.wall_ms, r.note))?;
        }
        if lo != hi {
            if let Some(r) = ramsey {
                emit(out, &format!("R({}) = {r}", render_targets(&targets)))?;
            }
        }
    }
    Ok(code)
}

fn cmd_partition(
    cli: &Cli,
    g6: &str,
    targets: &str,
    budget: &BudgetArgs,
    witness_out: Option<&Path>,
    out: &mut dyn Write,
) -> Outcome {
    let text = if g6.starts_with('@') { read_file_arg(g6)? } else { g6.to_string() };
    let g = graph6::decode(text.trim()).map_err(Failure::usage)?;
    let t = parse_target_arg(targets)?;
    let [t0, t1] = t.as_slice() else {
        return Err(Failure::usage("partition-check needs exactly two targets"));
    };
    let budget = budget.budget().map_err(Failure::usage)?;
    let outcome = partition_check(&g, (t0, t1), &budget).map_err(Failure::failed)?;
    if let Some(w) = outcome.status.witness() {
        write_witness(witness_out, w)?;
    }
    let all = [Target::Cycle4, t0.clone(), t1.clone()];
    let report = SearchReport::new(g.order(), &all, &outcome, outcome.status.witness().and(witness_out));
    if cli.json {
        emit(out, &to_json(&report))?;
    } else {
        emit(out, &format!("{} nodes={} ({:.1} ms)", report.status, report.nodes, report.wall_ms))?;
    }
    Ok(status_code(&outcome.status, None))
}

fn cmd_witness(cli: &Cli, a: &WitnessArgs, out: &mut dyn Write) -> Outcome {
    let w = EdgeColoring::parse_text(&read_file_arg(&a.coloring)?).map_err(Failure::usage)?;
    let targets = parse_target_arg(&a.targets)?;
    let (result, result_targets) = if let Some(k) = a.extend {
        let clique_color = match a.clique_color {
            Some(c) => c,
            None => targets
                .iter()
                .position(|t| matches!(t.normalized(), Target::Clique(_)))
                .ok_or_else(|| Failure::usage("no clique target; pass --clique-color"))?,
        };
        extend_with_disjoint_clique(&w, &targets, k, a.c4_color, clique_color).map_err(Failure::failed)?
    } else if let [i, j] = a.merge.as_slice() {
        verify_lower_bound(&w, &targets).map_err(Failure::failed)?;
        let merged = merge_colors(&w, *i, *j).map_err(Failure::usage)?;
        let t = match &a.merged_targets {
            Some(t) => parse_target_arg(t)?,
            None => {
                write_witness(a.witness_out.as_deref(), &merged)?;
                return emit(out, &format!("merged coloring on {} vertices with {} colors", merged.order(), merged.colors()));
            }
        };
        (merged, t)
    } else {
        (w, targets)
    };
    let fact = verify_lower_bound(&result, &result_targets).map_err(Failure::failed)?;
    write_witness(a.witness_out.as_deref(), &result)?;
    if a.record {
        let path = cli.registry.as_ref().expect("clap enforces --registry");
        let mut reg = Registry::load(path).map_err(Failure::usage)?;
        reg.add(fact.clone()).map_err(Failure::failed)?;
        reg.save(path).map_err(Failure::usage)?;
    }
    if cli.json {
        emit(out, &to_json(&fact))
    } else {
        emit(out, &fact.to_line())
    }
}

fn cmd_registry(cli: &Cli, action: &RegistryAction, out: &mut dyn Write) -> Outcome {
    match action {
        RegistryAction::Seed => emit(out, Registry::seed_text().trim_end()),
        RegistryAction::List => {
            let reg = load_registry(cli)?;
            if cli.json {
                let facts: Vec<&RamseyFact> = reg.iter().collect();
                emit(out, &to_json(&facts))
            } else {
                emit(out, reg.to_text().trim_end())
            }
        }
        RegistryAction::Add { line } => {
            let path = cli.registry.as_ref().ok_or_else(|| Failure::usage("registry add needs --registry PATH"))?;
            let mut reg = if path.exists() { Registry::load(path).map_err(Failure::usage)? } else { Registry::new() };
            let fact = RamseyFact::parse_line(line, 1).map_err(Failure::usage)?;
            reg.add(fact.clone()).map_err(Failure::failed)?;
            reg.save(path).map_err(Failure::usage)?;
            emit(out, &format!("added {fact}"))
        }
    }
}
