//! Command-line front end.
//!
//! Exit codes: `0` yes (or success), `1` no, `2` usage, I/O or parse error.
//! JSON and CSV output is deterministic; wall-clock times are only recorded
//! with `--timing`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Serialize, Serializer};

use crate::cuts::{enumerate_k_cuts, EnumerationOutcome};
use crate::digraph::{
    gen_noisy_transitive, gen_random_semicomplete, gen_random_tournament, gen_transitive, read_digraph,
    with_random_integer_weights, write_digraph, SemiCompleteDigraph,
};
use crate::oracle::brute_optimum;
use crate::partitions::{cap_cutwidth, cap_fas, transitive_cap};
use crate::solvers::{decide_problem, minimize, Answer, NoReason, Problem, SearchStrategy, SolveOutcome};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "semicut", version, about = "Exact FAS, cutwidth and linear arrangement on semi-complete digraphs")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate an instance file
    Gen(GenArgs),
    /// Check that a file holds a valid semi-complete digraph
    Validate { input: PathBuf },
    /// Decide or minimize FAS, cutwidth or OLA
    Solve(SolveArgs),
    /// Count the k-cuts of an instance
    CountCuts(CountArgs),
    /// Sweep generated instances and record k-cut counts as CSV
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Transitive,
    Tournament,
    Noisy,
    Semicomplete,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(value_enum)]
    kind: Family,
    #[arg(long)]
    n: usize,
    /// Reversed arcs (noisy)
    #[arg(long, default_value_t = 0)]
    flips: usize,
    /// Probability of a double arc (semicomplete)
    #[arg(long, default_value_t = 0.2)]
    pdouble: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Attach integer weights drawn from 1..=W
    #[arg(long)]
    max_weight: Option<u32>,
    /// Output file; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum Engine {
    Cuts,
    Brute,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(value_parser = parse_problem)]
    problem: Problem,
    input: PathBuf,
    /// Decision budget
    #[arg(long, required_unless_present = "minimize", conflicts_with = "minimize")]
    k: Option<f64>,
    /// Find the optimum instead of deciding a budget
    #[arg(long)]
    minimize: bool,
    /// Linear scan over budgets instead of doubling plus binary search
    #[arg(long, requires = "minimize")]
    linear: bool,
    /// Use arc weights (FAS and OLA)
    #[arg(long)]
    weighted: bool,
    #[arg(long, value_enum, default_value_t = Engine::Cuts)]
    engine: Engine,
    #[arg(long)]
    json: bool,
    /// Record wall-clock time in the report
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Debug)]
struct CountArgs {
    input: PathBuf,
    #[arg(long)]
    k: usize,
    /// Stop after this many cuts
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Vertex counts, e.g. `8..12` (inclusive), `8,10` or `9`
    #[arg(long, value_parser = parse_range)]
    n: Range,
    /// Budgets, same syntax as `--n`
    #[arg(long, value_parser = parse_range)]
    k: Range,
    /// Number of seeds, `0..seeds`
    #[arg(long, default_value_t = 1)]
    seeds: u64,
    #[arg(long, default_value_t = 0.2)]
    pdouble: f64,
    /// Per-row enumeration cap
    #[arg(long, default_value_t = 1_000_000)]
    cap: usize,
    #[arg(long)]
    out: PathBuf,
    /// Fill the `ms` column with wall-clock times
    #[arg(long)]
    timing: bool,
}

fn parse_problem(s: &str) -> Result<Problem, String> {
    s.parse()
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Range(Vec<usize>);

/// `a..b` (inclusive), `a-b`, `a,b,c`, or a single value. `5..4` is empty.
fn parse_range(s: &str) -> Result<Range, String> {
    let bad = || format!("invalid range `{s}`");
    let num = |x: &str| x.trim().parse::<usize>().map_err(|_| bad());
    if let Some((a, b)) = s.split_once("..").or_else(|| s.split_once('-')) {
        let (a, b) = (num(a)?, num(b.trim_start_matches('=')).map_err(|_| bad())?);
        return Ok(Range((a..=b).collect()));
    }
    if s.trim().is_empty() {
        return Ok(Range(Vec::new()));
    }
    s.split(',').map(num).collect::<Result<Vec<_>, _>>().map(Range)
}

fn serialize_number<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    if v.fract() == 0.0 && v.abs() < 9.0e15 {
        s.serialize_i64(*v as i64)
    } else {
        s.serialize_f64(*v)
    }
}

fn serialize_opt_number<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => serialize_number(v, s),
        None => s.serialize_none(),
    }
}

/// Report of one `solve` invocation.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub problem: Problem,
    pub instance: String,
    pub n: usize,
    pub weighted: bool,
    pub engine: &'static str,
    /// Requested budget, or the optimum found under `--minimize`.
    #[serde(serialize_with = "serialize_number")]
    pub k: f64,
    pub minimize: bool,
    pub answer: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(serialize_with = "serialize_opt_number")]
    pub objective: Option<f64>,
    pub ordering: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fas: Option<Vec<(usize, usize)>>,
    pub cut_budget: Option<usize>,
    pub cuts_enumerated: Option<usize>,
    pub cut_graph_size: Option<usize>,
    pub cap: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u128>,
}

#[derive(Debug)]
struct CliError(String);

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

fn load(path: &Path) -> Result<SemiCompleteDigraph, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    read_digraph(&text).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

/// Runs the CLI with explicit arguments and output streams; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_YES };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{rendered}") } else { write!(out, "{rendered}") };
            return code;
        }
    };
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(&a, out),
        Command::Validate { input } => cmd_validate(&input, out),
        Command::Solve(a) => cmd_solve(&a, out),
        Command::CountCuts(a) => cmd_count_cuts(&a, out),
        Command::Bench(a) => cmd_bench(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(CliError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}

fn generate(kind: Family, n: usize, flips: usize, pdouble: f64, seed: u64) -> Result<SemiCompleteDigraph, CliError> {
    Ok(match kind {
        Family::Transitive => gen_transitive(n),
        Family::Tournament => gen_random_tournament(n, seed),
        Family::Noisy => gen_noisy_transitive(n, flips, seed)?,
        Family::Semicomplete => gen_random_semicomplete(n, pdouble, seed)?,
    })
}

fn cmd_gen(a: &GenArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let mut t = generate(a.kind, a.n, a.flips, a.pdouble, a.seed)?;
    if let Some(w) = a.max_weight {
        t = with_random_integer_weights(&t, w, a.seed)?;
    }
    let text = write_digraph(&t);
    match &a.out {
        Some(path) => fs::write(path, text).map_err(|e| CliError(format!("{}: {e}", path.display())))?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(EXIT_YES)
}

fn cmd_validate(input: &Path, out: &mut dyn Write) -> Result<i32, CliError> {
    let t = load(input)?;
    writeln!(
        out,
        "valid: n={} arcs={} tournament={} weighted={}",
        t.n(),
        t.arc_count(),
        t.is_tournament(),
        t.is_weighted()
    )?;
    Ok(EXIT_YES)
}

fn report_from_outcome(base: RunReport, outcome: &SolveOutcome) -> RunReport {
    let stats = &outcome.stats;
    let mut r = RunReport {
        cut_budget: Some(stats.cut_budget),
        cuts_enumerated: Some(stats.cuts_enumerated),
        cut_graph_size: Some(stats.cut_graph_size),
        cap: Some(stats.cap.to_string()),
        ..base
    };
    match &outcome.answer {
        Answer::Yes(sol) => {
            r.answer = "yes";
            r.objective = Some(sol.objective);
            r.ordering = Some(sol.ordering.as_slice().to_vec());
            r.fas = sol.fas.as_ref().map(|f| f.arcs().to_vec());
        }
        Answer::No(reason) => {
            r.answer = "no";
            r.reason = Some(match reason {
                NoReason::CapExceeded { cap, cut_budget } => {
                    format!("more than {cap} cuts of value at most {cut_budget}")
                }
                NoReason::SearchExhausted => "no ordering within budget".into(),
            });
        }
    }
    r
}

fn cmd_solve(a: &SolveArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let t = load(&a.input)?;
    if a.weighted && !t.is_weighted() {
        return Err(CliError("--weighted requires a weighted instance".into()));
    }
    if a.weighted && a.problem == Problem::Cutwidth {
        return Err(CliError("cutwidth has no weighted variant".into()));
    }
    let start = Instant::now();
    let base = RunReport {
        problem: a.problem,
        instance: a.input.display().to_string(),
        n: t.n(),
        weighted: a.weighted,
        engine: match a.engine {
            Engine::Cuts => "cuts",
            Engine::Brute => "brute",
        },
        k: a.k.unwrap_or(0.0),
        minimize: a.minimize,
        answer: "no",
        reason: None,
        objective: None,
        ordering: None,
        fas: None,
        cut_budget: None,
        cuts_enumerated: None,
        cut_graph_size: None,
        cap: None,
        wall_ms: None,
    };
    let mut report = match (a.engine, a.minimize) {
        (Engine::Cuts, false) => {
            let outcome = decide_problem(a.problem, &t, a.k.expect("clap enforces --k"), a.weighted)?;
            report_from_outcome(base, &outcome)
        }
        (Engine::Cuts, true) => {
            let strategy = if a.linear { SearchStrategy::Linear } else { SearchStrategy::Doubling };
            let m = minimize(a.problem, &t, a.weighted, strategy)?;
            let mut r = report_from_outcome(base, &m.outcome);
            r.k = m.objective;
            r
        }
        (Engine::Brute, _) => {
            let (best, sigma) = brute_optimum(a.problem, &t, a.weighted)?;
            let k = if a.minimize { best } else { a.k.expect("clap enforces --k") };
            let mut r = RunReport { k, ..base };
            if best <= k + crate::digraph::WEIGHT_EPSILON {
                r.answer = "yes";
                r.objective = Some(best);
                r.fas = (a.problem == Problem::Fas)
                    .then(|| crate::digraph::backward_arcs(&t, &sigma).arcs().to_vec());
                r.ordering = Some(sigma.into_vec());
            } else {
                r.reason = Some(format!("optimum is {best}"));
            }
            r
        }
    };
    if a.timing {
        report.wall_ms = Some(start.elapsed().as_millis());
    }
    if a.json {
        serde_json::to_writer_pretty(&mut *out, &report)?;
        writeln!(out)?;
    } else {
        write_report_text(&report, out)?;
    }
    Ok(if report.answer == "yes" { EXIT_YES } else { EXIT_NO })
}

fn fmt_num(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 9.0e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

fn write_report_text(r: &RunReport, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "problem: {}", r.problem)?;
    writeln!(out, "answer: {}", r.answer)?;
    writeln!(out, "{}: {}", if r.minimize { "optimum" } else { "k" }, fmt_num(r.k))?;
    if let Some(reason) = &r.reason {
        writeln!(out, "reason: {reason}")?;
    }
    if let Some(obj) = r.objective {
        writeln!(out, "objective: {}", fmt_num(obj))?;
    }
    if let Some(ord) = &r.ordering {
        let s: Vec<String> = ord.iter().map(usize::to_string).collect();
        writeln!(out, "ordering: {}", s.join(" "))?;
    }
    if let Some(fas) = &r.fas {
        let s: Vec<String> = fas.iter().map(|(u, v)| format!("{u}->{v}")).collect();
        writeln!(out, "fas: {}", s.join(" "))?;
    }
    if let (Some(c), Some(cap)) = (r.cuts_enumerated, &r.cap) {
        writeln!(out, "cuts: {c} (cap {cap}, cut budget {})", r.cut_budget.unwrap_or(0))?;
    }
    if let Some(ms) = r.wall_ms {
        writeln!(out, "wall_ms: {ms}")?;
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct CountReport {
    n: usize,
    k: usize,
    cap: Option<usize>,
    count: Option<usize>,
    capped: bool,
    cap_fas: String,
    cap_cutwidth: String,
    cap_transitive: String,
}

fn cmd_count_cuts(a: &CountArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let t = load(&a.input)?;
    let e = enumerate_k_cuts(&t, a.k, a.cap.unwrap_or(usize::MAX));
    let (count, capped) = match e.outcome {
        EnumerationOutcome::Complete(c) => (Some(c.len()), false),
        EnumerationOutcome::CapExceeded(_) => (None, true),
    };
    let report = CountReport {
        n: t.n(),
        k: a.k,
        cap: a.cap,
        count,
        capped,
        cap_fas: cap_fas(t.n(), a.k).to_string(),
        cap_cutwidth: cap_cutwidth(t.n(), a.k).to_string(),
        cap_transitive: transitive_cap(t.n(), a.k).to_string(),
    };
    if a.json {
        serde_json::to_writer_pretty(&mut *out, &report)?;
        writeln!(out)?;
    } else {
        match report.count {
            Some(c) => writeln!(out, "{c}")?,
            None => writeln!(out, "cap-exceeded")?,
        }
        writeln!(out, "cap_fas: {}", report.cap_fas)?;
        writeln!(out, "cap_cutwidth: {}", report.cap_cutwidth)?;
        writeln!(out, "cap_transitive: {}", report.cap_transitive)?;
    }
    Ok(EXIT_YES)
}

/// One CSV row: `family,n,k,seed,cuts,cap_fas,cap_cutwidth,capped,ms`.
#[derive(Debug, Serialize)]
pub struct BenchRow {
    pub family: String,
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    pub cuts: usize,
    pub cap_fas: String,
    pub cap_cutwidth: String,
    pub capped: bool,
    pub ms: u128,
}

fn bench_row(a: &BenchArgs, n: usize, k: usize, seed: u64) -> Result<BenchRow, CliError> {
    let t = generate(a.family, n, k, a.pdouble, seed)?;
    let start = Instant::now();
    let e = enumerate_k_cuts(&t, k, a.cap);
    let ms = if a.timing { start.elapsed().as_millis() } else { 0 };
    Ok(BenchRow {
        family: format!("{:?}", a.family).to_lowercase(),
        n,
        k,
        seed,
        cuts: e.cuts_emitted,
        cap_fas: cap_fas(n, k).to_string(),
        cap_cutwidth: cap_cutwidth(n, k).to_string(),
        capped: !e.is_complete(),
        ms,
    })
}

fn cmd_bench(a: &BenchArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let jobs: Vec<(usize, usize, u64)> = a
        .n
        .0
        .iter()
        .flat_map(|&n| a.k.0.iter().flat_map(move |&k| (0..a.seeds).map(move |s| (n, k, s))))
        .collect();

    #[cfg(feature = "parallel")]
    let rows: Result<Vec<BenchRow>, CliError> = {
        use rayon::prelude::*;
        jobs.into_par_iter().map(|(n, k, s)| bench_row(a, n, k, s)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let rows: Result<Vec<BenchRow>, CliError> = jobs.into_iter().map(|(n, k, s)| bench_row(a, n, k, s)).collect();
    let mut rows = rows?;
    rows.sort_by_key(|r| (r.n, r.k, r.seed));

    let mut w = csv::Writer::from_path(&a.out).map_err(|e| CliError(format!("{}: {e}", a.out.display())))?;
    if rows.is_empty() {
        w.write_record(["family", "n", "k", "seed", "cuts", "cap_fas", "cap_cutwidth", "capped", "ms"])?;
    }
    for row in &rows {
        w.serialize(row)?;
    }
    w.flush()?;
    writeln!(out, "wrote {} rows to {}", rows.len(), a.out.display())?;
    Ok(EXIT_YES)
}
