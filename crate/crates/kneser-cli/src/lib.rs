//! Command-line frontend: bounds, exact chromatic numbers, coloring checks,
//! Tucker-labelling verification, homomorphism and reduction witnesses,
//! sweeps and exports.
//!
//! Exit codes: 0 success, 1 a property failed, 2 a budget was exceeded,
//! 3 invalid parameters or input.

pub mod cache;
pub mod sweep;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use kneser::reduction::{extract_witness, DEFAULT_REDUCTION_NODES};
use kneser::tucker::{verify_all, TuckerInstance, DEFAULT_ENUMERATION_LIMIT};
use kneser::{
    compare_bounds, exact_chromatic, export_text, is_proper, theorem1_lower_bound, verify_homomorphism,
    windowed_coloring_s0, Coloring, CompatibilityGraph, KSubset, KneserError, KneserParams, SolveBudget,
    SolveStatus, SolverStatus, VertexSet,
};
use serde::Serialize;

use crate::cache::{Cache, CacheRecord};
use crate::sweep::{grid_from_args, run_sweep, write_csv, SweepOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_INVALID: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "kneser", version, about = "Generalized Kneser hypergraphs KG^r(n,k,s)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Cache file (falls back to $KNESER_CACHE, then ./kneser-cache.jsonl)
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,

    /// Search-node budget for exact solving
    #[arg(long, global = true, default_value_t = 10_000_000)]
    pub max_nodes: u64,

    /// Largest vertex count C(n,k) the solver accepts
    #[arg(long, global = true, default_value_t = 56)]
    pub max_vertices: usize,

    /// Treat budget overruns in a sweep as failures (exit 2)
    #[arg(long, global = true)]
    pub strict: bool,

    /// More logging on stderr (repeatable)
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct ParamArgs {
    #[arg(short = 'n')]
    pub n: u32,
    #[arg(short = 'k')]
    pub k: u32,
    #[arg(short = 'r')]
    pub r: u32,
    #[arg(short = 's', default_value_t = 0)]
    pub s: u32,
}

impl ParamArgs {
    fn params(&self) -> Result<KneserParams> {
        Ok(KneserParams::new(self.n, self.k, self.r, self.s)?)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lower bounds for one parameter set
    Bound {
        #[command(flatten)]
        params: ParamArgs,
        /// Also compute the exact chromatic number (cache-aware)
        #[arg(long)]
        exact: bool,
    },
    /// Exact chromatic number
    Chi {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Emit a proper coloring
    Color {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = ColorMethod::Auto)]
        method: ColorMethod,
    },
    /// Check a coloring file (JSON array of colors in canonical vertex order)
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Exhaustively verify the Z_p-Tucker hypotheses for the labelling built from a coloring
    Tucker {
        #[arg(short = 'p')]
        p: u32,
        #[arg(short = 'n')]
        n: u32,
        #[arg(short = 'k')]
        k: u32,
        #[arg(short = 's', default_value_t = 0)]
        s: u32,
        /// `auto` (optimal solver coloring), `windowed`, `uniform`, or a JSON file
        #[arg(long, default_value = "auto")]
        coloring: String,
        /// Accept improper colorings so the failing conditions can be inspected
        #[arg(long)]
        diagnostic: bool,
        /// Cap on enumerated vectors, pairs and chains
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_LIMIT)]
        limit: u64,
    },
    /// Check the padding map KG^r(n,k,0) -> KG^r(n+t,k+t,t)
    Hom {
        #[arg(short = 'n')]
        n: u32,
        #[arg(short = 'k')]
        k: u32,
        #[arg(short = 'r')]
        r: u32,
        /// Padding size (the target's s)
        #[arg(short = 't')]
        t: u32,
    },
    /// Extract a monochromatic edge via the composite-arity reduction
    Reduce {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        r1: u32,
        #[arg(long)]
        r2: u32,
        /// Color count (default: one below the lower bound)
        #[arg(short = 't')]
        t: Option<u32>,
        /// `min` (smallest element, capped at t) or a JSON file
        #[arg(long, default_value = "min")]
        coloring: String,
    },
    /// Bound table over a parameter grid, as CSV
    Sweep {
        /// n values, e.g. `5..8` or `5,7`
        #[arg(long = "n", value_name = "RANGE")]
        n: String,
        #[arg(long = "k", value_name = "RANGE")]
        k: String,
        #[arg(long = "r", value_name = "RANGE")]
        r: String,
        #[arg(long = "s", value_name = "RANGE", default_value = "0")]
        s: String,
        /// Only tuples with n >= r(k-1)+1
        #[arg(long)]
        applicable_only: bool,
        /// Drop tuples with more than --max-vertices vertices
        #[arg(long)]
        skip_oversized: bool,
        /// Bounds only
        #[arg(long)]
        no_solve: bool,
    },
    /// Dump vertices (and optionally compatibility edges)
    Export {
        #[command(flatten)]
        params: ParamArgs,
        /// Include the compatibility graph edges
        #[arg(long)]
        graph: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ColorMethod {
    /// Windowed coloring when s = 0, solver otherwise
    Auto,
    Windowed,
    Solver,
}

/// Parses `args` and runs one subcommand, writing data to `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    let _ = env_logger::Builder::new().filter_level(level).format_timestamp(None).try_init();
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<KneserError>() {
        Some(KneserError::Budget { .. }) => EXIT_BUDGET,
        Some(KneserError::Structural(_)) => EXIT_VIOLATION,
        _ => EXIT_INVALID,
    }
}

fn budget(cli: &Cli) -> SolveBudget {
    SolveBudget { max_nodes: cli.max_nodes, max_vertices: cli.max_vertices, time_hint_secs: None }
}

/// Exact chromatic number, from the cache when a usable record exists.
/// Returns the record and whether the solver actually ran.
pub fn solve_chi(params: &KneserParams, budget: &SolveBudget, cache: &mut Cache) -> Result<(CacheRecord, bool)> {
    if let Some(rec) = cache.lookup(params, budget.max_nodes) {
        log::info!("{params}: cached {}", rec.solver_status.as_str());
        return Ok((rec.clone(), false));
    }
    let res = exact_chromatic(params, budget)?;
    let status = match res.status {
        SolveStatus::ChiFound => SolverStatus::ChiFound,
        SolveStatus::BudgetExceeded => SolverStatus::BudgetExceeded,
    };
    let rec = CacheRecord {
        n: params.n,
        k: params.k,
        r: params.r,
        s: params.s,
        chi: res.chi,
        solver_status: status,
        nodes: res.nodes_explored,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
    };
    cache.put(rec.clone())?;
    Ok((rec, true))
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn fmt_opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

fn read_coloring(path: &Path, vertices: &VertexSet) -> Result<Coloring> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let colors: Vec<u32> = serde_json::from_str(&text)
        .map_err(|e| KneserError::InvalidParams(format!("{}: not a JSON array of colors: {e}", path.display())))?;
    let coloring = Coloring::from_colors(colors)?;
    coloring.check_total(vertices)?;
    Ok(coloring)
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Bound { params, exact } => cmd_bound(cli, params.params()?, *exact, out),
        Command::Chi { params } => cmd_chi(cli, params.params()?, out),
        Command::Color { params, method } => cmd_color(cli, params.params()?, *method, out),
        Command::Verify { params, coloring } => cmd_verify(cli, params.params()?, coloring, out),
        Command::Tucker { p, n, k, s, coloring, diagnostic, limit } => {
            let params = KneserParams::new(*n, *k, *p, *s)?;
            cmd_tucker(cli, *p, params, coloring, *diagnostic, *limit, out)
        }
        Command::Hom { n, k, r, t } => cmd_hom(cli, *n, *k, *r, *t, out),
        Command::Reduce { params, r1, r2, t, coloring } => {
            cmd_reduce(cli, params.params()?, *r1, *r2, *t, coloring, out)
        }
        Command::Sweep { n, k, r, s, applicable_only, skip_oversized, no_solve } => {
            let grid = grid_from_args(n, k, r, s).map_err(|e| KneserError::InvalidParams(e.to_string()))?;
            let opts = SweepOptions { applicable_only: *applicable_only, skip_oversized: *skip_oversized, no_solve: *no_solve };
            let mut cache = Cache::open(Cache::resolve_path(cli.cache.as_deref()))?;
            let outcome = run_sweep(&grid, &budget(cli), &mut cache, opts)?;
            log::info!("sweep: {} rows, {} fresh solver nodes", outcome.rows.len(), outcome.fresh_nodes);
            match cli.format {
                Format::Json => write_json(out, &outcome.rows)?,
                Format::Table | Format::Csv => write_csv(&outcome.rows, out)?,
            }
            if cli.strict && outcome.budget_exceeded > 0 {
                eprintln!("error: {} cell(s) exceeded the node budget", outcome.budget_exceeded);
                return Ok(EXIT_BUDGET);
            }
            Ok(EXIT_OK)
        }
        Command::Export { params, graph } => cmd_export(cli, params.params()?, *graph, out),
    }
}

fn cmd_bound(cli: &Cli, params: KneserParams, exact: bool, out: &mut dyn Write) -> Result<i32> {
    let mut report = compare_bounds(&params, None);
    if exact {
        let mut cache = Cache::open(Cache::resolve_path(cli.cache.as_deref()))?;
        let (rec, _) = solve_chi(&params, &budget(cli), &mut cache)?;
        report = report.with_exact(rec.chi, rec.solver_status);
    }
    match cli.format {
        Format::Json => write_json(out, &report)?,
        Format::Csv => write_csv(std::slice::from_ref(&report), out)?,
        Format::Table => {
            writeln!(out, "{params}")?;
            writeln!(out, "  theorem1   {}", fmt_opt(report.theorem1))?;
            writeln!(out, "  afl_eq1    {}", fmt_opt(report.afl_eq1))?;
            writeln!(out, "  hom_eq3    {}", fmt_opt(report.hom_eq3))?;
            if exact {
                writeln!(out, "  exact_chi  {}", fmt_opt(report.exact_chi))?;
                writeln!(out, "  tight      {}", fmt_opt(report.tight))?;
                writeln!(out, "  solver     {}", report.solver_status.as_str())?;
            }
        }
    }
    Ok(if report.solver_status == SolverStatus::BudgetExceeded { EXIT_BUDGET } else { EXIT_OK })
}

#[derive(Serialize)]
struct ChiOutput {
    n: u32,
    k: u32,
    r: u32,
    s: u32,
    chi: Option<u32>,
    solver_status: SolverStatus,
    nodes: u64,
}

fn cmd_chi(cli: &Cli, params: KneserParams, out: &mut dyn Write) -> Result<i32> {
    let mut cache = Cache::open(Cache::resolve_path(cli.cache.as_deref()))?;
    let (rec, _) = solve_chi(&params, &budget(cli), &mut cache)?;
    match cli.format {
        Format::Json => write_json(
            out,
            &ChiOutput { n: rec.n, k: rec.k, r: rec.r, s: rec.s, chi: rec.chi, solver_status: rec.solver_status, nodes: rec.nodes },
        )?,
        Format::Csv => {
            writeln!(out, "n,k,r,s,chi,solver_status,nodes")?;
            writeln!(out, "{},{},{},{},{},{},{}", rec.n, rec.k, rec.r, rec.s, rec.chi.map_or(String::new(), |c| c.to_string()), rec.solver_status.as_str(), rec.nodes)?;
        }
        Format::Table => match rec.chi {
            Some(chi) => writeln!(out, "{chi}")?,
            None => writeln!(out, "budget exceeded after {} nodes", rec.nodes)?,
        },
    }
    Ok(if rec.chi.is_some() { EXIT_OK } else { EXIT_BUDGET })
}

fn solver_coloring(cli: &Cli, params: &KneserParams) -> Result<Coloring> {
    let res = exact_chromatic(params, &budget(cli))?;
    res.witness.ok_or_else(|| {
        KneserError::Budget { what: "search nodes", limit: cli.max_nodes }.into()
    })
}

fn emit_coloring(cli: &Cli, coloring: &Coloring, vertices: &VertexSet, out: &mut dyn Write) -> Result<()> {
    match cli.format {
        Format::Json => writeln!(out, "{}", coloring.to_json())?,
        Format::Csv => {
            writeln!(out, "index,vertex,color")?;
            for (i, v) in vertices.iter().enumerate() {
                let elems: Vec<String> = v.elements().map(|e| e.to_string()).collect();
                writeln!(out, "{i},{},{}", elems.join(" "), coloring.color(i))?;
            }
        }
        Format::Table => write!(out, "{}", coloring.to_text(vertices))?,
    }
    Ok(())
}

fn cmd_color(cli: &Cli, params: KneserParams, method: ColorMethod, out: &mut dyn Write) -> Result<i32> {
    let vertices = VertexSet::for_params(&params)?;
    let coloring = match method {
        ColorMethod::Windowed => windowed_coloring_s0(&params)?,
        ColorMethod::Auto if params.s == 0 => windowed_coloring_s0(&params)?,
        _ => solver_coloring(cli, &params)?,
    };
    log::info!("{params}: {} colors", coloring.num_colors());
    emit_coloring(cli, &coloring, &vertices, out)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct VerifyOutput {
    params: KneserParams,
    proper: bool,
    colors_used: u32,
    witness: Option<Vec<Vec<u32>>>,
}

fn cmd_verify(cli: &Cli, params: KneserParams, path: &Path, out: &mut dyn Write) -> Result<i32> {
    let vertices = VertexSet::for_params(&params)?;
    let coloring = read_coloring(path, &vertices)?;
    let check = is_proper(&params, &coloring, &budget(cli))?;
    let result = VerifyOutput {
        params,
        proper: check.proper,
        colors_used: coloring.colors_used(),
        witness: check.witness.as_ref().map(|e| e.members().iter().map(KSubset::to_vec).collect()),
    };
    match cli.format {
        Format::Json => write_json(out, &result)?,
        Format::Table | Format::Csv => match &check.witness {
            None => writeln!(out, "proper ({} colors)", result.colors_used)?,
            Some(edge) => writeln!(out, "improper: monochromatic edge {edge}")?,
        },
    }
    Ok(if check.proper { EXIT_OK } else { EXIT_VIOLATION })
}

fn cmd_tucker(
    cli: &Cli,
    p: u32,
    params: KneserParams,
    source: &str,
    diagnostic: bool,
    limit: u64,
    out: &mut dyn Write,
) -> Result<i32> {
    let vertices = VertexSet::for_params(&params)?;
    let coloring = match source {
        "auto" => solver_coloring(cli, &params)?,
        "windowed" => windowed_coloring_s0(&params)?,
        "uniform" => Coloring::uniform(vertices.len()),
        path => read_coloring(Path::new(path), &vertices)?,
    };
    let instance = TuckerInstance::new(p, params, coloring, &budget(cli), diagnostic)?;
    let report = verify_all(&instance, limit)?;
    match cli.format {
        Format::Json => write_json(out, &report)?,
        Format::Table | Format::Csv => {
            let verdict = |v| serde_json::to_value(v).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default();
            writeln!(out, "p={} n={} k={} s={} C={} alpha={} m={}", report.p, report.n, report.k, report.s, report.colors, report.alpha, report.m)?;
            writeln!(out, "coloring proper   {}", report.coloring_proper)?;
            writeln!(out, "equivariance      {}", verdict(report.equivariance))?;
            writeln!(out, "condition 2       {}", verdict(report.cond2))?;
            writeln!(out, "condition 3       {}", verdict(report.cond3))?;
            let c = report.conclusion;
            writeln!(
                out,
                "conclusion        {}+{}*{} = {} {} {}",
                report.alpha,
                report.m - report.alpha,
                p - 1,
                c.lhs,
                if c.holds { ">=" } else { "<" },
                c.rhs
            )?;
            if let Some(w) = &report.witness {
                writeln!(out, "witness           {w}")?;
            }
            writeln!(out, "note              {}", report.note)?;
        }
    }
    let ok = report.coloring_proper && report.all_conditions_pass() && report.conclusion.holds;
    Ok(if ok { EXIT_OK } else { EXIT_VIOLATION })
}

fn cmd_hom(cli: &Cli, n: u32, k: u32, r: u32, t: u32, out: &mut dyn Write) -> Result<i32> {
    let source = KneserParams::new(n, k, r, 0)?;
    let target = KneserParams::new(n + t, k + t, r, t)?;
    let check = verify_homomorphism(&source, &target, cli.max_vertices.max(1024), cli.max_nodes)?;
    match cli.format {
        Format::Json => write_json(out, &check)?,
        Format::Table | Format::Csv => {
            writeln!(out, "{} -> {}", check.source, check.target)?;
            writeln!(out, "edges checked  {}", check.edges_checked)?;
            writeln!(out, "injective      {}", check.injective)?;
            writeln!(out, "homomorphism   {}", check.holds)?;
            if let Some(e) = &check.violation {
                writeln!(out, "violation      {e}")?;
            }
        }
    }
    Ok(if check.holds && check.injective { EXIT_OK } else { EXIT_VIOLATION })
}

fn cmd_reduce(
    cli: &Cli,
    params: KneserParams,
    r1: u32,
    r2: u32,
    t: Option<u32>,
    source: &str,
    out: &mut dyn Write,
) -> Result<i32> {
    let t = match t {
        Some(t) => t,
        None => u32::try_from(theorem1_lower_bound(&params)? - 1)
            .map_err(|_| KneserError::InvalidParams(format!("{params}: lower bound leaves no room for t")))?,
    };
    let vertices = VertexSet::for_params(&params)?;
    let coloring = match source {
        "min" => Coloring::new(
            vertices.iter().map(|v| v.min_element().unwrap_or(1).min(t.max(1))).collect(),
            t.max(1),
        )?,
        path => read_coloring(Path::new(path), &vertices)?,
    };
    let witness = extract_witness(&params, r1, r2, &coloring, t, cli.max_nodes.max(DEFAULT_REDUCTION_NODES))?;
    let report = witness.report();
    match cli.format {
        Format::Json => write_json(out, &report)?,
        Format::Table | Format::Csv => {
            writeln!(out, "{params} r1={r1} r2={r2} t={t} m={}", report.m)?;
            writeln!(out, "edge    {} (color {})", witness.edge, report.color)?;
            let parents: Vec<String> = witness.parents.iter().map(ToString::to_string).collect();
            writeln!(out, "parents {}", parents.join(" "))?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct ExportOutput {
    params: KneserParams,
    vertices: Vec<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    compatibility_edges: Option<Vec<(usize, usize)>>,
}

fn cmd_export(cli: &Cli, params: KneserParams, graph: bool, out: &mut dyn Write) -> Result<i32> {
    match cli.format {
        Format::Json => {
            let vertices = VertexSet::for_params(&params)?;
            let compatibility_edges = if graph {
                Some(CompatibilityGraph::new(&params, cli.max_vertices)?.edges().collect())
            } else {
                None
            };
            write_json(out, &ExportOutput { params, vertices: vertices.iter().map(|v| v.to_vec()).collect(), compatibility_edges })?;
        }
        Format::Table | Format::Csv => write!(out, "{}", export_text(&params, graph, cli.max_vertices)?)?,
    }
    Ok(EXIT_OK)
}
