//! Command-line front end. Every subcommand prints JSON by default.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::enumerate::{enumerate_balanced, Truncation, WeightConfiguration};
use crate::error::{Error, Result};
use crate::evaluate::{
    flat_contribution, format_rational, normalized_expectation, partition_function, wilson_expectation, SeriesTruncation,
};
use crate::mm::mm_check;
use crate::oracle::{
    cs_integral_apply, flat_contribution_perm_sum, mc_driver_sengupta, mc_tensor_moment, McConfig, DEFAULT_BOUND,
};
use crate::surface::{validate, BoundaryKind, SurfaceGraph};
use crate::symgroup::run_symcheck;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "ym2d", version, about = "Wilson loop expectations for 2D Yang–Mills with gauge group U(N)")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads; results do not depend on this.
    #[arg(long, env = "YM2D_THREADS", global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GraphArgs {
    #[arg(long)]
    input: PathBuf,
    /// Override the rank stored in the file.
    #[arg(long = "N")]
    rank: Option<usize>,
    /// Override a face area, as `FACE=AREA`. Repeatable.
    #[arg(long = "area", value_name = "FACE=AREA")]
    areas: Vec<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Expand the expectation as a sum of exact terms.
    Compute {
        #[command(flatten)]
        graph: GraphArgs,
        /// Box window for surfaces without a free boundary.
        #[arg(long, default_value_t = 6)]
        max_box: u32,
        /// Divide by the partition function.
        #[arg(long)]
        normalize: bool,
        /// Report the smallest decay rate just outside the window.
        #[arg(long)]
        tail_report: bool,
    },
    /// List balanced configurations as JSON lines.
    Enumerate {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 6)]
        max_box: u32,
    },
    /// Partition function of a surface, from a graph file or explicit data.
    Partition {
        #[arg(long, conflicts_with_all = ["euler_char", "area"])]
        input: Option<PathBuf>,
        #[arg(long = "N")]
        rank: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        euler_char: Option<i64>,
        #[arg(long)]
        area: Option<f64>,
        /// Number of free boundary components.
        #[arg(long, default_value_t = 0)]
        free_boundaries: usize,
        #[arg(long, default_value_t = 1e-12)]
        rel_tol: f64,
        #[arg(long, default_value_t = 60)]
        max_shell: u32,
    },
    /// Check the Makeenko–Migdal relation at one vertex.
    MmCheck {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        vertex: String,
        #[arg(long, default_value_t = 6)]
        max_box: u32,
    },
    /// Independent oracles.
    Oracle {
        #[command(subcommand)]
        which: OracleCommand,
    },
    /// Representation-theory invariant suite.
    Symcheck {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
    /// Report structural violations of a graph file.
    Validate {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    /// Permutation-sum evaluation of flat contributions.
    Perm {
        #[command(flatten)]
        graph: GraphArgs,
        /// One configuration as `{"faces":{...}}`; all enumerated ones when absent.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
        #[arg(long, default_value_t = 6)]
        max_box: u32,
    },
    /// Monte Carlo integration with Haar-random edge variables.
    Mc {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        hk_tol: f64,
        #[arg(long, default_value_t = 40)]
        max_shell: u32,
        /// Also evaluate the exact expansion with this box window (closed surfaces).
        #[arg(long, default_value_t = 6)]
        max_box: u32,
    },
    /// Haar integral of a tensor against its formula, on random tensors.
    Cs {
        #[arg(long)]
        n: usize,
        #[arg(long = "N")]
        rank: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn io_err(path: &std::path::Path, source: std::io::Error) -> Error {
    Error::Io { path: path.display().to_string(), source }
}

fn load_graph(a: &GraphArgs) -> Result<SurfaceGraph> {
    let mut g = SurfaceGraph::load(&a.input)?;
    if let Some(n) = a.rank {
        g = g.with_rank(n)?;
    }
    for arg in &a.areas {
        let (face, area) = arg
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("--area expects FACE=AREA, got `{arg}`")))?;
        let t: f64 = area.parse().map_err(|_| Error::Parse(format!("bad area `{area}` for face `{face}`")))?;
        g.set_area(face, t)?;
    }
    Ok(g)
}

fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

struct Output {
    json: Value,
    text: String,
    exit: i32,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output { json, text, exit: 0 }
    }
}

fn compute(graph: &GraphArgs, max_box: u32, normalize: bool, tail_report: bool) -> Result<Output> {
    let g = load_graph(graph)?;
    let mut trunc = Truncation::auto(&g, max_box);
    if tail_report {
        trunc = trunc.with_tail_report();
    }
    let e = wilson_expectation(&g, trunc)?;
    let mut json = e.to_json_value(&g);
    let mut text = format!("value = {}\nterms = {}\n", e.value().re, e.terms.len());
    if normalize {
        let z = normalized_expectation(&g, &e, SeriesTruncation::default())?;
        json["normalized"] = Value::from(z.re);
        text.push_str(&format!("normalized = {}\n", z.re));
    }
    if let Some(d) = &e.diagnostic {
        text.push_str(&format!("note: {d}\n"));
    }
    Ok(Output::ok(json, text))
}

fn enumerate_cmd(graph: &GraphArgs, max_box: u32) -> Result<Output> {
    let g = load_graph(graph)?;
    let e = enumerate_balanced(&g, Truncation::auto(&g, max_box))?;
    let lines: Vec<Value> = e.configs.iter().map(|c| c.to_json_value(&g)).collect();
    let mut text = String::new();
    for l in &lines {
        text.push_str(&l.to_string());
        text.push('\n');
    }
    Ok(Output::ok(Value::Array(lines), text))
}

#[allow(clippy::too_many_arguments)]
fn partition_cmd(
    input: &Option<PathBuf>,
    rank: Option<usize>,
    euler_char: Option<i64>,
    area: Option<f64>,
    free: usize,
    rel_tol: f64,
    max_shell: u32,
) -> Result<Output> {
    let trunc = SeriesTruncation::Shells { rel_tol, max_shell };
    let (e, boundaries, n, t) = match input {
        Some(path) => {
            let mut g = SurfaceGraph::load(path)?;
            if let Some(n) = rank {
                g = g.with_rank(n)?;
            }
            let b: Vec<BoundaryKind> =
                g.faces().iter().flat_map(|f| f.internal_boundaries.iter().map(|b| b.kind.clone())).collect();
            (g.surface_euler_char(), b, g.rank(), g.areas().iter().sum())
        }
        None => {
            let e = euler_char.ok_or_else(|| Error::Precondition("--euler-char or --input is required".into()))?;
            let t = area.ok_or_else(|| Error::Precondition("--area is required with --euler-char".into()))?;
            (e, vec![BoundaryKind::Free; free], rank.unwrap_or(1), t)
        }
    };
    let z = partition_function(e, &boundaries, n, t, trunc)?;
    Ok(Output::ok(
        json!({"value": z.value, "final_shell": z.final_shell, "N": n, "euler_char": e, "area": t}),
        format!("Z = {}\n", z.value),
    ))
}

fn mm_cmd(graph: &GraphArgs, vertex: &str, max_box: u32) -> Result<Output> {
    let g = load_graph(graph)?;
    let v = g.vertex_index(vertex)?;
    let r = mm_check(&g, v, Truncation::auto(&g, max_box))?;
    let text = format!(
        "vertex {}: lhs = {} rhs = {} |diff| = {:e} per-term {}\n",
        r.vertex,
        r.lhs.re,
        r.rhs.re,
        r.difference(),
        if r.per_term_ok { "ok" } else { "FAILED" }
    );
    let exit = if r.per_term_ok { 0 } else { 2 };
    Ok(Output { json: r.to_json_value(), text, exit })
}

fn perm_cmd(graph: &GraphArgs, config: &Option<PathBuf>, bound: usize, max_box: u32) -> Result<Output> {
    let g = load_graph(graph)?;
    let configs = match config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
            let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            vec![WeightConfiguration::from_json_value(&g, &v)?]
        }
        None => enumerate_balanced(&g, Truncation::auto(&g, max_box))?.configs,
    };
    // Shifting breaks the zero-weight condition on free faces, which the
    // flat contribution does not otherwise read.
    let closed = g.without_free_boundaries();
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut all_agree = true;
    for c in &configs {
        let q = c.nonnegative_shift();
        let shifted = c.shift(q);
        let target = if q == 0 { &g } else { &closed };
        let perm = flat_contribution_perm_sum(target, &shifted, bound)?;
        let flat = flat_contribution(&g, c)?;
        let agree = perm == flat;
        all_agree &= agree;
        text.push_str(&format!("{} perm = {} flat = {} {}\n", c.to_json_value(&g)["faces"], format_rational(&perm), format_rational(&flat), if agree { "ok" } else { "MISMATCH" }));
        rows.push(json!({
            "faces": c.to_json_value(&g)["faces"],
            "shift": q,
            "perm_sum": format_rational(&perm),
            "flat": format_rational(&flat),
            "agree": agree,
        }));
    }
    let exit = if all_agree { 0 } else { 2 };
    Ok(Output { json: json!({"configurations": rows, "agree": all_agree}), text, exit })
}

fn mc_cmd(graph: &GraphArgs, samples: u64, seed: u64, hk_tol: f64, max_shell: u32, max_box: u32) -> Result<Output> {
    let g = load_graph(graph)?;
    let est = mc_driver_sengupta(&g, &McConfig { samples, seed, hk_tol, max_shell })?;
    let mut json = est.to_json_value();
    let mut text = format!("mean = {} ± {}\n", est.mean.re, est.stderr_re);
    if let Ok(e) = wilson_expectation(&g, Truncation::auto(&g, max_box)) {
        let v = e.value();
        json["theorem"] = complex_json(v);
        json["sigmas"] = Value::from(est.sigmas_from(v));
        text.push_str(&format!("theorem = {} ({:.2}σ)\n", v.re, est.sigmas_from(v)));
    }
    Ok(Output::ok(json, text))
}

fn cs_cmd(n: usize, rank: usize, samples: u64, seed: u64) -> Result<Output> {
    let dim = rank.checked_pow(n as u32).unwrap_or(usize::MAX);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut draw = || -> Vec<Complex64> {
        (0..dim.min(1 << 12)).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
    };
    let (w, psi) = (draw(), draw());
    let exact = cs_integral_apply(n, rank, &w, &psi)?;
    let est = mc_tensor_moment(n, n, rank, &w, &psi, samples, seed)?;
    let mut worst: f64 = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            worst = worst.max(est[i * dim + j].sigmas_from(exact[(i, j)]));
        }
    }
    Ok(Output::ok(
        json!({"n": n, "N": rank, "samples": samples, "entries": dim * dim, "max_sigmas": worst}),
        format!("{} entries, largest deviation {:.2}σ\n", dim * dim, worst),
    ))
}

fn symcheck_cmd(max_n: usize) -> Result<Output> {
    let reports = run_symcheck(max_n);
    let mut text = String::new();
    let mut rows = Vec::new();
    for r in &reports {
        text.push_str(&format!("{:<24} n ≤ {:<2} {:>6} cases  {}\n", r.name, r.max_n, r.cases, if r.passed() { "pass" } else { "FAIL" }));
        rows.push(json!({"name": r.name, "max_n": r.max_n, "cases": r.cases, "failures": r.failures, "passed": r.passed()}));
    }
    let ok = reports.iter().all(|r| r.passed());
    Ok(Output { json: json!({"checks": rows, "passed": ok}), text, exit: if ok { 0 } else { 2 } })
}

fn validate_cmd(input: &std::path::Path) -> Result<Output> {
    let text = std::fs::read_to_string(input).map_err(|e| io_err(input, e))?;
    let violations = match SurfaceGraph::from_json_str(&text) {
        Ok(g) => validate(&g),
        Err(Error::InvalidGraph(v)) => v,
        Err(e) => return Err(e),
    };
    let mut out = String::new();
    for v in &violations {
        out.push_str(&format!("{}: {} ({})\n", v.kind, v.detail, v.ids.join(", ")));
    }
    if violations.is_empty() {
        out.push_str("valid\n");
    }
    let exit = if violations.is_empty() { 0 } else { 1 };
    Ok(Output { json: json!({"valid": violations.is_empty(), "violations": violations}), text: out, exit })
}

fn dispatch(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Compute { graph, max_box, normalize, tail_report } => compute(graph, *max_box, *normalize, *tail_report),
        Command::Enumerate { graph, max_box } => enumerate_cmd(graph, *max_box),
        Command::Partition { input, rank, euler_char, area, free_boundaries, rel_tol, max_shell } => {
            partition_cmd(input, *rank, *euler_char, *area, *free_boundaries, *rel_tol, *max_shell)
        }
        Command::MmCheck { graph, vertex, max_box } => mm_cmd(graph, vertex, *max_box),
        Command::Oracle { which } => match which {
            OracleCommand::Perm { graph, config, bound, max_box } => perm_cmd(graph, config, *bound, *max_box),
            OracleCommand::Mc { graph, samples, seed, hk_tol, max_shell, max_box } => {
                mc_cmd(graph, *samples, *seed, *hk_tol, *max_shell, *max_box)
            }
            OracleCommand::Cs { n, rank, samples, seed } => cs_cmd(*n, *rank, *samples, *seed),
        },
        Command::Symcheck { max_n } => symcheck_cmd(*max_n),
        Command::Validate { input } => validate_cmd(input),
    }
}

/// Runs the CLI on `args` (program name first) and returns the exit code:
/// 0 on success, 1 for bad input, 2 when an internal check fails.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(Error::Precondition(format!("cannot start {n} threads: {e}"))),
        },
        None => dispatch(&cli),
    };
    match result {
        Ok(o) => {
            let _ = match cli.format {
                Format::Json => writeln!(out, "{}", o.json),
                Format::Text => write!(out, "{}", o.text),
            };
            o.exit
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_internal() {
                2
            } else {
                1
            }
        }
    }
}

/// Entry point for the binary; panics count as internal failures.
pub fn run() -> i32 {
    let args: Vec<OsString> = std::env::args_os().collect();
    let outcome = std::panic::catch_unwind(|| {
        let stdout = std::io::stdout();
        let stderr = std::io::stderr();
        run_with(args, &mut stdout.lock(), &mut stderr.lock())
    });
    outcome.unwrap_or(2)
}
