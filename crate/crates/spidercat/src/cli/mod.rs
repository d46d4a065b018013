//! Batch command-line front end.
//!
//! Five subcommands: `synthesize` runs a full pipeline (graph search, mark
//! placement, tree planning, extraction, verification) and writes a graph,
//! a circuit, and a JSON report into an output directory; `verify` re-checks
//! a circuit file from disk; `bench` estimates accepted logical error rates
//! by Monte Carlo; `export-cnf` / `export-wcnf` dump the SAT encodings.
//!
//! Exit codes: 0 success, 1 verification or internal failure, 2 certified
//! infeasibility, 3 bad input (flags, env, or file parsing).  Reports carry
//! no timings or worker counts, so output bytes are identical across runs
//! and `--jobs` settings for a fixed seed.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::extract::{
    extract_circuit, lower_bounds, recursive_cat, resource_counts, shallow_cat, Circuit,
    LowerBounds, RecursiveVariant, ResourceCounts,
};
use crate::graph::{hill_climb, moore_bound, GraphSearchConfig, MarkedGraph, SearchOutcome};
use crate::marking::solve_marking;
use crate::robustness::{is_t_robust, min_cut_slack, nonlocal_cut_cnf, SolverBackend, Verdict};
use crate::treeplan::{build_spider_tree, to_zgraph, SpiderTree};
use crate::verify::{check_ft, is_cat, monte_carlo, set_worker_cap, simulate, FaultModel};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_BAD_INPUT: i32 = 3;

const REPORT_SCHEMA: u32 = 1;
const SEARCH_RESTARTS: u64 = 24;
const SEARCH_ITERS: usize = 40_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Search a marked cubic graph at the optimal vertex ratio and extract.
    Optimal,
    /// Recursive doubling construction; no graph involved.
    Recursive,
    /// Depth-3 construction from a marked graph.
    Shallow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyLevel {
    /// Trust the synthesis; no checks.
    None,
    /// Graph-level robustness only (state checks only for `verify`).
    Graph,
    /// Robustness, stabilizer simulation, and exhaustive fault check.
    Full,
}

/// Everything a synthesis run needs; flags beat the `SPIDERCAT_SOLVER` and
/// `SPIDERCAT_SEED` environment variables, which beat the defaults.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub n: usize,
    pub t: usize,
    pub mode: Mode,
    pub seed: u64,
    pub solver: SolverBackend,
    pub out_dir: PathBuf,
    pub verify_level: VerifyLevel,
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.n < 3 {
            return Err(format!("need n >= 3, got {}", self.n));
        }
        if self.t < 1 {
            return Err("need t >= 1".into());
        }
        if self.mode != Mode::Recursive && !(2..=5).contains(&self.t) {
            return Err(format!(
                "graph-based modes support 2 <= t <= 5, got t = {}; use --mode recursive",
                self.t
            ));
        }
        Ok(())
    }
}

#[derive(Parser)]
#[command(name = "spidercat", version, about = "Fault-tolerant CAT-state circuit synthesis")]
struct Cli {
    /// Worker threads for fault checking and sampling.  Results never
    /// depend on this, only wall time does.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a CAT preparation circuit and write artifacts.
    Synthesize(SynthesizeArgs),
    /// Re-verify a circuit file from disk.
    Verify(VerifyArgs),
    /// Monte Carlo logical error rate of a circuit under depolarizing noise.
    Bench(BenchArgs),
    /// Dump the nonlocal-cut CNF for a graph file as DIMACS.
    ExportCnf(ExportCnfArgs),
    /// Dump the mark-placement MaxSAT instance for a graph file as WDIMACS.
    ExportWcnf(ExportWcnfArgs),
}

#[derive(Args)]
struct SynthesizeArgs {
    /// Number of output qubits.
    #[arg(short, long)]
    n: usize,
    /// Fault-tolerance order.
    #[arg(short, long)]
    t: usize,
    #[arg(long, value_enum, default_value_t = Mode::Optimal)]
    mode: Mode,
    /// Search seed; falls back to SPIDERCAT_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
    /// External SAT solver binary; falls back to SPIDERCAT_SOLVER, then
    /// the built-in solver.
    #[arg(long)]
    solver: Option<PathBuf>,
    #[arg(long, default_value = "out")]
    out_dir: PathBuf,
    #[arg(long, value_enum, default_value_t = VerifyLevel::Full)]
    verify_level: VerifyLevel,
}

#[derive(Args)]
struct VerifyArgs {
    /// Circuit file in the text format `synthesize` writes.
    circuit: PathBuf,
    /// Expected number of output qubits.
    #[arg(short, long)]
    n: usize,
    /// Fault-tolerance order to check.
    #[arg(short, long)]
    t: usize,
    #[arg(long, value_enum, default_value_t = VerifyLevel::Full)]
    verify_level: VerifyLevel,
}

#[derive(Args)]
struct BenchArgs {
    circuit: PathBuf,
    /// Residual weight above which an accepted shot counts as failed.
    #[arg(short, long)]
    t: usize,
    /// Physical error probability per CNOT.
    #[arg(short, long)]
    p: f64,
    #[arg(long, default_value_t = 1_000_000)]
    shots: u64,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct ExportCnfArgs {
    /// Graph file in the text format `synthesize` writes.
    graph: PathBuf,
    #[arg(short, long)]
    t: usize,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExportWcnfArgs {
    graph: PathBuf,
    #[arg(short, long)]
    t: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parse argv and dispatch; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_BAD_INPUT,
            };
            let _ = e.print();
            return code;
        }
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("--jobs must be at least 1");
            return EXIT_BAD_INPUT;
        }
        set_worker_cap(jobs);
    }
    match cli.command {
        Command::Synthesize(a) => {
            let seed = match resolve_seed(a.seed) {
                Ok(s) => s,
                Err(msg) => return bad_input(&msg),
            };
            let cfg = PipelineConfig {
                n: a.n,
                t: a.t,
                mode: a.mode,
                seed,
                solver: resolve_solver(a.solver),
                out_dir: a.out_dir,
                verify_level: a.verify_level,
            };
            cmd_synthesize(&cfg)
        }
        Command::Verify(a) => cmd_verify(&a.circuit, a.n, a.t, a.verify_level),
        Command::Bench(a) => {
            let seed = match resolve_seed(a.seed) {
                Ok(s) => s,
                Err(msg) => return bad_input(&msg),
            };
            if !(0.0..=1.0).contains(&a.p) {
                return bad_input("-p must lie in [0, 1]");
            }
            cmd_bench(&a.circuit, a.t, a.p, a.shots, seed)
        }
        Command::ExportCnf(a) => cmd_export_cnf(&a.graph, a.t, a.out.as_deref()),
        Command::ExportWcnf(a) => cmd_export_wcnf(&a.graph, a.t, a.out.as_deref()),
    }
}

fn bad_input(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    EXIT_BAD_INPUT
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, String> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("SPIDERCAT_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("SPIDERCAT_SEED is not an integer: {v:?}")),
        Err(_) => Ok(0),
    }
}

fn resolve_solver(flag: Option<PathBuf>) -> SolverBackend {
    flag.or_else(|| std::env::var_os("SPIDERCAT_SOLVER").map(PathBuf::from))
        .map_or(SolverBackend::Internal, SolverBackend::External)
}

#[derive(Serialize)]
struct SearchInfo {
    vertex_target: usize,
    marks_found: usize,
    marks_trimmed: usize,
}

#[derive(Serialize)]
struct VerificationInfo {
    level: VerifyLevel,
    #[serde(skip_serializing_if = "Option::is_none")]
    robust: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cat: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ft_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ft_exhaustive: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ft_combos: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ft_locations: Option<usize>,
}

impl VerificationInfo {
    fn passed(&self) -> bool {
        self.robust != Some(false) && self.cat != Some(false) && self.ft_ok != Some(false)
    }
}

#[derive(Serialize)]
struct InfeasibilityInfo {
    reason: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    girth_needed: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    min_vertices: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    best_marks: Option<usize>,
}

#[derive(Serialize)]
struct SynthesisReport {
    schema: u32,
    command: &'static str,
    mode: Mode,
    n: usize,
    t: usize,
    seed: u64,
    outcome: &'static str,
    bounds: LowerBounds,
    #[serde(skip_serializing_if = "Option::is_none")]
    graph_file: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    circuit_file: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    circuit_hash: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    counts: Option<ResourceCounts>,
    #[serde(skip_serializing_if = "Option::is_none")]
    search: Option<SearchInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<VerificationInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    infeasibility: Option<InfeasibilityInfo>,
}

/// Run one synthesis pipeline and write its artifacts.
pub fn cmd_synthesize(cfg: &PipelineConfig) -> i32 {
    if let Err(msg) = cfg.validate() {
        return bad_input(&msg);
    }
    let mut report = SynthesisReport {
        schema: REPORT_SCHEMA,
        command: "synthesize",
        mode: cfg.mode,
        n: cfg.n,
        t: cfg.t,
        seed: cfg.seed,
        outcome: "ok",
        bounds: lower_bounds(cfg.n, cfg.t),
        graph_file: None,
        circuit_file: None,
        circuit_hash: None,
        counts: None,
        search: None,
        verification: None,
        infeasibility: None,
    };

    let built = match cfg.mode {
        Mode::Recursive => match recursive_cat(cfg.n, cfg.t, RecursiveVariant::default()) {
            Ok(c) => (c, None),
            Err(e) => return bad_input(&e.to_string()),
        },
        Mode::Optimal | Mode::Shallow => {
            let (graph, tree) = match find_marked_graph(cfg, &mut report) {
                Ok(found) => found,
                Err(code) => {
                    if write_artifacts(cfg, &mut report, None, None).is_err() {
                        return EXIT_FAILURE;
                    }
                    return code;
                }
            };
            let z = to_zgraph(&graph);
            let circuit = if cfg.mode == Mode::Shallow {
                shallow_cat(&z)
            } else {
                let tree = tree.expect("optimal mode always plans a tree");
                match extract_circuit(&z, &tree) {
                    Ok(c) => c,
                    Err(e) => {
                        eprintln!("extraction failed: {e}");
                        return EXIT_FAILURE;
                    }
                }
            };
            (circuit, Some(graph))
        }
    };
    let (circuit, graph) = built;
    report.counts = Some(resource_counts(&circuit));
    report.verification = Some(verify_circuit(
        &circuit,
        graph.as_ref(),
        cfg.t,
        cfg.verify_level,
    ));
    let passed = report.verification.as_ref().is_none_or(VerificationInfo::passed);
    if !passed {
        report.outcome = "verification_failed";
    }
    if write_artifacts(cfg, &mut report, graph.as_ref(), Some(&circuit)).is_err() {
        return EXIT_FAILURE;
    }
    if passed {
        EXIT_OK
    } else {
        EXIT_FAILURE
    }
}

/// Graph search plus mark placement at the optimal vertex ratio.  Fills
/// `report.search` on success and `report.infeasibility` on certified
/// failure (mapped to exit 2 by the caller).  In optimal mode a candidate
/// graph only counts as found once it also yields a spider-ordering tree,
/// so a tree-planning dead end moves on to the next restart.
fn find_marked_graph(
    cfg: &PipelineConfig,
    report: &mut SynthesisReport,
) -> Result<(MarkedGraph, Option<SpiderTree>), i32> {
    let (num, den) = report.bounds.vertex_ratio;
    let mut v_target = (cfg.n * num).div_ceil(den).max(4);
    v_target += v_target % 2;
    if v_target < moore_bound(cfg.t + 1) {
        report.outcome = "infeasible";
        report.infeasibility = Some(InfeasibilityInfo {
            reason: format!(
                "no cubic graph on {v_target} vertices reaches girth {}",
                cfg.t + 1
            ),
            girth_needed: Some(cfg.t + 1),
            min_vertices: Some(moore_bound(cfg.t + 1)),
            best_marks: None,
        });
        return Err(EXIT_INFEASIBLE);
    }
    let mut best_marks = 0usize;
    for attempt in 0..SEARCH_RESTARTS {
        let search = GraphSearchConfig::new(
            cfg.t,
            v_target,
            SEARCH_ITERS,
            cfg.seed.wrapping_add(attempt.wrapping_mul(0x9E3779B97F4A7C15)),
        );
        let graph = match hill_climb(&search) {
            SearchOutcome::Found(g) => g,
            SearchOutcome::CertifiedInfeasible {
                girth_needed,
                min_vertices,
            } => {
                report.outcome = "infeasible";
                report.infeasibility = Some(InfeasibilityInfo {
                    reason: format!(
                        "no cubic graph on {v_target} vertices reaches girth {girth_needed}"
                    ),
                    girth_needed: Some(girth_needed),
                    min_vertices: Some(min_vertices),
                    best_marks: None,
                });
                return Err(EXIT_INFEASIBLE);
            }
            SearchOutcome::Failure => continue,
        };
        let marked = match solve_marking(&graph, cfg.t, &cfg.solver) {
            Ok(m) => m,
            Err(e) => {
                eprintln!("mark placement failed on attempt {attempt}: {e}");
                continue;
            }
        };
        let found = marked.mark_count();
        best_marks = best_marks.max(found);
        if found < cfg.n {
            continue;
        }
        let Some(trimmed) = trim_marks(&marked, cfg.n, cfg.t) else {
            continue;
        };
        let tree = if cfg.mode == Mode::Optimal {
            match build_spider_tree(&to_zgraph(&trimmed)) {
                Ok(t) => Some(t),
                Err(e) => {
                    eprintln!("tree planning failed on attempt {attempt}: {e}");
                    continue;
                }
            }
        } else {
            None
        };
        report.search = Some(SearchInfo {
            vertex_target: v_target,
            marks_found: found,
            marks_trimmed: found - cfg.n,
        });
        return Ok((trimmed, tree));
    }
    report.outcome = "infeasible";
    report.infeasibility = Some(InfeasibilityInfo {
        reason: format!(
            "no {}-robust marking with {} marks found on {v_target} vertices",
            cfg.t, cfg.n
        ),
        girth_needed: None,
        min_vertices: None,
        best_marks: Some(best_marks),
    });
    Err(EXIT_INFEASIBLE)
}

/// Remove marks one at a time down to exactly `n`, preferring the removal
/// that maximizes the minimum cut-slack, and re-certifying robustness
/// after every step.  None when some step cannot stay robust.
fn trim_marks(marked: &MarkedGraph, n: usize, t: usize) -> Option<MarkedGraph> {
    let mut current = marked.clone();
    while current.mark_count() > n {
        let marks: Vec<u8> = current.edges().iter().map(|e| e.marks).collect();
        let mut best: Option<(i64, MarkedGraph)> = None;
        for i in 0..marks.len() {
            if marks[i] == 0 {
                continue;
            }
            let mut cand_marks = marks.clone();
            cand_marks[i] -= 1;
            let cand = current.with_marks(&cand_marks).ok()?;
            if is_t_robust(&cand, t).verdict != Verdict::Robust {
                continue;
            }
            let slack = min_cut_slack(&cand, t).unwrap_or(i64::MAX);
            // Strict > keeps the smallest edge index on ties.
            if best.as_ref().is_none_or(|(s, _)| slack > *s) {
                best = Some((slack, cand));
            }
        }
        current = best?.1;
    }
    Some(current)
}

fn verify_circuit(
    circuit: &Circuit,
    graph: Option<&MarkedGraph>,
    t: usize,
    level: VerifyLevel,
) -> VerificationInfo {
    let mut info = VerificationInfo {
        level,
        robust: None,
        cat: None,
        ft_ok: None,
        ft_exhaustive: None,
        ft_combos: None,
        ft_locations: None,
    };
    if level == VerifyLevel::None {
        return info;
    }
    if let Some(g) = graph {
        info.robust = Some(is_t_robust(g, t).verdict == Verdict::Robust);
    }
    if level == VerifyLevel::Full {
        info.cat = Some(match simulate(circuit) {
            Ok(state) => is_cat(&state, &circuit.output_qubits),
            Err(_) => false,
        });
        let ft = check_ft(circuit, t, FaultModel::XOnly);
        info.ft_ok = Some(ft.ok);
        info.ft_exhaustive = Some(ft.exhaustive);
        info.ft_combos = Some(ft.combos_checked);
        info.ft_locations = Some(ft.locations);
    }
    info
}

fn write_artifacts(
    cfg: &PipelineConfig,
    report: &mut SynthesisReport,
    graph: Option<&MarkedGraph>,
    circuit: Option<&Circuit>,
) -> Result<(), ()> {
    let io_err = |e: std::io::Error| {
        eprintln!("cannot write {}: {e}", cfg.out_dir.display());
    };
    fs::create_dir_all(&cfg.out_dir).map_err(io_err)?;
    if let Some(g) = graph {
        fs::write(cfg.out_dir.join("graph.txt"), g.to_text()).map_err(io_err)?;
        report.graph_file = Some("graph.txt".into());
    }
    if let Some(c) = circuit {
        let text = c.to_text();
        report.circuit_hash = Some(hex_digest(&text));
        fs::write(cfg.out_dir.join("circuit.txt"), text).map_err(io_err)?;
        report.circuit_file = Some("circuit.txt".into());
    }
    let json = serde_json::to_string_pretty(report).expect("report serializes");
    fs::write(cfg.out_dir.join("report.json"), json + "\n").map_err(io_err)?;
    println!(
        "{}: {} (report in {})",
        report.command,
        report.outcome,
        cfg.out_dir.join("report.json").display()
    );
    Ok(())
}

fn hex_digest(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Serialize)]
struct VerifyReport {
    schema: u32,
    command: &'static str,
    n: usize,
    t: usize,
    outcome: &'static str,
    counts: ResourceCounts,
    verification: VerificationInfo,
}

/// Re-verify a circuit file.  Exit 3 on unreadable or unparseable input,
/// 1 when any requested check fails, 0 otherwise.
pub fn cmd_verify(path: &Path, n: usize, t: usize, level: VerifyLevel) -> i32 {
    let circuit = match read_circuit(path) {
        Ok(c) => c,
        Err(msg) => return bad_input(&msg),
    };
    let mut verification = verify_circuit(&circuit, None, t, level);
    if circuit.output_qubits.len() != n {
        eprintln!(
            "circuit has {} output qubits, expected {n}",
            circuit.output_qubits.len()
        );
        verification.cat = Some(false);
    }
    let passed = verification.passed();
    let report = VerifyReport {
        schema: REPORT_SCHEMA,
        command: "verify",
        n,
        t,
        outcome: if passed { "ok" } else { "verification_failed" },
        counts: resource_counts(&circuit),
        verification,
    };
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    if passed {
        EXIT_OK
    } else {
        EXIT_FAILURE
    }
}

#[derive(Serialize)]
struct BenchReport {
    schema: u32,
    command: &'static str,
    t: usize,
    p: f64,
    shots: u64,
    seed: u64,
    counts: ResourceCounts,
    accepted: u64,
    failures: u64,
    acceptance_rate: f64,
    /// Rate of accepted shots whose residual error weighs more than t.
    p_over_t: f64,
    wilson_low: f64,
    wilson_high: f64,
}

/// Monte Carlo benchmark of a circuit file; JSON report on stdout.
pub fn cmd_bench(path: &Path, t: usize, p: f64, shots: u64, seed: u64) -> i32 {
    let circuit = match read_circuit(path) {
        Ok(c) => c,
        Err(msg) => return bad_input(&msg),
    };
    let mc = monte_carlo(&circuit, t, p, shots, seed);
    let report = BenchReport {
        schema: REPORT_SCHEMA,
        command: "bench",
        t,
        p,
        shots,
        seed,
        counts: resource_counts(&circuit),
        accepted: mc.accepted,
        failures: mc.failures,
        acceptance_rate: if shots == 0 {
            0.0
        } else {
            mc.accepted as f64 / shots as f64
        },
        p_over_t: mc.logical_rate,
        wilson_low: mc.wilson_low,
        wilson_high: mc.wilson_high,
    };
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    EXIT_OK
}

pub fn cmd_export_cnf(path: &Path, t: usize, out: Option<&Path>) -> i32 {
    let graph = match read_graph(path) {
        Ok(g) => g,
        Err(msg) => return bad_input(&msg),
    };
    if !graph.is_simple() {
        return bad_input("the nonlocal-cut encoding needs a simple graph");
    }
    emit(&nonlocal_cut_cnf(&graph, t).to_dimacs(), out)
}

pub fn cmd_export_wcnf(path: &Path, t: usize, out: Option<&Path>) -> i32 {
    let graph = match read_graph(path) {
        Ok(g) => g,
        Err(msg) => return bad_input(&msg),
    };
    match crate::marking::marking_constraints(&graph, t) {
        Ok(wcnf) => emit(&wcnf.to_wdimacs(), out),
        Err(e) => bad_input(&e.to_string()),
    }
}

fn emit(text: &str, out: Option<&Path>) -> i32 {
    match out {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                eprintln!("cannot write {}: {e}", path.display());
                return EXIT_FAILURE;
            }
            EXIT_OK
        }
        None => {
            print!("{text}");
            EXIT_OK
        }
    }
}

fn read_circuit(path: &Path) -> Result<Circuit, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let circuit: Circuit = text
        .parse()
        .map_err(|e| format!("{}: {e}", path.display()))?;
    circuit
        .validate()
        .map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(circuit)
}

fn read_graph(path: &Path) -> Result<MarkedGraph, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    text.parse()
        .map_err(|e| format!("{}: {e}", path.display()))
}
