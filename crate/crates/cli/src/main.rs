//! `touching-lines`: verify, search and analyze configurations of pairwise
//! equidistant lines.
//!
//! Every subcommand prints one JSON document on stdout and a short summary on
//! stderr. Exit codes: 0 the property holds or the search succeeded, 1 a
//! violation or witness was found, 2 invalid input, 3 no convergence.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use touching_lines::config::ConfigFile;
use touching_lines::export::{to_csv, to_obj};
use touching_lines::signed_graph::{
    builtin, contains_switching_subgraph, paley_17, switching_isomorphic, BUILTIN_NAMES, PALEY_17_RESIDUES,
};
use touching_lines::solver::{solve, verify};
use touching_lines::spectral::{lemma_trial_vectors, verify_lemma};
use touching_lines::{Error, LineConfiguration, Objective, SignedCompleteGraph, SolverOptions};

const DEFAULT_TOL: f64 = 1e-8;
const MAX_DUMPED_FAILURES: usize = 20;

#[derive(Parser)]
#[command(name = "touching-lines", version, about = "Configurations of pairwise equidistant lines in 3-space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check pairwise distances, skewness and the absence of a monochromatic K5.
    Verify {
        /// Configuration JSON.
        config: PathBuf,
        /// Largest accepted |d - target|.
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Search for n lines at a common pairwise distance.
    Solve(SolveArgs),
    /// Analyze a signed complete graph.
    Graph(GraphArgs),
    /// Sample unit-vector sets and check the (1, n-1) signature of the cross-norm matrix.
    Lemma {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Zero threshold relative to the largest |eigenvalue| (floor 1).
        #[arg(long, default_value_t = DEFAULT_TOL)]
        zero_tol: f64,
        /// Smallest pairwise angle between sampled vectors, in radians.
        #[arg(long, default_value_t = 1e-3)]
        min_angle: f64,
    },
    /// Check that the Paley graph on 17 vertices has no monochromatic K4.
    Paley {
        /// Flip edge {I, J} first.
        #[arg(long, num_args = 2, value_names = ["I", "J"])]
        corrupt: Option<Vec<usize>>,
    },
    /// Write cylinder meshes (OBJ) or a line table (CSV).
    Export {
        config: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Obj)]
        format: Format,
        /// Cylinder radius; defaults to half the pair distance.
        #[arg(long)]
        radius: Option<f64>,
        /// Cylinder length; defaults to ten times the pair distance.
        #[arg(long)]
        length: Option<f64>,
        /// Output file.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct SolveArgs {
    /// SolverOptions JSON; flags given explicitly override it.
    #[arg(long)]
    options: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    multistarts: Option<usize>,
    #[arg(long = "max-iter")]
    max_iter: Option<usize>,
    /// Target for the residual norm inside Levenberg-Marquardt.
    #[arg(long)]
    residual_tol: Option<f64>,
    #[arg(long)]
    distance: Option<f64>,
    /// distance (d^2 - target^2) or squared ((d^2 - target^2) |v x v'|^2).
    #[arg(long)]
    objective: Option<String>,
    /// Run starts one after another instead of on the thread pool.
    #[arg(long)]
    sequential: bool,
    /// Verification tolerance, relative to the pair distance.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Where to write the configuration JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GraphArgs {
    /// Graph JSON file.
    #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
    file: Option<PathBuf>,
    /// One of example1, blr_graph_a, blr_graph_b, blr_canonical, p250.
    #[arg(long)]
    builtin: Option<String>,
    #[command(flatten)]
    action: GraphAction,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphAction {
    /// Look for a monochromatic K_k under the given signs (exit 1 if found).
    #[arg(long, value_name = "K")]
    find_mono: Option<usize>,
    /// Is the graph switchable to all-positive (exit 0 if so)?
    #[arg(long)]
    balance: bool,
    /// Switching isomorphism with another graph (file or built-in name).
    #[arg(long, value_name = "OTHER")]
    iso: Option<String>,
    /// Does OTHER occur as an induced subgraph up to relabeling and switching?
    #[arg(long, value_name = "OTHER")]
    contains: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Obj,
    Csv,
}

/// What a subcommand hands back: exit code, JSON document, summary line.
struct Report {
    code: u8,
    json: Value,
    summary: String,
}

impl Report {
    fn new(code: u8, json: impl Serialize, summary: impl Into<String>) -> Self {
        let json = serde_json::to_value(json).expect("reports serialize");
        Self { code, json, summary: summary.into() }
    }
}

/// Invalid input, reported with exit code 2.
struct Invalid(String);

impl From<Error> for Invalid {
    fn from(e: Error) -> Self {
        Invalid(e.to_string())
    }
}

type Outcome = Result<Report, Invalid>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { config, tol } => cmd_verify(&config, tol),
        Command::Solve(args) => cmd_solve(&args),
        Command::Graph(args) => cmd_graph(&args),
        Command::Lemma { n, trials, seed, zero_tol, min_angle } => cmd_lemma(n, trials, seed, zero_tol, min_angle),
        Command::Paley { corrupt } => cmd_paley(corrupt.as_deref()),
        Command::Export { config, format, radius, length, out } => {
            cmd_export(&config, format, radius, length, &out)
        }
    };
    let report = result.unwrap_or_else(|Invalid(msg)| Report::new(2, json!({ "error": msg }), format!("error: {msg}")));
    let text = serde_json::to_string_pretty(&report.json).expect("json values print");
    // a closed pipe downstream is not an error of ours
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    eprintln!("{}", report.summary);
    ExitCode::from(report.code)
}

fn read(path: &Path) -> Result<String, Invalid> {
    fs::read_to_string(path).map_err(|e| Invalid(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Invalid> {
    fs::write(path, text).map_err(|e| Invalid(format!("cannot write {}: {e}", path.display())))
}

fn load_config(path: &Path) -> Result<LineConfiguration, Invalid> {
    Ok(LineConfiguration::from_json(&read(path)?)?)
}

fn positive(name: &str, v: f64) -> Result<f64, Invalid> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Invalid(format!("{name} must be positive, got {v}")))
    }
}

fn cmd_verify(path: &Path, tol: f64) -> Outcome {
    let tol = positive("--tol", tol)?;
    let config = load_config(path)?;
    let report = verify(&config, tol);
    let summary = format!(
        "{}: {} lines, max |d - {}| = {:.3e}, monochromatic K5 {}",
        if report.passed { "passed" } else { "failed" },
        report.n,
        report.target_distance,
        report.max_abs_deviation,
        if report.mono_clique_5.is_some() { "present" } else { "absent" },
    );
    Ok(Report::new(if report.passed { 0 } else { 1 }, &report, summary))
}

fn solver_options(args: &SolveArgs) -> Result<SolverOptions, Invalid> {
    let mut opts = match &args.options {
        Some(path) => serde_json::from_str(&read(path)?).map_err(|e| Invalid(format!("options: {e}")))?,
        None => SolverOptions::default(),
    };
    opts.n = args.n.unwrap_or(opts.n);
    opts.seed = args.seed.unwrap_or(opts.seed);
    opts.multistarts = args.multistarts.unwrap_or(opts.multistarts);
    opts.max_iterations = args.max_iter.unwrap_or(opts.max_iterations);
    opts.residual_tol = args.residual_tol.unwrap_or(opts.residual_tol);
    opts.target_distance = args.distance.unwrap_or(opts.target_distance);
    if let Some(name) = &args.objective {
        opts.objective = name.parse::<Objective>()?;
    }
    if args.sequential {
        opts.parallel = false;
    }
    opts.validate()?;
    Ok(opts)
}

fn cmd_solve(args: &SolveArgs) -> Outcome {
    let opts = solver_options(args)?;
    let tol = positive("--tol", args.tol)? * opts.target_distance;
    let solution = match solve::<f64>(&opts) {
        Ok(s) => s,
        Err(Error::NoConvergence { starts, best_residual }) => {
            let json = json!({
                "status": "no_convergence",
                "options": opts,
                "starts": starts,
                "best_residual": best_residual,
            });
            let summary = format!("no convergence after {starts} starts, best residual {best_residual:.3e}");
            return Ok(Report::new(3, json, summary));
        }
        Err(e) => return Err(e.into()),
    };
    let config = &solution.configuration;
    if let Some(out) = &args.out {
        write(out, &config.to_json())?;
    }
    let report = verify(config, tol);
    let json = json!({
        "status": if report.passed { "converged" } else { "verification_failed" },
        "options": opts,
        "start_index": solution.start_index,
        "iterations": solution.iterations,
        "residual_norm": solution.residual_norm,
        "configuration": ConfigFile::from_configuration(config),
        "report": report,
    });
    let summary = format!(
        "n={} seed={}: start {} converged in {} iterations, max |d - {}| = {:.3e}, verification {}",
        opts.n,
        opts.seed,
        solution.start_index,
        solution.iterations,
        opts.target_distance,
        report.max_abs_deviation,
        if report.passed { "passed" } else { "failed" },
    );
    Ok(Report::new(if report.passed { 0 } else { 1 }, json, summary))
}

/// A graph file path, or a built-in name when no such file exists.
fn load_graph(spec: &str) -> Result<(String, SignedCompleteGraph), Invalid> {
    let path = Path::new(spec);
    if path.exists() {
        let g = serde_json::from_str(&read(path)?).map_err(|e| Invalid(format!("{spec}: {e}")))?;
        return Ok((path.display().to_string(), g));
    }
    match builtin(spec) {
        Ok(g) => Ok((spec.to_string(), g)),
        Err(_) => Err(Invalid(format!(
            "`{spec}` is neither a readable graph file nor a built-in ({})",
            BUILTIN_NAMES.join(", ")
        ))),
    }
}

fn cmd_graph(args: &GraphArgs) -> Outcome {
    let (name, g) = match (&args.builtin, &args.file) {
        (Some(b), _) => (b.clone(), builtin(b)?),
        (None, Some(f)) => load_graph(&f.display().to_string())?,
        (None, None) => return Err(Invalid("give a graph file or --builtin".into())),
    };
    let a = &args.action;
    if let Some(k) = a.find_mono {
        if !(2..=g.n()).contains(&k) {
            return Err(Invalid(format!("--find-mono needs 2 <= k <= {}", g.n())));
        }
        let witness = g.find_mono_clique(k);
        let summary = match &witness {
            Some(w) => format!("{name}: monochromatic K{k} on {:?} with sign {}", w.vertices, w.sign),
            None => format!("{name}: no monochromatic K{k}"),
        };
        let json = json!({ "graph": name, "n": g.n(), "k": k, "witness": witness });
        return Ok(Report::new(u8::from(witness.is_some()), json, summary));
    }
    if a.balance {
        let balanced = g.is_balanced();
        let json = json!({ "graph": name, "n": g.n(), "balanced": balanced });
        let summary = format!("{name}: {}", if balanced { "balanced" } else { "not balanced" });
        return Ok(Report::new(u8::from(!balanced), json, summary));
    }
    let (relation, other) = match (&a.iso, &a.contains) {
        (Some(o), _) => ("switching_isomorphic", o),
        (None, Some(o)) => ("contains_up_to_switching", o),
        (None, None) => return Err(Invalid("choose one of --find-mono, --balance, --iso, --contains".into())),
    };
    let (other_name, h) = load_graph(other)?;
    let found = if a.iso.is_some() { switching_isomorphic(&g, &h)? } else { contains_switching_subgraph(&g, &h)? };
    let summary = match &found {
        Some(m) => format!("{relation}({name}, {other_name}): yes, mapping {:?}, switching {:?}", m.mapping, m.switching),
        None => format!("{relation}({name}, {other_name}): no"),
    };
    let json = json!({
        "graph": name,
        "other": other_name,
        "relation": relation,
        "found": found.is_some(),
        "map": found,
    });
    Ok(Report::new(u8::from(found.is_none()), json, summary))
}

fn cmd_lemma(n: usize, trials: u64, seed: u64, zero_tol: f64, min_angle: f64) -> Outcome {
    if n < 2 {
        return Err(Invalid("--n must be at least 2".into()));
    }
    if trials == 0 {
        return Err(Invalid("--trials must be positive".into()));
    }
    let zero_tol = positive("--zero-tol", zero_tol)?;
    let min_angle = positive("--min-angle", min_angle)?;
    let mut signatures: BTreeMap<String, u64> = BTreeMap::new();
    let mut failures = Vec::new();
    let mut failed = 0u64;
    for trial in 0..trials {
        let vs = lemma_trial_vectors(n, seed, trial, min_angle);
        let report = verify_lemma(&vs, zero_tol)?;
        *signatures.entry(report.matrix.signature().to_string()).or_default() += 1;
        if !report.passed {
            failed += 1;
            if failures.len() < MAX_DUMPED_FAILURES {
                failures.push(json!({ "trial": trial, "vectors": vs, "report": report }));
            }
        }
    }
    let json = json!({
        "n": n,
        "trials": trials,
        "seed": seed,
        "zero_tol": zero_tol,
        "min_angle": min_angle,
        "expected": [1, n - 1, 0],
        "passed": trials - failed,
        "failed": failed,
        "signatures": signatures,
        "failures": failures,
    });
    let summary = format!("n={n}: {}/{trials} trials have signature (1, {}, 0)", trials - failed, n - 1);
    Ok(Report::new(u8::from(failed > 0), json, summary))
}

fn cmd_paley(corrupt: Option<&[usize]>) -> Outcome {
    let mut g = paley_17();
    let corrupted = match corrupt {
        Some(&[i, j]) => {
            let (i, j) = (i.min(j), i.max(j));
            if i == j || i < 1 || j > 17 {
                return Err(Invalid(format!("--corrupt needs two distinct vertices in 1..=17, got {i} {j}")));
            }
            let flipped = -g.sign(i, j);
            g = SignedCompleteGraph::from_fn(17, |a, b| if (a, b) == (i, j) { flipped } else { g.sign(a, b) });
            Some([i, j])
        }
        Some(_) => return Err(Invalid("--corrupt takes two vertices".into())),
        None => None,
    };
    let subsets = 17 * 16 * 15 * 14 / 24;
    let witness = g.find_mono_clique(4);
    let message = match &witness {
        Some(w) => format!("monochromatic K4 on {:?} with sign {}", w.vertices, w.sign),
        None => format!("{subsets} subsets checked, no monochromatic K4"),
    };
    let json = json!({
        "p": 17,
        "residues": PALEY_17_RESIDUES,
        "corrupted_edge": corrupted,
        "subsets_checked": subsets,
        "witness": witness,
        "message": message,
    });
    Ok(Report::new(u8::from(witness.is_some()), json, message))
}

fn cmd_export(path: &Path, format: Format, radius: Option<f64>, length: Option<f64>, out: &Path) -> Outcome {
    let config = load_config(path)?;
    let radius = positive("--radius", radius.unwrap_or(config.target_distance / 2.0))?;
    let length = positive("--length", length.unwrap_or(config.target_distance * 10.0))?;
    let (text, kind) = match format {
        Format::Obj => (to_obj(&config, radius, length), "obj"),
        Format::Csv => (to_csv(&config), "csv"),
    };
    write(out, &text)?;
    let json = json!({
        "format": kind,
        "lines": config.n(),
        "radius": radius,
        "length": length,
        "out": out.display().to_string(),
    });
    let summary = format!("wrote {} ({kind}, {} lines)", out.display(), config.n());
    Ok(Report::new(0, json, summary))
}
