//! Command-line commands. Exit codes: 0 success, 1 a verification test
//! failed, 2 invalid input or configuration, 3 an I/O failure.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use graphex_core::estimate::{dilated_empirical_graphon, empirical_graphon};
use graphex_core::sample::p_sample;
use graphex_core::sequence::graph_sequence;
use graphex_core::simulate::{simulate_graph, SimConfig, DEFAULT_EPSILON};
use graphex_core::RngHandle;

use crate::config::{ConfigError, ModelConfig};
use crate::io::{self, ComponentCounts, Manifest, ParseError};
use crate::verify::{all_pass, run_suite, Suite, SuiteConfig, TestReport, VerifyError};

/// Consulted when neither a flag nor the model file gives a seed.
pub const SEED_ENV: &str = "GRAPHEX_SEED";
pub const DEFAULT_SEED: u64 = 0;

#[derive(Debug, Parser)]
#[command(name = "graphex", version, about = "Simulate, sample and estimate graphex processes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Draw a labeled graph of size s from a model file.
    Simulate(SimulateArgs),
    /// Keep each vertex of an edge list with probability p.
    Sample(SampleArgs),
    /// Write the (dilated) empirical graphon of an edge list.
    Estimate(EstimateArgs),
    /// Write the graph sequence of a labeled edge CSV.
    Sequence(SequenceArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    pub model: PathBuf,
    #[arg(long)]
    pub size: f64,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Writes `<out>.labeled.csv`, `<out>.edges` and `<out>.manifest.json`.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    pub graph: PathBuf,
    #[arg(long)]
    pub p: f64,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Writes `<out>.edges` and `<out>.manifest.json`.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    pub graph: PathBuf,
    /// Cells of width 1/s.
    #[arg(long, required_unless_present = "no_size", conflicts_with = "no_size")]
    pub size: Option<f64>,
    /// Cells of width 1/v(g).
    #[arg(long)]
    pub no_size: bool,
    /// Writes `<out>.pixel.csv` and `<out>.pgm`.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SequenceArgs {
    pub labeled: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// A suite name, or `all`.
    #[arg(long)]
    pub suite: String,
    /// Graphex replacing the suites' default model.
    #[arg(long)]
    pub model: Option<PathBuf>,
    #[arg(long)]
    pub replicates: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Edge list for the coupling checks.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// `r/s` ratio for the coupling checks; repeatable.
    #[arg(long = "ratio")]
    pub ratios: Vec<f64>,
    /// CSV report path; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: ParseError },
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Core(#[from] graphex_core::Error),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("{0}")]
    Input(String),
    #[error("{failed} of {total} gating tests failed")]
    TestsFailed { failed: usize, total: usize },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::TestsFailed { .. } => 1,
            CliError::Io { .. } | CliError::Config(ConfigError::Read { .. }) => 3,
            _ => 2,
        }
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate(a) => simulate(a),
        Command::Sample(a) => sample(a),
        Command::Estimate(a) => estimate(a),
        Command::Sequence(a) => sequence(a),
        Command::Verify(a) => verify(a),
    }
}

/// Flag, then model file, then `GRAPHEX_SEED`, then [`DEFAULT_SEED`].
pub fn resolve_seed(flag: Option<u64>, model: Option<u64>) -> Result<u64, CliError> {
    if let Some(seed) = flag.or(model) {
        return Ok(seed);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("{SEED_ENV}=`{v}` is not an unsigned integer"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn simulate(a: SimulateArgs) -> Result<(), CliError> {
    let model = ModelConfig::load(&a.model)?;
    let seed = resolve_seed(a.seed, model.seed)?;
    let epsilon = a.epsilon.or(model.epsilon).unwrap_or(DEFAULT_EPSILON);
    let g = simulate_graph(&model.graphex, &SimConfig::new(a.size, seed).with_epsilon(epsilon))?;
    let unlabeled = g.forget_labels();
    let manifest = Manifest {
        command: "simulate".into(),
        seed,
        size: Some(a.size),
        epsilon: Some(epsilon),
        counts: Some(ComponentCounts::of(&g)),
        edges: unlabeled.edge_count(),
        vertices: unlabeled.vertex_count(),
        ..Manifest::default()
    };
    write_file(&with_suffix(&a.out, "labeled.csv"), |w| io::write_labeled_csv(w, &g))?;
    write_file(&with_suffix(&a.out, "edges"), |w| io::write_edge_list(w, &unlabeled))?;
    write_file(&with_suffix(&a.out, "manifest.json"), |w| io::write_manifest(w, &manifest))
}

fn sample(a: SampleArgs) -> Result<(), CliError> {
    let g = read_edge_list(&a.graph)?;
    let seed = resolve_seed(a.seed, None)?;
    let sampled = p_sample(&g, a.p, &mut RngHandle::new(seed))?;
    let manifest = Manifest {
        command: "sample".into(),
        seed,
        p: Some(a.p),
        edges: sampled.edge_count(),
        vertices: sampled.vertex_count(),
        ..Manifest::default()
    };
    write_file(&with_suffix(&a.out, "edges"), |w| io::write_edge_list(w, &sampled))?;
    write_file(&with_suffix(&a.out, "manifest.json"), |w| io::write_manifest(w, &manifest))
}

fn estimate(a: EstimateArgs) -> Result<(), CliError> {
    let g = read_edge_list(&a.graph)?;
    let pixel = match a.size {
        Some(s) => dilated_empirical_graphon(&g, s)?,
        None => empirical_graphon(&g)?,
    };
    write_file(&with_suffix(&a.out, "pixel.csv"), |w| io::write_pixel_csv(w, &pixel))?;
    write_file(&with_suffix(&a.out, "pgm"), |w| io::write_pgm(w, &pixel))
}

fn sequence(a: SequenceArgs) -> Result<(), CliError> {
    let text = read(&a.labeled)?;
    let g = io::parse_labeled_csv(&text).map_err(|source| CliError::Parse { path: a.labeled.clone(), source })?;
    let seq = graph_sequence(&g);
    write_file(&a.out, |w| io::write_sequence(w, &seq))
}

fn verify(a: VerifyArgs) -> Result<(), CliError> {
    let suites: Vec<Suite> = if a.suite == "all" { Suite::ALL.to_vec() } else { vec![a.suite.parse()?] };
    let model = a.model.as_deref().map(ModelConfig::load).transpose()?;
    let mut cfg = SuiteConfig::new(resolve_seed(a.seed, model.as_ref().and_then(|m| m.seed))?);
    if let Some(m) = model {
        if let Some(eps) = m.epsilon {
            cfg.epsilon = eps;
        }
        cfg.model = Some(m.graphex);
    }
    cfg.replicates = a.replicates;
    if let Some(alpha) = a.alpha {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(CliError::Input(format!("alpha must be in (0, 1), got {alpha}")));
        }
        cfg.alpha = alpha;
    }
    if let Some(eps) = a.epsilon {
        cfg.epsilon = eps;
    }
    if let Some(path) = &a.graph {
        cfg.graph = Some(read_edge_list(path)?);
    }
    if !a.ratios.is_empty() {
        cfg.ratios = Some(a.ratios.clone());
    }
    let mut reports: Vec<TestReport> = Vec::new();
    for suite in suites {
        reports.extend(run_suite(suite, &cfg)?);
    }
    match &a.out {
        Some(path) => write_file(path, |w| io::write_report_csv(w, &reports))?,
        None => {
            let stdout = std::io::stdout();
            io::write_report_csv(&mut stdout.lock(), &reports)
                .map_err(|source| CliError::Io { path: "<stdout>".into(), source })?;
        }
    }
    let gating: Vec<&TestReport> = reports.iter().filter(|r| r.gating).collect();
    if all_pass(&reports) {
        Ok(())
    } else {
        let failed = gating.iter().filter(|r| !r.pass).count();
        Err(CliError::TestsFailed { failed, total: gating.len() })
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })
}

fn read_edge_list(path: &Path) -> Result<graphex_core::UnlabeledGraph, CliError> {
    let text = read(path)?;
    io::parse_edge_list(&text).map_err(|source| CliError::Parse { path: path.into(), source })
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut name = prefix.as_os_str().to_owned();
    name.push(".");
    name.push(suffix);
    PathBuf::from(name)
}

fn write_file(path: &Path, f: impl FnOnce(&mut BufWriter<fs::File>) -> std::io::Result<()>) -> Result<(), CliError> {
    let io_err = |source| CliError::Io { path: path.into(), source };
    let mut w = BufWriter::new(fs::File::create(path).map_err(io_err)?);
    f(&mut w).map_err(io_err)?;
    w.flush().map_err(io_err)
}
