//! `hcpca`: simulation campaigns, island drift studies, symbolic verification
//! and game experiments.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 configuration error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use hcpca_core::game::{draw_csv, draw_probability, equivalence_check};
use hcpca_core::islands::{comparisons_csv, drift_study, isolated_records, records_csv, IsolatedConfig};
use hcpca_core::params::{noise_from_strs, parse_probability, NoiseParams};
use hcpca_core::pca::{densities_csv, run_densities, PcaSpec, StepContext};
use hcpca_core::report::{verify_all, VerifyOptions};
use hcpca_core::rng::SeedSpec;
use hcpca_core::state::EnvRow;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "hcpca", version, about = "Hard-core PCA workbench")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Envelope run from a uniform row; CSV of `?` and 1 densities per step.
    Simulate(Wrapped<SimulateConfig>),
    /// Isolated-island drift study; CSV of empirical vs exact drifts.
    Islands(Wrapped<IslandsConfig>),
    /// Symbolic report: expansions, masses, certificates, grid scans.
    Verify(Wrapped<VerifyConfig>),
    /// Draw probabilities over board heights and the game/PCA equivalence check.
    Game(Wrapped<GameConfig>),
}

#[derive(Args)]
struct Wrapped<T: Args> {
    /// JSON file whose keys override the flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(flatten)]
    inner: T,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
struct SimulateConfig {
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value = "1/10")]
    eps0: String,
    #[arg(long, default_value = "1/10")]
    eps1: String,
    #[arg(long, default_value_t = 4096)]
    width: usize,
    #[arg(long, default_value_t = 2000)]
    steps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    trial: u64,
    /// Initial row: `question` (all `?`) or `zero` (all 0).
    #[arg(long, default_value = "question")]
    init: String,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
struct IslandsConfig {
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value = "1/10")]
    eps0: String,
    #[arg(long, default_value = "1/10")]
    eps1: String,
    #[arg(long, default_value_t = 4096)]
    width: usize,
    /// Boundary records per trial.
    #[arg(long, default_value_t = 100_000)]
    records: usize,
    #[arg(long, default_value_t = 1)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Boundary records of trial 0 as CSV.
    #[arg(long)]
    records_out: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
struct VerifyConfig {
    #[arg(long, default_value = "1/50")]
    grid_step: String,
    /// A `.cert` file or a directory of them, replacing the shipped fixtures.
    #[arg(long)]
    fixtures: Option<PathBuf>,
    /// JSON report path.
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
struct GameConfig {
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value = "1/10")]
    eps0: String,
    #[arg(long, default_value = "1/10")]
    eps1: String,
    #[arg(long, default_value_t = 512)]
    width: usize,
    /// Comma-separated board heights.
    #[arg(long, default_value = "10,20,50")]
    heights: String,
    #[arg(long, default_value_t = 2000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also compare this many solved boards with envelope runs.
    #[arg(long)]
    equivalence: Option<usize>,
    #[arg(long, default_value_t = 64)]
    board_size: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

enum Failure {
    Verification(String),
    Config(String),
}

impl From<hcpca_core::Error> for Failure {
    fn from(e: hcpca_core::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Flags first, then the keys of the config file on top.
fn resolve<T: Args + Serialize + DeserializeOwned>(w: Wrapped<T>) -> std::result::Result<T, Failure> {
    let Some(path) = w.config else {
        return Ok(w.inner);
    };
    let text = fs::read_to_string(&path).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
    let over: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
    let mut base = serde_json::to_value(&w.inner).expect("serializable");
    match (base.as_object_mut(), over) {
        (Some(b), serde_json::Value::Object(o)) => {
            for (k, v) in o {
                if !b.contains_key(&k) {
                    return Err(Failure::Config(format!("unknown config key {k:?}")));
                }
                b.insert(k, v);
            }
        }
        _ => return Err(Failure::Config("config must be a JSON object".into())),
    }
    serde_json::from_value(base).map_err(|e| Failure::Config(e.to_string()))
}

fn header<T: Serialize>(cmd: &str, cfg: &T) -> String {
    format!(
        "# hcpca {VERSION} {cmd}\n# config {}\n",
        serde_json::to_string(cfg).expect("serializable")
    )
}

fn emit(path: &Option<PathBuf>, text: &str) -> Outcome {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Config(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn noise(e0: &str, e1: &str) -> std::result::Result<NoiseParams, Failure> {
    let p = noise_from_strs(e0, e1)?;
    Ok(p)
}

/// Echoes the exact noise pair the run used.
fn noise_line(p: &NoiseParams) -> String {
    format!("# noise {}\n", p.describe())
}

fn simulate(cfg: SimulateConfig) -> Outcome {
    let params = noise(&cfg.eps0, &cfg.eps1)?;
    let spec = PcaSpec::new(cfg.n, params)?;
    let init = match cfg.init.as_str() {
        "question" => EnvRow::all_question(cfg.width),
        "zero" => EnvRow::all_zero(cfg.width),
        other => return Err(Failure::Config(format!("unknown init {other:?}"))),
    };
    let ctx = StepContext::new(SeedSpec::new(cfg.seed), cfg.trial);
    let dens = run_densities(&spec, init, cfg.steps, ctx)?;
    let text = header("simulate", &cfg) + &noise_line(&spec.params) + &densities_csv(&dens);
    emit(&cfg.output, &text)
}

fn islands(cfg: IslandsConfig) -> Outcome {
    let params = noise(&cfg.eps0, &cfg.eps1)?;
    let spec = PcaSpec::new(cfg.n, params)?;
    let iso = IsolatedConfig {
        width: cfg.width,
        records: cfg.records,
        ..IsolatedConfig::for_n(cfg.n, cfg.records)?
    };
    let seed = SeedSpec::new(cfg.seed);
    let study = drift_study(&spec, &iso, seed, cfg.trials)?;
    if let Some(p) = &cfg.records_out {
        let recs = isolated_records(&spec, &iso, StepContext::new(seed, 0))?;
        emit(&Some(p.clone()), &(header("islands", &cfg) + &records_csv(&recs)))?;
    }
    let g = &study.growth;
    let mut text = header("islands", &cfg) + &noise_line(&spec.params);
    text.push_str(&format!(
        "# growth R={:.6} D={:.6} D-(2R+n-1)={:.6} stderr={:.6} samples={}\n",
        g.r_hat, g.d_hat, g.gap, g.stderr, g.count
    ));
    text.push_str(&comparisons_csv(&study.rows));
    emit(&cfg.output, &text)?;
    if study.passes() && g.passes() {
        Ok(())
    } else {
        Err(Failure::Verification("empirical drifts disagree with the exact values".into()))
    }
}

fn load_certificates(path: &Path) -> std::result::Result<Vec<(String, String)>, Failure> {
    let read = |p: &Path| -> std::result::Result<(String, String), Failure> {
        let name = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        let text = fs::read_to_string(p).map_err(|e| Failure::Config(format!("{}: {e}", p.display())))?;
        Ok((name, text))
    };
    if path.is_dir() {
        let mut files: Vec<PathBuf> = fs::read_dir(path)
            .map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "cert" || x == "json"))
            .collect();
        files.sort();
        files.iter().map(|p| read(p)).collect()
    } else {
        Ok(vec![read(path)?])
    }
}

fn verify(cfg: VerifyConfig) -> Outcome {
    let step = parse_probability(&cfg.grid_step)?;
    let certificates = match &cfg.fixtures {
        Some(p) => Some(load_certificates(p)?),
        None => None,
    };
    let rep = verify_all(&VerifyOptions {
        grid_step: step,
        certificates,
    })?;
    emit(&cfg.output, &(header("verify", &cfg) + &rep.to_text()))?;
    if let Some(p) = &cfg.json {
        emit(&Some(p.clone()), &rep.to_json())?;
    }
    match rep.first_failure() {
        None => Ok(()),
        Some(f) => Err(Failure::Verification(format!("{} {}: {}", f.group, f.name, f.detail))),
    }
}

/// Noise pairs cycled through by the equivalence check.
fn assorted_params() -> Vec<NoiseParams> {
    [("1/10", "1/10"), ("1/4", "1/10"), ("1/20", "3/10"), ("1/2", "1/2"), ("0", "1/5"), ("3/10", "0"), ("0", "0")]
        .iter()
        .map(|(a, b)| noise_from_strs(a, b).expect("valid"))
        .collect()
}

fn game(cfg: GameConfig) -> Outcome {
    let params = noise(&cfg.eps0, &cfg.eps1)?;
    PcaSpec::new(cfg.n, params.clone())?;
    let heights: Vec<usize> = cfg
        .heights
        .split(',')
        .map(|h| h.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Failure::Config(format!("heights: {e}")))?;
    let seed = SeedSpec::new(cfg.seed);
    let rows = heights
        .iter()
        .map(|&h| draw_probability(cfg.width, h, &params, cfg.n, cfg.trials, seed))
        .collect::<hcpca_core::Result<Vec<_>>>()?;
    let mut text = header("game", &cfg) + &noise_line(&params);
    let mut ok = true;
    if let Some(boards) = cfg.equivalence {
        let rep = equivalence_check(boards, cfg.board_size, cfg.n, &assorted_params(), seed)?;
        ok = rep.identical();
        text.push_str(&format!(
            "# equivalence {} ({} boards, {} sites, {} mismatched)\n",
            if ok { "identical" } else { "different" },
            rep.boards,
            rep.sites,
            rep.mismatched_boards
        ));
    }
    text.push_str(&draw_csv(&rows));
    emit(&cfg.output, &text)?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification("solved boards differ from envelope runs".into()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Simulate(w) => resolve(w).and_then(simulate),
        Cmd::Islands(w) => resolve(w).and_then(islands),
        Cmd::Verify(w) => resolve(w).and_then(verify),
        Cmd::Game(w) => resolve(w).and_then(game),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Config(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
