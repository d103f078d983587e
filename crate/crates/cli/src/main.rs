//! `defectbethe`: sweeps, amplitude evaluation and verification suites for
//! spin chains with one spin-S defect.

mod commands;
mod config;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use config::Config;
use defectbethe::spin_algebra::{ModelParameters, Regime};
use output::{write_records, Format, Record};
use serde_json::{json, Map, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Parser)]
#[command(name = "defectbethe", version, about = "Integrable spin chains with a spin-S defect")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Seed for randomly sampled spectral parameters.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// key = value file of default tolerances (`ybe.tol = 1e-12`).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Xxx,
    Xxz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    Repulsive,
    Attractive,
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum, default_value = "xxx")]
    pub model: Model,
    /// Anisotropy μ in (0, π) for xxz.
    #[arg(long, conflicts_with = "nu")]
    pub mu: Option<f64>,
    /// ν = π/μ > 1 for xxz (default 3).
    #[arg(long)]
    pub nu: Option<f64>,
    #[arg(long, value_enum, default_value = "repulsive")]
    pub regime: RegimeArg,
}

impl ModelArgs {
    pub fn params(&self) -> Result<ModelParameters, String> {
        let regime = match self.regime {
            RegimeArg::Repulsive => Regime::Repulsive,
            RegimeArg::Attractive => Regime::Attractive,
        };
        let p = match (self.model, self.mu, self.nu) {
            (Model::Xxx, None, None) => Ok(ModelParameters::rational()),
            (Model::Xxx, _, _) => return Err("--mu/--nu only apply to --model xxz".into()),
            (Model::Xxz, Some(mu), _) => ModelParameters::trigonometric(mu, regime),
            (Model::Xxz, None, nu) => ModelParameters::from_nu(nu.unwrap_or(3.0), regime),
        };
        p.map_err(|e| e.to_string())
    }

    pub fn describe(&self) -> Map<String, Value> {
        let mut m = Map::new();
        match self.model {
            Model::Xxx => {
                m.insert("model".into(), json!("xxx"));
            }
            Model::Xxz => {
                m.insert("model".into(), json!("xxz"));
                if let Ok(p) = self.params() {
                    m.insert("mu".into(), json!(p.mu().ok()));
                    m.insert("nu".into(), json!(p.nu().ok()));
                }
                let regime = match self.regime {
                    RegimeArg::Repulsive => "repulsive",
                    RegimeArg::Attractive => "attractive",
                };
                m.insert("regime".into(), json!(regime));
            }
        }
        m
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Ybe,
    Rll,
    Rtt,
    Unitarity,
    Crossing,
    Casimir,
    DefectSpectrum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AmpKind {
    Kink,
    Transmission,
    BreatherS,
    BreatherT,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Product,
    Integral,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChainAction {
    Diagonalize,
    Bae,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IdentityKindArg {
    Use1,
    Use2,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Pass/fail algebraic and spectral checks with the worst residual.
    Verify {
        #[arg(value_enum)]
        check: Check,
        #[command(flatten)]
        model: ModelArgs,
        /// Defect spin S.
        #[arg(long, default_value_t = 1.0)]
        spin: f64,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Evaluate amplitudes at one rapidity or over a sweep.
    Amp {
        #[arg(value_enum)]
        kind: AmpKind,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "sweep")]
        lambda: Option<f64>,
        /// min:max:steps
        #[arg(long, allow_hyphen_values = true)]
        sweep: Option<String>,
        #[arg(long, default_value_t = 0.5)]
        spin: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        theta: f64,
        /// Expected branch index; must agree with the one computed from S and ν.
        #[arg(long)]
        branch_m: Option<i64>,
        #[arg(long, default_value_t = 1)]
        n1: usize,
        #[arg(long, default_value_t = 1)]
        n2: usize,
        /// Breather order for breather-t.
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, value_enum, default_value = "product")]
        method: Method,
        /// Bound on |product − integral| for --method both.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Small chains: Hamiltonian spectrum or Bethe roots.
    Chain {
        #[arg(value_enum)]
        action: ChainAction,
        #[command(flatten)]
        model: ModelArgs,
        /// Number of bulk spin-1/2 sites.
        #[arg(long = "N")]
        n_bulk: usize,
        /// 1-based defect position among the N + 1 sites.
        #[arg(long, default_value_t = 1)]
        defect_site: usize,
        #[arg(long, default_value_t = 0.5)]
        spin: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long)]
        magnons: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Residuals of the Gamma integral identities.
    Identity {
        #[arg(value_enum)]
        which: IdentityKindArg,
        #[arg(long)]
        mu: Option<f64>,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        tol: Option<f64>,
    },
}

/// Exit status of a run: 1 for residual failures, 2 for usage and domain errors.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
}

pub struct Outcome {
    pub records: Vec<Record>,
    pub pass: bool,
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let config = match &cli.config {
        Some(path) => Config::load(path).map_err(Failure::Usage)?,
        None => Config::default(),
    };
    match &cli.command {
        Command::Verify { check, model, spin, samples, tol } => {
            commands::verify(*check, model, *spin, *samples, *tol, &config, cli.seed)
        }
        Command::Amp { kind, model, lambda, sweep, spin, theta, branch_m, n1, n2, n, method, tol } => {
            let req = commands::AmpRequest {
                kind: *kind,
                lambdas: commands::lambdas(*lambda, sweep.as_deref())?,
                spin: *spin,
                theta: *theta,
                branch_m: *branch_m,
                n1: *n1,
                n2: *n2,
                n: *n,
                method: *method,
                tol: tol.or(config.tol("amp")).unwrap_or(1e-8),
            };
            commands::amp(&req, model)
        }
        Command::Chain { action, model, n_bulk, defect_site, spin, theta, magnons, tol } => {
            let tol = tol.or(config.tol(match action {
                ChainAction::Bae => "bae",
                ChainAction::Diagonalize => "diagonalize",
            }));
            commands::chain(*action, model, *n_bulk, *defect_site, *spin, *theta, *magnons, tol)
        }
        Command::Identity { which, mu, beta, tol } => {
            let name = match which {
                IdentityKindArg::Use1 => "use1",
                IdentityKindArg::Use2 => "use2",
            };
            commands::identity(*which, *mu, *beta, tol.or(config.tol(name)))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let stdout = std::io::stdout();
            if let Err(e) = write_records(&outcome.records, cli.format, &mut stdout.lock()) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            if outcome.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
