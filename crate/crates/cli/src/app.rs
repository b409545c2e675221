//! Command-line surface.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use twistfloer_core::CobordismMode;

use crate::acceptance;
use crate::commands::{self, OdeRequest};
use crate::config::{CurveKind, RunConfig};
use crate::{render_json, CliError};

#[derive(Debug, Parser)]
#[command(name = "twistfloer", version, about = "Floer homology of Dehn twist powers over F2")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// TOML config; flags override its values.
    #[arg(long, global = true, env = "TWISTFLOER_CONFIG")]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub genus: Option<u32>,
    #[arg(long, global = true)]
    pub boundary: Option<u32>,
    #[arg(long, global = true, value_enum)]
    pub curve: Option<CurveKind>,
    /// Sides of a separating curve as g1,b1,g2,b2.
    #[arg(long, global = true, value_delimiter = ',', value_name = "G1,B1,G2,B2")]
    pub split: Option<Vec<u32>>,
    #[arg(short, long, global = true)]
    pub m: Option<u32>,
    #[arg(short, long, global = true)]
    pub n: Option<u32>,
    /// Third power, for the associativity checks.
    #[arg(short, long, global = true)]
    pub p: Option<u32>,
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the result here instead of stdout.
    #[arg(short, long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Product,
    Coproduct,
    Cylinder,
}

impl From<ModeArg> for CobordismMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Product => CobordismMode::Product,
            ModeArg::Coproduct => CobordismMode::Coproduct,
            ModeArg::Cylinder => CobordismMode::Cylinder,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Basis and dimensions of H_*(Σ₀).
    Homology,
    /// The Floer homology of φ^m.
    Hf,
    /// Product matrix and identity reports.
    Product,
    /// Coproduct matrix and identity reports.
    Coproduct,
    /// Exhaustive no-crossing search with a certificate.
    VerifyNocrossing {
        #[arg(long)]
        bound: Option<i64>,
        #[arg(long, value_enum, default_value = "product")]
        mode: ModeArg,
        /// Weaken the strict sign rule; the search should then find survivors.
        #[arg(long)]
        relaxed: bool,
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Conley–Zehnder indices, Fredholm indices and monotonicity verdicts.
    Index,
    /// Sampled end trajectories as CSV.
    Ode {
        #[arg(long, default_value_t = 3)]
        k_inf: u32,
        #[arg(long, default_value_t = 1)]
        k1: u32,
        #[arg(long, default_value_t = 2)]
        k2: u32,
        #[arg(long)]
        tolerance: Option<f64>,
        /// Print a JSON summary instead of the samples.
        #[arg(long)]
        summary: bool,
    },
    /// Cascade counts and the comparison with the coproduct.
    Cascades,
    /// Run the full acceptance suite.
    CheckAll,
}

impl Cli {
    /// Merge the config file (if any) with flag overrides.
    pub fn config(&self) -> Result<RunConfig, CliError> {
        let g = &self.global;
        let mut cfg = match &g.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        if let Some(v) = g.genus {
            cfg.surface.genus = v;
        }
        if let Some(v) = g.boundary {
            cfg.surface.boundary = v;
        }
        if let Some(v) = g.curve {
            cfg.curve.kind = v;
        }
        if let Some(v) = &g.split {
            let split: [u32; 4] = v
                .as_slice()
                .try_into()
                .map_err(|_| CliError::Usage("--split takes four numbers".into()))?;
            cfg.curve.split = Some(split);
        }
        if let Some(v) = g.m {
            cfg.powers.m = v;
        }
        if let Some(v) = g.n {
            cfg.powers.n = v;
        }
        if g.p.is_some() {
            cfg.powers.p = g.p;
        }
        if let Some(v) = g.threads {
            cfg.enumeration.threads = v;
        }
        if g.out.is_some() {
            cfg.output.path = g.out.clone();
        }
        match &self.command {
            Command::VerifyNocrossing {
                bound, certificate, ..
            } => {
                if let Some(b) = bound {
                    cfg.enumeration.bound = *b;
                }
                if certificate.is_some() {
                    cfg.output.certificate = certificate.clone();
                }
            }
            Command::Ode {
                tolerance: Some(t), ..
            } => cfg.ode.tolerance = *t,
            _ => {}
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn emit(cfg: &RunConfig, text: &str) -> Result<(), CliError> {
    match &cfg.output.path {
        Some(path) => std::fs::write(path, text)?,
        None => match std::io::stdout().write_all(text.as_bytes()) {
            // A closed pipe (e.g. `| head`) is not worth an error.
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
            other => other?,
        },
    }
    Ok(())
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = cli.config()?;
    let text = match &cli.command {
        Command::Homology => render_json(&commands::homology_cmd(&cfg)?)?,
        Command::Hf => render_json(&commands::hf_cmd(&cfg)?)?,
        Command::Product => render_json(&commands::product_cmd(&cfg)?)?,
        Command::Coproduct => render_json(&commands::coproduct_cmd(&cfg)?)?,
        Command::VerifyNocrossing { mode, relaxed, .. } => {
            render_json(&commands::verify_nocrossing_cmd(&cfg, (*mode).into(), *relaxed)?)?
        }
        Command::Index => render_json(&commands::index_cmd(&cfg)?)?,
        Command::Ode {
            k_inf, k1, k2, summary, ..
        } => {
            let req = OdeRequest {
                k_inf: *k_inf,
                k1: *k1,
                k2: *k2,
            };
            if *summary {
                render_json(&commands::ode_summary(&cfg, req)?)?
            } else {
                commands::ode_csv(&cfg, req)?
            }
        }
        Command::Cascades => render_json(&commands::cascades_cmd(&cfg)?)?,
        Command::CheckAll => {
            let results = acceptance::run_all(cfg.enumeration.threads);
            let mut text = String::new();
            for r in &results {
                text.push_str(&r.line());
                text.push('\n');
            }
            emit(&cfg, &text)?;
            let failed = results.iter().filter(|r| !r.pass).count();
            return if failed == 0 {
                Ok(())
            } else {
                Err(CliError::AcceptanceFailed(failed))
            };
        }
    };
    emit(&cfg, &text)
}
