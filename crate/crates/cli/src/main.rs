use std::path::PathBuf;
use std::process::ExitCode;

use chl_core::{Config, Error};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

mod commands;
mod output;
mod verify;

/// Iterated integrals with Legendre-family period weights on P¹ ∖ {0, 1, ∞}.
#[derive(Parser, Debug)]
#[command(name = "chl", version)]
struct Cli {
    #[command(flatten)]
    settings: Settings,
    /// Print the JSON record instead of text.
    #[arg(long, global = true, env = "CHL_JSON")]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Settings {
    /// Target accuracy of reported values.
    #[arg(long, global = true, env = "CHL_TOL")]
    tol: Option<f64>,
    /// Local tolerance of the ODE stepper.
    #[arg(long, global = true, env = "CHL_ODE_TOL")]
    ode_tol: Option<f64>,
    /// Regularization samples ε = 2^-j for j in J0..=J1, given as `J0,J1`.
    #[arg(long, global = true, env = "CHL_REGLIM_SAMPLES", value_parser = parse_range)]
    reglim_samples: Option<(u32, u32)>,
    /// Highest ε power in the regularization fits.
    #[arg(long, global = true, env = "CHL_REGLIM_EPS_ORDER")]
    reglim_eps_order: Option<u32>,
    /// Symmetric-power cutoff M.
    #[arg(long, global = true, env = "CHL_SYM_CUTOFF")]
    sym_cutoff: Option<u32>,
    /// Word-length cutoff N.
    #[arg(long, global = true, env = "CHL_LENGTH_CUTOFF")]
    length_cutoff: Option<usize>,
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `J0,J1`, got `{s}`"))?;
    let parse = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("`{t}`: {e}"));
    Ok((parse(a)?, parse(b)?))
}

impl Settings {
    fn config(&self) -> chl_core::Result<Config> {
        let d = Config::default();
        let cfg = Config {
            tol: self.tol.unwrap_or(d.tol),
            ode_tol: self.ode_tol.unwrap_or(d.ode_tol),
            reglim_samples: self.reglim_samples.unwrap_or(d.reglim_samples),
            reglim_eps_order: self.reglim_eps_order.unwrap_or(d.reglim_eps_order),
            sym_cutoff: self.sym_cutoff.unwrap_or(d.sym_cutoff),
            length_cutoff: self.length_cutoff.unwrap_or(d.length_cutoff),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Multiple zeta value ζ(k₁,…,k_d) by nested series and/or iterated integral.
    Mzv {
        /// Index entries, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        indices: Vec<u32>,
        #[arg(long, value_enum, default_value_t = Method::Series)]
        method: Method,
    },
    /// Periods of θ₀, θ₁ over the cycles α̃, β̃ at λ.
    Period {
        /// A complex number such as `0.3`, `0.3+0.1i` or `-2i`.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<Complex64>,
        #[arg(long, value_enum, default_value_t = Which::Frame)]
        which: Which,
        /// Transport the frame along this path (`dch` or a path file) from its start.
        #[arg(long)]
        via: Option<String>,
    },
    /// The pairing ⟨word, cycles ⊗ path⟩.
    Pair {
        /// Bar word file (JSON).
        #[arg(long)]
        word: PathBuf,
        /// Cycle word file (JSON, one word or an array).
        #[arg(long)]
        cycles: PathBuf,
        /// `dch` or a path file.
        #[arg(long, default_value = "dch")]
        path: String,
    },
    /// Runs a seeded property suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Method {
    Series,
    Integral,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Which {
    F0,
    F1,
    G0,
    G1,
    Frame,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Suite {
    Hopf,
    Shuffle,
    Dual,
    Homotopy,
    Augmentation,
    Gm,
    Monodromy,
}

/// Outcome of a command: the record to print and whether it passed.
pub struct Outcome {
    pub record: serde_json::Value,
    pub pass: bool,
}

/// Exit status 2 for malformed input, 1 for failed computations.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::Arity(_)
        | Error::Domain(_)
        | Error::InvalidPath(_)
        | Error::LengthOverflow { .. }
        | Error::SymOverflow { .. } => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = cli.settings.config().and_then(|cfg| match cli.command {
        Command::Mzv { indices, method } => commands::mzv(indices, method, &cfg),
        Command::Period { lambda, which, via } => commands::period(lambda, which, via.as_deref(), &cfg),
        Command::Pair { word, cycles, path } => commands::pair(&word, &cycles, &path, &cfg),
        Command::Verify { suite, seed } => verify::run(suite, seed, &cfg),
    });
    match result {
        Ok(outcome) => {
            output::print(&outcome.record, cli.json);
            ExitCode::from(if outcome.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
