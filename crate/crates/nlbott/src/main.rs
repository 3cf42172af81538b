use std::{path::PathBuf, process::ExitCode};

use clap::{Parser, Subcommand};
use nlbott::{
    commands::{self, Outcome},
    config::{self, FileConfig, Overrides, CACHE_ENV},
    CliError, Config, OutputFormat,
};

/// Degrees of Noether–Lefschetz loci of surfaces containing an elliptic
/// quartic curve, by torus localization.
#[derive(Debug, Parser)]
#[command(name = "nlbott", version)]
struct Cli {
    /// Torus weights as `a,b,c,d`.
    #[arg(long, global = true, value_parser = parse_weights)]
    weights: Option<nlbott_core::torus::WeightSpec>,
    /// Worker threads for the sums.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Fixed-point cache file (overrides NLBOTT_CACHE).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_parser = parse_format)]
    format: Option<OutputFormat>,
    /// TOML config file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Fail instead of replacing a non-generic weight spec.
    #[arg(long, global = true)]
    no_retry: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Degree of the locus for one d (d = 4 uses the quartic-surface count).
    Degree {
        #[arg(long)]
        d: u32,
    },
    /// Interpolate degrees at d = dmin..dmax and compare with the closed form.
    Formula {
        #[arg(long, default_value_t = 5)]
        dmin: u32,
        #[arg(long, default_value_t = 53)]
        dmax: u32,
    },
    /// Enumerate the torus-fixed points and refresh the cache.
    Fixpoints {
        /// Print every record as JSON instead of the counts.
        #[arg(long)]
        json: bool,
    },
    /// Run the verification checks.
    Verify,
}

fn parse_weights(s: &str) -> Result<nlbott_core::torus::WeightSpec, String> {
    config::parse_weights(s).map_err(|e| e.to_string())
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse().map_err(|e: CliError| e.to_string())
}

fn run(cli: Cli) -> nlbott::Result<Outcome> {
    let file = cli.config.as_deref().map(FileConfig::load).transpose()?;
    let overrides = Overrides {
        weights: cli.weights,
        threads: cli.threads,
        cache: cli.cache,
        format: cli.format,
        no_retry: cli.no_retry,
    };
    let env_cache = std::env::var_os(CACHE_ENV).map(PathBuf::from);
    let cfg = Config::resolve(file.as_ref(), env_cache, &overrides)?;
    match cli.command {
        Command::Degree { d } => commands::degree(d, &cfg),
        Command::Formula { dmin, dmax } => commands::formula(dmin, dmax, &cfg),
        Command::Fixpoints { json } => commands::fixpoints(&cfg, json),
        Command::Verify => commands::verify(&cfg),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            for note in &out.notes {
                eprintln!("{note}");
            }
            print!("{}", out.stdout);
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
