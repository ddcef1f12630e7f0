use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use twwt::commands::{Format, Invocation, Mode};
use twwt::manifest::execute;

/// Secrecy-rate regions, power allocation and equivocation checks for
/// two-way wiretap channels.
#[derive(Parser)]
#[command(name = "twwt", version)]
struct Cli {
    /// Write the payload here and a run manifest to `<OUT>.manifest.json`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Codebook seed for `verify`, overriding the scheme file.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Enumeration budget for `verify`, overriding the scheme file.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convert a raw Gaussian channel to standard form.
    Standardize { input: PathBuf },
    /// Print the secrecy-rate region vertices.
    Region {
        channel: PathBuf,
        #[arg(long, default_value_t = 64)]
        grid: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Optimal power allocation without (`sum`) or with (`jam`) jamming.
    Optimize {
        channel: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Sum)]
        mode: Mode,
        /// Also solve on a grid x grid lattice and report the gap.
        #[arg(long)]
        oracle_grid: Option<usize>,
    },
    /// Jamming rate of user 1 at full power as user 2's power sweeps.
    JamSweep {
        channel: PathBuf,
        #[arg(long, default_value_t = 101)]
        points: usize,
    },
    /// Exact equivocation of a binary coding scheme.
    Verify {
        scheme: PathBuf,
        #[arg(long)]
        eps_w: f64,
        /// Main-link crossover for the decoding error check.
        #[arg(long)]
        eps_self: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Best cooperative-jamming rate on a binary channel.
    BatwJam { channel: PathBuf },
}

fn invocation(cli: Cli) -> Invocation {
    match cli.command {
        Command::Standardize { input } => Invocation::Standardize { input },
        Command::Region {
            channel,
            grid,
            format,
        } => Invocation::Region {
            channel,
            grid,
            format,
        },
        Command::Optimize {
            channel,
            mode,
            oracle_grid,
        } => Invocation::Optimize {
            channel,
            mode,
            oracle_grid,
        },
        Command::JamSweep { channel, points } => Invocation::JamSweep { channel, points },
        Command::Verify {
            scheme,
            eps_w,
            eps_self,
            format,
        } => Invocation::Verify {
            scheme,
            eps_w,
            eps_self,
            seed: cli.seed,
            budget: cli.budget,
            format,
        },
        Command::BatwJam { channel } => Invocation::BatwJam { channel },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let out = cli.out.clone();
    match execute(&invocation(cli), out.as_deref()) {
        Ok(Some(payload)) => {
            print!("{payload}");
            ExitCode::SUCCESS
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("twwt: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
