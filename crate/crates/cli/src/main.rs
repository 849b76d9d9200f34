use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use perm3col::GenConfig;
use perm3col_cli::{
    cmd_bench, cmd_check_ordering, cmd_dot, cmd_gen, cmd_solve, cmd_verify, BenchConfig, CliError, Outcome, ERROR,
};

/// Exact 3-list colouring of permutation graphs.
#[derive(Parser)]
#[command(name = "perm3col", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide an instance and print a colouring or a reason there is none.
    Solve {
        instance: PathBuf,
        /// Print the layers, allowable array and repairs as `c` lines.
        #[arg(long, conflicts_with = "components")]
        trace: bool,
        /// Solve each connected component separately.
        #[arg(long)]
        components: bool,
    },
    /// Check that a colouring is proper and respects the lists.
    Verify { instance: PathBuf, colouring: PathBuf },
    /// Print a random instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        list_density: f64,
        #[arg(long, default_value_t = 0.0)]
        precolour_rate: f64,
        /// Keep every value within this distance of its sorted position.
        #[arg(long)]
        band: Option<usize>,
    },
    /// Layer the graph from its root and check the multi-chain property.
    CheckOrdering { instance: PathBuf },
    /// Time the solver on generated instances.
    Bench {
        /// Comma-separated instance sizes.
        #[arg(long, value_delimiter = ',', default_value = "200,400,800,1600")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        list_density: f64,
        #[arg(long, default_value_t = 0.1)]
        precolour_rate: f64,
        #[arg(long)]
        band: Option<usize>,
        /// Print `n,mean_ms,fitted_exponent` rows.
        #[arg(long)]
        csv: bool,
    },
    /// Print the graph in DOT, optionally coloured.
    Dot { instance: PathBuf, colouring: Option<PathBuf> },
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Solve { instance, trace, components } => cmd_solve(&instance, trace, components),
        Command::Verify { instance, colouring } => cmd_verify(&instance, &colouring),
        Command::Gen { n, seed, list_density, precolour_rate, band } => {
            cmd_gen(&GenConfig { n, seed, list_density, precolour_rate, band })
        }
        Command::CheckOrdering { instance } => cmd_check_ordering(&instance),
        Command::Bench { sizes, reps, seed, list_density, precolour_rate, band, csv } => {
            cmd_bench(&BenchConfig { sizes, reps, seed, list_density, precolour_rate, band, csv })
        }
        Command::Dot { instance, colouring } => cmd_dot(&instance, colouring.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { ERROR as u8 } else { 0 });
        }
    };
    match run(cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(outcome.stdout.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(ERROR as u8);
            }
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(ERROR as u8)
        }
    }
}
