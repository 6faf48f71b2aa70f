mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use plie_core::{Error, Partition, Side};

use commands::Outcome;
use config::{parse_partition, parse_side, BudgetArgs, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "plie", version, about = "Small p-groups, Lie rings and F_p[T]-algebras by exhaustive computation")]
struct Cli {
    /// Worker threads (0 uses all cores). Output does not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    #[command(flatten)]
    budget: BudgetArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report the alternating, Jacobi and nilpotency predicates of a structure file.
    Check {
        file: PathBuf,
        /// Require only alternating and Jacobi.
        #[arg(long)]
        lie: bool,
        /// Require nilpotency as well.
        #[arg(long)]
        nilpotent: bool,
    },
    /// Enumerate isomorphism classes on one shape as admissible-pair orbits.
    Orbits {
        #[arg(long)]
        p: u64,
        #[arg(long, value_parser = parse_partition)]
        partition: Partition,
        #[arg(long, value_parser = parse_side, default_value = "ring")]
        side: Side,
        #[arg(long)]
        alternating: bool,
        #[arg(long)]
        lie: bool,
        #[arg(long)]
        nilpotent: bool,
        /// Directory for `summary.txt` and the representative files.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Flip a structure file between the ring and algebra sides.
    Correspond {
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Build the group of a nilpotent Lie structure of class below p.
    Group {
        file: PathBuf,
        /// File for the multiplication table.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Count groups of order p^n whose derived subgroup has exponent dividing p.
    Count {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        /// Directory with `manifest.txt` listing nilpotent Lie algebras of dimension n.
        #[arg(long)]
        transversal: Option<PathBuf>,
        /// Compare a file transversal against exhaustive enumeration.
        #[arg(long)]
        check_completeness: bool,
    },
    /// Run the correspondence, group and N_E = C(K) checks.
    Verify {
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// Restrict to one shape.
        #[arg(long, value_parser = parse_partition)]
        partition: Option<Partition>,
        /// Check a single structure file instead.
        #[arg(long)]
        tensor: Option<PathBuf>,
    },
    /// Print the truncated BCH series.
    Bch {
        #[arg(long)]
        class: usize,
        /// Reduce the coefficients modulo this integer.
        #[arg(long)]
        modulus: Option<u64>,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Budget { .. } => 3,
        Error::Parse { .. }
        | Error::InvalidPartition(_)
        | Error::NotPrime(_)
        | Error::NonInvertible { .. }
        | Error::Mismatch(_)
        | Error::Dimension(_)
        | Error::Precondition(_)
        | Error::Io(_) => 2,
        _ => 1,
    }
}

fn config(cli: &Cli) -> RunConfig {
    RunConfig {
        p: 0,
        n: 0,
        partition: None,
        side: Side::Ring,
        lie: false,
        nilpotent: false,
        budget: cli.budget.budget(),
        input: None,
        out: None,
        workers: cli.workers,
    }
}

fn run(cli: Cli) -> plie_core::Result<Outcome> {
    let base = config(&cli);
    base.install_workers()?;
    match cli.command {
        Command::Check { file, lie, nilpotent } => {
            commands::check(&RunConfig { input: Some(file), lie, nilpotent, ..base })
        }
        Command::Orbits { p, partition, side, alternating, lie, nilpotent, out } => {
            RunConfig::require_prime(p)?;
            let cfg = RunConfig { p, n: partition.n(), partition: Some(partition), side, lie, nilpotent, out, ..base };
            commands::orbits_cmd(&cfg, alternating)
        }
        Command::Correspond { file, out } => commands::correspond(&RunConfig { input: Some(file), out, ..base }),
        Command::Group { file, out } => commands::group(&RunConfig { input: Some(file), out, ..base }),
        Command::Count { p, n, transversal, check_completeness } => {
            RunConfig::require_prime(p)?;
            commands::count(&RunConfig { p, n, input: transversal, ..base }, check_completeness)
        }
        Command::Verify { p, n, partition, tensor } => {
            let n = partition.as_ref().map(|l| l.n()).unwrap_or(n);
            let p = match (p, &tensor) {
                (_, Some(_)) => p.unwrap_or(0),
                (Some(p), None) if n > 0 => {
                    RunConfig::require_prime(p)?;
                    p
                }
                _ => return Err(Error::Precondition("verify needs --p with --n or --partition, or --tensor".into())),
            };
            commands::verify(&RunConfig { p, n, partition, input: tensor, ..base })
        }
        Command::Bch { class, modulus } => commands::bch(class, modulus),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
