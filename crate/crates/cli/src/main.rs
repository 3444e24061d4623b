//! `cremona`: command-line access to cremona-core.

mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cremona_core::Error;

use config::{ConfigArgs, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "cremona", version, about = "Cremona orbits, cones and expected dimensions on blow-ups of P^n")]
struct Cli {
    #[command(flatten)]
    config: ConfigArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Mori dream status and Weyl plane counts.
    Classify {
        /// Only list the Weyl r-planes of this dimension.
        #[arg(long)]
        r: Option<usize>,
    },
    /// Effective Weyl orbit of a curve or divisor class.
    Orbit {
        #[arg(long, conflicts_with = "divisor", required_unless_present = "divisor")]
        curve: Option<String>,
        #[arg(long)]
        divisor: Option<String>,
    },
    /// Apply one standard Cremona transformation.
    Cremona {
        #[arg(long, conflicts_with = "divisor", required_unless_present = "divisor")]
        curve: Option<String>,
        #[arg(long)]
        divisor: Option<String>,
        /// n+1 distinct 1-based point indices.
        #[arg(long)]
        gamma: String,
    },
    /// Greedy Cremona reduction of a divisor.
    Reduce {
        #[arg(long)]
        divisor: String,
        #[arg(long, default_value_t = 10_000)]
        max_steps: usize,
    },
    /// Joins J(L_I, sigma_t) of one dimension with their classes.
    Joins {
        #[arg(long)]
        r: usize,
        /// Also print orthogonal Weyl divisors cutting out each join.
        #[arg(long)]
        witness: bool,
    },
    /// Base-locus multiplicity of a join in a divisor.
    Kappa {
        /// 1-based indices of I, comma separated (may be empty).
        #[arg(long, allow_hyphen_values = true)]
        join: String,
        #[arg(long, default_value_t = 0)]
        t: usize,
        #[arg(long)]
        divisor: String,
    },
    /// Generators of the cone C_k of k-moving curves.
    Cones {
        #[arg(long)]
        k: usize,
        /// Test every generator for extremality.
        #[arg(long)]
        extremal: bool,
    },
    /// Exact comparison of C_k with the dual of D_k.
    Duality {
        /// Defaults to every supported k.
        #[arg(long, value_delimiter = ',')]
        k: Vec<usize>,
    },
    /// Weyl stable base locus of a divisor.
    BaseLocus {
        #[arg(long)]
        divisor: String,
    },
    /// Weyl chamber signature; with --other, whether two divisors share a chamber.
    Chamber {
        #[arg(long)]
        divisor: String,
        #[arg(long)]
        other: Option<String>,
    },
    /// Weyl expected dimension, checked against the interpolation oracle.
    Wdim {
        #[arg(long)]
        divisor: String,
        #[arg(long)]
        no_oracle: bool,
    },
    /// Interpolation oracle over a finite field.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Gale maps between X^2_8 and X^4_8.
    #[command(subcommand)]
    Gale(GaleCommand),
    /// Degree-increasing recursion chain on X^n_{n+4} or X^n_{n+5}.
    CertifyInfinite {
        #[arg(long)]
        curve: String,
        #[arg(long, default_value_t = 20)]
        steps: usize,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Dimension of the space of degree-d forms with the given multiplicities.
    Dim {
        #[arg(long)]
        divisor: String,
    },
    /// Oracle against the expected dimension over a grid.
    Table {
        #[arg(long)]
        d_max: u32,
        #[arg(long)]
        m_max: u32,
        #[arg(long, default_value = "sorted", value_parser = ["homogeneous", "sorted", "full"])]
        mode: String,
    },
}

#[derive(Subcommand, Debug)]
enum GaleCommand {
    /// Image of a surface class under 2rho^-1 or eta.
    Map {
        /// "a;b1,...,b8" or {"a":..,"b":[..]}.
        #[arg(long)]
        class: String,
        /// (-1), (0) or (1); inferred when omitted.
        #[arg(long, allow_hyphen_values = true)]
        kind: Option<String>,
        #[arg(long, default_value = "eta")]
        map: String,
    },
    /// Generator identities, equivariance and the cone cross-check.
    Verify {
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 10)]
        range: i64,
    },
}

fn exit_code(e: &Error) -> u8 {
    if e.is_resource_cap() {
        4
    } else {
        2
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match RunConfig::from_args(&cli.config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    match commands::run(&cli.command, &cfg) {
        Ok(report) => {
            let stdout = std::io::stdout();
            match output::emit(&report, &cfg, &mut stdout.lock()) {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
                Ok(()) => {}
            }
            if report.verified {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed");
                ExitCode::from(3)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
