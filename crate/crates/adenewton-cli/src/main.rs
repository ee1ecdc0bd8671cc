use std::path::PathBuf;
use std::process::ExitCode;

use adenewton_cli::config::Config;
use adenewton_cli::{run, Command};
use clap::{Parser, Subcommand};

/// Exact analysis and solving of asymptotic differential equations over
/// truncated Hahn-series fields.
#[derive(Parser)]
#[command(name = "adenewton", version, about)]
struct Cli {
    /// Field preset: h-type (k = Q) or monotone (k = Q(z))
    #[arg(long, global = true)]
    preset: Option<String>,
    /// Value-group dimension (lexicographic Q^n)
    #[arg(long, global = true)]
    dim: Option<usize>,
    /// Output format: text or json
    #[arg(long, global = true)]
    format: Option<String>,
    /// TOML configuration file ([field], [solver], [output])
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for randomized field checks
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Maximum derivative order accepted by the parser
    #[arg(long, global = true)]
    max_order: Option<usize>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dominant degree, starting monomials, approximate solutions, and
    /// unravelling status of an equation
    Analyze { equation: String },
    /// Solve an asymptotic differential equation by Newton-diagram descent
    Solve {
        equation: String,
        /// Residual valuation to reach, e.g. 6 or 13/2
        #[arg(long)]
        target: Option<String>,
        /// Maximum number of solution branches
        #[arg(long)]
        branch_bound: Option<usize>,
        /// Maximum refinement depth per branch
        #[arg(long)]
        depth: Option<usize>,
    },
    /// The unique exponent where two homogeneous d-polynomials acquire
    /// equal valuation under multiplicative conjugation
    Equalizer { p: String, q: String },
    /// The Newton diagram of a d-polynomial on a constraint set
    Diagram {
        poly: String,
        /// Constraint: "all", "prec <series>", or "preceq <series>"
        #[arg(long = "in")]
        constraint: Option<String>,
    },
    /// Randomized small-derivation / asymptoticity checks of a preset
    CheckField {
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Dominant degree along a finite cut chain ("a0; a1; ...")
    ChainDdeg {
        poly: String,
        #[arg(long)]
        chain: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match Config::resolve(
        cli.config.as_deref(),
        cli.preset.as_deref(),
        cli.dim,
        cli.format.as_deref(),
        cli.seed,
        cli.max_order,
    ) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let cmd = match cli.command {
        Cmd::Analyze { equation } => Command::Analyze { equation },
        Cmd::Solve {
            equation,
            target,
            branch_bound,
            depth,
        } => Command::Solve {
            equation,
            target,
            branch_bound,
            depth,
        },
        Cmd::Equalizer { p, q } => Command::Equalizer { p, q },
        Cmd::Diagram { poly, constraint } => Command::Diagram { poly, constraint },
        Cmd::CheckField { samples } => Command::CheckField { samples },
        Cmd::ChainDdeg { poly, chain } => Command::ChainDdeg { poly, chain },
    };
    match run(&cmd, &cfg) {
        Ok((code, output)) => {
            print!("{output}");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
