use std::path::PathBuf;
use std::process::ExitCode;

use bishop_ruled_cli::commands::{self, Outcome};
use bishop_ruled_cli::{CliError, Overrides, RunConfig, Session, OUT_DIR_ENV};
use clap::{Args, Parser, Subcommand};

/// Bishop-frame ruled surfaces: analysis, meshes, curvature grids and verification.
#[derive(Parser)]
#[command(name = "bishop-ruled", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Surface reports (JSON) and the Bishop frame dump (CSV).
    Analyze(RunArgs),
    /// OBJ meshes with per-vertex curvature CSVs.
    Mesh(RunArgs),
    /// Curvature grids `s,v,K,H,class,singular` (CSV).
    Grid(RunArgs),
    /// Closed forms against the numeric pipeline; exits 1 if an asserted check fails.
    Verify(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Run configuration (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Output directory.
    #[arg(long, env = OUT_DIR_ENV)]
    out: Option<PathBuf>,
    /// Surface kinds, comma separated: tn1, tn2, n1n2.
    #[arg(long, value_delimiter = ',')]
    kinds: Option<Vec<String>>,
    /// Samples along s.
    #[arg(long)]
    ns: Option<usize>,
    /// Samples along v.
    #[arg(long)]
    nv: Option<usize>,
    /// Bishop angle offset.
    #[arg(long, allow_hyphen_values = true)]
    theta0: Option<f64>,
}

fn session(args: RunArgs) -> Result<Session, CliError> {
    let overrides = Overrides { out: args.out, kinds: args.kinds, ns: args.ns, nv: args.nv, theta0: args.theta0 };
    Session::new(RunConfig::load(&args.config, &overrides)?)
}

fn print(outcome: &Outcome) {
    for line in &outcome.summary {
        println!("{line}");
    }
    for path in &outcome.written {
        println!("wrote {}", path.display());
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze(args) => print(&commands::analyze(&session(args)?)?.0),
        Command::Mesh(args) => print(&commands::mesh(&session(args)?)?),
        Command::Grid(args) => print(&commands::grid(&session(args)?)?),
        Command::Verify(args) => {
            let (outcome, report) = commands::verify(&session(args)?)?;
            print(&outcome);
            let failed = report.failures().count();
            if failed > 0 {
                return Err(CliError::VerificationFailed(failed));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bishop-ruled: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
