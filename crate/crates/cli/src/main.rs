mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

/// Association schemes, actions and semidirect products.
///
/// Exit status: 0 on success, 1 on a negative verdict (`verify`, `iso`),
/// 2 on bad input.
#[derive(Parser)]
#[command(name = "semidirect", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the scheme axioms and report basic invariants.
    Verify { scheme: PathBuf },
    /// Print the valencies and every nonzero structure constant.
    Constants { scheme: PathBuf },
    /// List the closed subsets and whether each is normal.
    Closed { scheme: PathBuf },
    /// Quotient by a closed subset.
    Quotient {
        scheme: PathBuf,
        /// Comma-separated relations; 0 is added if missing.
        #[arg(long, value_delimiter = ',', required = true)]
        subset: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Subscheme on the coset of a point.
    Subscheme {
        scheme: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        subset: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        point: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Thin scheme of a group given by its Cayley table.
    Thin {
        table: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Direct product of two schemes.
    Direct {
        u: PathBuf,
        t: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the relation label table here.
        #[arg(long)]
        labels: Option<PathBuf>,
    },
    /// Wreath product: `t` inside blocks, `u` between them.
    Wreath {
        u: PathBuf,
        t: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        labels: Option<PathBuf>,
    },
    /// Semidirect product of the action in an `.act` file.
    Semidirect {
        u: PathBuf,
        action: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        labels: Option<PathBuf>,
    },
    /// Recover an action from a scheme with a closed subset and a splitting.
    Recover {
        scheme: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        subset: Vec<usize>,
        /// Point of the scheme for each point of U.
        #[arg(long, value_delimiter = ',', required = true)]
        split: Vec<usize>,
        #[arg(long)]
        u: PathBuf,
        /// Scheme to act on; defaults to the basepoint-coset subscheme.
        #[arg(long)]
        t: Option<PathBuf>,
        /// Write the `.act` file here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for an isomorphism.
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        based: bool,
    },
    /// Build and check the order-12 example.
    Example6 {
        /// Write the example's schemes and action here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match commands::run(cli.command, &mut stdout) {
        Ok(commands::Verdict::Yes) => ExitCode::SUCCESS,
        Ok(commands::Verdict::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
