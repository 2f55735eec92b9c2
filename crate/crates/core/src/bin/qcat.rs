use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qcat::fca_io::commands::{self, Format, Options, Output};
use qcat::Kind;

/// Quantale-enriched formal concept analysis.
#[derive(Parser)]
#[command(name = "qcat", version)]
struct Cli {
    /// Quantale for CSV contexts or category files, e.g. `lukasiewicz(5)`.
    #[arg(long, global = true)]
    quantale: Option<String>,
    /// isbell, kan_star or kan_dag.
    #[arg(long, global = true)]
    mode: Option<Kind>,
    /// Maximum number of objects of an enumerated functor category.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Output file (directory for `export`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a quantale, category, functor, table, context or lattice file.
    Check { file: PathBuf },
    /// Compute the concept lattice of a context file or bundled fixture.
    Concepts { source: String },
    /// Machine-readable validation report; with --representation, takes
    /// PHI C ALPHA BETA and prints a representation certificate.
    Verify {
        #[arg(long)]
        representation: bool,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// List bundled fixtures, or print one as a context file.
    Fixtures { name: Option<String> },
    /// Write a context, its lattice and canonical representation maps to --out.
    Export { source: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        quantale: cli.quantale,
        mode: cli.mode,
        budget: cli.budget,
        out: cli.out,
        format: cli.format,
    };
    let out = match cli.command {
        Command::Check { file } => commands::check(&file, &opts),
        Command::Concepts { source } => commands::concepts(&source, &opts),
        Command::Verify { representation, files } => {
            if representation {
                match files.as_slice() {
                    [phi, c, alpha, beta] => commands::verify_representation(phi, c, alpha, beta, &opts),
                    _ => Output {
                        code: 3,
                        stdout: String::new(),
                        stderr: "error: --representation expects PHI C ALPHA BETA\n".into(),
                    },
                }
            } else {
                commands::verify(&files, &opts)
            }
        }
        Command::Fixtures { name } => commands::fixtures(name.as_deref(), &opts),
        Command::Export { source } => commands::export(&source, &opts),
    };
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
