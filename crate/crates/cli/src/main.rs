use std::path::PathBuf;
use std::process::ExitCode;

use birkhoff_cli::commands::{self, CliError, Input};
use birkhoff_cli::format::parse_point;
use birkhoff_cli::OutputFormat;
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "birkhoff", version, about = "Exact Birkhoff factorization, Fuchsian systems and monodromy checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the result document to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(Subcommand)]
enum Command {
    /// Splitting type of a bundle from its section counts.
    Split { file: PathBuf },
    /// Explicit factorization B*A*C = diag(x^d).
    Factor { file: PathBuf },
    /// Check a factorization produced by `factor` against its matrix.
    Verify { file: PathBuf, factorization: PathBuf },
    /// Global sections of E(k).
    H0 { file: PathBuf, #[arg(short = 'k', allow_hyphen_values = true, default_value_t = 0)] k: i64 },
    /// First cohomology of E(k).
    H1 { file: PathBuf, #[arg(short = 'k', allow_hyphen_values = true, default_value_t = 0)] k: i64 },
    /// Riemann-Roch check at twist k.
    Rr { file: PathBuf, #[arg(short = 'k', allow_hyphen_values = true, default_value_t = 0)] k: i64 },
    /// Isomorphism test for two bundles.
    Iso { first: PathBuf, second: PathBuf },
    /// Fuchs relation and exponents of a Fuchsian system.
    FuchsSystem { file: PathBuf },
    /// Fuchs relation of a scalar equation.
    FuchsOde { file: PathBuf },
    /// Indicial polynomial of a scalar equation at a point.
    Indicial { file: PathBuf, #[arg(long, default_value = "0", allow_hyphen_values = true)] at: String },
    /// Frobenius series of a system at a point, truncated after N terms.
    Frobenius {
        file: PathBuf,
        #[arg(short = 'N', default_value_t = birkhoff::fuchsian::DEFAULT_TRUNCATION)]
        n: usize,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        at: String,
    },
    /// Gauge transform P^-1 A P - P^-1 P'.
    Gauge { system: PathBuf, transform: PathBuf },
    /// Bolibrukh non-realizability criterion for a monodromy representation.
    Bolibrukh { file: PathBuf },
    /// Classify a point as ordinary, first kind or second kind.
    Classify { file: PathBuf, #[arg(long, default_value = "0", allow_hyphen_values = true)] at: String },
}

fn point(text: &str) -> Result<birkhoff::QPoint, CliError> {
    parse_point(text).map_err(|e| CliError::Usage(format!("--at {text}: {e}")))
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let load = |p: &PathBuf| Input::load(p);
    let doc = match &cli.command {
        Command::Split { file } => commands::split(&load(file)?),
        Command::Factor { file } => commands::factor(&load(file)?),
        Command::Verify { file, factorization } => commands::verify(&load(file)?, factorization),
        Command::H0 { file, k } => commands::h0(&load(file)?, *k),
        Command::H1 { file, k } => commands::h1(&load(file)?, *k),
        Command::Rr { file, k } => commands::rr(&load(file)?, *k),
        Command::Iso { first, second } => commands::iso(&load(first)?, &load(second)?),
        Command::FuchsSystem { file } => commands::fuchs_system(&load(file)?),
        Command::FuchsOde { file } => commands::fuchs_ode(&load(file)?),
        Command::Indicial { file, at } => commands::indicial(&load(file)?, &point(at)?),
        Command::Frobenius { file, n, at } => commands::frobenius(&load(file)?, *n, &point(at)?),
        Command::Gauge { system, transform } => commands::gauge(&load(system)?, &load(transform)?),
        Command::Bolibrukh { file } => commands::bolibrukh(&load(file)?),
        Command::Classify { file, at } => commands::classify(&load(file)?, &point(at)?),
    }?;
    Ok(doc.render(cli.format))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(1);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    let outcome = run(&cli).and_then(|text| match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
