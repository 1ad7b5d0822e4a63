mod algebra;
mod descend;
mod geometry;
mod report;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use report::{CliError, Report};

#[derive(Parser, Debug)]
#[command(name = "qcob", version, about = "Exact computations with Frobenius-algebra TFTs, Fock-space Virasoro actions and Schur Q-functions")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Novikov-ring arithmetic.
    #[command(subcommand)]
    Nov(NovCommand),
    /// Operators on the twisted-boson Fock space.
    #[command(subcommand)]
    Fock(FockCommand),
    /// Frobenius data: validation, quantum powers, associativity.
    #[command(subcommand)]
    Frob(FrobCommand),
    /// Stable graphs and TFT evaluation.
    #[command(subcommand)]
    Tft(TftCommand),
    /// Descendant variables of a target profile.
    #[command(subcommand)]
    Descend(DescendCommand),
    /// Schur Q-functions and their coproduct.
    #[command(subcommand)]
    Schurq(SchurqCommand),
    /// Run named verification suites and emit a certificate.
    Verify(verify::VerifyArgs),
}

/// Element arguments take inline JSON, or `@path` to read a file.
#[derive(Subcommand, Debug)]
pub enum NovCommand {
    /// Product of two elements.
    Mul {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Sum of two elements.
    Add {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// The divided power v^k / k!.
    DividedPower {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 0)]
        rank: usize,
    },
    /// Degree of a homogeneous element for the given first Chern class.
    Degree {
        #[arg(long)]
        elem: String,
        /// Comma-separated pairing covector.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        c1: Vec<i64>,
    },
}

#[derive(Subcommand, Debug)]
pub enum FockCommand {
    /// Apply `L:k`, `v:k` or `a:n` to a polynomial.
    Act {
        #[arg(long, allow_hyphen_values = true)]
        op: String,
        #[arg(long)]
        poly: String,
        /// Truncation bound.
        #[arg(long = "N", default_value_t = 64)]
        bound: usize,
    },
    /// Commutator `[A, B]` applied to a polynomial.
    Bracket {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        poly: String,
        #[arg(long = "N", default_value_t = 64)]
        bound: usize,
    },
    /// The scalar defect of `[L_m, L_-m] - 2m L_0`.
    Central {
        #[arg(long)]
        m: u64,
        #[arg(long = "N", default_value_t = 12)]
        bound: usize,
    },
    /// Rewrite a polynomial in `T` or `t` coordinates.
    Basis {
        #[arg(long)]
        poly: String,
        #[arg(long, value_parser = ["T", "t"])]
        to: String,
        #[arg(long = "N", default_value_t = 64)]
        bound: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum FrobCommand {
    /// Check every axiom and report the first witness of failure.
    Validate { file: PathBuf },
    /// The quantum power `x^{*k}`.
    Star {
        /// Frobenius data file; the quantum point theory when omitted.
        #[arg(long)]
        frob: Option<PathBuf>,
        /// Element as a JSON array of coefficients.
        #[arg(long)]
        x: String,
        #[arg(long)]
        k: u32,
    },
    /// Compare the three partition contractions of the four-point associator.
    Assoc {
        file: PathBuf,
        /// Four elements as JSON arrays; all basis 4-tuples when omitted.
        #[arg(long, num_args = 4)]
        inputs: Option<Vec<String>>,
    },
    /// Inverse of the Gram matrix.
    Copairing { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum TftCommand {
    /// Evaluate a stable graph.
    Eval {
        #[arg(long)]
        graph: PathBuf,
        /// Frobenius data file; the quantum point theory when omitted.
        #[arg(long)]
        frob: Option<PathBuf>,
    },
    /// Evaluate random graphs under many random pants decompositions.
    Check {
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 100)]
        graphs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Frobenius data file; random rank <= 3 data per graph when omitted.
        #[arg(long)]
        frob: Option<PathBuf>,
    },
    /// Dimension 3g - 3 + n of the moduli space.
    Dim {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: u32,
    },
    /// Type of two surfaces glued along `s` boundary pairs.
    Glue {
        #[arg(long, value_delimiter = ',')]
        first: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        second: Vec<u32>,
        #[arg(long)]
        s: u32,
    },
    /// All stable graphs of a given type, up to isomorphism.
    Catalog {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: u32,
        /// Identify graphs that differ only by a permutation of legs.
        #[arg(long)]
        unlabelled: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum DescendCommand {
    /// Descendant variables of degree at most the bound.
    Vars {
        #[arg(long)]
        profile: PathBuf,
        #[arg(long)]
        bound: u32,
    },
    /// Restrict a polynomial in `t_{k,i}` to the small phase space.
    Specialize { expr: String },
    /// Graded dimensions of the large-phase-space Hopf algebra.
    Dims {
        #[arg(long)]
        profile: PathBuf,
        #[arg(long)]
        bound: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum SchurqCommand {
    /// Q_r as a polynomial in `vars` variables.
    Expand {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        vars: usize,
    },
    /// Coproduct of Q_r.
    Coproduct {
        #[arg(long)]
        r: u32,
    },
}

fn run(command: Command) -> Result<Report, CliError> {
    match command {
        Command::Nov(c) => algebra::nov(c),
        Command::Fock(c) => algebra::fock(c),
        Command::Frob(c) => geometry::frob(c),
        Command::Tft(c) => geometry::tft(c),
        Command::Descend(c) => descend::descend(c),
        Command::Schurq(c) => descend::schurq(c),
        Command::Verify(args) => verify::run(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            report.emit(cli.format);
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
