use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;

use output::Format;

#[derive(Parser)]
#[command(
    name = "hyperpf",
    version,
    about = "Exact hyperpfaffian, permanent and invariant computations"
)]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, global = true, default_value_t = FormatArg::Text)]
    format: FormatArg,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Records,
}

#[derive(Args)]
pub struct MatrixInput {
    /// File with one matrix row per line.
    #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix")]
    pub input: Option<PathBuf>,
    /// Inline matrix, rows separated by `;`, e.g. "0 1; -1 0".
    #[arg(long)]
    pub matrix: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Hyperpfaffian of an hpft tensor by backtracking over covers.
    Eval {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Hyperpfaffian by full expansion of the tensor power.
    Expand {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        /// Largest number of expanded terms to allow.
        #[arg(long, default_value_t = hyperpf::invariants::DEFAULT_EXPANSION_BUDGET)]
        budget: u64,
    },
    /// Permanent by Ryser's formula.
    Permanent {
        #[command(flatten)]
        matrix: MatrixInput,
        /// Use the n!-term sum instead.
        #[arg(long)]
        naive: bool,
    },
    /// Determinant by fraction-free elimination.
    Determinant {
        #[command(flatten)]
        matrix: MatrixInput,
    },
    /// Pfaffian of an antisymmetric matrix.
    Pfaffian {
        #[command(flatten)]
        matrix: MatrixInput,
    },
    /// Compare the hyperpfaffian of the projection tensor with d!·per_d or d!·det_d.
    VerifyProjection {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        /// Allow d >= 5.
        #[arg(long)]
        force: bool,
        /// Also print both polynomials.
        #[arg(long)]
        show: bool,
    },
    /// Invariant dimensions: hook-length prediction against exact kernel rank.
    InvariantDim {
        #[arg(long)]
        n: usize,
        /// One or more tensor orders, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<usize>,
        /// Restrict to tensors symmetric under permuting blocks of this size.
        #[arg(long)]
        b: Option<usize>,
        /// Largest basis size to brute-force.
        #[arg(long, default_value_t = hyperpf::repcheck::DEFAULT_BASIS_BUDGET)]
        budget: u64,
    },
    /// No invariants below degree n/2k and a unique one at degree n/2k.
    VerifyUniqueness {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = hyperpf::repcheck::DEFAULT_BASIS_BUDGET)]
        budget: u64,
    },
    /// Hyperpfaffian(g·p) = hyperpfaffian(p) for random special linear g.
    CheckInvariance {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Transvections multiplied together per group element.
        #[arg(long, default_value_t = 6)]
        factors: usize,
        /// Stored entries per random tensor.
        #[arg(long, default_value_t = 10)]
        entries: usize,
        /// Add a non-invariant linear term; failures are expected.
        #[arg(long)]
        perturb: bool,
    },
    /// Arithmetic circuits in hpfc format.
    #[command(subcommand)]
    Circuit(CircuitCommand),
    /// Time hyperpfaffian evaluation on random tensors.
    Bench {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Fraction of the n^(2k) possible entries that are stored.
        #[arg(long, default_value_t = 0.01)]
        density: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        trials: usize,
    },
}

#[derive(Subcommand)]
pub enum CircuitCommand {
    /// Check a circuit and print it in canonical form.
    Parse {
        #[arg(long)]
        input: PathBuf,
    },
    /// Evaluate at a point given as name=value pairs.
    Eval {
        #[arg(long)]
        input: PathBuf,
        /// name=value, repeatable.
        #[arg(long = "at")]
        at: Vec<String>,
    },
    /// Expand to a canonical polynomial.
    Expand {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
    },
    /// Substitute affine forms for the inputs.
    Project {
        #[arg(long)]
        input: PathBuf,
        /// name=affine form, e.g. "x_{1,2}=y+1". Repeatable.
        #[arg(long = "sub")]
        sub: Vec<String>,
        /// Also print the projected polynomial.
        #[arg(long)]
        expand: bool,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
    },
    /// Emit the n!-term permanent circuit.
    Permanent {
        #[arg(long)]
        n: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Records => Format::Records,
    };
    let result = match cli.command {
        Command::Eval { input, k } => commands::eval(&input, k),
        Command::Expand { input, k, budget } => commands::expand(&input, k, budget),
        Command::Permanent { matrix, naive } => commands::permanent(&matrix, naive),
        Command::Determinant { matrix } => commands::determinant(&matrix),
        Command::Pfaffian { matrix } => commands::pfaffian(&matrix),
        Command::VerifyProjection { k, d, force, show } => commands::verify_projection(k, d, force, show),
        Command::InvariantDim { n, m, b, budget } => commands::invariant_dim(n, &m, b, budget),
        Command::VerifyUniqueness { k, n, budget } => commands::verify_uniqueness(k, n, budget),
        Command::CheckInvariance {
            k,
            n,
            trials,
            seed,
            factors,
            entries,
            perturb,
        } => commands::check_invariance(k, n, trials, seed, factors, entries, perturb),
        Command::Circuit(c) => commands::circuit(c),
        Command::Bench {
            k,
            n,
            density,
            seed,
            trials,
        } => commands::bench(k, n, density, seed, trials),
    };
    match result {
        Ok(report) => {
            print!("{}", report.render(format));
            if report.success {
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
