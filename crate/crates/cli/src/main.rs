//! `dtensor`: coefficient queries, double tensors, commutator tables,
//! oracle verification and Lie algebra classification from the shell.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dtensor::config::OutputFormat;
use dtensor::{BracketForm, DoubleTensorLabel, RunConfig, TensorConvention};

/// Exit code for a computed mismatch, as opposed to a usage or I/O error.
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_ERROR: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "dtensor",
    version,
    about = "Exact double-tensor algebra for two equivalent d electrons"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Convention file (defaults to the shipped frozen choice).
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Override the annihilation-operator convention.
    #[arg(long, global = true, value_enum)]
    convention: Option<ConventionArg>,
    /// Override the parity bracket of the closed form.
    #[arg(long, global = true, value_enum)]
    bracket: Option<BracketArg>,
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConventionArg {
    Plain,
    TimeReversed,
    TimeReversedAlt,
}

impl From<ConventionArg> for TensorConvention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Plain => TensorConvention::Plain,
            ConventionArg::TimeReversed => TensorConvention::TimeReversed,
            ConventionArg::TimeReversedAlt => TensorConvention::TimeReversedAlt,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BracketArg {
    Corrected,
    Printed,
}

impl From<BracketArg> for BracketForm {
    fn from(b: BracketArg) -> Self {
        match b {
            BracketArg::Corrected => BracketForm::Corrected,
            BracketArg::Printed => BracketForm::Printed,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Clebsch-Gordan, 6-j and Racah W coefficients.
    Wigner {
        #[command(subcommand)]
        which: WignerCmd,
    },
    /// Build or list double-tensor components.
    Tensor {
        #[command(subcommand)]
        which: TensorCmd,
    },
    /// Closed-form commutators.
    Commute {
        #[command(subcommand)]
        which: CommuteCmd,
    },
    /// Compare the closed form with the Fock-space oracle; exits 1 on any mismatch.
    Verify(VerifyArgs),
    /// Identify the Lie algebra spanned by a basis.
    Classify(BasisArgs),
    /// Root diagram of a basis.
    Roots {
        #[arg(long, value_enum, default_value = "text")]
        emit: EmitArg,
        #[command(flatten)]
        basis: BasisArgs,
    },
    /// Reference J/F relations; exits 1 if any fails.
    Relations {
        /// How F±2 and F±3 are built.
        #[arg(long, value_enum, default_value = "eigen")]
        f_basis: FBasisArg,
    },
}

#[derive(Subcommand, Debug)]
enum WignerCmd {
    /// `<j1 m1 j2 m2 | J M>`.
    Cg {
        #[arg(num_args = 6, allow_hyphen_values = true, value_names = ["J1", "M1", "J2", "M2", "J", "M"])]
        args: Vec<String>,
    },
    /// `{a b c; d e f}`.
    Sixj {
        #[arg(num_args = 6, allow_hyphen_values = true, value_names = ["A", "B", "C", "D", "E", "F"])]
        args: Vec<String>,
    },
    /// `W(abcd; ef)`.
    W {
        #[arg(num_args = 6, allow_hyphen_values = true, value_names = ["A", "B", "C", "D", "E", "F"])]
        args: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
enum TensorCmd {
    /// Print one component as a sparse Fock-space operator.
    Build {
        #[arg(long, allow_hyphen_values = true)]
        sigma: i32,
        #[arg(long, allow_hyphen_values = true)]
        k: i32,
        #[arg(long, allow_hyphen_values = true)]
        pi: i32,
        #[arg(long, allow_hyphen_values = true)]
        q: i32,
        /// Use the plain annihilation operator.
        #[arg(long)]
        no_tilde: bool,
    },
    /// Print every component label.
    List,
}

#[derive(Subcommand, Debug)]
enum CommuteCmd {
    /// Commutator of two components.
    Pair {
        #[arg(long, allow_hyphen_values = true)]
        a: DoubleTensorLabel,
        #[arg(long, allow_hyphen_values = true)]
        b: DoubleTensorLabel,
        /// Also compute the Fock-space commutator and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Commutators of every ordered pair from a label set.
    Table {
        /// The ten sigma = 0, odd-k components.
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        sigma0_odd_k: bool,
        /// All components.
        #[arg(long)]
        all: bool,
        #[arg(long)]
        oracle: bool,
    },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Every ordered pair of components.
    #[arg(long, conflicts_with = "pair", required_unless_present = "pair")]
    all: bool,
    /// One ordered pair.
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true)]
    pair: Option<Vec<DoubleTensorLabel>>,
    #[arg(long, value_enum, default_value = "standard")]
    ordering: OrderingArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OrderingArg {
    Standard,
    Reversed,
}

#[derive(Args, Debug)]
pub struct BasisArgs {
    /// sigma0-odd-k, j-triple, toral-pair, jf-printed or jf-eigen.
    #[arg(long, conflicts_with = "basis")]
    preset: Option<String>,
    /// One element per line, `NAME = poly` or `poly`.
    #[arg(long, value_name = "FILE")]
    basis: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum EmitArg {
    Text,
    Svg,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FBasisArg {
    Printed,
    Eigen,
}

fn run_config(g: &GlobalArgs) -> anyhow::Result<RunConfig> {
    let mut cfg = match &g.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| anyhow::anyhow!("reading {}: {e}", path.display()))?;
            RunConfig::from_toml(&text)?
        }
        None => RunConfig::frozen(),
    };
    if let Some(c) = g.convention {
        cfg.convention = c.into();
    }
    if let Some(b) = g.bracket {
        cfg.bracket = b.into();
    }
    if let Some(f) = g.format {
        cfg.format = match f {
            FormatArg::Text => OutputFormat::Text,
            FormatArg::Json => OutputFormat::Json,
        };
    }
    cfg.output = g.output.clone();
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run_config(&cli.global).and_then(|cfg| commands::dispatch(&cfg, cli.command));
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
