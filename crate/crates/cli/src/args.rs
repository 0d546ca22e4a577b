use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use confblocks::exact::parse_rational;
use confblocks::{Partition, Rational};

pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Parser)]
#[command(name = "confblocks", version, about = "Exact conformal-block computations for gl_m")]
pub struct Cli {
    /// Emit the report as JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Seed for every random choice of z.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The polynomials P_z(λ).
    #[command(subcommand)]
    Pz(PzCommand),
    /// Conformal-block membership, dimensions and bases.
    #[command(subcommand)]
    Cb(CbCommand),
    /// KZ equations for rectangular partitions.
    #[command(subcommand)]
    Kz(KzCommand),
    /// Rational-function identities.
    #[command(subcommand)]
    Identity(IdentityCommand),
    /// Degenerations of z.
    #[command(subcommand)]
    Asym(AsymCommand),
    /// Run the acceptance suite.
    Accept(AcceptArgs),
}

/// Comma-separated rationals such as `1,-2,3/4`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZValues(pub Vec<Rational>);

pub fn parse_z_list(s: &str) -> Result<ZValues, String> {
    s.split(',')
        .map(|t| parse_rational(t).ok_or_else(|| format!("'{t}' is not a rational number")))
        .collect::<Result<_, _>>()
        .map(ZValues)
}

#[derive(Debug, Clone, Args)]
pub struct ZArg {
    /// Values z_1, z_2, … as `p` or `p/q`; random from the seed when absent.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_z_list)]
    pub z: Option<ZValues>,
}

#[derive(Debug, Subcommand)]
pub enum PzCommand {
    /// Build P_z(λ) and print it in canonical form.
    Build {
        #[arg(long)]
        lambda: Partition,
        #[command(flatten)]
        z: ZArg,
        /// Keep z symbolic.
        #[arg(long, conflicts_with = "z")]
        symbolic: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DimMethod {
    Recursion,
    Rank,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisKind {
    Qu,
    Qw,
    Decorated,
}

#[derive(Debug, Subcommand)]
pub enum CbCommand {
    /// Test membership in CB^level_z(λ).
    Verify {
        #[arg(long)]
        lambda: Partition,
        /// Defaults to max(d(λ), 1).
        #[arg(long)]
        level: Option<usize>,
        #[command(flatten)]
        z: ZArg,
        /// Polynomial in canonical text form; P_z(λ) when absent.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Dimension of CB^level_z(λ).
    Dim {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        level: usize,
        #[arg(long, value_enum, default_value_t = DimMethod::Rank)]
        method: DimMethod,
        #[command(flatten)]
        z: ZArg,
    },
    /// Explicit generators of CB^level_z(λ).
    Basis {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        level: usize,
        #[arg(long, value_enum)]
        kind: BasisKind,
        #[command(flatten)]
        z: ZArg,
        /// Schur indices for the decorations, separated by `;`.
        #[arg(long, default_value = "0")]
        schur: String,
    },
    /// Dimensions of the two-part blocks, one row per size.
    Ltable {
        #[arg(long)]
        level: usize,
        #[arg(long)]
        max_size: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Casimir {
    Gl,
    Sl,
}

#[derive(Debug, Subcommand)]
pub enum KzCommand {
    /// Solve for the exponents a_ij and verify the equations.
    Check {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Casimir::Gl)]
        casimir: Casimir,
        #[command(flatten)]
        z: ZArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum IdentityCommand {
    /// Random two-block sums below the degree bound.
    Lagrange {
        #[arg(long, default_value_t = 100)]
        fuzz: usize,
    },
    /// Random flag sums below the degree threshold.
    Flag {
        #[arg(long, default_value_t = 100)]
        fuzz: usize,
        /// Restrict to one partition.
        #[arg(long)]
        lambda: Option<Partition>,
    },
    /// Divided-difference form against the localization sum.
    Concise {
        /// All partitions up to size 5 when absent.
        #[arg(long)]
        lambda: Option<Partition>,
    },
    /// The transposition-difference identity for (N, …, N).
    Remark52 {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AsymMode {
    Clustered,
    Nested,
    /// Determinant form of P_z(N, N).
    Remark42,
}

#[derive(Debug, Subcommand)]
pub enum AsymCommand {
    /// Compare a limit of P_z(λ) with its closed form.
    Check {
        #[arg(long)]
        lambda: Partition,
        #[arg(long, value_enum)]
        mode: AsymMode,
    },
}

#[derive(Debug, Args)]
pub struct AcceptArgs {
    /// Criterion numbers or group names, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<String>,
}
