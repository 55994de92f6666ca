use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use hitchin_core::invariants::GroupKind;

#[derive(Parser, Debug, Clone)]
#[command(name = "hitchin", version, about = "Exact spectral data of Higgs bundles")]
pub struct Cli {
    /// Report format; JSON is the stable contract.
    #[arg(long, value_enum, default_value_t = OutputFormat::Json, global = true)]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupArg {
    Gl,
    Sl,
    Sp,
    #[value(name = "so_odd")]
    SoOdd,
    #[value(name = "so_even")]
    SoEven,
}

impl From<GroupArg> for GroupKind {
    fn from(g: GroupArg) -> Self {
        match g {
            GroupArg::Gl => GroupKind::Gl,
            GroupArg::Sl => GroupKind::Sl,
            GroupArg::Sp => GroupKind::Sp,
            GroupArg::SoOdd => GroupKind::SoOdd,
            GroupArg::SoEven => GroupKind::SoEven,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Flip the sign of one term of the Pfaffian expansion.
    #[value(name = "pfaffian-sign")]
    PfaffianSign,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Hitchin base and moduli dimensions.
    Dims {
        #[arg(long, value_enum)]
        group: GroupArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        genus: i64,
    },
    /// Genus data of the spectral curve; with `--input {"p": ...}` also
    /// checks affine smoothness of a concrete curve.
    Curve {
        #[arg(long, value_enum)]
        group: GroupArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        genus: i64,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Involution identities and Cartan data of a real form, e.g. `SU(2,1)`.
    Realform {
        #[arg(long)]
        form: String,
    },
    /// Characteristic-polynomial pattern of a matrix or polynomial.
    Validate {
        #[arg(long)]
        input: PathBuf,
    },
    /// Higgs field of a rank-one (or rank-two) module on a spectral curve.
    Pushforward {
        #[arg(long)]
        input: PathBuf,
    },
    /// Rank-one module of a Higgs field with reduced spectrum.
    Eigenline {
        #[arg(long)]
        input: PathBuf,
    },
    /// Searches for the intertwiner `f` of a real form.
    CheckFixedpoint {
        #[arg(long)]
        input: PathBuf,
    },
    /// Norm of a divisor, or of a whole fibre.
    Norm {
        #[arg(long)]
        input: PathBuf,
    },
    /// Degree-level Prym conditions, or the parity rule for `U(p,p)` data.
    PrymCheck {
        #[arg(long)]
        input: PathBuf,
    },
    /// Runs every verification suite.
    VerifyAll {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, value_enum)]
        mutate: Option<Mutation>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Dims { .. } => "dims",
            Command::Curve { .. } => "curve",
            Command::Realform { .. } => "realform",
            Command::Validate { .. } => "validate",
            Command::Pushforward { .. } => "pushforward",
            Command::Eigenline { .. } => "eigenline",
            Command::CheckFixedpoint { .. } => "check-fixedpoint",
            Command::Norm { .. } => "norm",
            Command::PrymCheck { .. } => "prym-check",
            Command::VerifyAll { .. } => "verify-all",
        }
    }
}
