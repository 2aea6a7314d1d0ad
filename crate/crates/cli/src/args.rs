//! Command-line surface. Poset specs and partitions stay strings here and
//! are parsed in [`crate::run`], so parse failures can be reported inside
//! the JSON envelope.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Clone, Parser, Serialize)]
#[command(name = "chromlat", version, about = "Schur expansions of chromatic symmetric functions of posets")]
pub struct Cli {
    /// Emit a JSON envelope instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Worker thread cap.
    #[arg(long, global = true, env = "CHROMLAT_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Build a poset and report its basic invariants.
    Poset(PosetArgs),
    /// List the special rim hook tabloids of a shape.
    Tabloid(TabloidArgs),
    /// Count semi-ordered chain partitions of a given type.
    Scp(ScpArgs),
    /// Full Schur expansion of X_inc(P).
    Schur(SchurArgs),
    /// A single Schur coefficient of X_inc(P).
    SchurCoeff(SchurCoeffArgs),
    /// Decide the nice property.
    Nice(NiceArgs),
    /// Search for a chain partition of a given type.
    ChainPartition(ChainPartitionArgs),
    /// Closed value of the negative coefficient for (n+k) x n.
    Theorem41(Theorem41Args),
    /// Sign and niceness sweeps over families.
    Sweep(SweepArgs),
    /// Run the acceptance criteria and print a pass/fail table.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PosetArgs {
    #[arg(long)]
    pub poset: String,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TabloidArgs {
    #[arg(long)]
    pub shape: String,
    /// Keep only tabloids of this content.
    #[arg(long)]
    pub content: Option<String>,
    /// Largest shape size accepted without a content filter.
    #[arg(long, default_value_t = 24)]
    pub max_size: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodArg {
    Auto,
    Brute,
    Closed,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ScpArgs {
    #[arg(long)]
    pub poset: String,
    #[arg(long = "type")]
    pub ty: String,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
    /// Abort the search after this many nodes.
    #[arg(long)]
    pub node_budget: Option<u64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SchurArgs {
    #[arg(long)]
    pub poset: String,
    /// Element-count cap for the full expansion.
    #[arg(long, default_value_t = chromlat_core::schur::DEFAULT_EXPANSION_LIMIT)]
    pub limit: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SchurCoeffArgs {
    #[arg(long)]
    pub poset: String,
    #[arg(long)]
    pub shape: String,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct NiceArgs {
    #[arg(long)]
    pub poset: String,
    /// Include the failing pair with its certificate.
    #[arg(long)]
    pub witness: bool,
    /// List every achievable chain-partition type.
    #[arg(long)]
    pub all_types: bool,
    #[arg(long, default_value_t = 20)]
    pub max_elements: usize,
    /// Per-type node budget.
    #[arg(long)]
    pub node_budget: Option<u64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ChainPartitionArgs {
    #[arg(long)]
    pub poset: String,
    #[arg(long = "type")]
    pub ty: String,
    #[arg(long)]
    pub node_budget: Option<u64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Theorem41Args {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    /// Also evaluate the coefficient through the closed tabloid path.
    #[arg(long)]
    pub check: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    TwoChainNegativity,
    B3Niceness,
    ProductNiceness,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// two-chain-negativity: the shape is (m+1, m-d, 2, ..., 2[, 1]).
    #[arg(long, default_value_t = 8)]
    pub d: usize,
    /// Lower end of the parameter range (m or n).
    #[arg(long)]
    pub from: Option<usize>,
    /// Upper end of the parameter range (m or n).
    #[arg(long)]
    pub to: Option<usize>,
    /// product-niceness: largest product of chain lengths.
    #[arg(long, default_value_t = 12)]
    pub bound: usize,
    /// product-niceness: largest number of factors.
    #[arg(long, default_value_t = 3)]
    pub max_factors: usize,
    /// Element cap per niceness check.
    #[arg(long, default_value_t = 20)]
    pub max_elements: usize,
    /// Per-type node budget for niceness checks.
    #[arg(long)]
    pub node_budget: Option<u64>,
    /// Largest number of instances in one sweep.
    #[arg(long, default_value_t = 2000)]
    pub max_instances: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    /// Also run the non-gating extended checks.
    #[arg(long)]
    pub extended: bool,
}
