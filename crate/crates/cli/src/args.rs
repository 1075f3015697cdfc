use clap::{Args, Parser, Subcommand};

use crate::crosscheck;
use crate::output::Format;

#[derive(Parser)]
#[command(name = "nielsen", version, about = "Nielsen coincidence invariants: calculators and cross-checks")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Maps into the circle (or a Lie group with abelian fundamental group).
    Circle(CircleArgs),
    /// Maps between spheres, from Γ-vectors.
    Sphere(SphereArgs),
    /// Reidemeister sets: abelian cokernel or orbit enumeration on a finite table.
    Reidemeister(ReidemeisterArgs),
    /// Z or Z/2 coefficients for coincidence indices.
    Index(IndexArgs),
    /// Double points and h1/h2 of a framed planar curve.
    Immersion(ImmersionArgs),
    /// Grid count of coincidence components for linear maps T^m -> S^1.
    OracleTorus(OracleTorusArgs),
    /// Randomized formula-versus-oracle comparisons.
    Crosscheck(CrosscheckArgs),
    /// Shipped data: stable stems, injectivity verdicts, citation tags.
    Tables(TablesArgs),
}

#[derive(Args)]
pub struct CircleArgs {
    /// Row vector of f1* - f2* on the generators of H1(M), e.g. "[2,4]".
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<String>,
    /// f1* as a row vector (or a matrix with --lie-pi1).
    #[arg(long, allow_hyphen_values = true)]
    pub f1: Option<String>,
    /// f2* as a row vector (or a matrix with --lie-pi1).
    #[arg(long, allow_hyphen_values = true)]
    pub f2: Option<String>,
    /// Invariant factors of H1(M); defaults to Z^k.
    #[arg(long)]
    pub h1: Option<String>,
    /// Invariant factors of pi1 of a Lie group target other than the circle.
    #[arg(long)]
    pub lie_pi1: Option<String>,
}

#[derive(Args)]
pub struct SphereArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub n: u32,
    /// Γ-vector of f1: "zero" or a JSON array with one entry per k.
    #[arg(long, allow_hyphen_values = true)]
    pub d1: String,
    /// Γ-vector of f2.
    #[arg(long, allow_hyphen_values = true)]
    pub d2: String,
}

#[derive(Args)]
pub struct ReidemeisterArgs {
    /// pi1(N): invariant factors "[...]", or a multiplication table (inline JSON or file).
    #[arg(long)]
    pub pi1n: String,
    /// pi1(M) invariant factors (abelian mode).
    #[arg(long)]
    pub pi1m: Option<String>,
    /// f1* as a matrix of rows (abelian mode).
    #[arg(long, allow_hyphen_values = true)]
    pub f1: Option<String>,
    /// f2* as a matrix of rows (abelian mode).
    #[arg(long, allow_hyphen_values = true)]
    pub f2: Option<String>,
    /// Generator pairs {"pairs":[[i,j],...]} (table mode; inline JSON or file).
    #[arg(long)]
    pub pairing: Option<String>,
    /// Dimension of the target manifold, if known.
    #[arg(long)]
    pub target_dim: Option<u32>,
}

#[derive(Args)]
pub struct IndexArgs {
    /// pi1(M): invariant factors "[...]" (abelian mode) or a table (class mode).
    #[arg(long)]
    pub pi1m: String,
    /// pi1(N): invariant factors or a table, matching --pi1m.
    #[arg(long)]
    pub pi1n: String,
    /// w1(M): row vector (abelian) or 0/1 per generator (class mode).
    #[arg(long)]
    pub w1m: String,
    /// f1*(w1(N)) pulled back to pi1(M), in the same form as --w1m.
    #[arg(long)]
    pub w1n: String,
    /// f1*: matrix of rows (abelian) or generator images (class mode).
    #[arg(long)]
    pub f1: String,
    /// f2*: as --f1.
    #[arg(long)]
    pub f2: String,
    /// Generators of pi1(M) the class-mode images refer to; defaults to the table's own.
    #[arg(long)]
    pub generators: Option<String>,
    /// Element of pi1(N) selecting one Reidemeister class.
    #[arg(long)]
    pub theta: Option<usize>,
}

#[derive(Args)]
pub struct ImmersionArgs {
    /// Curve file (or inline JSON).
    #[arg(long)]
    pub curve: String,
}

#[derive(Args)]
pub struct OracleTorusArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
    /// Grid points per axis (power of two).
    #[arg(long, default_value_t = 512)]
    pub res: u32,
}

#[derive(Args)]
pub struct CrosscheckArgs {
    #[arg(value_enum)]
    pub kind: crosscheck::Kind,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Grid resolution for the torus check.
    #[arg(long, default_value_t = 512)]
    pub res: u32,
}

#[derive(Args)]
pub struct TablesArgs {
    /// Largest target dimension in the injectivity listing.
    #[arg(long, default_value_t = 8)]
    pub max_n: u32,
    /// Largest source dimension in the injectivity listing.
    #[arg(long, default_value_t = 24)]
    pub max_m: u32,
}
