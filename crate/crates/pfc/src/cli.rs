use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pfc_core::diagram::DiagramFamily;
use pfc_core::forms::Transform;
use pfc_core::geometry::OrderKind;

#[derive(Parser, Debug)]
#[command(name = "pfc", version, about = "Exact computations on set partitions and partition algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Args, Debug)]
pub struct GlobalArgs {
    /// Config file with `key = value` lines (max-ground, jobs, seed, t-order, n).
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Worker threads for verification suites; defaults to the number of cores.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub format: Option<Format>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the diagrams of P_k, optionally restricted to a family or up to conjugation.
    Enumerate(EnumerateArgs),
    /// Evaluate one operation on explicit operands.
    Query(QueryArgs),
    /// Write order matrices, Hasse diagrams or limit forms.
    Export(ExportArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value = "P", ignore_case = true)]
    pub family: Family,
    /// Print one representative per conjugacy class.
    #[arg(long)]
    pub orbits: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum QueryOp {
    Distance,
    Defect,
    Order,
    Mobius,
    Kreweras,
    Eta,
    Compose,
    Trace,
    Moment,
    Cumulant,
}

#[derive(Args, Debug)]
pub struct QueryArgs {
    pub op: QueryOp,
    /// Number of columns; inferred from the operands when omitted.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    /// Base point for defects, orders and Möbius values; defaults to id_k.
    #[arg(long)]
    pub base: Option<String>,
    #[arg(long, default_value = "G", ignore_case = true)]
    pub which: Which,
    /// JSON file holding an algebra element; replaces --p for moment and cumulant.
    #[arg(long, value_name = "PATH")]
    pub element: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportWhat {
    Matrix,
    Hasse,
    /// The N → ∞ moment and cumulant forms of a normalized diagram or a JSON element,
    /// or a transform of a JSON form given with `--form`.
    Form,
    /// A JSON element (or a normalized `--p`), lifted to the order `--n` fluctuation algebra when `--n` is given.
    Element,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    pub what: ExportWhat,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub base: Option<String>,
    #[arg(long, default_value = "G", ignore_case = true)]
    pub which: Which,
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<String>,
    #[arg(long, value_name = "PATH")]
    pub element: Option<PathBuf>,
    #[arg(long, default_value = "moment")]
    pub limit: LimitChoice,
    /// A JSON linear form to transform instead of computing limits.
    #[arg(long, value_name = "PATH")]
    pub form: Option<PathBuf>,
    #[arg(long, requires = "form")]
    pub transform: Option<TransformChoice>,
    /// Fluctuation order for `export element`.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Metric,
    Gcs,
    Mobius,
    Hasse,
    Trace,
    Exclusive,
    Noncrossing,
    Ident,
    Eta,
    #[value(name = "caractK", alias = "caractk")]
    CaractK,
    Dautresvaleurs,
    LimitAssoc,
    Mandelstam,
    Transforms,
    Characters,
    Convergence,
    Semigroup,
    Fluctuations,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub suite: Suite,
    /// Size bound for the suite; each suite has its own default.
    #[arg(long)]
    pub k: Option<usize>,
    /// Truncation order in t for semigroups and exponentials.
    #[arg(long = "t-order")]
    pub t_order: Option<usize>,
    /// Fluctuation order.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    P,
    S,
    B,
    Bs,
    H,
    D,
}

impl From<Family> for DiagramFamily {
    fn from(f: Family) -> Self {
        match f {
            Family::P => DiagramFamily::All,
            Family::S => DiagramFamily::Permutations,
            Family::B => DiagramFamily::Brauer,
            Family::Bs => DiagramFamily::AtMostPairs,
            Family::H => DiagramFamily::EvenBlocks,
            Family::D => DiagramFamily::CoarserThanId,
        }
    }
}

/// Order kind (`G`, `C`, `S`) or the inverse of the geodesic matrix (`Ginv`).
#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    G,
    C,
    S,
    Ginv,
}

impl Which {
    pub fn kind(self) -> OrderKind {
        match self {
            Which::G | Which::Ginv => OrderKind::Geodesic,
            Which::C => OrderKind::CoarserCompatible,
            Which::S => OrderKind::FinerCompatible,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitChoice {
    Moment,
    Cumulant,
    ExclusiveMoment,
    ExclusiveCumulant,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransformChoice {
    M,
    R,
    MToC,
    McTo,
}

impl TransformChoice {
    pub fn transform(self) -> Transform {
        match self {
            TransformChoice::M => Transform::M,
            TransformChoice::R => Transform::R,
            TransformChoice::MToC => Transform::MToC,
            TransformChoice::McTo => Transform::MCTo,
        }
    }
}
