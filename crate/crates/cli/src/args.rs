use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use leavitt::FieldSpec;

#[derive(Debug, Parser)]
#[command(name = "leavitt", version, about = "Exact computations in Leavitt path algebras")]
pub struct Cli {
    /// Emit a machine-readable JSON report.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct FieldArg {
    /// Coefficient field: F2, F3, F5, F7, F11, F13 or Q.
    #[arg(long, default_value = "Q")]
    pub field: FieldSpec,
}

#[derive(Debug, Clone, Args)]
pub struct PairArgs {
    /// Graph file of the left factor.
    #[arg(long)]
    pub left: PathBuf,
    /// Graph file of the right factor.
    #[arg(long)]
    pub right: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a graph file.
    GraphCheck {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Dimension of L_K(E), with a degree breakdown.
    LpaDim {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        field: FieldArg,
        /// Path length bound for graphs with cycles.
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Multiply two elements given as term lists.
    LpaMul {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        lhs: PathBuf,
        #[arg(long)]
        rhs: PathBuf,
    },
    /// Homogeneous components of an element.
    Grade {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        element: PathBuf,
    },
    /// Components of an element for the Z_n grading.
    Coarsen {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        element: PathBuf,
        #[arg(long)]
        modulus: u64,
    },
    /// Classical eigenspaces next to components recovered from the
    /// universal point of the gauge action.
    GaugeDemo {
        /// Defaults to the single loop.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[command(flatten)]
        field: FieldArg,
        /// Defaults to the sum of all generators.
        #[arg(long)]
        element: Option<PathBuf>,
        /// Sample units 1..=bound over Q.
        #[arg(long, default_value_t = 3)]
        bound: u64,
    },
    /// Gradedness and gauge invariance of the ideal generated by elements.
    /// Exits 0 when the ideal is graded.
    IdealCheck {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        field: FieldArg,
        /// Generator file; repeat for several generators.
        #[arg(long = "element")]
        elements: Vec<PathBuf>,
        /// Sample units 1..=bound over Q.
        #[arg(long, default_value_t = 3)]
        bound: u64,
    },
    /// Homogeneous components from classical action values. Exits 1 when the
    /// field has too few units.
    Vandermonde {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        element: PathBuf,
        /// Comma-separated nodes; defaults to all units of a finite field, or
        /// 1, 2, ... over Q.
        #[arg(long, value_delimiter = ',')]
        units: Option<Vec<String>>,
    },
    /// Idempotents of a comodule map. Exits 1 when the map is not a
    /// representation.
    Comodule {
        #[command(flatten)]
        field: FieldArg,
        /// Comodule map file.
        #[arg(long, conflicts_with = "degrees")]
        comodule: Option<PathBuf>,
        /// Build the diagonal comodule of a grading instead.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        degrees: Option<Vec<i64>>,
        /// Grading group for --degrees: Z or Z<n>.
        #[arg(long, default_value = "Z")]
        group: String,
    },
    /// Dimension of the cross product of two Leavitt path algebras.
    CrossDim {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        bound: Option<usize>,
        /// Use the whole tensor product instead.
        #[arg(long)]
        naive_tensor: bool,
    },
    /// The product graph E x F as a graph file.
    ProductGraph {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Compare the cross product with the algebra of the product graph.
    VerifyIso {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, default_value_t = 3)]
        bound: usize,
        #[arg(long)]
        naive_tensor: bool,
    },
    /// Run the scripted worked examples.
    PaperSuite {
        #[command(flatten)]
        field: FieldArg,
        /// Bound for the loop comparison step.
        #[arg(long, default_value_t = 5)]
        bound: usize,
        /// Step ids to run, comma separated.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<String>>,
        /// Replace the cross product with the whole tensor product.
        #[arg(long)]
        naive_tensor: bool,
    },
}
