//! Command-line front end: every library operation is reachable from one of
//! the verbs below, with deterministic text output, a `--json` switch for
//! machine-readable reports, and the exit-code contract 0 (success),
//! 1 (domain error), 2 (usage error).

mod commands;
pub mod reproduce;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use std::io::Write;

#[derive(Parser, Debug)]
#[command(
    name = "nielsen",
    version,
    about = "Exact-arithmetic lattice invariants, genus calculus, and section-obstruction reports",
    max_term_width = 100
)]
pub struct Cli {
    /// Emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,
    /// Attach a one-line justification to each verdict component
    #[arg(long, global = true)]
    pub cite: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Lattice invariants, sublattice reports, and direct sums
    Lattice {
        /// Built-in name (H, E8, -E8, K3, (1), (-1)), inline JSON, or a file path
        #[arg(allow_hyphen_values = true)]
        spec: String,
        /// Print only the signature "(p,q)"
        #[arg(long)]
        signature: bool,
        /// Span/complement/index report for a JSON list of vectors
        #[arg(long, value_name = "VECTORS")]
        sublattice: Option<String>,
        /// Direct sum with a second lattice; prints the resulting lattice
        #[arg(
            long = "direct-sum",
            value_name = "LATTICE",
            allow_hyphen_values = true
        )]
        direct_sum: Option<String>,
    },
    /// Enumerate lattice vectors of a given norm
    Roots {
        #[arg(allow_hyphen_values = true)]
        spec: String,
        /// Target norm (default -2, the root norm)
        #[arg(long, default_value_t = -2, allow_negative_numbers = true)]
        norm: i64,
        /// Bound on each coordinate; required for indefinite lattices
        #[arg(long = "box", value_name = "B")]
        coord_box: Option<u64>,
        /// Print only the count
        #[arg(long)]
        count: bool,
    },
    /// Reflections, spinor-norm classification, and composition
    #[command(subcommand)]
    Isometry(IsometryCmd),
    /// Power series and characteristic-class components
    #[command(subcommand)]
    Genus(GenusCmd),
    /// The ell classes: closed forms, the relation constant, surface products
    #[command(subcommand)]
    Ell(EllCmd),
    /// Connected-sum pullback of an ell-monomial (e.g. "l1^2*l2")
    Sum {
        monomial: String,
        /// Number of connected summands
        #[arg(long, default_value_t = 2)]
        summands: usize,
    },
    /// Independence certificate for ell-monomials of bounded total degree
    Independence { generators: u32, cap: u32 },
    /// Stable ranges and thresholds: `range P Q`, `range --bott I K`, or `range --harer D`
    Range {
        p: Option<u32>,
        q: Option<u32>,
        /// Flat-vanishing test for class index I in fiber dimension 4K
        #[arg(long, num_args = 2, value_names = ["I", "K"])]
        bott: Option<Vec<u32>>,
        /// Genus threshold for a class of the given degree
        #[arg(long, value_name = "DEGREE")]
        harer: Option<u32>,
    },
    /// Root-tuple stabilizer reports and even-bidegree bookkeeping
    Stabilizer {
        /// Lattice for a root-tuple report (omit with --e2)
        #[arg(allow_hyphen_values = true)]
        spec: Option<String>,
        /// JSON list of root vectors
        #[arg(long, value_name = "VECTORS")]
        roots: Option<String>,
        /// Run the even-bidegree region check instead
        #[arg(long)]
        e2: bool,
        #[arg(long = "max-total-degree", default_value_t = 9)]
        max_total_degree: u32,
        /// Tuple sizes as an inclusive range, e.g. 1..4
        #[arg(long, default_value = "1..4")]
        tuples: String,
    },
    /// Betti numbers of a codimension-3 subspace-arrangement complement
    Betti {
        /// Arrangement JSON (inline or file); alternative to --k3-roots
        arrangement: Option<String>,
        /// Build the arrangement from K3-lattice roots (JSON list)
        #[arg(long = "k3-roots", value_name = "VECTORS")]
        k3_roots: Option<String>,
        #[arg(long = "max-degree", default_value_t = 6)]
        max_degree: usize,
        /// Only run the transversality check up to the given subset size
        #[arg(long, value_name = "SIZE")]
        check: Option<usize>,
    },
    /// Section-obstruction report for an intersection form
    Report {
        #[arg(allow_hyphen_values = true)]
        spec: String,
        /// Fiber dimension divided by 4
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Certify via a K3 connected summand
        #[arg(long = "k3-summand")]
        k3_summand: bool,
        /// Comma-separated genera of surface factors, e.g. 18,2
        #[arg(long = "surface-genera", value_name = "G,G,...")]
        surface_genera: Option<String>,
    },
    /// Run every built-in acceptance check and print a pass/fail table
    Reproduce,
}

#[derive(Subcommand, Debug)]
pub enum IsometryCmd {
    /// Reflection through a vector, with classification
    Reflect {
        #[arg(allow_hyphen_values = true)]
        lattice: String,
        #[arg(allow_hyphen_values = true)]
        vector: String,
    },
    /// Classify an isometry given as {"lattice": .., "matrix": ..}
    Classify { isometry: String },
    /// Compose two isometries and classify the product
    Compose { left: String, right: String },
}

#[derive(Subcommand, Debug)]
pub enum GenusCmd {
    /// Coefficients of x/tanh(x/2) up to the given order
    Series { order: usize },
    /// Degree-4j component of the sequence for a rank-2 bundle
    Rank2 { j: u32 },
    /// Integrate a polynomial in e along the surface fiber
    /// (JSON map of e-powers to rationals, e.g. {"2":"1/6"})
    Integrate { poly: String },
    /// Real Chern character for the given rank, up to max degree
    Ch { rank: u32, max_degree: u32 },
    /// Verify the degree-8 Chern-character relation and report the
    /// degree-12 products
    Bo3,
}

#[derive(Subcommand, Debug)]
pub enum EllCmd {
    /// Closed form of l_i as a polynomial in p1
    Class { i: u32 },
    /// The constant in l1^2 = c * l2, with the Chern-constant comparison
    Relation,
    /// Slot decomposition of l_i for a product of surfaces
    Surfaces {
        i: u32,
        /// Comma-separated genera (an even number of them)
        #[arg(long, value_name = "G,G,...")]
        genera: String,
    },
}

/// Domain errors exit 1, usage errors exit 2.
pub enum CliError {
    Domain(String),
    Usage(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Usage(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Domain(m) | CliError::Usage(m) => m,
        }
    }
}

/// Parse and dispatch. Output goes to `out`, diagnostics to `err`; the
/// return value is the process exit code.
pub fn run<O: Write, E: Write>(args: &[String], out: &mut O, err: &mut E) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match commands::dispatch(&cli) {
        Ok(output) => {
            let _ = writeln!(out, "{}", output.text.trim_end());
            output.exit
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.code()
        }
    }
}
