use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::rational::Rational;

fn rational(s: &str) -> Result<Rational, String> {
    s.parse().map_err(|e: crate::Error| e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "complements", version, about = "Exact arithmetic of n-complements")]
pub struct Cli {
    /// Also render every rational to k decimal places (marked approximate).
    #[arg(long, global = true, value_name = "K")]
    pub decimal: Option<usize>,

    /// Worker threads for grid and batch work (default 1).
    #[arg(long, global = true, value_name = "K")]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Restrictions {
    /// Divisibility index I.
    #[arg(long)]
    pub divisor: u64,
    #[arg(long, value_parser = rational, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    pub v: Vec<Rational>,
    /// Direction e.
    #[arg(long, value_parser = rational, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    pub e: Vec<Rational>,
    #[arg(long, value_parser = rational)]
    pub epsilon: Rational,
}

#[derive(Debug, Args)]
pub struct Problem {
    #[command(flatten)]
    pub restrictions: Restrictions,
    /// Entries per boundary vector.
    #[arg(long)]
    pub d: usize,
    #[arg(long, value_parser = rational, value_delimiter = ',', required = true)]
    pub capacities: Vec<Rational>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// a^[n] for one coefficient.
    Round {
        #[arg(long, value_parser = rational)]
        a: Rational,
        #[arg(long)]
        n: u64,
    },
    /// Componentwise a^[n] for a list.
    RoundVector {
        #[arg(long, value_parser = rational, value_delimiter = ',', required = true)]
        b: Vec<Rational>,
        #[arg(long)]
        n: u64,
    },
    /// Whether d⁺ meets the n-complement rule for d.
    ComplementOk {
        #[arg(long, value_parser = rational)]
        d: Rational,
        #[arg(long, value_parser = rational)]
        d_plus: Rational,
        #[arg(long)]
        n: u64,
    },
    /// Hyperstandard sets: one query against Φ(ℛ) or Γ(𝒩, Φ).
    Gamma {
        /// Elements of ℛ; 0 and 1 are always included.
        #[arg(long, value_parser = rational, value_delimiter = ',')]
        rset: Vec<Rational>,
        /// The index set 𝒩.
        #[arg(long, value_delimiter = ',')]
        nset: Vec<u64>,
        #[command(flatten)]
        query: GammaQuery,
    },
    /// Smallest n under complementary restrictions.
    FindN {
        #[command(flatten)]
        restrictions: Restrictions,
        #[arg(long)]
        n_max: u64,
    },
    /// Checks a witness (n, v_n) against complementary restrictions.
    CheckRestriction {
        #[command(flatten)]
        restrictions: Restrictions,
        #[arg(long)]
        n: u64,
        #[arg(long, value_parser = rational, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        v_n: Vec<Rational>,
    },
    /// Tolerance δ for perturbing a direction.
    Delta {
        #[arg(long, value_parser = rational, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        e_prime: Vec<Rational>,
        #[arg(long)]
        l: usize,
        #[arg(long, value_parser = rational)]
        epsilon: Rational,
    },
    /// Smallest n rounding every boundary within its capacity.
    Simultaneous {
        #[command(flatten)]
        problem: Problem,
        /// One boundary vector per capacity; repeat the flag.
        #[arg(long = "boundary", value_parser = parse_vector, required = true)]
        boundaries: Vec<Vec<Rational>>,
        #[arg(long)]
        n_max: u64,
    },
    /// Builds an index set covering the denominator-bounded grid.
    Cover {
        #[command(flatten)]
        problem: Problem,
        #[arg(long)]
        denom_bound: u64,
        #[arg(long)]
        n_max: u64,
    },
    /// Checks an index set against the denominator-bounded grid.
    VerifyCover {
        #[command(flatten)]
        problem: Problem,
        #[arg(long)]
        denom_bound: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        n_set: Vec<u64>,
    },
    /// Nodal curve pairs.
    #[command(subcommand)]
    Curve(CurveCommand),
    /// Joins small multiplicities.
    Merge {
        #[arg(long, value_parser = rational, value_delimiter = ',', required = true)]
        b: Vec<Rational>,
        #[arg(long, value_parser = rational, default_value = "1/2")]
        threshold: Rational,
    },
    /// Zariski decomposition of a divisor on a model.
    Zariski { model: PathBuf, divisor: PathBuf },
    /// Whether a divisor is nef on a model.
    NefCheck { model: PathBuf, divisor: PathBuf },
    /// Whether the matrix `q` of a JSON file is negative definite.
    Negdef { matrix: PathBuf },
    /// Whether a nef L <= D lies below the mobile part of D.
    Maximality {
        model: PathBuf,
        divisor: PathBuf,
        l: PathBuf,
    },
    /// Kodaira fiber table lookup.
    Kodaira {
        #[arg(value_name = "TYPE")]
        fiber: String,
    },
    /// Maximum absolute value of a vector.
    Norm {
        #[arg(long, value_parser = rational, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        v: Vec<Rational>,
    },
    /// Greatest integer below a rational.
    Floor {
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        a: Rational,
    },
    /// Runs the cases of a JSON manifest.
    Batch { manifest: PathBuf },
}

fn parse_vector(s: &str) -> Result<Vec<Rational>, String> {
    crate::rational::parse_list(s).map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
#[group(id = "query", required = true, multiple = false)]
pub struct GammaQuery {
    /// Membership in Γ(𝒩, Φ).
    #[arg(long, value_parser = rational, group = "query")]
    pub contains: Option<Rational>,
    /// Membership in Φ(ℛ).
    #[arg(long, value_parser = rational, group = "query")]
    pub phi_contains: Option<Rational>,
    /// Elements of Γ(𝒩, Φ) up to a cutoff below 1.
    #[arg(long, value_parser = rational, group = "query")]
    pub enumerate_upto: Option<Rational>,
    /// Largest element of Γ(𝒩, Φ) not above b.
    #[arg(long, value_parser = rational, group = "query")]
    pub low_approx: Option<Rational>,
    /// low-approx applied to each entry of a list.
    #[arg(long, value_parser = rational, value_delimiter = ',', group = "query")]
    pub low_approx_boundary: Option<Vec<Rational>>,
}

#[derive(Debug, Subcommand)]
pub enum CurveCommand {
    Classify {
        file: PathBuf,
    },
    /// Whether an ℝ-complement exists, with a witness.
    RComplement {
        file: PathBuf,
    },
    /// Smallest candidate n with an n-complement.
    Complement {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        candidates: Vec<u64>,
    },
    /// Whether the boundary in PLUS (a JSON list of points) is an n-complement.
    Check {
        file: PathBuf,
        #[arg(long)]
        plus: PathBuf,
        #[arg(long)]
        n: u64,
    },
    Validate {
        file: PathBuf,
    },
    /// Genus, node preimages and boundary degree per component.
    Degrees {
        file: PathBuf,
    },
}
