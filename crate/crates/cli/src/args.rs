use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "swidths", version, about = "Approximation numbers, complexity and tractability of weighted Sobolev embeddings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Worker threads; falls back to SWIDTHS_THREADS, then to the core count.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Weight arithmetic. `exact` needs every 2 b_j to be a small integer.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Float)]
    pub mode: ModeArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Float,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    /// The Sobolev embedding.
    I,
    /// The Korobov problem; needs --omega.
    App,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    AppToI,
    IToApp,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Cmp {
    Strict,
    NonStrict,
}

/// The sequences: either `--seq` (inline JSON or a path to a JSON file) or
/// comma-separated `--a` and `--b`.
#[derive(Debug, Clone, Args)]
pub struct SeqArgs {
    /// `{"a": ..., "b": ..., "d": ...}`, inline or as a file path.
    #[arg(long, conflicts_with_all = ["a", "b"])]
    pub seq: Option<String>,

    /// Scaling parameters a_1,...,a_d.
    #[arg(long, value_delimiter = ',', requires = "b")]
    pub a: Option<Vec<f64>>,

    /// Smoothness parameters b_1,...,b_d.
    #[arg(long, value_delimiter = ',', requires = "a")]
    pub b: Option<Vec<f64>>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Volume of the generalized ellipsoid {x : sum a_j |x_j|^{b_j} <= t}.
    Volume {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        t: Vec<f64>,
        /// Use exponents 2 b_j instead of b_j.
        #[arg(long)]
        doubled: bool,
    },
    /// Number of lattice points with weight below (or at) each threshold.
    Count {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        t: Vec<f64>,
        #[arg(long, value_enum, default_value_t = Cmp::NonStrict)]
        cmp: Cmp,
    },
    /// Approximation numbers a_n.
    Widths {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u64>,
    },
    /// Korobov eigenvalues lambda_n = omega^{w_n}.
    Eigs {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u64>,
        #[arg(long)]
        omega: f64,
    },
    /// Ratios n^{g_d} a_n / vol(B_{a,2b})^{g_d}, which tend to 1.
    Equiv {
        #[command(flatten)]
        seq: SeqArgs,
        /// Increasing n grid; defaults to powers of two up to --n-max.
        #[arg(long, value_delimiter = ',')]
        n: Option<Vec<u64>>,
        #[arg(long, default_value_t = 1 << 16)]
        n_max: u64,
    },
    /// Two-sided volume bounds on C(m) = #{k : w(k) <= m^{p_d}}.
    Sandwich {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20")]
        m: Vec<u64>,
    },
    /// Information complexity n(eps).
    Complexity {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        eps: Vec<f64>,
        #[arg(long, value_enum, default_value_t = Problem::I)]
        problem: Problem,
        #[arg(long, required_if_eq("problem", "app"))]
        omega: Option<f64>,
    },
    /// Checks that the embedding and Korobov complexities coincide under the
    /// tolerance maps.
    Bridge {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long)]
        omega: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        eps: Vec<f64>,
        #[arg(long, value_enum, default_value_t = Direction::Both)]
        direction: Direction,
    },
    /// Tractability verdicts from the closed-form families.
    Classify {
        /// `{"a": family, "b": family}`, inline or as a file path; `d` is ignored.
        #[arg(long, required_unless_present = "b_family")]
        seq: Option<String>,
        /// Classify the unweighted space with this smoothness family.
        #[arg(long, conflicts_with = "seq")]
        b_family: Option<String>,
        /// Extra (s,t) pairs, e.g. `1,1;2,0.5`.
        #[arg(long, default_value = "")]
        st: String,
    },
    /// Heuristic table of ln n(eps, I_d) / (eps^{-s} + d^t).
    Probe {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long)]
        s: f64,
        #[arg(long)]
        t: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        eps: Vec<f64>,
        #[arg(long, value_delimiter = ',', required = true)]
        d: Vec<usize>,
    },
}
