use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Build and verify q-ary 1-perfect codes.
#[derive(Debug, Parser)]
#[command(name = "perfect-forge", version, about)]
pub struct Cli {
    /// Print a single-line JSON summary instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Worker threads for parallel loops.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,

    /// Largest number of codewords any command will list.
    #[arg(long, global = true, default_value_t = 1 << 26)]
    pub cap: u128,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Addition and multiplication tables of GF(q).
    FieldTable {
        #[arg(long)]
        q: u32,
        /// Modulus coefficients, constant term first, e.g. 1,1,0,1.
        #[arg(long)]
        modulus: Option<String>,
    },
    /// The Hamming code H_{q,m}.
    Hamming {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        m: usize,
        /// Write the parity-check matrix instead of the codewords.
        #[arg(long)]
        parity: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// i-components or (i,σ)-components of a code file.
    Components {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        i: usize,
        /// Compute (i,σ)-components for this permutation.
        #[arg(long)]
        sigma: Option<String>,
        /// Directory receiving one code file per block.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Vasil'ev construction (u | u+v | p(u)+λ(v)).
    Vasiliev {
        /// hamming:q,m, trivial:q, or a code file.
        #[arg(long)]
        base: String,
        /// zero, seeded:SEED, or table:v0,v1,...
        #[arg(long, default_value = "zero")]
        lambda: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Doubling construction over two coset partitions of H_{2,m}.
    Doubling {
        #[arg(long)]
        m: usize,
        /// Permutation of 0..=n as a comma list, or "identity".
        #[arg(long, default_value = "identity")]
        pi: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Lindström-Schönheim construction over GF(q).
    Ls {
        /// Checked against the field of the base code when given.
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        base: String,
        #[arg(long, default_value = "zero")]
        lambda: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Union of permuted cosets σ_c(R_i + (0|c)) over a base code.
    Gls {
        #[arg(long)]
        base: String,
        #[arg(long)]
        i: usize,
        /// swap, cycle, a comma table, or seeded:SEED for one σ per codeword.
        #[arg(long)]
        sigma: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Switch blocks of an explicit code.
    Switch {
        #[arg(long)]
        input: PathBuf,
        /// I:SIGMA:BLOCK_FILE, repeatable.
        #[arg(long = "part", required = true)]
        parts: Vec<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Full-rank code from the switched family R_j + c_j of H_{q,m}.
    Fullrank {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        m: usize,
        /// One permutation for every coordinate, or m of them.
        #[arg(long = "sigma", required = true)]
        sigmas: Vec<String>,
        /// Write the switched-code description instead of listing the words.
        #[arg(long)]
        implicit: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Verify a code file or switched-code description.
    Verify {
        #[arg(long)]
        input: PathBuf,
        /// Ball marking over F_q^n (the default).
        #[arg(long, conflicts_with = "sampled")]
        exact: bool,
        /// Number of sampled probes.
        #[arg(long)]
        sampled: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Rank of a code file or switched-code description.
    Rank {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Lower bound on the number of 1-perfect codes of length n.
    Bound {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyMode {
    Exact,
    Sampled,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; nothing is written without it.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Verify the result before writing it.
    #[arg(long, value_enum)]
    pub verify: Option<VerifyMode>,
    /// Probes for --verify sampled.
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    /// Seed for sampling and rank certificates.
    #[arg(long)]
    pub seed: Option<u64>,
}
