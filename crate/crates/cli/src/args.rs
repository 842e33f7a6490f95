use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::config::OutputFormat;

#[derive(Parser, Debug)]
#[command(name = "quartic", version, about = "Exact S-unit, Frey curve and density computations for x^4 - y^4 = n z^p")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct GlobalArgs {
    /// JSON file with RunConfig settings; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Cache file; also settable through QUARTIC_CACHE.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Ignore any configured cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[arg(long, global = true)]
    pub exponent_bound: Option<u32>,
    #[arg(long, global = true)]
    pub enumeration_ceiling: Option<u64>,
    #[arg(long, global = true)]
    pub discriminant_bound: Option<u64>,
    #[arg(long, global = true)]
    pub sieve_cutoff: Option<u64>,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Field descriptor, splitting of primes up to 50, units and class data.
    #[command(allow_negative_numbers = true)]
    Field {
        /// Squarefree d selecting Q(sqrt d); 0 selects Q.
        #[arg(short)]
        d: i64,
    },
    /// Solutions of lambda + mu = 1 in S-units.
    #[command(allow_negative_numbers = true)]
    Sunit {
        #[arg(short)]
        d: i64,
        /// Rational primes whose prime ideals form S.
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        /// Exponent box; defaults to the configured exponent bound.
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Frey curve of a solution of a^4 - b^4 = n c^p.
    #[command(allow_negative_numbers = true)]
    Frey {
        /// Entries are integers, rationals or `x+y*sqrt(d)`.
        a: String,
        b: String,
        c: String,
        n: u64,
        p: u64,
        #[arg(short, default_value_t = 0)]
        d: i64,
    },
    /// Checks one statement; see `quartic check --help` for the tags.
    Check {
        #[command(subcommand)]
        tag: CheckTag,
    },
    /// Squarefree residue fractions with optional membership sampling.
    #[command(allow_negative_numbers = true)]
    Density {
        /// Defaults to the configured sieve cutoff.
        #[arg(long)]
        cutoff: Option<u64>,
        /// Explicit d values to sample.
        #[arg(long, value_delimiter = ',')]
        sample: Vec<i64>,
        /// Samples every squarefree 2 <= |d| <= N, both signs.
        #[arg(long)]
        sample_range: Option<u64>,
        #[arg(long)]
        bound: Option<u32>,
    },
}

/// A field given by `-d` or, for abstract descriptors, by its degree and
/// the splitting of a few primes.
#[derive(Args, Debug, Clone, Serialize)]
pub struct FieldArgs {
    /// Squarefree d selecting Q(sqrt d); 0 selects Q.
    #[arg(short, conflicts_with = "degree")]
    pub d: Option<i64>,
    #[arg(long)]
    pub degree: Option<u32>,
    /// Real embeddings; defaults to the degree.
    #[arg(long, requires = "degree")]
    pub signature: Option<u32>,
    #[arg(long, value_delimiter = ',', requires = "degree")]
    pub ramified: Vec<u64>,
    #[arg(long, value_delimiter = ',', requires = "degree")]
    pub split: Vec<u64>,
    #[arg(long, value_delimiter = ',', requires = "degree")]
    pub inert: Vec<u64>,
    /// Supplied parity of the narrow class number.
    #[arg(long, requires = "degree")]
    pub narrow_odd: Option<bool>,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckTag {
    /// Valuation bound at a prime above 2 over S = {2} and the odd primes of n.
    #[command(allow_negative_numbers = true)]
    TheoremA {
        #[arg(short)]
        d: i64,
        #[arg(short)]
        n: u64,
        /// Index of the prime above 2 among those of S.
        #[arg(long, default_value_t = 0)]
        slot: usize,
        #[arg(long)]
        bound: Option<u32>,
    },
    /// One prime above 2 and odd narrow class number.
    #[command(allow_negative_numbers = true)]
    TheoremB {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 1)]
        alpha: u64,
    },
    #[command(allow_negative_numbers = true)]
    CorollaryQuadratic {
        #[arg(short)]
        d: i64,
        #[arg(short = 'l')]
        ell: u64,
        #[arg(long, default_value_t = 1)]
        alpha: u64,
        /// Adds solver evidence over the primes above 2 and ell.
        #[arg(long)]
        bound: Option<u32>,
    },
    #[command(allow_negative_numbers = true)]
    CorollaryRamified {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(short)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        alpha: u64,
        #[arg(long)]
        bound: Option<u32>,
    },
    #[command(allow_negative_numbers = true)]
    CorollarySplits3 {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 1)]
        alpha: u64,
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Q(sqrt q) for a prime q > 73 with q = 1 mod 24.
    Q24 {
        #[arg(short)]
        q: u64,
        #[arg(long, default_value_t = 1)]
        alpha: u64,
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Q(sqrt q) and Q(sqrt -q) in the listed congruence classes.
    CorollaryPrimeQuadratic {
        #[arg(short)]
        q: u64,
        #[arg(long, default_value_t = 1)]
        alpha: u64,
    },
    /// The r-th layer of the cyclotomic Z_2-extension.
    Z2Layer {
        #[arg(short)]
        r: u32,
        #[arg(long, default_value_t = 1)]
        alpha: u64,
    },
    /// Valuation trichotomy and ord(j) bound for every solution over S.
    #[command(allow_negative_numbers = true)]
    Trace {
        #[arg(short)]
        d: i64,
        #[arg(long, value_delimiter = ',', default_value = "2")]
        primes: Vec<u64>,
        #[arg(long)]
        bound: Option<u32>,
    },
}

impl Command {
    /// Stable name recorded in the envelope and the cache key.
    pub fn name(&self) -> String {
        match self {
            Command::Field { .. } => "field".into(),
            Command::Sunit { .. } => "sunit".into(),
            Command::Frey { .. } => "frey".into(),
            Command::Check { tag } => format!("check {}", tag.name()),
            Command::Density { .. } => "density".into(),
        }
    }
}

impl CheckTag {
    pub fn name(&self) -> &'static str {
        match self {
            CheckTag::TheoremA { .. } => "theorem-a",
            CheckTag::TheoremB { .. } => "theorem-b",
            CheckTag::CorollaryQuadratic { .. } => "corollary-quadratic",
            CheckTag::CorollaryRamified { .. } => "corollary-ramified",
            CheckTag::CorollarySplits3 { .. } => "corollary-splits3",
            CheckTag::Q24 { .. } => "q24",
            CheckTag::CorollaryPrimeQuadratic { .. } => "corollary-prime-quadratic",
            CheckTag::Z2Layer { .. } => "z2-layer",
            CheckTag::Trace { .. } => "trace",
        }
    }
}
