use clap::{Args, Parser, Subcommand};

use frobenius_core::{ArithTriple, FrobError, Instance, Provenance};

#[derive(Debug, Parser)]
#[command(name = "frob", version, about = "p-Frobenius numbers, genera and Sylvester sums in exact arithmetic")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Emit JSON lines even on a terminal.
    #[arg(long, global = true)]
    pub json: bool,

    /// Worker threads for table and verify sweeps (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// p-Frobenius number g_p
    Gp(QueryArgs),
    /// p-genus n_p
    Np(QueryArgs),
    /// p-Sylvester sum s_p
    Sp(QueryArgs),
    /// power sum s_p^(mu)
    Power {
        #[command(flatten)]
        query: QueryArgs,
        #[arg(long)]
        mu: u64,
    },
    /// weighted power sum s_{lambda,p}^(mu)
    Weighted {
        #[command(flatten)]
        query: QueryArgs,
        #[arg(long, allow_negative_numbers = true)]
        lambda: i64,
        #[arg(long)]
        mu: u64,
    },
    /// p-Apéry set, indexed by residue modulo the smallest generator
    Apery(QueryArgs),
    /// largest integer with exactly p representations
    Gstar(TargetArgs),
    /// all integers with at most p representations
    Nonrep(TargetArgs),
    /// sweep closed forms over a grid of triples (a, a+d, a+2d)
    Table(TableArgs),
    /// cross-validate closed forms, Apéry sets and the oracle
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct TargetArgs {
    /// Generators, comma separated and strictly increasing.
    #[arg(short = 'A', long = "generators", value_name = "A1,A2,...", required_unless_present = "triple")]
    pub generators: Option<String>,

    /// Arithmetic triple shorthand a,d for (a, a+d, a+2d).
    #[arg(long, value_name = "A,D", conflicts_with = "generators")]
    pub triple: Option<String>,

    #[arg(short = 'p', default_value_t = 0)]
    pub p: u64,
}

impl TargetArgs {
    pub fn instance(&self) -> Result<Instance, FrobError> {
        match (&self.generators, &self.triple) {
            (Some(list), _) => list.parse(),
            (None, Some(triple)) => {
                let parts: Vec<u64> = triple
                    .split(',')
                    .map(|t| t.trim().parse::<u64>())
                    .collect::<Result<_, _>>()
                    .map_err(|e| FrobError::DomainError(format!("bad --triple {triple:?}: {e}")))?;
                match parts[..] {
                    [a, d] => Ok(ArithTriple::new(a, d)?.instance()),
                    _ => Err(FrobError::DomainError(format!("--triple expects a,d, got {triple:?}"))),
                }
            }
            (None, None) => Err(FrobError::DomainError("either -A or --triple is required".into())),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct QueryArgs {
    #[command(flatten)]
    pub target: TargetArgs,

    /// Compute every applicable path and report whether they agree.
    #[arg(long)]
    pub check: bool,

    /// Force one path instead of the default (closed form when it applies,
    /// else Apéry set, else oracle).
    #[arg(long, value_name = "closed|apery|oracle", value_parser = parse_path)]
    pub path: Option<Provenance>,
}

fn parse_path(s: &str) -> Result<Provenance, String> {
    s.parse().map_err(|e: FrobError| e.to_string())
}

/// Inclusive range written `LO-HI`, `LO..HI` or a single value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub lo: u64,
    pub hi: u64,
}

impl std::str::FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lo, hi) = match s.split_once("..=").or_else(|| s.split_once("..")).or_else(|| s.split_once('-')) {
            Some((lo, hi)) => (lo, hi),
            None => (s, s),
        };
        let parse = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("bad range {s:?}: {e}"));
        let span = Span { lo: parse(lo)?, hi: parse(hi)? };
        if span.lo > span.hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(span)
    }
}

impl Span {
    pub fn iter(&self) -> std::ops::RangeInclusive<u64> {
        self.lo..=self.hi
    }
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    /// Range of a (inclusive).
    #[arg(long = "a", value_name = "LO-HI")]
    pub a: Span,

    /// Range of d (inclusive).
    #[arg(long = "d", value_name = "LO-HI")]
    pub d: Span,

    /// Range of p; clipped to 0..=floor(a/2) per row. Default: all valid p.
    #[arg(short = 'p', value_name = "LO-HI")]
    pub p: Option<Span>,

    /// Add a power-sum column with this exponent (and the weighted column
    /// when --lambda is also given).
    #[arg(long)]
    pub mu: Option<u64>,

    #[arg(long, allow_negative_numbers = true, requires = "mu")]
    pub lambda: Option<i64>,

    #[arg(long, value_name = "closed|apery|oracle", value_parser = parse_path)]
    pub path: Option<Provenance>,

    /// CSV instead of JSON lines.
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 25)]
    pub a_max: u64,

    #[arg(long, default_value_t = 15)]
    pub d_max: u64,

    /// Also check power sums (mu <= 3) and weighted sums (lambda in
    /// {-2, 2, 3}, plus -1 for odd a).
    #[arg(long)]
    pub weighted: bool,

    #[arg(long, default_value_t = 12)]
    pub weighted_a_max: u64,

    #[arg(long, default_value_t = 7)]
    pub weighted_d_max: u64,

    /// Print the nonrepresentable set of one instance and check its size.
    #[arg(long, requires = "generators")]
    pub nonrep: bool,

    #[arg(short = 'A', long = "generators", value_name = "A1,A2,...")]
    pub generators: Option<String>,

    #[arg(short = 'p', default_value_t = 0)]
    pub p: u64,
}
