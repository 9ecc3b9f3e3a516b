use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use tate_syzygy::cohomology::DEFAULT_GORENSTEIN_BOUND;
use tate_syzygy::resolution::{DEFAULT_N_MAX, DEFAULT_P_MAX};
use tate_syzygy::FieldSpec;

#[derive(Parser, Debug)]
#[command(
    name = "tate-syzygy",
    version,
    about = "Eventual periodicity and Tate-Hochschild cohomology of quiver algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by the analysis commands.
#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Ground field: Q, F<p>, or F for F_32003. Overrides the input file.
    #[arg(long)]
    pub field: Option<FieldSpec>,
    /// Seed for randomized isomorphism search.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest first periodic syzygy index searched.
    #[arg(long, default_value_t = DEFAULT_N_MAX)]
    pub n_max: usize,
    /// Largest period searched.
    #[arg(long, default_value_t = DEFAULT_P_MAX)]
    pub p_max: usize,
    /// Also write the report as JSON to this path (`-` for stdout).
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Record wall-clock timings in the report.
    #[arg(long)]
    pub timings: bool,
    /// Run every loop on one thread.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Gorenstein test, periodicity certificate, HH and Tate-HH tables, and checks.
    Analyze {
        /// A .alg presentation, an algebra dump, or the name of a bundled example.
        input: String,
        #[command(flatten)]
        common: Common,
        /// Degrees of the cohomology tables, `lo..hi`.
        #[arg(long, default_value = "-4..6", allow_hyphen_values = true)]
        range: DegreeRange,
        /// Bound on injective dimensions.
        #[arg(long, default_value_t = DEFAULT_GORENSTEIN_BOUND)]
        bound: usize,
    },
    /// Writes the tensor product of two algebras as a JSON dump.
    Tensor {
        a: String,
        b: String,
        #[arg(long, short)]
        out: PathBuf,
        #[arg(long)]
        field: Option<FieldSpec>,
    },
    /// Minimal resolution of a module: term multiplicities and syzygy dimensions.
    Resolve {
        input: String,
        /// `regular-bimodule`, `simple <v>` or `projective <v>`.
        #[arg(long, num_args = 1..=2, value_names = ["KIND", "VERTEX"], default_value = "regular-bimodule")]
        module: Vec<String>,
        #[arg(long, default_value_t = 6)]
        length: usize,
        /// Compare with the associated-path multiplicities (monomial algebras).
        #[arg(long)]
        bardzell: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Total complex of the bimodule resolutions of a periodic algebra and an
    /// algebra of finite global dimension.
    TensorCheck {
        a: String,
        b: String,
        #[arg(long, default_value_t = 8)]
        length: usize,
        /// Bound on the global dimension of the second factor.
        #[arg(long, default_value_t = 12)]
        bound: usize,
        /// Skip the direct resolution of the tensor product.
        #[arg(long)]
        no_direct: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Prints generated presentations.
    Generate {
        #[command(subcommand)]
        what: Generate,
    },
}

#[derive(Subcommand, Debug)]
pub enum Generate {
    /// The linear quiver 0 -> 1 -> ... -> n with all length-two relations.
    Gamma {
        n: usize,
        #[arg(long)]
        field: Option<FieldSpec>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// A seeded random monomial algebra.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

/// An inclusive range of degrees written `lo..hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeRange {
    pub lo: i64,
    pub hi: i64,
}

impl FromStr for DegreeRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected lo..hi, got `{s}`"))?;
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let lo: i64 = lo.trim().parse().map_err(|_| format!("bad lower degree `{lo}`"))?;
        let hi: i64 = hi.trim().parse().map_err(|_| format!("bad upper degree `{hi}`"))?;
        if lo > hi {
            return Err(format!("empty range {lo}..{hi}"));
        }
        Ok(DegreeRange { lo, hi })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!("-4..6".parse::<DegreeRange>().unwrap(), DegreeRange { lo: -4, hi: 6 });
        assert_eq!("0..=3".parse::<DegreeRange>().unwrap(), DegreeRange { lo: 0, hi: 3 });
        assert!("3..1".parse::<DegreeRange>().is_err());
        assert!("3".parse::<DegreeRange>().is_err());
    }

    #[test]
    fn parses_flags() {
        let cli =
            Cli::try_parse_from(["tate-syzygy", "analyze", "a.alg", "--range", "-2..2", "--field", "F2"]).unwrap();
        let Command::Analyze { range, common, .. } = cli.command else { panic!() };
        assert_eq!(range, DegreeRange { lo: -2, hi: 2 });
        assert_eq!(common.field, Some(FieldSpec::PrimeField(2)));
        let cli = Cli::try_parse_from(["tate-syzygy", "resolve", "x", "--module", "simple", "1"]).unwrap();
        let Command::Resolve { module, .. } = cli.command else { panic!() };
        assert_eq!(module, vec!["simple", "1"]);
    }
}
