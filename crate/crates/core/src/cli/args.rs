use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::generators::KvMap;
use crate::series::VerdictRule;
use crate::verifier::DEFAULT_TOL;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Pretty,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Result<Self> {
        <Self as ValueEnum>::from_str(s, true).map_err(|_| Error::param(format!("unknown format {s}")))
    }
}

#[derive(Parser, Debug)]
#[command(name = "gapdens", version, about = "Gap statistics and exponential densities of integer sequences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Family selection. Values are passed through as `key=value` pairs, so
/// fractions such as `1/3` are accepted wherever a real is.
#[derive(Args, Debug, Clone, Default)]
pub struct FamilyArgs {
    /// power, geometric, arithmetic, quadratic, polynomial, real-power,
    /// double-exp-union, sqrt-exp, nonsquare-squares, product, file
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long)]
    pub b: Option<String>,
    #[arg(long)]
    pub c: Option<String>,
    #[arg(long)]
    pub d: Option<String>,
    #[arg(long)]
    pub k: Option<String>,
    #[arg(long)]
    pub l: Option<String>,
    #[arg(long)]
    pub t: Option<String>,
    /// Comma-separated polynomial coefficients, constant term first.
    #[arg(long)]
    pub coeffs: Option<String>,
    /// Sequence file; implies `--family file`.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Drop repeated values when reading a file.
    #[arg(long)]
    pub dedup: bool,
    /// Prefix length.
    #[arg(long)]
    pub n: Option<usize>,
    /// Working precision in bits.
    #[arg(long, env = "GAPDENS_PRECISION")]
    pub precision: Option<u32>,
    /// Bit size up to which geometric and product terms stay exact.
    #[arg(long)]
    pub exact_bits: Option<u32>,
    /// Product terms without a new value before the set is declared finite.
    #[arg(long)]
    pub stall: Option<usize>,
    /// `key=value` file; its keys override the flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl FamilyArgs {
    pub fn to_kv(&self) -> KvMap {
        let mut m = KvMap::new();
        let mut put = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                m.insert(k, v);
            }
        };
        put("family", self.family.clone());
        put("a", self.a.clone());
        put("alpha", self.alpha.clone());
        put("b", self.b.clone());
        put("c", self.c.clone());
        put("d", self.d.clone());
        put("k", self.k.clone());
        put("l", self.l.clone());
        put("t", self.t.clone());
        put("coeffs", self.coeffs.clone());
        put("n", self.n.map(|v| v.to_string()));
        put("precision", self.precision.map(|v| v.to_string()));
        put("exact_bits", self.exact_bits.map(|v| v.to_string()));
        put("stall", self.stall.map(|v| v.to_string()));
        if let Some(p) = &self.file {
            put("path", Some(p.display().to_string()));
            if self.family.is_none() {
                put("family", Some("file".into()));
            }
        }
        if self.dedup {
            m.insert("dedup", "true");
        }
        m
    }
}

#[derive(Args, Debug, Clone, Default)]
pub struct OutputArgs {
    /// json, csv or pretty (default pretty; `generate` writes the plain
    /// sequence format unless a format is given).
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RuleKind {
    /// Thresholds relative to the harmonic series' block share.
    Harmonic,
    /// Fixed thresholds on the block share.
    Absolute,
}

#[derive(Args, Debug, Clone)]
pub struct RuleArgs {
    #[arg(long, value_enum, default_value = "harmonic")]
    pub rule: RuleKind,
    /// Absolute rule: converging below this block share.
    #[arg(long, default_value_t = 1e-3)]
    pub converge_below: f64,
    /// Absolute rule: diverging at or above this block share.
    #[arg(long, default_value_t = 1e-1)]
    pub diverge_above: f64,
    /// Harmonic rule: converging below this multiple of the reference.
    #[arg(long, default_value_t = 0.5)]
    pub converge_factor: f64,
    /// Harmonic rule: diverging at or above this multiple of the reference.
    #[arg(long, default_value_t = 1.0 - 1e-6)]
    pub diverge_factor: f64,
}

impl RuleArgs {
    pub fn to_rule(&self) -> Result<VerdictRule> {
        let r = match self.rule {
            RuleKind::Harmonic => VerdictRule::HarmonicReference {
                converge_factor: self.converge_factor,
                diverge_factor: self.diverge_factor,
            },
            RuleKind::Absolute => VerdictRule::Absolute {
                converge_below: self.converge_below,
                diverge_above: self.diverge_above,
            },
        };
        r.validate()?;
        Ok(r)
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a prefix of a family.
    Generate {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Tail estimates of every statistic.
    Profile {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        out: OutputArgs,
        /// Fraction of samples, counted from the end, in the tail window.
        #[arg(long, default_value_t = 0.5)]
        tail_fraction: f64,
        /// Block-extrema spread below which an estimate counts as converged.
        #[arg(long, default_value_t = 0.05)]
        spread_tol: f64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Run checks; exits 1 if any fails.
    Verify {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        out: OutputArgs,
        /// Manifest file, one check per line.
        #[arg(long)]
        manifest: Option<PathBuf>,
        /// Every catalog family at this length under all checks, plus the
        /// analytic grids.
        #[arg(long)]
        catalog: Option<usize>,
        /// sandwich, rho-tau-zero, implied-interval, stolz, analytic or all.
        #[arg(long, default_value = "all")]
        check: String,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// The alpha/beta table against the published values.
    Table {
        #[command(flatten)]
        out: OutputArgs,
        #[arg(long, default_value_t = 10_000)]
        n: usize,
        /// Length used for the double-exponential union.
        #[arg(long, default_value_t = 60)]
        union_n: usize,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Convergence of sum a_n^(-sigma), or a bracket for the exponent.
    Probe {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        out: OutputArgs,
        #[arg(long, allow_negative_numbers = true)]
        sigma: Option<f64>,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
        bracket: Option<Vec<f64>>,
        #[arg(long, default_value_t = 12)]
        steps: usize,
        #[command(flatten)]
        rule: RuleArgs,
    },
    /// Print the JSON Schema of report documents.
    Schema {
        #[command(flatten)]
        out: OutputArgs,
    },
}
